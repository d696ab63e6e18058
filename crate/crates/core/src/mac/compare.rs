//! ALOHA against CDMA over the same airtime.
//!
//! One CDMA packet spread by a length-C code occupies the airtime of C
//! ALOHA slots. CDMA motes transmit once, so a longer read window changes
//! nothing for CDMA; ALOHA uses the extra frames for retries.

use super::aloha::aloha_mean;
use super::cdma::{cdma_simulate, SpreadingFamily};
use super::MacScenario;
use crate::error::Result;
use crate::seed::derive;
use crate::stats::MeanEstimate;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    Aloha,
    Cdma,
}

impl Scheme {
    pub fn name(self) -> &'static str {
        match self {
            Scheme::Aloha => "aloha",
            Scheme::Cdma => "cdma",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComparisonRow {
    pub n_motes: u64,
    pub duration_slots: u64,
    pub scheme: Scheme,
    pub mean_successes: MeanEstimate,
}

/// Settings shared by both schemes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComparisonSetup {
    pub rate_bps: f64,
    pub packet_bytes: u32,
    /// ALOHA frame length and CDMA code length.
    pub slots_per_packet: u32,
    pub family: SpreadingFamily,
    pub trials: u32,
    pub seed: u64,
}

impl Default for ComparisonSetup {
    fn default() -> Self {
        Self {
            rate_bps: 20_000.0,
            packet_bytes: 64,
            slots_per_packet: 128,
            family: SpreadingFamily::Walsh,
            trials: 100,
            seed: crate::seed::DEFAULT_SEED,
        }
    }
}

/// Mean successes of both schemes for every (duration, n) pair. ALOHA and
/// CDMA draw from separate sub-seeds; the CDMA seed does not involve the
/// duration.
pub fn compare_schemes(
    n_motes_list: &[u64],
    durations_slots: &[u64],
    setup: &ComparisonSetup,
) -> Result<Vec<ComparisonRow>> {
    let aloha_seed = derive(setup.seed, &[0]);
    let cdma_seed = derive(setup.seed, &[1]);
    let mut rows = Vec::new();
    for &duration_slots in durations_slots {
        let read_time_s = MacScenario::read_time_for_slots(duration_slots, setup.packet_bytes, setup.rate_bps);
        for &n_motes in n_motes_list {
            let sc = MacScenario {
                n_motes,
                rate_bps: setup.rate_bps,
                packet_bytes: setup.packet_bytes,
                read_time_s,
                frame_slots: setup.slots_per_packet,
                trials: setup.trials,
                seed: aloha_seed,
            };
            rows.push(ComparisonRow {
                n_motes,
                duration_slots,
                scheme: Scheme::Aloha,
                mean_successes: aloha_mean(&sc)?,
            });
            let cdma = cdma_simulate(
                n_motes as usize,
                setup.family,
                setup.slots_per_packet as usize,
                setup.packet_bytes,
                setup.trials,
                cdma_seed,
            )?;
            rows.push(ComparisonRow { n_motes, duration_slots, scheme: Scheme::Cdma, mean_successes: cdma });
        }
    }
    Ok(rows)
}
