//! Framed slotted ALOHA.
//!
//! Time is split into frames of `frame_slots` slots. Every mote not yet read
//! picks one slot of the frame uniformly at random; a slot chosen by exactly
//! one mote delivers that mote's packet and the mote goes quiet. Collided
//! motes try again in the next frame. If the read time ends mid-frame, only
//! the slots that fit are counted.

use rand::Rng;
use rayon::prelude::*;

use super::MacScenario;
use crate::error::Result;
use crate::seed::rng_for;
use crate::stats::MeanEstimate;

/// Result of one ALOHA session.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AlohaOutcome {
    pub successes: u64,
    /// Slots elapsed, counted in whole frames.
    pub slots_used: u64,
}

/// Runs one session.
pub fn aloha_simulate<R: Rng + ?Sized>(sc: &MacScenario, rng: &mut R) -> Result<AlohaOutcome> {
    sc.validate()?;
    let frame = sc.frame_slots as usize;
    let mut counts = vec![0u32; frame];
    let mut unread = sc.n_motes;
    let mut slots_left = sc.slots_available();
    let mut out = AlohaOutcome { successes: 0, slots_used: 0 };
    while unread > 0 && slots_left > 0 {
        let usable = (frame as u64).min(slots_left) as usize;
        let counts = &mut counts[..usable];
        counts.fill(0);
        for _ in 0..unread {
            counts[rng.random_range(0..usable)] += 1;
        }
        let singles = counts.iter().filter(|&&c| c == 1).count() as u64;
        out.successes += singles;
        unread -= singles;
        out.slots_used += usable as u64;
        slots_left -= usable as u64;
    }
    Ok(out)
}

/// Per-trial stream for `n` motes. It does not depend on rate or read time,
/// so adding whole frames to a session leaves the earlier frames unchanged.
fn trial_rng(seed: u64, n_motes: u64, trial: u32) -> crate::seed::SimRng {
    rng_for(seed, &[n_motes, trial as u64])
}

fn trial_successes(sc: &MacScenario) -> Result<Vec<u64>> {
    sc.validate()?;
    (0..sc.trials)
        .into_par_iter()
        .map(|t| aloha_simulate(sc, &mut trial_rng(sc.seed, sc.n_motes, t)).map(|o| o.successes))
        .collect()
}

/// Mean successes over `sc.trials` independent sessions.
pub fn aloha_mean(sc: &MacScenario) -> Result<MeanEstimate> {
    Ok(MeanEstimate::from_samples(trial_successes(sc)?.into_iter().map(|s| s as f64)))
}

/// Largest n in 1, 1 + step, 1 + 2·step, … for which every trial reads
/// every mote. Scanning stops at the first n that fails.
pub fn max_fully_read(base: &MacScenario, step: u64) -> Result<u64> {
    base.validate()?;
    let step = step.max(1);
    let mut best = 0;
    let mut n = 1;
    while n <= base.slots_available() {
        let sc = MacScenario { n_motes: n, ..*base };
        if trial_successes(&sc)?.iter().any(|&s| s < n) {
            break;
        }
        best = n;
        n += step;
    }
    Ok(best)
}

/// One row of the read-time/rate sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scenario1Row {
    pub rate_bps: f64,
    pub read_time_s: f64,
    pub packet_bytes: u32,
    pub max_motes: u64,
}

/// Maximum fully-read mote count for every (rate, read time) pair, mote
/// counts stepping by 10 from 1.
pub fn scenario1_sweep(
    rates_bps: &[f64],
    read_times_s: &[f64],
    packet_bytes: u32,
    frame_slots: u32,
    trials: u32,
    seed: u64,
) -> Result<Vec<Scenario1Row>> {
    let mut rows = Vec::with_capacity(rates_bps.len() * read_times_s.len());
    for &rate_bps in rates_bps {
        for &read_time_s in read_times_s {
            let base = MacScenario { n_motes: 1, rate_bps, packet_bytes, read_time_s, frame_slots, trials, seed };
            rows.push(Scenario1Row { rate_bps, read_time_s, packet_bytes, max_motes: max_fully_read(&base, 10)? });
        }
    }
    Ok(rows)
}

/// One row of the deployment sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scenario2Row {
    pub n_motes: u64,
    pub rate_bps: f64,
    pub read_time_s: f64,
    pub mean_successes: MeanEstimate,
}

/// Mean successes for each deployed mote count at each (rate, read time).
pub fn scenario2_sweep(
    n_motes_list: &[u64],
    rates_bps: &[f64],
    read_times_s: &[f64],
    packet_bytes: u32,
    frame_slots: u32,
    trials: u32,
    seed: u64,
) -> Result<Vec<Scenario2Row>> {
    let mut rows = Vec::new();
    for &rate_bps in rates_bps {
        for &read_time_s in read_times_s {
            for &n_motes in n_motes_list {
                let sc = MacScenario { n_motes, rate_bps, packet_bytes, read_time_s, frame_slots, trials, seed };
                rows.push(Scenario2Row { n_motes, rate_bps, read_time_s, mean_successes: aloha_mean(&sc)? });
            }
        }
    }
    Ok(rows)
}

/// The deployed count with the highest mean successes (first on ties).
pub fn scenario2_optimum(rows: &[Scenario2Row]) -> Option<&Scenario2Row> {
    rows.iter().fold(None, |best: Option<&Scenario2Row>, r| match best {
        Some(b) if b.mean_successes.mean >= r.mean_successes.mean => Some(b),
        _ => Some(r),
    })
}
