//! Config-driven pipelines behind the `biolink` command-line tool.
//!
//! [`run`] maps a [`RunConfig`] to a CSV document. Each subcommand has a
//! fixed column set (see [`Subcommand::columns`]); numbers are written with
//! fixed precision so identical inputs give identical bytes.

pub mod config;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

pub use config::{Params, KEYS};

use crate::error::Error;
use crate::link::{backscatter_sweep, link_budget};
use crate::mac::{self, ComparisonSetup};
use crate::phy::{ber_vs_distance, PhyConfig};
use crate::seed::{derive, DEFAULT_SEED};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Subcommand {
    LinkSweep,
    Table1,
    BerSweep,
    MacScenario1,
    MacScenario2,
    MacCdma,
    MacCompare,
}

impl Subcommand {
    pub const ALL: [Subcommand; 7] = [
        Subcommand::LinkSweep,
        Subcommand::Table1,
        Subcommand::BerSweep,
        Subcommand::MacScenario1,
        Subcommand::MacScenario2,
        Subcommand::MacCdma,
        Subcommand::MacCompare,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Subcommand::LinkSweep => "link-sweep",
            Subcommand::Table1 => "table1",
            Subcommand::BerSweep => "ber-sweep",
            Subcommand::MacScenario1 => "mac-scenario1",
            Subcommand::MacScenario2 => "mac-scenario2",
            Subcommand::MacCdma => "mac-cdma",
            Subcommand::MacCompare => "mac-compare",
        }
    }

    /// CSV header columns.
    pub fn columns(self) -> &'static [&'static str] {
        match self {
            Subcommand::LinkSweep => &["distance_m", "p_re_dbm", "snr_db"],
            Subcommand::Table1 => &[
                "resonance_freq_hz",
                "mu",
                "subcarrier_divider",
                "r_r_ohm",
                "r_b_ohm",
                "p_tx_db",
                "path_loss_db",
                "sideband_atten_db",
                "p_re_dbm",
            ],
            Subcommand::BerSweep => &["distance_m", "scheme", "code", "ber", "bits"],
            Subcommand::MacScenario1 => &["rate_bps", "read_time_s", "packet_bytes", "max_motes"],
            Subcommand::MacScenario2 => &["n_motes", "rate_bps", "read_time_s", "mean_successes"],
            Subcommand::MacCdma => &["n_motes", "code_len", "family", "mean_successes"],
            Subcommand::MacCompare => &["n_motes", "duration_slots", "scheme", "mean_successes"],
        }
    }

    pub fn about(self) -> &'static str {
        match self {
            Subcommand::LinkSweep => "received backscatter power and SNR over the distance sweep",
            Subcommand::Table1 => "link budget for every table1 frequency and permeability",
            Subcommand::BerSweep => "Monte Carlo BER over the distance sweep for each ber_schemes entry",
            Subcommand::MacScenario1 => "largest fully-read mote count per rate and read time (ALOHA)",
            Subcommand::MacScenario2 => "mean ALOHA successes per deployed mote count, rate and read time",
            Subcommand::MacCdma => "mean CDMA successes per mote count, code length and family",
            Subcommand::MacCompare => "ALOHA and CDMA mean successes at equal airtime",
        }
    }
}

impl std::str::FromStr for Subcommand {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Subcommand::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Argument(format!("unknown subcommand '{s}'")))
    }
}

/// Everything needed to produce one CSV file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub subcommand: Subcommand,
    pub config_path: Option<PathBuf>,
    pub output_path: Option<PathBuf>,
    pub seed: u64,
    /// `key=value` assignments applied after the config file.
    pub overrides: Vec<String>,
}

impl RunConfig {
    pub fn new(subcommand: Subcommand) -> Self {
        Self { subcommand, config_path: None, output_path: None, seed: DEFAULT_SEED, overrides: Vec::new() }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    /// Bad config file, override or parameter value.
    #[error("config error: {0}")]
    Config(String),
    /// A module rejected the run or hit a singular configuration.
    #[error("{subcommand}: {source}")]
    Runtime { subcommand: &'static str, source: Error },
    #[error("cannot write {path}: {source}")]
    Output { path: PathBuf, source: std::io::Error },
}

impl HarnessError {
    /// Process exit status: 2 for configuration problems, 3 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Config(_) => 2,
            HarnessError::Runtime { .. } | HarnessError::Output { .. } => 3,
        }
    }
}

/// Reads and parses a parameter file.
pub fn load_config(path: &Path) -> Result<Params, HarnessError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| HarnessError::Config(format!("cannot read {}: {e}", path.display())))?;
    Params::parse(&text, &path.display().to_string()).map_err(HarnessError::Config)
}

/// Resolves the parameters of a run: defaults, then the file, then overrides.
pub fn resolve_params(cfg: &RunConfig) -> Result<Params, HarnessError> {
    let mut params = match &cfg.config_path {
        Some(path) => load_config(path)?,
        None => Params::default(),
    };
    for o in &cfg.overrides {
        params.apply_override(o).map_err(HarnessError::Config)?;
    }
    Ok(params)
}

/// Runs the pipeline and returns the CSV text.
pub fn run(cfg: &RunConfig) -> Result<String, HarnessError> {
    let params = resolve_params(cfg)?;
    run_with(cfg.subcommand, &params, cfg.seed)
        .map_err(|source| HarnessError::Runtime { subcommand: cfg.subcommand.name(), source })
}

/// Runs the pipeline and writes the CSV to `cfg.output_path` (required).
pub fn run_to_file(cfg: &RunConfig) -> Result<PathBuf, HarnessError> {
    let path = cfg.output_path.clone().ok_or_else(|| HarnessError::Config("no output path given".into()))?;
    let csv = run(cfg)?;
    std::fs::write(&path, csv).map_err(|source| HarnessError::Output { path: path.clone(), source })?;
    Ok(path)
}

fn header(sub: Subcommand) -> String {
    let mut s = sub.columns().join(",");
    s.push('\n');
    s
}

/// Runs one subcommand on already-resolved parameters.
pub fn run_with(sub: Subcommand, p: &Params, seed: u64) -> Result<String, Error> {
    let mut out = header(sub);
    match sub {
        Subcommand::LinkSweep => {
            for pt in backscatter_sweep(&p.link_config(), &p.noise_model()?, &p.distances())? {
                writeln!(out, "{:.4},{:.4},{:.4}", pt.distance, pt.received_power_dbm, pt.snr_db).unwrap();
            }
        }
        Subcommand::Table1 => {
            let noise = p.noise_model()?;
            for (&freq, &divider) in p.table1_freqs_hz.iter().zip(&p.table1_dividers) {
                for &mu in &p.table1_mu {
                    let mut link = p.link_config().with_permeability(mu);
                    link.resonance_freq = freq;
                    link.subcarrier_divider = divider;
                    let b = link_budget(&link, &noise)?;
                    writeln!(
                        out,
                        "{freq},{mu},{divider},{:.4},{:.4},{:.4},{:.4},{:.4},{:.4}",
                        b.reader_resistance,
                        b.mote_resistance,
                        b.transmitted_power,
                        b.one_way_path_loss,
                        b.sideband_attenuation,
                        b.received_backscatter_power
                    )
                    .unwrap();
                }
            }
        }
        Subcommand::BerSweep => {
            let noise = p.noise_model()?;
            let distances = p.distances();
            for (i, &(modulation, code)) in p.ber_schemes.iter().enumerate() {
                let cfg = PhyConfig {
                    modulation,
                    code,
                    max_bits: p.ber_max_bits,
                    min_errors: p.ber_min_errors,
                    seed: derive(seed, &[i as u64]),
                };
                for pt in ber_vs_distance(&p.link_config(), &noise, &cfg, &distances)? {
                    writeln!(
                        out,
                        "{:.4},{},{},{:.6e},{}",
                        pt.distance,
                        modulation.name(),
                        code.name(),
                        pt.estimate.ber,
                        pt.estimate.bits
                    )
                    .unwrap();
                }
            }
        }
        Subcommand::MacScenario1 => {
            let rows =
                mac::scenario1_sweep(&p.rates_bps, &p.read_times_s, p.packet_bytes, p.frame_slots, p.trials, seed)?;
            for r in rows {
                writeln!(out, "{},{},{},{}", r.rate_bps, r.read_time_s, r.packet_bytes, r.max_motes).unwrap();
            }
        }
        Subcommand::MacScenario2 => {
            let rows = mac::scenario2_sweep(
                &p.scenario2_n_motes,
                &p.rates_bps,
                &p.read_times_s,
                p.packet_bytes,
                p.frame_slots,
                p.trials,
                seed,
            )?;
            for r in rows {
                writeln!(out, "{},{},{},{:.4}", r.n_motes, r.rate_bps, r.read_time_s, r.mean_successes.mean).unwrap();
            }
        }
        Subcommand::MacCdma => {
            for (fi, &family) in p.cdma_families.iter().enumerate() {
                for &len in &p.cdma_code_lengths {
                    let sub_seed = derive(seed, &[fi as u64, len as u64]);
                    for &n in &p.cdma_n_motes {
                        let m = mac::cdma_simulate(n as usize, family, len, p.packet_bytes, p.trials, sub_seed)?;
                        writeln!(out, "{n},{len},{},{:.4}", family.name(), m.mean).unwrap();
                    }
                }
            }
        }
        Subcommand::MacCompare => {
            let setup = ComparisonSetup {
                rate_bps: p.compare_rate_bps,
                packet_bytes: p.packet_bytes,
                slots_per_packet: p.compare_code_length,
                family: p.compare_family,
                trials: p.trials,
                seed,
            };
            for r in mac::compare_schemes(&p.compare_n_motes, &p.compare_durations_slots, &setup)? {
                writeln!(out, "{},{},{},{:.4}", r.n_motes, r.duration_slots, r.scheme.name(), r.mean_successes.mean)
                    .unwrap();
            }
        }
    }
    Ok(out)
}
