//! `key = value` parameter files.
//!
//! One assignment per line, `#` starts a comment, blank lines are ignored.
//! Units are part of the key name. Lists are comma separated; an integer
//! list may also use `start:step:stop` (inclusive). Unknown keys, malformed
//! lines and out-of-range values are errors that carry the line number.

use std::fmt::Display;
use std::str::FromStr;

use num_complex::Complex64;

use crate::fec::CodeScheme;
use crate::link::{reference, Coil, CoilKind, LinkConfig, LoadImpedance, NoiseModel, MOTE_MAX_DIMENSION};
use crate::mac::cdma::CODE_LENGTHS;
use crate::mac::SpreadingFamily;
use crate::phy::{ModScheme, PhyConfig};

/// Every accepted key with a one-line description.
pub const KEYS: &[(&str, &str)] = &[
    ("reader_turns", "reader coil turns"),
    ("reader_radius_m", "reader loop radius"),
    ("reader_wire_diameter_m", "reader conductor diameter"),
    ("reader_height_m", "reader winding length"),
    ("reader_resistivity_ohm_m", "reader conductor resistivity"),
    ("mote_turns", "mote coil turns"),
    ("mote_radius_m", "mote loop radius (<= 125e-6)"),
    ("mote_wire_diameter_m", "mote conductor diameter"),
    ("mote_height_m", "mote winding length (<= 250e-6)"),
    ("mote_resistivity_ohm_m", "mote conductor resistivity"),
    ("separation_m", "reader-mote distance for table1"),
    ("drive_voltage_v", "reader drive amplitude"),
    ("resonance_freq_hz", "tank resonance f_c"),
    ("subcarrier_divider", "subcarrier f_s = f_c / 2^n"),
    ("load_impedance_ohm", "'matched', 're' or 're,im'"),
    ("mu", "relative permeability of cores and medium"),
    ("noise_total_dbm", "total noise power (default -105)"),
    ("noise_figure_db", "receiver noise figure; replaces noise_total_dbm"),
    ("noise_temperature_k", "noise temperature"),
    ("noise_bandwidth_hz", "noise bandwidth"),
    ("sweep_start_m", "first distance of link/ber sweeps"),
    ("sweep_stop_m", "last distance of link/ber sweeps"),
    ("sweep_step_m", "distance step"),
    ("table1_freqs_hz", "resonance frequencies for table1"),
    ("table1_dividers", "subcarrier divider per table1 frequency"),
    ("table1_mu", "permeabilities for table1"),
    ("ber_schemes", "modulation:code pairs, e.g. bpsk:rs"),
    ("ber_max_bits", "information-bit budget per point"),
    ("ber_min_errors", "stop after this many bit errors"),
    ("packet_bytes", "mote packet size"),
    ("frame_slots", "ALOHA frame length for the scenarios"),
    ("trials", "Monte Carlo trials per MAC point"),
    ("rates_bps", "mote bit rates for the scenarios"),
    ("read_times_s", "read windows for the scenarios"),
    ("scenario2_n_motes", "deployed mote counts for mac-scenario2"),
    ("cdma_n_motes", "mote counts for mac-cdma"),
    ("cdma_code_lengths", "spreading code lengths for mac-cdma"),
    ("cdma_families", "random and/or walsh"),
    ("compare_n_motes", "mote counts for mac-compare"),
    ("compare_durations_slots", "read windows for mac-compare, in slots"),
    ("compare_rate_bps", "bit rate for mac-compare"),
    ("compare_code_length", "CDMA code length and ALOHA frame for mac-compare"),
    ("compare_family", "CDMA code family for mac-compare"),
];

/// All simulation parameters, defaulting to the reference link and the
/// standard sweeps.
#[derive(Debug, Clone, PartialEq)]
pub struct Params {
    pub reader_turns: u32,
    pub reader_radius_m: f64,
    pub reader_wire_diameter_m: f64,
    pub reader_height_m: f64,
    pub reader_resistivity_ohm_m: f64,
    pub mote_turns: u32,
    pub mote_radius_m: f64,
    pub mote_wire_diameter_m: f64,
    pub mote_height_m: f64,
    pub mote_resistivity_ohm_m: f64,
    pub separation_m: f64,
    pub drive_voltage_v: f64,
    pub resonance_freq_hz: f64,
    pub subcarrier_divider: u32,
    pub load_impedance: LoadImpedance,
    pub mu: f64,
    pub noise_total_dbm: Option<f64>,
    pub noise_figure_db: Option<f64>,
    pub noise_temperature_k: f64,
    pub noise_bandwidth_hz: f64,
    pub sweep_start_m: f64,
    pub sweep_stop_m: f64,
    pub sweep_step_m: f64,
    pub table1_freqs_hz: Vec<f64>,
    pub table1_dividers: Vec<u32>,
    pub table1_mu: Vec<f64>,
    pub ber_schemes: Vec<(ModScheme, CodeScheme)>,
    pub ber_max_bits: u64,
    pub ber_min_errors: u64,
    pub packet_bytes: u32,
    pub frame_slots: u32,
    pub trials: u32,
    pub rates_bps: Vec<f64>,
    pub read_times_s: Vec<f64>,
    pub scenario2_n_motes: Vec<u64>,
    pub cdma_n_motes: Vec<u64>,
    pub cdma_code_lengths: Vec<usize>,
    pub cdma_families: Vec<SpreadingFamily>,
    pub compare_n_motes: Vec<u64>,
    pub compare_durations_slots: Vec<u64>,
    pub compare_rate_bps: f64,
    pub compare_code_length: u32,
    pub compare_family: SpreadingFamily,
}

impl Default for Params {
    fn default() -> Self {
        let reader = reference::reader_coil();
        let mote = reference::mote_coil();
        Self {
            reader_turns: reader.turns,
            reader_radius_m: reader.loop_radius,
            reader_wire_diameter_m: reader.wire_diameter,
            reader_height_m: reader.coil_height,
            reader_resistivity_ohm_m: reader.resistivity,
            mote_turns: mote.turns,
            mote_radius_m: mote.loop_radius,
            mote_wire_diameter_m: mote.wire_diameter,
            mote_height_m: mote.coil_height,
            mote_resistivity_ohm_m: mote.resistivity,
            separation_m: reference::REFERENCE_SEPARATION,
            drive_voltage_v: reference::DRIVE_VOLTAGE,
            resonance_freq_hz: reference::TABLE3_RESONANCE,
            subcarrier_divider: reference::TABLE3_DIVIDER,
            load_impedance: LoadImpedance::Matched,
            mu: 1.0,
            noise_total_dbm: None,
            noise_figure_db: None,
            noise_temperature_k: NoiseModel::REFERENCE_TEMPERATURE,
            noise_bandwidth_hz: NoiseModel::REFERENCE_BANDWIDTH,
            sweep_start_m: 0.01,
            sweep_stop_m: 0.10,
            sweep_step_m: 0.01,
            table1_freqs_hz: vec![1e6, 13.56e6, 100e6],
            table1_dividers: vec![4, 6, 7],
            table1_mu: vec![1.0, 10.0, 50.0],
            ber_schemes: vec![
                (ModScheme::Ask, CodeScheme::None),
                (ModScheme::Bpsk, CodeScheme::None),
                (ModScheme::Bpsk, CodeScheme::Hamming15_11),
                (ModScheme::Bpsk, CodeScheme::Rs31_26),
            ],
            ber_max_bits: PhyConfig::DEFAULT_MAX_BITS,
            ber_min_errors: PhyConfig::DEFAULT_MIN_ERRORS,
            packet_bytes: 64,
            frame_slots: 16,
            trials: 100,
            rates_bps: vec![25e3, 50e3, 100e3, 150e3, 200e3],
            read_times_s: vec![2.0, 4.0, 6.0, 8.0, 10.0],
            scenario2_n_motes: (1..=30).map(|k| 10 * k).collect(),
            cdma_n_motes: vec![1, 2, 3, 4, 5, 6, 8, 10, 12, 15, 20, 25, 30, 40, 50, 60, 80, 100],
            cdma_code_lengths: CODE_LENGTHS.to_vec(),
            cdma_families: vec![SpreadingFamily::Random],
            compare_n_motes: (1..=20).map(|k| 10 * k).collect(),
            compare_durations_slots: vec![128, 1280],
            compare_rate_bps: 20e3,
            compare_code_length: 128,
            compare_family: SpreadingFamily::Walsh,
        }
    }
}

fn parse_scalar<T: FromStr>(value: &str) -> Result<T, String>
where
    T::Err: Display,
{
    value.trim().parse::<T>().map_err(|e| format!("cannot parse '{}': {e}", value.trim()))
}

fn finite(value: &str) -> Result<f64, String> {
    let x: f64 = parse_scalar(value)?;
    if x.is_finite() {
        Ok(x)
    } else {
        Err(format!("'{}' is not a finite number", value.trim()))
    }
}

fn positive(value: &str) -> Result<f64, String> {
    let x = finite(value)?;
    if x > 0.0 {
        Ok(x)
    } else {
        Err(format!("must be > 0, got {x}"))
    }
}

fn at_most(x: f64, limit: f64) -> Result<f64, String> {
    if x <= limit * (1.0 + 1e-12) {
        Ok(x)
    } else {
        Err(format!("must be <= {limit:e}, got {x:e}"))
    }
}

fn count<T: FromStr + PartialOrd + From<u8> + Display>(value: &str) -> Result<T, String>
where
    T::Err: Display,
{
    let x: T = parse_scalar(value)?;
    if x >= T::from(1) {
        Ok(x)
    } else {
        Err(format!("must be >= 1, got {x}"))
    }
}

fn list<T>(value: &str, item: impl Fn(&str) -> Result<T, String>) -> Result<Vec<T>, String> {
    let items: Vec<T> =
        value.split(',').map(str::trim).filter(|s| !s.is_empty()).map(&item).collect::<Result<_, _>>()?;
    if items.is_empty() {
        return Err("list must not be empty".into());
    }
    Ok(items)
}

fn int_list(value: &str) -> Result<Vec<u64>, String> {
    if value.contains(':') {
        let parts: Vec<&str> = value.split(':').collect();
        let [start, step, stop] = parts[..] else {
            return Err(format!("range must be start:step:stop, got '{}'", value.trim()));
        };
        let (start, step, stop): (u64, u64, u64) = (count(start)?, count(step)?, parse_scalar(stop)?);
        if stop < start {
            return Err(format!("range stop {stop} is below start {start}"));
        }
        return Ok((start..=stop).step_by(step as usize).collect());
    }
    list(value, count::<u64>)
}

fn load_impedance(value: &str) -> Result<LoadImpedance, String> {
    let v = value.trim();
    if v.eq_ignore_ascii_case("matched") {
        return Ok(LoadImpedance::Matched);
    }
    let parts: Vec<f64> = v.split(',').map(finite).collect::<Result<_, _>>()?;
    let z = match parts[..] {
        [re] => Complex64::new(re, 0.0),
        [re, im] => Complex64::new(re, im),
        _ => return Err(format!("expected 'matched', 're' or 're,im', got '{v}'")),
    };
    if z.re < 0.0 {
        return Err(format!("load resistance must be >= 0, got {}", z.re));
    }
    Ok(LoadImpedance::Fixed(z))
}

fn scheme_pair(value: &str) -> Result<(ModScheme, CodeScheme), String> {
    let (m, c) = value.split_once(':').ok_or_else(|| format!("expected modulation:code, got '{value}'"))?;
    Ok((m.parse().map_err(|e: crate::Error| e.to_string())?, c.parse().map_err(|e: crate::Error| e.to_string())?))
}

fn code_length(value: &str) -> Result<usize, String> {
    let len: usize = parse_scalar(value)?;
    if CODE_LENGTHS.contains(&len) {
        Ok(len)
    } else {
        Err(format!("code length must be one of {CODE_LENGTHS:?}, got {len}"))
    }
}

fn family(value: &str) -> Result<SpreadingFamily, String> {
    value.parse().map_err(|e: crate::Error| e.to_string())
}

impl Params {
    /// Assigns one key. The error text does not include the key or line.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), String> {
        match key {
            "reader_turns" => self.reader_turns = count(value)?,
            "reader_radius_m" => self.reader_radius_m = positive(value)?,
            "reader_wire_diameter_m" => self.reader_wire_diameter_m = positive(value)?,
            "reader_height_m" => self.reader_height_m = positive(value)?,
            "reader_resistivity_ohm_m" => self.reader_resistivity_ohm_m = positive(value)?,
            "mote_turns" => self.mote_turns = count(value)?,
            "mote_radius_m" => self.mote_radius_m = at_most(positive(value)?, MOTE_MAX_DIMENSION / 2.0)?,
            "mote_wire_diameter_m" => self.mote_wire_diameter_m = positive(value)?,
            "mote_height_m" => self.mote_height_m = at_most(positive(value)?, MOTE_MAX_DIMENSION)?,
            "mote_resistivity_ohm_m" => self.mote_resistivity_ohm_m = positive(value)?,
            "separation_m" => self.separation_m = positive(value)?,
            "drive_voltage_v" => self.drive_voltage_v = positive(value)?,
            "resonance_freq_hz" => self.resonance_freq_hz = positive(value)?,
            "subcarrier_divider" => {
                let n: u32 = count(value)?;
                if n > 30 {
                    return Err(format!("must be <= 30, got {n}"));
                }
                self.subcarrier_divider = n;
            }
            "load_impedance_ohm" => self.load_impedance = load_impedance(value)?,
            "mu" => self.mu = positive(value)?,
            "noise_total_dbm" => {
                if self.noise_figure_db.is_some() {
                    return Err("conflicts with noise_figure_db; set only one".into());
                }
                self.noise_total_dbm = Some(finite(value)?);
            }
            "noise_figure_db" => {
                if self.noise_total_dbm.is_some() {
                    return Err("conflicts with noise_total_dbm; set only one".into());
                }
                let nf = finite(value)?;
                if nf < 0.0 {
                    return Err(format!("must be >= 0, got {nf}"));
                }
                self.noise_figure_db = Some(nf);
            }
            "noise_temperature_k" => self.noise_temperature_k = positive(value)?,
            "noise_bandwidth_hz" => self.noise_bandwidth_hz = positive(value)?,
            "sweep_start_m" => self.sweep_start_m = positive(value)?,
            "sweep_stop_m" => self.sweep_stop_m = positive(value)?,
            "sweep_step_m" => self.sweep_step_m = positive(value)?,
            "table1_freqs_hz" => self.table1_freqs_hz = list(value, positive)?,
            "table1_dividers" => self.table1_dividers = list(value, count::<u32>)?,
            "table1_mu" => self.table1_mu = list(value, positive)?,
            "ber_schemes" => self.ber_schemes = list(value, scheme_pair)?,
            "ber_max_bits" => self.ber_max_bits = count(value)?,
            "ber_min_errors" => self.ber_min_errors = count(value)?,
            "packet_bytes" => self.packet_bytes = count(value)?,
            "frame_slots" => self.frame_slots = count(value)?,
            "trials" => self.trials = count(value)?,
            "rates_bps" => self.rates_bps = list(value, positive)?,
            "read_times_s" => self.read_times_s = list(value, positive)?,
            "scenario2_n_motes" => self.scenario2_n_motes = int_list(value)?,
            "cdma_n_motes" => self.cdma_n_motes = int_list(value)?,
            "cdma_code_lengths" => self.cdma_code_lengths = list(value, code_length)?,
            "cdma_families" => self.cdma_families = list(value, family)?,
            "compare_n_motes" => self.compare_n_motes = int_list(value)?,
            "compare_durations_slots" => self.compare_durations_slots = int_list(value)?,
            "compare_rate_bps" => self.compare_rate_bps = positive(value)?,
            "compare_code_length" => self.compare_code_length = code_length(value)? as u32,
            "compare_family" => self.compare_family = family(value)?,
            _ => return Err("unknown key".into()),
        }
        Ok(())
    }

    /// Parses `text` on top of the defaults. `origin` prefixes error
    /// messages (normally the file path).
    pub fn parse(text: &str, origin: &str) -> Result<Self, String> {
        let mut params = Self::default();
        params.apply_text(text, origin)?;
        Ok(params)
    }

    pub fn apply_text(&mut self, text: &str, origin: &str) -> Result<(), String> {
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let lineno = idx + 1;
            let Some((key, value)) = line.split_once('=') else {
                return Err(format!("{origin}:{lineno}: expected 'key = value', got '{line}'"));
            };
            let key = key.trim();
            self.set(key, value).map_err(|e| format!("{origin}:{lineno}: {key}: {e}"))?;
        }
        self.check().map_err(|e| format!("{origin}: {e}"))
    }

    /// Applies a `key=value` override.
    pub fn apply_override(&mut self, assignment: &str) -> Result<(), String> {
        let (key, value) =
            assignment.split_once('=').ok_or_else(|| format!("--set {assignment}: expected key=value"))?;
        let key = key.trim();
        self.set(key, value).map_err(|e| format!("--set {key}: {e}"))?;
        self.check().map_err(|e| format!("--set {key}: {e}"))
    }

    /// Cross-key consistency checks.
    pub fn check(&self) -> Result<(), String> {
        if self.sweep_stop_m < self.sweep_start_m {
            return Err(format!(
                "sweep_stop_m ({}) is below sweep_start_m ({})",
                self.sweep_stop_m, self.sweep_start_m
            ));
        }
        if (self.sweep_stop_m - self.sweep_start_m) / self.sweep_step_m > 100_000.0 {
            return Err("sweep has more than 100000 points".into());
        }
        if self.table1_dividers.len() != self.table1_freqs_hz.len() {
            return Err(format!(
                "table1_dividers has {} entries but table1_freqs_hz has {}",
                self.table1_dividers.len(),
                self.table1_freqs_hz.len()
            ));
        }
        self.link_config().validate().map_err(|e| format!("link parameters: {e}"))?;
        Ok(())
    }

    pub fn reader_coil(&self) -> Coil {
        Coil {
            kind: CoilKind::Reader,
            turns: self.reader_turns,
            loop_radius: self.reader_radius_m,
            wire_diameter: self.reader_wire_diameter_m,
            coil_height: self.reader_height_m,
            resistivity: self.reader_resistivity_ohm_m,
            core_rel_permeability: 1.0,
        }
    }

    pub fn mote_coil(&self) -> Coil {
        Coil {
            kind: CoilKind::Mote,
            turns: self.mote_turns,
            loop_radius: self.mote_radius_m,
            wire_diameter: self.mote_wire_diameter_m,
            coil_height: self.mote_height_m,
            resistivity: self.mote_resistivity_ohm_m,
            core_rel_permeability: 1.0,
        }
    }

    /// Link at `separation_m` with `mu` applied to both cores and the medium.
    pub fn link_config(&self) -> LinkConfig {
        LinkConfig {
            reader: self.reader_coil(),
            mote: self.mote_coil(),
            separation: self.separation_m,
            drive_voltage: self.drive_voltage_v,
            resonance_freq: self.resonance_freq_hz,
            subcarrier_divider: self.subcarrier_divider,
            load_impedance: self.load_impedance,
            medium_rel_permeability: 1.0,
        }
        .with_permeability(self.mu)
    }

    pub fn noise_model(&self) -> Result<NoiseModel, crate::Error> {
        match self.noise_figure_db {
            Some(nf) => Ok(NoiseModel {
                temperature: self.noise_temperature_k,
                bandwidth: self.noise_bandwidth_hz,
                noise_figure: nf,
            }),
            None => NoiseModel::with_total_dbm(
                self.noise_total_dbm.unwrap_or(reference::TABLE3_NOISE_DBM),
                self.noise_temperature_k,
                self.noise_bandwidth_hz,
            ),
        }
    }

    /// Sweep distances start, start + step, … up to stop.
    pub fn distances(&self) -> Vec<f64> {
        let n = ((self.sweep_stop_m - self.sweep_start_m) / self.sweep_step_m + 1e-9).floor() as usize;
        (0..=n).map(|i| ((self.sweep_start_m + i as f64 * self.sweep_step_m) * 1e12).round() / 1e12).collect()
    }
}
