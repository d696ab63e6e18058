//! Inductive reader↔mote link.
//!
//! Both coils are series-tuned to the resonance frequency `f_c`. The mote
//! load-modulates at a subcarrier `f_s = f_c / 2^n`; the reader sees the
//! modulation as a change of the impedance reflected from the mote. The
//! backscattered sideband pays the one-way path loss twice plus the
//! attenuation of the reader tank at `f_c ± f_s`.
//!
//! Everything is computed in SI units; decibel values only appear in
//! [`LinkBudget`] and [`SweepPoint`].

mod coil;
pub mod reference;

pub use coil::{
    ac_resistance, mutual_inductance, self_inductance, skin_depth, tuning_capacitance, Coil, CoilKind,
    MOTE_MAX_DIMENSION, MU0, RESISTIVITY_COPPER, RESISTIVITY_GOLD,
};

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{ensure_positive, Error, Result};
use crate::stats::to_db;

/// Boltzmann constant, J/K.
pub const BOLTZMANN: f64 = 1.380_649e-23;

/// Impedance of the mote's modulating load.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum LoadImpedance {
    /// Resistive load equal to the mote coil resistance at `f_c`.
    #[default]
    Matched,
    Fixed(Complex64),
}

/// A reader/mote pair and its operating point.
#[derive(Debug, Clone, PartialEq)]
pub struct LinkConfig {
    pub reader: Coil,
    pub mote: Coil,
    /// Axial distance between the coils, m.
    pub separation: f64,
    /// Reader drive voltage, V.
    pub drive_voltage: f64,
    /// Tank resonance frequency f_c, Hz.
    pub resonance_freq: f64,
    /// Divider stages n, f_s = f_c / 2^n.
    pub subcarrier_divider: u32,
    pub load_impedance: LoadImpedance,
    /// Effective relative permeability of core, tissue and air between the coils.
    pub medium_rel_permeability: f64,
}

impl LinkConfig {
    pub fn validate(&self) -> Result<()> {
        self.reader.validate()?;
        self.mote.validate()?;
        if self.mote.kind != CoilKind::Mote {
            return Err(Error::Domain("mote coil must be flagged as a mote".into()));
        }
        ensure_positive("separation", self.separation)?;
        ensure_positive("drive_voltage", self.drive_voltage)?;
        ensure_positive("resonance_freq", self.resonance_freq)?;
        ensure_positive("medium_rel_permeability", self.medium_rel_permeability)?;
        if self.subcarrier_divider > 52 {
            return Err(Error::Domain(format!("subcarrier_divider {} too large", self.subcarrier_divider)));
        }
        let contact = self.contact_distance();
        if self.separation <= contact {
            return Err(Error::Domain(format!(
                "separation {} m is within the coil contact distance {contact} m",
                self.separation
            )));
        }
        Ok(())
    }

    /// f_s = f_c / 2^n.
    pub fn subcarrier_freq(&self) -> f64 {
        self.resonance_freq / (1u64 << self.subcarrier_divider) as f64
    }

    /// Closest approach of the two windings: the reader's winding face is
    /// treated as planar, the mote extends half its height towards it.
    pub fn contact_distance(&self) -> f64 {
        0.5 * (self.mote.coil_height + self.reader.wire_diameter)
    }

    /// Tuning capacitors (C_r, C_b) that put both tanks at `f_c`.
    pub fn tuning_capacitances(&self) -> (f64, f64) {
        (
            tuning_capacitance(self_inductance(&self.reader), self.resonance_freq),
            tuning_capacitance(self_inductance(&self.mote), self.resonance_freq),
        )
    }

    /// Sets the core permeability of both coils and of the medium, which is
    /// how the permeability rows of the reference table are defined.
    pub fn with_permeability(mut self, mu: f64) -> Self {
        self.reader.core_rel_permeability = mu;
        self.mote.core_rel_permeability = mu;
        self.medium_rel_permeability = mu;
        self
    }

    pub fn with_separation(mut self, separation: f64) -> Self {
        self.separation = separation;
        self
    }

    /// Load impedance resolved against the mote coil at `f_c`.
    pub fn load(&self) -> Result<Complex64> {
        Ok(match self.load_impedance {
            LoadImpedance::Matched => Complex64::new(ac_resistance(&self.mote, self.resonance_freq)?, 0.0),
            LoadImpedance::Fixed(z) => z,
        })
    }

    /// Series impedance of the reader tank (R_r + jωL_r + 1/(jωC_r)).
    pub fn reader_impedance(&self, freq: f64) -> Result<Complex64> {
        tank_impedance(&self.reader, freq, self.resonance_freq)
    }

    /// Series impedance of the mote tank, excluding the load.
    pub fn mote_impedance(&self, freq: f64) -> Result<Complex64> {
        tank_impedance(&self.mote, freq, self.resonance_freq)
    }

    pub fn mutual_inductance(&self) -> Result<f64> {
        mutual_inductance(&self.reader, &self.mote, self.separation, self.medium_rel_permeability)
    }
}

fn tank_impedance(coil: &Coil, freq: f64, resonance: f64) -> Result<Complex64> {
    ensure_positive("frequency", freq)?;
    let l = self_inductance(coil);
    let c = tuning_capacitance(l, resonance);
    let w = 2.0 * PI * freq;
    let x = w * l - 1.0 / (w * c);
    Ok(Complex64::new(ac_resistance(coil, freq)?, x))
}

/// Receiver noise: thermal noise kTB plus the front-end noise figure.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseModel {
    pub temperature: f64,
    pub bandwidth: f64,
    pub noise_figure: f64,
}

impl NoiseModel {
    pub const REFERENCE_TEMPERATURE: f64 = 290.0;
    pub const REFERENCE_BANDWIDTH: f64 = 200e3;

    /// A model whose total equals `total_dbm`; the noise figure absorbs the
    /// difference from kTB.
    pub fn with_total_dbm(total_dbm: f64, temperature: f64, bandwidth: f64) -> Result<Self> {
        ensure_positive("noise temperature", temperature)?;
        ensure_positive("noise bandwidth", bandwidth)?;
        let thermal = thermal_noise_dbm(temperature, bandwidth);
        Ok(Self { temperature, bandwidth, noise_figure: total_dbm - thermal })
    }

    pub fn thermal_dbm(&self) -> f64 {
        thermal_noise_dbm(self.temperature, self.bandwidth)
    }

    pub fn total_dbm(&self) -> f64 {
        self.thermal_dbm() + self.noise_figure
    }
}

fn thermal_noise_dbm(temperature: f64, bandwidth: f64) -> f64 {
    to_db(BOLTZMANN * temperature * bandwidth / 1e-3)
}

/// Impedances each side reflects into the other.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReflectedImpedance {
    /// Z_br: the mote as seen from the reader mesh.
    pub mote_on_reader: Complex64,
    /// Z_rb: the reader as seen from the mote mesh.
    pub reader_on_mote: Complex64,
}

fn checked_div(num: Complex64, den: Complex64, what: &str) -> Result<Complex64> {
    let q = num / den;
    if den.norm() <= f64::MIN_POSITIVE || !q.re.is_finite() || !q.im.is_finite() {
        return Err(Error::Singularity(format!("{what}: denominator vanishes")));
    }
    Ok(q)
}

/// Z_br = (ωM)² / (Z_b + Z_L) and Z_rb = (ωM)² / Z_r at `freq`.
pub fn reflected_impedance(config: &LinkConfig, freq: f64) -> Result<ReflectedImpedance> {
    config.validate()?;
    reflected_impedance_unchecked(config, freq)
}

fn reflected_impedance_unchecked(config: &LinkConfig, freq: f64) -> Result<ReflectedImpedance> {
    let wm = 2.0 * PI * freq * config.mutual_inductance()?;
    let wm2 = Complex64::new(wm * wm, 0.0);
    let zb = config.mote_impedance(freq)?;
    let zr = config.reader_impedance(freq)?;
    let zl = config.load()?;
    Ok(ReflectedImpedance {
        mote_on_reader: checked_div(wm2, zb + zl, "mote mesh Z_b + Z_L")?,
        reader_on_mote: checked_div(wm2, zr, "reader mesh Z_r")?,
    })
}

/// Result of a link evaluation at one separation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkBudget {
    /// Reader transmit power P_tx, dB(W).
    pub transmitted_power: f64,
    /// Backscatter power at the reader P_re, dBm.
    pub received_backscatter_power: f64,
    /// One-way path loss PL = P_t / P_r, dB.
    pub one_way_path_loss: f64,
    /// Sideband attenuation A_s, dB.
    pub sideband_attenuation: f64,
    /// Unloaded series Q of the reader tank.
    pub quality_factor: f64,
    /// Two-sided subcarrier bandwidth 2 f_s, Hz.
    pub bandwidth: f64,
    pub reader_resistance: f64,
    pub mote_resistance: f64,
    /// Power delivered to the mote load, W.
    pub mote_power: f64,
    pub noise_dbm: f64,
    /// P_re − total noise, dB.
    pub snr: f64,
}

impl LinkBudget {
    pub fn transmitted_power_dbm(&self) -> f64 {
        self.transmitted_power + 30.0
    }

    pub fn total_loss(&self) -> f64 {
        2.0 * self.one_way_path_loss + self.sideband_attenuation
    }
}

/// A_s = 10 log10(1 + (2 Q f_s / f_c)²): the series tank response at the
/// sideband f_c ± f_s.
pub fn sideband_attenuation(quality_factor: f64, subcarrier_ratio: f64) -> f64 {
    let x = 2.0 * quality_factor * subcarrier_ratio;
    to_db(1.0 + x * x)
}

/// Evaluates the round-trip backscatter budget at the configured separation.
pub fn link_budget(config: &LinkConfig, noise: &NoiseModel) -> Result<LinkBudget> {
    config.validate()?;
    let fc = config.resonance_freq;
    let w = 2.0 * PI * fc;
    let refl = reflected_impedance_unchecked(config, fc)?;
    let zr = config.reader_impedance(fc)?;
    let zb = config.mote_impedance(fc)?;
    let zl = config.load()?;
    let v = Complex64::new(config.drive_voltage, 0.0);

    let p_t = checked_div(v * v, refl.mote_on_reader + zr, "reader mesh")?.re;
    // Open-circuit voltage induced in the mote by the reader current.
    let v_rb = Complex64::new(0.0, w * config.mutual_inductance()?) * checked_div(v, zr, "reader mesh")?;
    let mote_loop = refl.reader_on_mote + zb + zl;
    if mote_loop.norm() <= f64::MIN_POSITIVE {
        return Err(Error::Singularity("mote mesh Z_rb + Z_b + Z_L vanishes".into()));
    }
    let p_r = v_rb.norm_sqr() * zl.re / mote_loop.norm_sqr();
    if !(p_t > 0.0 && p_r > 0.0) {
        return Err(Error::Domain(format!("link delivers no real power (P_t = {p_t:e} W, P_r = {p_r:e} W)")));
    }

    let r_r = zr.re;
    let r_b = zb.re;
    let q = w * self_inductance(&config.reader) / r_r;
    let ratio = config.subcarrier_freq() / fc;
    let a_s = sideband_attenuation(q, ratio);
    let pl = to_db(p_t / p_r);
    let p_tx = to_db(p_t);
    let p_re = p_tx + 30.0 - 2.0 * pl - a_s;
    let noise_dbm = noise.total_dbm();
    Ok(LinkBudget {
        transmitted_power: p_tx,
        received_backscatter_power: p_re,
        one_way_path_loss: pl,
        sideband_attenuation: a_s,
        quality_factor: q,
        bandwidth: 2.0 * config.subcarrier_freq(),
        reader_resistance: r_r,
        mote_resistance: r_b,
        mote_power: p_r,
        noise_dbm,
        snr: p_re - noise_dbm,
    })
}

/// One point of a received-power-vs-distance curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepPoint {
    pub distance: f64,
    pub received_power_dbm: f64,
    pub snr_db: f64,
}

/// Evaluates [`link_budget`] at each distance (ascending, non-empty).
pub fn backscatter_sweep(config: &LinkConfig, noise: &NoiseModel, distances: &[f64]) -> Result<Vec<SweepPoint>> {
    check_ascending(distances)?;
    distances
        .iter()
        .map(|&d| {
            let b = link_budget(&config.clone().with_separation(d), noise)?;
            Ok(SweepPoint { distance: d, received_power_dbm: b.received_backscatter_power, snr_db: b.snr })
        })
        .collect()
}

pub(crate) fn check_ascending(distances: &[f64]) -> Result<()> {
    if distances.is_empty() {
        return Err(Error::Argument("distance list is empty".into()));
    }
    if distances.windows(2).any(|w| w[1].partial_cmp(&w[0]) != Some(std::cmp::Ordering::Greater)) {
        return Err(Error::Argument("distances must be strictly ascending".into()));
    }
    Ok(())
}
