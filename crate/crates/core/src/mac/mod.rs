//! Medium access for many motes sharing one reader.
//!
//! * [`binary_tree_iterations`]: expected tree-walk length to isolate a mote.
//! * [`aloha`]: framed slotted ALOHA and the read-time/deployment sweeps.
//! * [`cdma`]: synchronous CDMA with static spreading codes.
//! * [`compare`]: ALOHA against CDMA at equal airtime.

pub mod aloha;
pub mod cdma;
pub mod compare;

pub use aloha::{
    aloha_mean, aloha_simulate, max_fully_read, scenario1_sweep, scenario2_optimum, scenario2_sweep, AlohaOutcome,
    Scenario1Row, Scenario2Row,
};
pub use cdma::{cdma_simulate, SpreadingCode, SpreadingFamily};
pub use compare::{compare_schemes, ComparisonRow, ComparisonSetup, Scheme};

use std::f64::consts::PI;

use crate::error::{ensure_positive, Error, Result};

/// Average iterations for a binary tree walk to single out one of `n`
/// motes: log2(n) + 1.
pub fn binary_tree_iterations(n: u64) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain("binary tree selection needs at least one mote".into()));
    }
    Ok((n as f64).ln() / 2f64.ln() + 1.0)
}

/// One ALOHA read session.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MacScenario {
    pub n_motes: u64,
    /// Mote transmit rate, bit/s.
    pub rate_bps: f64,
    pub packet_bytes: u32,
    /// Time the reader listens, s.
    pub read_time_s: f64,
    pub frame_slots: u32,
    pub trials: u32,
    pub seed: u64,
}

impl MacScenario {
    pub fn validate(&self) -> Result<()> {
        ensure_positive("rate_bps", self.rate_bps)?;
        if !(self.read_time_s.is_finite() && self.read_time_s >= 0.0) {
            return Err(Error::Domain(format!("read time must be >= 0, got {}", self.read_time_s)));
        }
        if self.packet_bytes == 0 {
            return Err(Error::Domain("packet must be at least one byte".into()));
        }
        if self.frame_slots == 0 {
            return Err(Error::Domain("frame must have at least one slot".into()));
        }
        if self.trials == 0 {
            return Err(Error::Domain("at least one trial is required".into()));
        }
        Ok(())
    }

    pub fn packet_bits(&self) -> u64 {
        self.packet_bytes as u64 * 8
    }

    /// Airtime of one packet, s.
    pub fn slot_duration(&self) -> f64 {
        self.packet_bits() as f64 / self.rate_bps
    }

    /// Whole slots that fit in the read time; the remainder is discarded.
    pub fn slots_available(&self) -> u64 {
        // The small offset keeps exact multiples such as 128 × 25.6 ms from
        // rounding down.
        (self.read_time_s * self.rate_bps / self.packet_bits() as f64 + 1e-9).floor() as u64
    }

    /// Read time needed for exactly `slots` slots.
    pub fn read_time_for_slots(slots: u64, packet_bytes: u32, rate_bps: f64) -> f64 {
        slots as f64 * (packet_bytes as u64 * 8) as f64 / rate_bps
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZoneShape {
    Hemisphere,
    Sphere,
}

/// Body volume and the reader's interrogation zone.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeploymentGeometry {
    pub body_volume_cm3: f64,
    pub zone_radius_cm: f64,
    pub zone_shape: ZoneShape,
}

impl DeploymentGeometry {
    /// Average adult body volume, cm³.
    pub const BODY_VOLUME_CM3: f64 = 6.643e5;
    /// Reliable read range, cm.
    pub const ZONE_RADIUS_CM: f64 = 5.0;

    pub fn zone_volume_cm3(&self) -> f64 {
        let sphere = 4.0 / 3.0 * PI * self.zone_radius_cm.powi(3);
        match self.zone_shape {
            ZoneShape::Sphere => sphere,
            ZoneShape::Hemisphere => sphere / 2.0,
        }
    }

    /// Number of interrogation zones that tile the body.
    pub fn zones(&self) -> f64 {
        self.body_volume_cm3 / self.zone_volume_cm3()
    }
}

impl Default for DeploymentGeometry {
    fn default() -> Self {
        Self {
            body_volume_cm3: Self::BODY_VOLUME_CM3,
            zone_radius_cm: Self::ZONE_RADIUS_CM,
            zone_shape: ZoneShape::Hemisphere,
        }
    }
}

/// Body-wide mote count when every zone holds `zone_successes` motes.
pub fn global_recommendation(zone_successes: u64, geom: &DeploymentGeometry) -> Result<u64> {
    ensure_positive("body volume", geom.body_volume_cm3)?;
    ensure_positive("zone radius", geom.zone_radius_cm)?;
    Ok((zone_successes as f64 * geom.zones()).round() as u64)
}
