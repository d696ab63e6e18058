use std::f64::consts::PI;

use crate::error::{ensure_positive, Error, Result};

/// Vacuum permeability in H/m.
pub const MU0: f64 = 4.0e-7 * PI;

/// Resistivity of annealed copper at 20 °C, Ω·m.
pub const RESISTIVITY_COPPER: f64 = 1.68e-8;
/// Resistivity of gold at 20 °C, Ω·m.
pub const RESISTIVITY_GOLD: f64 = 2.44e-8;

/// Largest outer dimension (diameter and height) allowed for a mote coil.
pub const MOTE_MAX_DIMENSION: f64 = 250e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoilKind {
    Reader,
    Mote,
}

/// Geometry and material of one antenna coil.
///
/// The coil is a solenoid of `turns` circular turns of radius `loop_radius`
/// spread over `coil_height`, wound from round wire.
#[derive(Debug, Clone, PartialEq)]
pub struct Coil {
    pub kind: CoilKind,
    pub turns: u32,
    /// Radius of each turn, m.
    pub loop_radius: f64,
    /// Conductor diameter, m.
    pub wire_diameter: f64,
    /// Axial length of the winding, m.
    pub coil_height: f64,
    /// Conductor resistivity, Ω·m.
    pub resistivity: f64,
    /// Relative permeability of the core material.
    pub core_rel_permeability: f64,
}

impl Coil {
    pub fn validate(&self) -> Result<()> {
        if self.turns == 0 {
            return Err(Error::Domain("coil must have at least one turn".into()));
        }
        ensure_positive("loop_radius", self.loop_radius)?;
        ensure_positive("wire_diameter", self.wire_diameter)?;
        ensure_positive("coil_height", self.coil_height)?;
        ensure_positive("resistivity", self.resistivity)?;
        ensure_positive("core_rel_permeability", self.core_rel_permeability)?;
        if self.kind == CoilKind::Mote {
            if 2.0 * self.loop_radius > MOTE_MAX_DIMENSION * (1.0 + 1e-12) {
                return Err(Error::Domain(format!(
                    "mote coil diameter {:.3e} m exceeds {MOTE_MAX_DIMENSION:e} m",
                    2.0 * self.loop_radius
                )));
            }
            if self.coil_height > MOTE_MAX_DIMENSION * (1.0 + 1e-12) {
                return Err(Error::Domain(format!(
                    "mote coil height {:.3e} m exceeds {MOTE_MAX_DIMENSION:e} m",
                    self.coil_height
                )));
            }
        }
        Ok(())
    }

    /// Total conductor length, N·2πa.
    pub fn wire_length(&self) -> f64 {
        self.turns as f64 * 2.0 * PI * self.loop_radius
    }

    pub fn with_core_permeability(mut self, mu: f64) -> Self {
        self.core_rel_permeability = mu;
        self
    }
}

/// Skin depth δ = √(ρ / (π f μ0 μr)).
pub fn skin_depth(freq: f64, resistivity: f64, rel_permeability: f64) -> Result<f64> {
    ensure_positive("frequency", freq)?;
    ensure_positive("resistivity", resistivity)?;
    ensure_positive("relative permeability", rel_permeability)?;
    Ok((resistivity / (PI * freq * MU0 * rel_permeability)).sqrt())
}

/// Series resistance of the winding at `freq`.
///
/// Below the crossover (δ ≥ d/2) the full cross-section conducts; above it
/// the current is confined to an annulus of depth δ. Both branches agree at
/// δ = d/2. The conductor itself is taken as non-magnetic.
pub fn ac_resistance(coil: &Coil, freq: f64) -> Result<f64> {
    coil.validate()?;
    if !(freq.is_finite() && freq >= 0.0) {
        return Err(Error::Domain(format!("frequency must be >= 0, got {freq}")));
    }
    let radius = coil.wire_diameter / 2.0;
    let dc_area = PI * radius * radius;
    let area = if freq == 0.0 {
        dc_area
    } else {
        let delta = skin_depth(freq, coil.resistivity, 1.0)?;
        if delta >= radius {
            dc_area
        } else {
            PI * coil.wire_diameter * delta - PI * delta * delta
        }
    };
    Ok(coil.resistivity * coil.wire_length() / area)
}

/// Wheeler current-sheet inductance of a short solenoid,
/// L = μ0 μr N² π a² / (h + 0.9 a).
pub fn self_inductance(coil: &Coil) -> f64 {
    let a = coil.loop_radius;
    let n = coil.turns as f64;
    MU0 * coil.core_rel_permeability * n * n * PI * a * a / (coil.coil_height + 0.9 * a)
}

/// Coaxial mutual inductance in the magnetic-dipole approximation:
/// M = μ0 μ π N_r N_b a_r² a_b² / (2 (a_r² + r²)^{3/2}).
///
/// The larger loop is taken as the field source so the result is symmetric
/// in its two coil arguments.
pub fn mutual_inductance(reader: &Coil, mote: &Coil, separation: f64, medium_mu: f64) -> Result<f64> {
    ensure_positive("separation", separation)?;
    ensure_positive("medium permeability", medium_mu)?;
    let (big, small) = if reader.loop_radius >= mote.loop_radius { (reader, mote) } else { (mote, reader) };
    let a_big2 = big.loop_radius * big.loop_radius;
    let a_small2 = small.loop_radius * small.loop_radius;
    let turns = big.turns as f64 * small.turns as f64;
    Ok(MU0 * medium_mu * PI * turns * a_big2 * a_small2 / (2.0 * (a_big2 + separation * separation).powf(1.5)))
}

/// Capacitance resonating with `inductance` at `freq`: C = 1/((2πf)² L).
pub fn tuning_capacitance(inductance: f64, freq: f64) -> f64 {
    let w = 2.0 * PI * freq;
    1.0 / (w * w * inductance)
}
