//! Baseband physical layer: ASK/BPSK mapping, AWGN and bit-error rates.
//!
//! Symbols are real baseband amplitudes with A = [`AMPLITUDE`]. Carrier and
//! subcarrier effects are not simulated; the sideband loss is already part
//! of the link budget.

mod montecarlo;

pub use montecarlo::{ber_monte_carlo, ber_vs_distance, BerEstimate, BerPoint, PhyConfig};

use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::stats::{from_db, q_function};

/// Reference amplitude A.
pub const AMPLITUDE: f64 = 1.0;

/// Load-modulation scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModScheme {
    /// On-off keying: 0 → 0, 1 → 2A.
    Ask,
    /// Antipodal: 0 → −A, 1 → +A.
    Bpsk,
}

impl ModScheme {
    pub const ALL: [ModScheme; 2] = [ModScheme::Ask, ModScheme::Bpsk];

    pub fn name(self) -> &'static str {
        match self {
            ModScheme::Ask => "ask",
            ModScheme::Bpsk => "bpsk",
        }
    }

    #[inline]
    pub fn map_bit(self, bit: u8) -> f64 {
        match (self, bit) {
            (ModScheme::Bpsk, 0) => -AMPLITUDE,
            (ModScheme::Bpsk, _) => AMPLITUDE,
            (ModScheme::Ask, 0) => 0.0,
            (ModScheme::Ask, _) => 2.0 * AMPLITUDE,
        }
    }

    /// Decision threshold; a sample at or above it decodes to 1.
    pub fn threshold(self) -> f64 {
        match self {
            ModScheme::Bpsk => 0.0,
            ModScheme::Ask => AMPLITUDE,
        }
    }

    #[inline]
    pub fn decide(self, sample: f64) -> u8 {
        (sample >= self.threshold()) as u8
    }

    /// Average symbol energy for equiprobable bits: A² for BPSK, 2A² for
    /// on-off keying with levels {0, 2A}.
    pub fn average_energy(self) -> f64 {
        match self {
            ModScheme::Bpsk => AMPLITUDE * AMPLITUDE,
            ModScheme::Ask => 2.0 * AMPLITUDE * AMPLITUDE,
        }
    }
}

impl std::str::FromStr for ModScheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "ask" | "ook" => Ok(ModScheme::Ask),
            "bpsk" => Ok(ModScheme::Bpsk),
            other => Err(Error::Argument(format!("unknown modulation '{other}'"))),
        }
    }
}

pub fn modulate(bits: &[u8], scheme: ModScheme) -> Vec<f64> {
    bits.iter().map(|&b| scheme.map_bit(b)).collect()
}

/// Threshold detection; ties go to 1.
pub fn demodulate(symbols: &[f64], scheme: ModScheme) -> Vec<u8> {
    symbols.iter().map(|&s| scheme.decide(s)).collect()
}

/// Noise standard deviation giving per-sample SNR `snr_db` at symbol
/// energy `energy`.
pub fn noise_sigma(energy: f64, snr_db: f64) -> f64 {
    (energy / from_db(snr_db)).sqrt()
}

/// Adds white Gaussian noise of variance Es / 10^(snr/10), where Es is the
/// empirical mean energy of `symbols`.
pub fn awgn<R: Rng + ?Sized>(symbols: &[f64], snr_db: f64, rng: &mut R) -> Result<Vec<f64>> {
    if symbols.is_empty() {
        return Ok(Vec::new());
    }
    let energy = symbols.iter().map(|s| s * s).sum::<f64>() / symbols.len() as f64;
    awgn_at_energy(symbols, energy, snr_db, rng)
}

/// As [`awgn`], with the reference symbol energy given explicitly.
pub fn awgn_at_energy<R: Rng + ?Sized>(symbols: &[f64], energy: f64, snr_db: f64, rng: &mut R) -> Result<Vec<f64>> {
    if snr_db.is_nan() || snr_db == f64::NEG_INFINITY {
        return Err(Error::Domain(format!("SNR must be a finite dB value or +inf, got {snr_db}")));
    }
    let sigma = noise_sigma(energy, snr_db);
    if sigma == 0.0 {
        return Ok(symbols.to_vec());
    }
    Ok(symbols.iter().map(|&s| s + sigma * rng.sample::<f64, _>(StandardNormal)).collect())
}

/// Closed-form uncoded bit-error rate at the given Eb/N0 (dB).
pub fn ber_theory(scheme: ModScheme, ebn0_db: f64) -> f64 {
    let ebn0 = from_db(ebn0_db);
    match scheme {
        ModScheme::Bpsk => q_function((2.0 * ebn0).sqrt()),
        ModScheme::Ask => q_function(ebn0.sqrt()),
    }
}
