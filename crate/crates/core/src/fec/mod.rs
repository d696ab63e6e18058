//! Short block codes a mote can encode with shift registers.
//!
//! * [`hamming`]: cyclic Hamming(15,11), generator x⁴ + x + 1.
//! * [`reed_solomon`]: RS(31,26) over GF(32), first consecutive root α¹.
//!
//! Both encoders are systematic: message symbols first, parity last.
//! Codeword index 0 is the highest-degree coefficient, i.e. the first
//! symbol shifted out.

pub mod gf32;
pub mod hamming;
pub mod reed_solomon;

use crate::error::{Error, Result};

/// Forward error correction applied before modulation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CodeScheme {
    None,
    Hamming15_11,
    Rs31_26,
}

impl CodeScheme {
    pub const ALL: [CodeScheme; 3] = [CodeScheme::None, CodeScheme::Hamming15_11, CodeScheme::Rs31_26];

    /// Information bits per codeword.
    pub fn info_bits(self) -> usize {
        match self {
            CodeScheme::None => 1,
            CodeScheme::Hamming15_11 => hamming::K,
            CodeScheme::Rs31_26 => reed_solomon::K * gf32::BITS,
        }
    }

    /// Channel bits per codeword.
    pub fn coded_bits(self) -> usize {
        match self {
            CodeScheme::None => 1,
            CodeScheme::Hamming15_11 => hamming::N,
            CodeScheme::Rs31_26 => reed_solomon::N * gf32::BITS,
        }
    }

    pub fn rate(self) -> f64 {
        self.info_bits() as f64 / self.coded_bits() as f64
    }

    pub fn name(self) -> &'static str {
        match self {
            CodeScheme::None => "none",
            CodeScheme::Hamming15_11 => "hamming15_11",
            CodeScheme::Rs31_26 => "rs31_26",
        }
    }
}

impl std::str::FromStr for CodeScheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "none" | "uncoded" => Ok(CodeScheme::None),
            "hamming" | "hamming15_11" => Ok(CodeScheme::Hamming15_11),
            "rs" | "rs31_26" => Ok(CodeScheme::Rs31_26),
            other => Err(Error::Argument(format!("unknown code scheme '{other}'"))),
        }
    }
}

pub(crate) fn check_bits(bits: &[u8], len: usize, what: &str) -> Result<()> {
    if bits.len() != len {
        return Err(Error::Argument(format!("{what} must have {len} bits, got {}", bits.len())));
    }
    if let Some(b) = bits.iter().find(|&&b| b > 1) {
        return Err(Error::Argument(format!("{what} contains non-binary value {b}")));
    }
    Ok(())
}
