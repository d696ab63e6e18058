//! Synchronous CDMA with static spreading codes.
//!
//! All motes start together and transmit at equal power; the only
//! impairment is multiple-access interference. Mote j's despread statistic
//! for bit k is y_jk = Σ_i ρ_ji b_ik, with ρ_ji = ⟨c_j, c_i⟩ the code
//! cross-correlation and b_ik ∈ {±1}. The receiver decides +1 when
//! y_jk ≥ 0. A mote succeeds only if its whole packet is error-free.

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::seed::{rng_for, SimRng};
use crate::stats::MeanEstimate;

/// Code lengths the simulator supports.
pub const CODE_LENGTHS: [usize; 5] = [16, 32, 64, 128, 256];
const WORDS: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpreadingFamily {
    /// Independent fair ±1 chips per mote.
    Random,
    /// Rows of a Sylvester Hadamard matrix. The first C motes receive
    /// distinct rows in random order; further motes reuse rows chosen
    /// uniformly at random.
    Walsh,
}

impl SpreadingFamily {
    pub fn name(self) -> &'static str {
        match self {
            SpreadingFamily::Random => "random",
            SpreadingFamily::Walsh => "walsh",
        }
    }
}

impl std::str::FromStr for SpreadingFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "random" => Ok(SpreadingFamily::Random),
            "walsh" | "orthogonal" => Ok(SpreadingFamily::Walsh),
            other => Err(Error::Argument(format!("unknown spreading family '{other}'"))),
        }
    }
}

/// A ±1 chip sequence packed one bit per chip (set bit = +1).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpreadingCode {
    words: [u64; WORDS],
    len: usize,
}

impl SpreadingCode {
    pub fn from_chips(chips: &[i8]) -> Result<Self> {
        check_length(chips.len())?;
        let mut words = [0u64; WORDS];
        for (k, &c) in chips.iter().enumerate() {
            match c {
                1 => words[k / 64] |= 1 << (k % 64),
                -1 => {}
                other => return Err(Error::Argument(format!("chip must be ±1, got {other}"))),
            }
        }
        Ok(Self { words, len: chips.len() })
    }

    /// Row `index` of the Sylvester Hadamard matrix of order `len`:
    /// chip k is (−1)^popcount(index & k).
    pub fn walsh(index: usize, len: usize) -> Result<Self> {
        check_length(len)?;
        if index >= len {
            return Err(Error::Argument(format!("Walsh index {index} out of range for length {len}")));
        }
        let mut words = [0u64; WORDS];
        for k in 0..len {
            if (index & k).count_ones().is_multiple_of(2) {
                words[k / 64] |= 1 << (k % 64);
            }
        }
        Ok(Self { words, len })
    }

    pub fn random<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Result<Self> {
        check_length(len)?;
        let mut words = [0u64; WORDS];
        for (w, word) in words.iter_mut().enumerate().take(len.div_ceil(64)) {
            let valid = (len - 64 * w).min(64);
            let mask = if valid == 64 { u64::MAX } else { (1u64 << valid) - 1 };
            *word = rng.random::<u64>() & mask;
        }
        Ok(Self { words, len })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn chips(&self) -> Vec<i8> {
        (0..self.len).map(|k| if self.words[k / 64] >> (k % 64) & 1 == 1 { 1 } else { -1 }).collect()
    }

    /// ⟨a, b⟩ = C − 2·(number of differing chips).
    pub fn correlate(&self, other: &Self) -> i32 {
        debug_assert_eq!(self.len, other.len);
        let diff: u32 = self.words.iter().zip(&other.words).map(|(a, b)| (a ^ b).count_ones()).sum();
        self.len as i32 - 2 * diff as i32
    }
}

fn check_length(len: usize) -> Result<()> {
    if !CODE_LENGTHS.contains(&len) {
        return Err(Error::Argument(format!("code length must be one of {CODE_LENGTHS:?}, got {len}")));
    }
    Ok(())
}

/// Codes for `n` motes drawn from `family`.
pub fn assign_codes<R: Rng + ?Sized>(
    n: usize,
    family: SpreadingFamily,
    len: usize,
    rng: &mut R,
) -> Result<Vec<SpreadingCode>> {
    check_length(len)?;
    match family {
        SpreadingFamily::Random => (0..n).map(|_| SpreadingCode::random(len, rng)).collect(),
        SpreadingFamily::Walsh => {
            let mut order: Vec<usize> = (0..len).collect();
            order.shuffle(rng);
            (0..n)
                .map(|i| {
                    let row = if i < len { order[i] } else { rng.random_range(0..len) };
                    SpreadingCode::walsh(row, len)
                })
                .collect()
        }
    }
}

/// Packet bits as ±1, one row per mote.
fn draw_bits(n: usize, packet_bits: usize, rng: &mut SimRng) -> Vec<Vec<i8>> {
    (0..n).map(|_| (0..packet_bits).map(|_| if rng.random::<bool>() { 1 } else { -1 }).collect()).collect()
}

fn draw_trial(
    n: usize,
    family: SpreadingFamily,
    len: usize,
    packet_bits: usize,
    rng: &mut SimRng,
) -> Result<(Vec<SpreadingCode>, Vec<Vec<i8>>)> {
    let codes = assign_codes(n, family, len, rng)?;
    let bits = draw_bits(n, packet_bits, rng);
    Ok((codes, bits))
}

/// Number of motes whose packet despreads without error.
pub fn count_successes(codes: &[SpreadingCode], bits: &[Vec<i8>]) -> usize {
    let n = codes.len();
    let len = codes.first().map_or(0, |c| c.len()) as i32;
    let packet_bits = bits.first().map_or(0, |b| b.len());
    let mut acc = vec![0i32; 64];
    (0..n)
        .filter(|&j| {
            let interferers: Vec<(usize, i32)> = (0..n)
                .filter(|&i| i != j)
                .map(|i| (i, codes[j].correlate(&codes[i])))
                .filter(|&(_, rho)| rho != 0)
                .collect();
            let own = &bits[j];
            // Bits are processed in chunks so a failed packet is abandoned early.
            for start in (0..packet_bits).step_by(64) {
                let end = (start + 64).min(packet_bits);
                let acc = &mut acc[..end - start];
                for (a, &b) in acc.iter_mut().zip(&own[start..end]) {
                    *a = len * b as i32;
                }
                for &(i, rho) in &interferers {
                    for (a, &b) in acc.iter_mut().zip(&bits[i][start..end]) {
                        *a += rho * b as i32;
                    }
                }
                let wrong = acc.iter().zip(&own[start..end]).any(|(&y, &b)| (y >= 0) != (b > 0));
                if wrong {
                    return false;
                }
            }
            true
        })
        .count()
}

/// Chip-by-chip reference receiver: builds the summed chip stream and
/// correlates it against each code. Slow; used to check [`count_successes`].
pub fn count_successes_chip_level(codes: &[SpreadingCode], bits: &[Vec<i8>]) -> usize {
    let chips: Vec<Vec<i8>> = codes.iter().map(|c| c.chips()).collect();
    let len = chips.first().map_or(0, |c| c.len());
    let packet_bits = bits.first().map_or(0, |b| b.len());
    let mut stream = vec![0i32; packet_bits * len];
    for (c, b) in chips.iter().zip(bits) {
        for k in 0..packet_bits {
            for (t, &chip) in c.iter().enumerate() {
                stream[k * len + t] += b[k] as i32 * chip as i32;
            }
        }
    }
    chips
        .iter()
        .zip(bits)
        .filter(|(c, b)| {
            (0..packet_bits).all(|k| {
                let y: i32 = c.iter().enumerate().map(|(t, &chip)| chip as i32 * stream[k * len + t]).sum();
                let decided = if y >= 0 { 1 } else { -1 };
                decided == b[k]
            })
        })
        .count()
}

/// Mean successes over `trials` independent code and data draws. Trial t
/// uses the stream derived from (seed, n_motes, t).
pub fn cdma_simulate(
    n_motes: usize,
    family: SpreadingFamily,
    code_len: usize,
    packet_bytes: u32,
    trials: u32,
    seed: u64,
) -> Result<MeanEstimate> {
    check_length(code_len)?;
    if n_motes == 0 {
        return Err(Error::Domain("CDMA needs at least one mote".into()));
    }
    if packet_bytes == 0 || trials == 0 {
        return Err(Error::Domain("packet size and trial count must be positive".into()));
    }
    let packet_bits = packet_bytes as usize * 8;
    let samples: Vec<f64> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = rng_for(seed, &[n_motes as u64, t as u64]);
            let (codes, bits) = draw_trial(n_motes, family, code_len, packet_bits, &mut rng)?;
            Ok(count_successes(&codes, &bits) as f64)
        })
        .collect::<Result<_>>()?;
    Ok(MeanEstimate::from_samples(samples))
}
