use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use super::{noise_sigma, ModScheme};
use crate::error::{Error, Result};
use crate::fec::gf32::{Gf32, BITS};
use crate::fec::{hamming, reed_solomon, CodeScheme};
use crate::link::{check_ascending, link_budget, LinkConfig, NoiseModel};
use crate::seed::{derive, rng_for};
use crate::stats::to_db;

/// Information bits simulated per parallel batch (rounded up to whole blocks).
const BATCH_INFO_BITS: usize = 16_384;
/// Information bits per block when no code is used.
const UNCODED_BLOCK: usize = 64;
/// Largest number of batches dispatched at once.
const MAX_ROUND: usize = 64;

/// Monte Carlo settings for one modulation/code combination.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhyConfig {
    pub modulation: ModScheme,
    pub code: CodeScheme,
    /// Information-bit budget.
    pub max_bits: u64,
    /// Stop once this many information-bit errors have been seen.
    pub min_errors: u64,
    pub seed: u64,
}

impl PhyConfig {
    pub const DEFAULT_MAX_BITS: u64 = 10_000_000;
    pub const DEFAULT_MIN_ERRORS: u64 = 100;

    pub fn new(modulation: ModScheme, code: CodeScheme, seed: u64) -> Self {
        Self { modulation, code, max_bits: Self::DEFAULT_MAX_BITS, min_errors: Self::DEFAULT_MIN_ERRORS, seed }
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_bits == 0 {
            return Err(Error::Argument("bit budget must be at least 1".into()));
        }
        if self.min_errors == 0 {
            return Err(Error::Argument("min_errors must be at least 1".into()));
        }
        Ok(())
    }

    /// Information bits per simulated block.
    pub fn block_info_bits(&self) -> usize {
        match self.code {
            CodeScheme::None => UNCODED_BLOCK,
            c => c.info_bits(),
        }
    }
}

/// Bit-error-rate estimate with its Monte Carlo uncertainty.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BerEstimate {
    pub ber: f64,
    /// Standard error of `ber`, estimated from per-block error fractions.
    pub std_error: f64,
    pub bits: u64,
    pub errors: u64,
    /// The bit budget ran out before `min_errors` errors were observed.
    pub low_confidence: bool,
}

fn simulate_block<R: Rng>(cfg: &PhyConfig, sigma: f64, rng: &mut R) -> u32 {
    let m = cfg.modulation;
    let channel = |bit: u8, rng: &mut R| -> u8 {
        let noise: f64 = rng.sample(StandardNormal);
        m.decide(m.map_bit(bit) + sigma * noise)
    };
    match cfg.code {
        CodeScheme::None => {
            let word = rng.next_u64();
            let mut errors = 0;
            for i in 0..UNCODED_BLOCK {
                let bit = (word >> i & 1) as u8;
                errors += (channel(bit, rng) != bit) as u32;
            }
            errors
        }
        CodeScheme::Hamming15_11 => {
            let msg = (rng.next_u32() & 0x7FF) as u16;
            let cw = hamming::encode_word(msg);
            let mut rx = 0u16;
            for i in (0..hamming::N).rev() {
                rx = (rx << 1) | channel((cw >> i & 1) as u8, rng) as u16;
            }
            (hamming::decode_word(rx).message ^ msg).count_ones()
        }
        CodeScheme::Rs31_26 => {
            let mut msg = [Gf32::ZERO; reed_solomon::K];
            for s in msg.iter_mut() {
                *s = Gf32::new((rng.next_u32() & 0x1F) as u8).expect("5-bit value");
            }
            let cw = reed_solomon::rs_encode(&msg).expect("fixed length");
            let mut rx = [Gf32::ZERO; reed_solomon::N];
            for (r, c) in rx.iter_mut().zip(cw) {
                let mut v = 0u8;
                for i in (0..BITS).rev() {
                    v = (v << 1) | channel(c.value() >> i & 1, rng);
                }
                *r = Gf32::new(v).expect("5-bit value");
            }
            let decoded = reed_solomon::rs_decode(&rx).expect("fixed length");
            msg.iter().zip(decoded.message).map(|(a, b)| (a.value() ^ b.value()).count_ones()).sum()
        }
    }
}

/// Per-block error counts for one batch, drawn from the batch's own stream.
fn simulate_batch(cfg: &PhyConfig, sigma: f64, blocks: usize, batch: u64) -> Vec<u32> {
    let mut rng = rng_for(cfg.seed, &[batch]);
    (0..blocks).map(|_| simulate_block(cfg, sigma, &mut rng)).collect()
}

/// Monte Carlo BER of the configured chain at the given Eb/N0 (dB, per
/// information bit).
///
/// Work is split into batches with seeds derived from `cfg.seed` and the
/// batch index, and batches are consumed in index order, so the result does
/// not depend on the number of worker threads. The run stops at the block
/// in which `min_errors` is reached, or before the block that would exceed
/// `max_bits`.
pub fn ber_monte_carlo(cfg: &PhyConfig, ebn0_db: f64) -> Result<BerEstimate> {
    cfg.validate()?;
    if ebn0_db.is_nan() || ebn0_db == f64::NEG_INFINITY {
        return Err(Error::Domain(format!("Eb/N0 must be finite or +inf, got {ebn0_db}")));
    }
    let snr_db = ebn0_db + to_db(cfg.code.rate()) + to_db(2.0);
    let sigma = noise_sigma(cfg.modulation.average_energy(), snr_db);

    let block_bits = cfg.block_info_bits() as u64;
    let blocks_per_batch = BATCH_INFO_BITS.div_ceil(block_bits as usize);
    let max_blocks = cfg.max_bits / block_bits;

    let mut bits = 0u64;
    let mut errors = 0u64;
    let mut sum_frac = 0.0;
    let mut sum_frac_sq = 0.0;
    let mut next_batch = 0u64;
    let mut round = 2usize;
    let mut blocks_done = 0u64;
    'outer: while blocks_done < max_blocks && errors < cfg.min_errors {
        let remaining_batches = (max_blocks - blocks_done).div_ceil(blocks_per_batch as u64);
        let count = (round as u64).min(remaining_batches) as usize;
        let results: Vec<Vec<u32>> = (0..count as u64)
            .into_par_iter()
            .map(|i| simulate_batch(cfg, sigma, blocks_per_batch, next_batch + i))
            .collect();
        next_batch += count as u64;
        round = (round * 2).min(MAX_ROUND);
        for batch in results {
            for e in batch {
                if blocks_done == max_blocks {
                    break 'outer;
                }
                blocks_done += 1;
                bits += block_bits;
                errors += e as u64;
                let frac = e as f64 / block_bits as f64;
                sum_frac += frac;
                sum_frac_sq += frac * frac;
                if errors >= cfg.min_errors {
                    break 'outer;
                }
            }
        }
    }

    if blocks_done == 0 {
        return Err(Error::Argument(format!(
            "bit budget {} is smaller than one {}-bit block",
            cfg.max_bits, block_bits
        )));
    }
    let n = blocks_done as f64;
    let mean = sum_frac / n;
    let std_error =
        if blocks_done > 1 { ((sum_frac_sq - n * mean * mean).max(0.0) / (n - 1.0) / n).sqrt() } else { 0.0 };
    Ok(BerEstimate {
        ber: errors as f64 / bits as f64,
        std_error,
        bits,
        errors,
        low_confidence: errors < cfg.min_errors,
    })
}

/// One point of a BER-vs-distance curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BerPoint {
    pub distance: f64,
    /// Link SNR, P_re − noise, dB; taken as Es/N0 per coded symbol.
    pub snr_db: f64,
    pub ebn0_db: f64,
    pub estimate: BerEstimate,
}

/// BER at each distance, with Eb/N0 = SNR − 10 log10(code rate).
///
/// Distance `i` uses the sub-seed `derive(cfg.seed, [i])`.
pub fn ber_vs_distance(
    link: &LinkConfig,
    noise: &NoiseModel,
    cfg: &PhyConfig,
    distances: &[f64],
) -> Result<Vec<BerPoint>> {
    check_ascending(distances)?;
    cfg.validate()?;
    distances
        .iter()
        .enumerate()
        .map(|(i, &d)| {
            let budget = link_budget(&link.clone().with_separation(d), noise)?;
            let ebn0_db = budget.snr - to_db(cfg.code.rate());
            let point_cfg = PhyConfig { seed: derive(cfg.seed, &[i as u64]), ..*cfg };
            Ok(BerPoint { distance: d, snr_db: budget.snr, ebn0_db, estimate: ber_monte_carlo(&point_cfg, ebn0_db)? })
        })
        .collect()
}
