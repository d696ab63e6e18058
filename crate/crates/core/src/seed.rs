//! Deterministic seed splitting.
//!
//! Every parallel unit of work (a Monte Carlo batch, a MAC trial, a sweep
//! point) draws from its own generator whose seed is derived from the master
//! seed and the unit's indices. Results therefore do not depend on how the
//! work is scheduled across threads.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Seed used when neither `--seed` nor `BIOLINK_SEED` is given.
pub const DEFAULT_SEED: u64 = 0xB10B10;

/// The generator used throughout the crate.
pub type SimRng = ChaCha8Rng;

#[inline]
fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derives a sub-seed from `master` and a path of indices.
///
/// `derive(m, &[a, b])` differs from `derive(m, &[b, a])` and from
/// `derive(m, &[a])`.
pub fn derive(master: u64, path: &[u64]) -> u64 {
    let mut h = splitmix64(master);
    for (depth, &index) in path.iter().enumerate() {
        h = splitmix64(h ^ splitmix64(index.wrapping_add((depth as u64 + 1) << 56)));
    }
    h
}

/// Seeded generator for the given path.
pub fn rng_for(master: u64, path: &[u64]) -> SimRng {
    SimRng::seed_from_u64(derive(master, path))
}
