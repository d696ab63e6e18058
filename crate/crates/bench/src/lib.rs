//! Input generators shared by the criterion benchmarks.

use biolink_core::fec::{gf32::Gf32, reed_solomon};
use biolink_core::seed::rng_for;
use rand::Rng;

/// Random RS messages, deterministic per seed.
pub fn rs_messages(count: usize, seed: u64) -> Vec<[Gf32; reed_solomon::K]> {
    let mut rng = rng_for(seed, &[]);
    (0..count).map(|_| std::array::from_fn(|_| Gf32::new(rng.random_range(0..32)).expect("5-bit value"))).collect()
}

/// RS codewords with exactly `errors` corrupted symbols each.
pub fn corrupted_rs_words(count: usize, errors: usize, seed: u64) -> Vec<[Gf32; reed_solomon::N]> {
    let mut rng = rng_for(seed, &[1]);
    rs_messages(count, seed)
        .into_iter()
        .map(|m| {
            let mut w = reed_solomon::rs_encode(&m).expect("fixed length");
            let mut hit = Vec::with_capacity(errors);
            while hit.len() < errors {
                let p = rng.random_range(0..reed_solomon::N);
                if !hit.contains(&p) {
                    hit.push(p);
                    w[p] += Gf32::new(rng.random_range(1..32)).expect("5-bit value");
                }
            }
            w
        })
        .collect()
}

/// Random 11-bit Hamming messages.
pub fn hamming_messages(count: usize, seed: u64) -> Vec<u16> {
    let mut rng = rng_for(seed, &[2]);
    (0..count).map(|_| rng.random_range(0..2048)).collect()
}
