//! Reed-Solomon(31,26) over GF(32).
//!
//! Generator g(x) = (x − α)(x − α²)…(x − α⁵), so n − k = 5 parity symbols and
//! minimum distance 6. The decoder uses all five syndromes: Berlekamp-Massey
//! for the error locator Λ(x), Chien search for its roots and Forney's
//! formula for the error values. Up to two symbol errors are corrected;
//! three are always detected (2 + 3 < d), and any result that does not
//! re-encode to a zero syndrome is reported as a failure.

use std::sync::OnceLock;

use super::gf32::{eval_poly, Gf32};
use crate::error::{Error, Result};

pub const N: usize = 31;
pub const K: usize = 26;
pub const PARITY: usize = N - K;
/// Symbol errors the decoder corrects.
pub const T: usize = 2;
/// Exponent of the first generator root.
pub const FIRST_ROOT: i64 = 1;

/// g(x) coefficients, highest degree first (g[0] = 1).
pub fn generator() -> &'static [Gf32; PARITY + 1] {
    static G: OnceLock<[Gf32; PARITY + 1]> = OnceLock::new();
    G.get_or_init(|| {
        // Multiply out lowest-degree-first, then reverse.
        let mut poly = vec![Gf32::ONE];
        for i in 0..PARITY as i64 {
            let root = Gf32::alpha_pow(FIRST_ROOT + i);
            let mut next = vec![Gf32::ZERO; poly.len() + 1];
            for (k, &c) in poly.iter().enumerate() {
                next[k] += c * root;
                next[k + 1] += c;
            }
            poly = next;
        }
        poly.reverse();
        poly.try_into().expect("degree-5 generator")
    })
}

/// Parity contribution of each message position: x^(30−i) mod g(x).
fn parity_rows() -> &'static [[Gf32; PARITY]; K] {
    static ROWS: OnceLock<[[Gf32; PARITY]; K]> = OnceLock::new();
    ROWS.get_or_init(|| {
        let mut rows = [[Gf32::ZERO; PARITY]; K];
        for (i, row) in rows.iter_mut().enumerate() {
            let mut msg = [Gf32::ZERO; K];
            msg[i] = Gf32::ONE;
            *row = lfsr_parity(&msg);
        }
        rows
    })
}

/// Symbol-serial division of m(x)·x⁵ by g(x) in a 5-stage register.
fn lfsr_parity(message: &[Gf32; K]) -> [Gf32; PARITY] {
    let g = generator();
    let mut reg = [Gf32::ZERO; PARITY];
    for &m in message {
        let feedback = m + reg[0];
        for j in 0..PARITY - 1 {
            reg[j] = reg[j + 1] + feedback * g[j + 1];
        }
        reg[PARITY - 1] = feedback * g[PARITY];
    }
    reg
}

fn check_len(symbols: &[Gf32], len: usize, what: &str) -> Result<()> {
    if symbols.len() != len {
        return Err(Error::Argument(format!("{what} must have {len} symbols, got {}", symbols.len())));
    }
    Ok(())
}

fn assemble(message: &[Gf32; K], parity: [Gf32; PARITY]) -> [Gf32; N] {
    let mut out = [Gf32::ZERO; N];
    out[..K].copy_from_slice(message);
    out[K..].copy_from_slice(&parity);
    out
}

/// Systematic encoder in shift-register form.
pub fn rs_encode(message: &[Gf32]) -> Result<[Gf32; N]> {
    check_len(message, K, "RS message")?;
    let message: &[Gf32; K] = message.try_into().expect("length checked");
    Ok(assemble(message, lfsr_parity(message)))
}

/// Systematic encoder in generator-matrix form: parity is the sum of the
/// precomputed rows selected by each message symbol.
pub fn rs_encode_matrix(message: &[Gf32]) -> Result<[Gf32; N]> {
    check_len(message, K, "RS message")?;
    let message: &[Gf32; K] = message.try_into().expect("length checked");
    let mut parity = [Gf32::ZERO; PARITY];
    for (&m, row) in message.iter().zip(parity_rows()) {
        if m.is_zero() {
            continue;
        }
        for (p, &r) in parity.iter_mut().zip(row) {
            *p += m * r;
        }
    }
    Ok(assemble(message, parity))
}

/// S_j = r(α^j) for j = 1..=5.
pub fn syndromes(word: &[Gf32; N]) -> [Gf32; PARITY] {
    let mut s = [Gf32::ZERO; PARITY];
    for (i, sj) in s.iter_mut().enumerate() {
        *sj = eval_poly(word, Gf32::alpha_pow(FIRST_ROOT + i as i64));
    }
    s
}

/// Result of [`rs_decode`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RsDecoded {
    pub message: [Gf32; K],
    /// Symbols changed by the decoder.
    pub corrected: usize,
    /// The error pattern is beyond the correction radius; `message` is the
    /// received systematic part, unmodified.
    pub failure: bool,
}

/// Berlekamp-Massey: shortest LFSR generating the syndromes. Returns Λ(x)
/// lowest degree first and its register length L.
fn berlekamp_massey(s: &[Gf32]) -> (Vec<Gf32>, usize) {
    let mut c = vec![Gf32::ONE];
    let mut b = vec![Gf32::ONE];
    let mut len = 0usize;
    let mut shift = 1usize;
    let mut last_disc = Gf32::ONE;
    for n in 0..s.len() {
        let mut d = s[n];
        for i in 1..=len.min(c.len() - 1) {
            d += c[i] * s[n - i];
        }
        if d.is_zero() {
            shift += 1;
            continue;
        }
        let coef = d / last_disc;
        let mut next = c.clone();
        if next.len() < b.len() + shift {
            next.resize(b.len() + shift, Gf32::ZERO);
        }
        for (i, &bi) in b.iter().enumerate() {
            next[i + shift] += coef * bi;
        }
        if 2 * len <= n {
            b = c;
            len = n + 1 - len;
            last_disc = d;
            shift = 1;
        } else {
            shift += 1;
        }
        c = next;
    }
    while c.len() > 1 && c.last().is_some_and(|x| x.is_zero()) {
        c.pop();
    }
    (c, len)
}

fn eval_low_first(poly: &[Gf32], x: Gf32) -> Gf32 {
    poly.iter().rev().fold(Gf32::ZERO, |acc, &c| acc * x + c)
}

pub fn rs_decode(word: &[Gf32]) -> Result<RsDecoded> {
    check_len(word, N, "RS codeword")?;
    let received: [Gf32; N] = word.try_into().expect("length checked");
    let mut systematic = [Gf32::ZERO; K];
    systematic.copy_from_slice(&received[..K]);
    let failed = RsDecoded { message: systematic, corrected: 0, failure: true };

    let s = syndromes(&received);
    if s.iter().all(|x| x.is_zero()) {
        return Ok(RsDecoded { message: systematic, corrected: 0, failure: false });
    }

    let (lambda, len) = berlekamp_massey(&s);
    if len > T || lambda.len() - 1 != len {
        return Ok(failed);
    }

    // Chien search over codeword degrees; index i holds degree N−1−i.
    let mut positions = Vec::with_capacity(len);
    for degree in 0..N {
        if eval_low_first(&lambda, Gf32::alpha_pow(-(degree as i64))).is_zero() {
            positions.push(degree);
        }
    }
    if positions.len() != len {
        return Ok(failed);
    }

    // Ω(x) = S(x)Λ(x) mod x^(2t), S(x) = S_1 + S_2 x + …
    let mut omega = vec![Gf32::ZERO; 2 * T];
    for (i, &si) in s.iter().take(2 * T).enumerate() {
        for (j, &lj) in lambda.iter().enumerate() {
            if i + j < 2 * T {
                omega[i + j] += si * lj;
            }
        }
    }
    // Formal derivative in characteristic 2 keeps odd-degree terms.
    let derivative: Vec<Gf32> =
        lambda.iter().enumerate().skip(1).map(|(i, &c)| if i % 2 == 1 { c } else { Gf32::ZERO }).collect();

    let mut corrected = received;
    for &degree in &positions {
        let x_inv = Gf32::alpha_pow(-(degree as i64));
        let denom = eval_low_first(&derivative, x_inv);
        if denom.is_zero() {
            return Ok(failed);
        }
        // With first root α¹ the X^(1−b) factor is 1.
        let value = eval_low_first(&omega, x_inv) / denom;
        corrected[N - 1 - degree] += value;
    }
    if syndromes(&corrected).iter().any(|x| !x.is_zero()) {
        return Ok(failed);
    }
    let mut message = [Gf32::ZERO; K];
    message.copy_from_slice(&corrected[..K]);
    Ok(RsDecoded { message, corrected: positions.len(), failure: false })
}
