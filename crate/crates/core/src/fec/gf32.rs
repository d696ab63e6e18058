//! Arithmetic in GF(2⁵) with primitive polynomial x⁵ + x² + 1.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Sub};

/// x⁵ + x² + 1.
pub const PRIMITIVE_POLY: u8 = 0b10_0101;
/// Bits per symbol.
pub const BITS: usize = 5;
/// Multiplicative group order, 2⁵ − 1.
pub const ORDER: usize = 31;

const fn build_tables() -> ([u8; 62], [u8; 32]) {
    let mut exp = [0u8; 62];
    let mut log = [0u8; 32];
    let mut x: u8 = 1;
    let mut i = 0;
    while i < ORDER {
        exp[i] = x;
        exp[i + ORDER] = x;
        log[x as usize] = i as u8;
        x <<= 1;
        if x & 0b10_0000 != 0 {
            x ^= PRIMITIVE_POLY;
        }
        i += 1;
    }
    (exp, log)
}

const TABLES: ([u8; 62], [u8; 32]) = build_tables();
const EXP: [u8; 62] = TABLES.0;
const LOG: [u8; 32] = TABLES.1;

/// An element of GF(32), stored as its 5-bit polynomial representation.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Gf32(u8);

impl Gf32 {
    pub const ZERO: Gf32 = Gf32(0);
    pub const ONE: Gf32 = Gf32(1);
    /// The primitive element α = x.
    pub const ALPHA: Gf32 = Gf32(2);

    /// Returns `None` if `value` is not in 0..32.
    pub fn new(value: u8) -> Option<Self> {
        (value < 32).then_some(Gf32(value))
    }

    pub fn value(self) -> u8 {
        self.0
    }

    /// α^e for any integer exponent.
    pub fn alpha_pow(e: i64) -> Self {
        Gf32(EXP[e.rem_euclid(ORDER as i64) as usize])
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Discrete log base α; `None` for zero.
    pub fn log(self) -> Option<usize> {
        (self.0 != 0).then(|| LOG[self.0 as usize] as usize)
    }

    pub fn inv(self) -> Option<Self> {
        self.log().map(|l| Gf32(EXP[(ORDER - l) % ORDER]))
    }

    pub fn pow(self, e: u32) -> Self {
        match self.log() {
            None if e == 0 => Gf32::ONE,
            None => Gf32::ZERO,
            Some(l) => Gf32(EXP[(l * e as usize) % ORDER]),
        }
    }
}

impl fmt::Debug for Gf32 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf32({:#04x})", self.0)
    }
}

impl Add for Gf32 {
    type Output = Gf32;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: Gf32) -> Gf32 {
        Gf32(self.0 ^ rhs.0)
    }
}

impl AddAssign for Gf32 {
    #[allow(clippy::suspicious_op_assign_impl)]
    fn add_assign(&mut self, rhs: Gf32) {
        self.0 ^= rhs.0;
    }
}

impl Sub for Gf32 {
    type Output = Gf32;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn sub(self, rhs: Gf32) -> Gf32 {
        Gf32(self.0 ^ rhs.0)
    }
}

impl Mul for Gf32 {
    type Output = Gf32;
    fn mul(self, rhs: Gf32) -> Gf32 {
        if self.0 == 0 || rhs.0 == 0 {
            return Gf32::ZERO;
        }
        Gf32(EXP[LOG[self.0 as usize] as usize + LOG[rhs.0 as usize] as usize])
    }
}

impl MulAssign for Gf32 {
    fn mul_assign(&mut self, rhs: Gf32) {
        *self = *self * rhs;
    }
}

impl Div for Gf32 {
    type Output = Gf32;
    /// Panics on division by zero.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Gf32) -> Gf32 {
        self * rhs.inv().expect("division by zero in GF(32)")
    }
}

/// Evaluates a polynomial given highest-degree coefficient first.
pub fn eval_poly(coeffs: &[Gf32], x: Gf32) -> Gf32 {
    coeffs.iter().fold(Gf32::ZERO, |acc, &c| acc * x + c)
}

/// Symbols to bits, most significant bit first.
pub fn symbols_to_bits(symbols: &[Gf32]) -> Vec<u8> {
    let mut out = Vec::with_capacity(symbols.len() * BITS);
    for s in symbols {
        for k in (0..BITS).rev() {
            out.push((s.0 >> k) & 1);
        }
    }
    out
}

/// Inverse of [`symbols_to_bits`]; trailing bits that do not fill a symbol
/// are ignored.
pub fn bits_to_symbols(bits: &[u8]) -> Vec<Gf32> {
    bits.chunks_exact(BITS).map(|c| Gf32(c.iter().fold(0u8, |acc, &b| (acc << 1) | (b & 1)))).collect()
}
