//! Hamming(15,11) as the cyclic code generated by g(x) = x⁴ + x + 1.
//!
//! Codewords are packed into a `u16`: bit 14 is codeword index 0 (the
//! coefficient of x¹⁴), bit 0 is index 14. The eleven message bits occupy
//! bits 14..4, parity bits 3..0.
//!
//! The code has minimum distance 3. It corrects any single error; every
//! nonzero syndrome points at exactly one position, so two or more errors
//! are always "corrected" into some codeword rather than flagged. Detecting
//! double errors needs the extended (16,11) code, which is not built here.

use super::check_bits;
use crate::error::Result;

pub const N: usize = 15;
pub const K: usize = 11;
/// x⁴ + x + 1.
pub const GENERATOR: u16 = 0b1_0011;

const fn mod_generator(mut word: u32) -> u16 {
    let mut bit = 31;
    while bit >= 4 {
        if word >> bit & 1 == 1 {
            word ^= (GENERATOR as u32) << (bit - 4);
        }
        bit -= 1;
    }
    word as u16
}

/// Column j of the parity-check matrix: x^(14−j) mod g(x).
const fn build_columns() -> [u16; N] {
    let mut cols = [0u16; N];
    let mut j = 0;
    while j < N {
        cols[j] = mod_generator(1u32 << (N - 1 - j));
        j += 1;
    }
    cols
}

const COLUMNS: [u16; N] = build_columns();

const fn build_position_lookup() -> [u8; 16] {
    let mut lut = [u8::MAX; 16];
    let mut j = 0;
    while j < N {
        lut[COLUMNS[j] as usize] = j as u8;
        j += 1;
    }
    lut
}

const POSITION_OF_SYNDROME: [u8; 16] = build_position_lookup();

/// Systematic encoding with the generator matrix [I | P], where row i of P
/// is column i of the parity-check matrix.
pub fn encode_word(message: u16) -> u16 {
    let message = message & 0x7FF;
    let mut parity = 0u16;
    for (i, &col) in COLUMNS[..K].iter().enumerate() {
        if message >> (K - 1 - i) & 1 == 1 {
            parity ^= col;
        }
    }
    (message << 4) | parity
}

/// Bit-serial division by g(x) in a 4-stage feedback shift register.
pub fn encode_word_lfsr(message: u16) -> u16 {
    let message = message & 0x7FF;
    let mut reg = 0u16;
    for i in (0..K).rev() {
        let feedback = (message >> i & 1) ^ (reg >> 3 & 1);
        reg = (reg << 1) & 0xF;
        if feedback == 1 {
            reg ^= GENERATOR & 0xF;
        }
    }
    (message << 4) | reg
}

/// Syndrome H·r of a packed received word.
pub fn syndrome(word: u16) -> u16 {
    let mut s = 0u16;
    for (j, &col) in COLUMNS.iter().enumerate() {
        if word >> (N - 1 - j) & 1 == 1 {
            s ^= col;
        }
    }
    s
}

/// Decoder output for a packed word.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DecodedWord {
    pub message: u16,
    /// Bits flipped by the decoder (0 or 1).
    pub corrected: u8,
    /// Never set by this perfect code; present so both decoders report the
    /// same shape of result.
    pub detected_uncorrectable: bool,
}

pub fn decode_word(word: u16) -> DecodedWord {
    let word = word & 0x7FFF;
    let s = syndrome(word);
    if s == 0 {
        return DecodedWord { message: word >> 4, corrected: 0, detected_uncorrectable: false };
    }
    match POSITION_OF_SYNDROME[s as usize] {
        u8::MAX => DecodedWord { message: word >> 4, corrected: 0, detected_uncorrectable: true },
        j => {
            let fixed = word ^ (1 << (N - 1 - j as usize));
            DecodedWord { message: fixed >> 4, corrected: 1, detected_uncorrectable: false }
        }
    }
}

fn pack(bits: &[u8]) -> u16 {
    bits.iter().fold(0u16, |acc, &b| (acc << 1) | b as u16)
}

fn unpack<const L: usize>(word: u16) -> [u8; L] {
    let mut out = [0u8; L];
    for (i, b) in out.iter_mut().enumerate() {
        *b = (word >> (L - 1 - i) & 1) as u8;
    }
    out
}

/// Encodes an 11-bit message into a 15-bit systematic codeword.
pub fn hamming_encode(message: &[u8]) -> Result<[u8; N]> {
    check_bits(message, K, "Hamming message")?;
    Ok(unpack(encode_word(pack(message))))
}

/// Result of [`hamming_decode`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HammingDecoded {
    pub message: [u8; K],
    pub corrected: u8,
    pub detected_uncorrectable: bool,
}

/// Syndrome decoding of a 15-bit word.
pub fn hamming_decode(word: &[u8]) -> Result<HammingDecoded> {
    check_bits(word, N, "Hamming codeword")?;
    let d = decode_word(pack(word));
    Ok(HammingDecoded {
        message: unpack(d.message),
        corrected: d.corrected,
        detected_uncorrectable: d.detected_uncorrectable,
    })
}
