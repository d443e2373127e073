//! Bit strings, the pinned random source, and the `OTPD` pad container.
//!
//! Bits are stored in reading order: index 0 is the leftmost bit as written
//! (position 1 in prose), and "the last bit" is the highest index. Appending
//! to a pad always extends it on the right.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::error::{Error, Result};

/// An ordered, arbitrary-length sequence of bits.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitString {
    bits: Vec<bool>,
}

impl BitString {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn zeros(len: usize) -> Self {
        Self {
            bits: vec![false; len],
        }
    }

    pub fn ones(len: usize) -> Self {
        Self {
            bits: vec![true; len],
        }
    }

    pub fn from_bools(bits: Vec<bool>) -> Self {
        Self { bits }
    }

    /// The low `len` bits of `value`, most significant of those first.
    pub fn from_uint(value: u64, len: usize) -> Self {
        let bits = (0..len)
            .rev()
            .map(|shift| shift < 64 && (value >> shift) & 1 == 1)
            .collect();
        Self { bits }
    }

    /// Interprets the string as an unsigned big-endian integer.
    ///
    /// Only meaningful for strings of at most 64 bits; longer strings keep
    /// the low 64.
    pub fn to_uint(&self) -> u64 {
        self.bits
            .iter()
            .fold(0u64, |acc, &b| (acc << 1) | u64::from(b))
    }

    /// Eight bits per byte, most significant bit first.
    pub fn from_bytes(bytes: &[u8]) -> Self {
        let bits = bytes
            .iter()
            .flat_map(|&byte| (0..8).rev().map(move |shift| (byte >> shift) & 1 == 1))
            .collect();
        Self { bits }
    }

    /// Inverse of [`BitString::from_bytes`]; `None` unless the length is a
    /// multiple of eight.
    pub fn to_bytes(&self) -> Option<Vec<u8>> {
        if !self.bits.len().is_multiple_of(8) {
            return None;
        }
        Some(pack_msb_first(&self.bits))
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// Bit at zero-based `index`.
    pub fn get(&self, index: usize) -> Option<bool> {
        self.bits.get(index).copied()
    }

    pub fn last(&self) -> Option<bool> {
        self.bits.last().copied()
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.bits
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = bool> + '_ {
        self.bits.iter().copied()
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    /// The first `len` bits. Panics if `len > self.len()`.
    pub fn prefix(&self, len: usize) -> BitString {
        Self {
            bits: self.bits[..len].to_vec(),
        }
    }

    /// The last `len` bits. Panics if `len > self.len()`.
    pub fn suffix(&self, len: usize) -> BitString {
        Self {
            bits: self.bits[self.bits.len() - len..].to_vec(),
        }
    }

    pub fn concat(&self, tail: &BitString) -> BitString {
        let mut bits = Vec::with_capacity(self.len() + tail.len());
        bits.extend_from_slice(&self.bits);
        bits.extend_from_slice(&tail.bits);
        Self { bits }
    }

    pub fn into_bools(self) -> Vec<bool> {
        self.bits
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitString({}; \"{}\")", self.len(), self)
    }
}

impl FromStr for BitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .enumerate()
            .map(|(i, c)| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::InvalidBitChar {
                    position: i + 1,
                    found: other,
                }),
            })
            .collect::<Result<Vec<_>>>()
            .map(Self::from_bools)
    }
}

impl FromIterator<bool> for BitString {
    fn from_iter<I: IntoIterator<Item = bool>>(iter: I) -> Self {
        Self::from_bools(iter.into_iter().collect())
    }
}

/// Bitwise exclusive-or of two equal-length strings.
pub fn xor(a: &BitString, b: &BitString) -> Result<BitString> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    Ok(a.iter().zip(b.iter()).map(|(x, y)| x ^ y).collect())
}

/// Deterministic bit source.
///
/// The generator is ChaCha20 (`rand_chacha` 0.3) keyed through
/// `SeedableRng::seed_from_u64`. Its output stream is portable and stable for
/// a given seed. It stands in for a perfect random source and makes no claim
/// of true randomness.
#[derive(Clone, Debug)]
pub struct RandomSource {
    seed: u64,
    rng: ChaCha20Rng,
}

impl RandomSource {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            rng: ChaCha20Rng::seed_from_u64(seed),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    pub fn next_bit(&mut self) -> bool {
        self.rng.next_u32() & 1 == 1
    }

    /// `n` fresh bits, drawn 64 at a time most significant first.
    pub fn random_bits(&mut self, n: usize) -> BitString {
        let mut bits = Vec::with_capacity(n);
        while bits.len() < n {
            let word = self.rng.next_u64();
            let take = (n - bits.len()).min(64);
            bits.extend((0..take).map(|i| (word >> (63 - i)) & 1 == 1));
        }
        BitString::from_bools(bits)
    }

    /// Uniform integer in `0..bound`. Panics if `bound == 0`.
    pub fn uniform_below(&mut self, bound: u64) -> u64 {
        self.rng.gen_range(0..bound)
    }

    /// Index drawn with probability `weights[i] / sum(weights)`.
    ///
    /// Panics if the weights are empty or all zero.
    pub fn sample_weighted(&mut self, weights: &[u64]) -> usize {
        let total: u64 = weights.iter().sum();
        assert!(total > 0, "weights must not all be zero");
        let mut r = self.uniform_below(total);
        for (i, &w) in weights.iter().enumerate() {
            if r < w {
                return i;
            }
            r -= w;
        }
        unreachable!("r < total by construction")
    }

    /// Index drawn with exactly the given rational probabilities, which are
    /// brought to a common denominator before sampling.
    pub fn sample_rational(&mut self, probs: &[Ratio<u64>]) -> usize {
        let denom = probs.iter().fold(1u64, |acc, p| acc.lcm(p.denom()));
        let weights: Vec<u64> = probs
            .iter()
            .map(|p| p.numer() * (denom / p.denom()))
            .collect();
        self.sample_weighted(&weights)
    }
}

pub const PAD_MAGIC: &[u8; 4] = b"OTPD";
const HEADER_LEN: usize = 12;

fn pack_msb_first(bits: &[bool]) -> Vec<u8> {
    bits.chunks(8)
        .map(|chunk| {
            chunk
                .iter()
                .enumerate()
                .fold(0u8, |acc, (i, &b)| acc | (u8::from(b) << (7 - i)))
        })
        .collect()
}

/// `OTPD` container: magic, big-endian `u64` bit count, then the bits packed
/// most significant first with the final byte zero-padded.
pub fn serialize_pad(pad: &BitString) -> Vec<u8> {
    let mut out = Vec::with_capacity(HEADER_LEN + pad.len().div_ceil(8));
    out.extend_from_slice(PAD_MAGIC);
    out.extend_from_slice(&(pad.len() as u64).to_be_bytes());
    out.extend(pack_msb_first(pad.as_slice()));
    out
}

pub fn deserialize_pad(bytes: &[u8]) -> Result<BitString> {
    if bytes.len() < PAD_MAGIC.len() || &bytes[..4] != PAD_MAGIC {
        return Err(Error::BadMagic);
    }
    if bytes.len() < HEADER_LEN {
        return Err(Error::Truncated {
            expected: HEADER_LEN,
            found: bytes.len(),
        });
    }
    let declared = u64::from_be_bytes(bytes[4..HEADER_LEN].try_into().expect("8 bytes"));
    let bit_len = usize::try_from(declared).map_err(|_| Error::OversizedPad { bits: declared })?;
    let data_len = bit_len.div_ceil(8);
    let payload = &bytes[HEADER_LEN..];
    if payload.len() < data_len {
        return Err(Error::Truncated {
            expected: HEADER_LEN + data_len,
            found: bytes.len(),
        });
    }
    if payload.len() > data_len {
        return Err(Error::TrailingBytes {
            extra: payload.len() - data_len,
        });
    }
    let used = bit_len % 8;
    if used != 0 && payload[data_len - 1] & (0xFF >> used) != 0 {
        return Err(Error::NonzeroPadding);
    }
    Ok(BitString::from_bytes(payload).prefix(bit_len))
}
