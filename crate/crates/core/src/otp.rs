//! Classical one-time pad.
//!
//! [`Pad::encrypt`] and [`Pad::decrypt`] enforce single use through the
//! `consumed` flag. The free functions [`encrypt`] and [`decrypt`] do not,
//! so analysis code can replay a pad as often as it needs.

use crate::bitcore::{xor, BitString, RandomSource};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pad {
    bits: BitString,
    consumed: bool,
}

impl Pad {
    pub fn new(bits: BitString) -> Self {
        Self {
            bits,
            consumed: false,
        }
    }

    pub fn bits(&self) -> &BitString {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn is_consumed(&self) -> bool {
        self.consumed
    }

    /// Encrypts `message` and marks the pad used.
    pub fn encrypt(&mut self, message: &BitString) -> Result<BitString> {
        if self.consumed {
            return Err(Error::PadConsumed);
        }
        let c = xor(message, &self.bits)?;
        self.consumed = true;
        Ok(c)
    }

    /// Decrypts with a receiver-side copy of the pad and marks it used.
    pub fn decrypt(&mut self, ciphertext: &BitString) -> Result<BitString> {
        if self.consumed {
            return Err(Error::PadConsumed);
        }
        let m = xor(ciphertext, &self.bits)?;
        self.consumed = true;
        Ok(m)
    }
}

impl From<BitString> for Pad {
    fn from(bits: BitString) -> Self {
        Self::new(bits)
    }
}

pub fn keygen(src: &mut RandomSource, n: usize) -> Result<Pad> {
    if n == 0 {
        return Err(Error::ZeroLengthPad);
    }
    Ok(Pad::new(src.random_bits(n)))
}

pub fn encrypt(message: &BitString, pad: &BitString) -> Result<BitString> {
    xor(message, pad)
}

pub fn decrypt(ciphertext: &BitString, pad: &BitString) -> Result<BitString> {
    xor(ciphertext, pad)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashMap;

    fn bits(s: &str) -> BitString {
        s.parse().unwrap()
    }

    #[test]
    fn worked_example() {
        let m = bits("0010110101");
        let k = bits("1011001001");
        let c = encrypt(&m, &k).unwrap();
        assert_eq!(c, bits("1001111100"));
        assert_eq!(decrypt(&c, &k).unwrap(), m);
    }

    #[test]
    fn zero_pad_is_identity() {
        let m = bits("0110");
        assert_eq!(encrypt(&m, &BitString::zeros(4)).unwrap(), m);
    }

    #[test]
    fn keygen_lengths() {
        assert_eq!(keygen(&mut RandomSource::new(3), 10).unwrap().len(), 10);
        assert_eq!(keygen(&mut RandomSource::new(3), 1).unwrap().len(), 1);
        assert_eq!(
            keygen(&mut RandomSource::new(3), 0),
            Err(Error::ZeroLengthPad)
        );
        assert_eq!(
            keygen(&mut RandomSource::new(8), 10).unwrap(),
            keygen(&mut RandomSource::new(8), 10).unwrap()
        );
    }

    #[test]
    fn consecutive_pads_differ() {
        for seed in [1u64, 2, 3, 42] {
            let mut src = RandomSource::new(seed);
            let a = keygen(&mut src, 64).unwrap();
            let b = keygen(&mut src, 64).unwrap();
            assert_ne!(a.bits(), b.bits());
        }
    }

    #[test]
    fn pad_refuses_reuse() {
        let mut alice = Pad::new(bits("1011001001"));
        let mut bob = alice.clone();
        let c = alice.encrypt(&bits("0010110101")).unwrap();
        assert!(alice.is_consumed());
        assert_eq!(alice.encrypt(&bits("0000000000")), Err(Error::PadConsumed));
        assert_eq!(bob.decrypt(&c).unwrap(), bits("0010110101"));
        assert_eq!(bob.decrypt(&c), Err(Error::PadConsumed));
    }

    #[test]
    fn mismatch_does_not_consume() {
        let mut pad = Pad::new(bits("101"));
        assert!(pad.encrypt(&bits("10")).is_err());
        assert!(!pad.is_consumed());
    }

    #[test]
    fn exhaustive_roundtrip_small() {
        for n in 1..=12usize {
            let all: Vec<BitString> = (0..1u64 << n).map(|v| BitString::from_uint(v, n)).collect();
            for m in &all {
                for k in &all {
                    assert_eq!(&decrypt(&encrypt(m, k).unwrap(), k).unwrap(), m);
                }
            }
        }
    }

    #[test]
    fn ciphertext_uniform_over_all_pads() {
        for n in 1..=8usize {
            for m in [0u64, 1, (1 << n) - 1, 0b1010_1010 & ((1 << n) - 1)] {
                let m = BitString::from_uint(m, n);
                let mut hist: HashMap<BitString, u32> = HashMap::new();
                for k in 0..1u64 << n {
                    let c = encrypt(&m, &BitString::from_uint(k, n)).unwrap();
                    *hist.entry(c).or_default() += 1;
                }
                assert_eq!(hist.len(), 1 << n);
                assert!(hist.values().all(|&count| count == 1));
            }
        }
    }
}
