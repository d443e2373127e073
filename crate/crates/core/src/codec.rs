//! Pad compression using the publicly known message length.
//!
//! A trailing `1` is dropped; otherwise the run of trailing zeros and the `1`
//! before it are dropped. The all-zeros pad is sent as is. The receiver knows
//! `n`, so the deleted suffix is always recoverable from the length alone.

use std::collections::BTreeMap;

use crate::bitcore::BitString;
use crate::error::{Error, Result};

pub fn compress_pad(pad: &BitString) -> Result<BitString> {
    if pad.is_empty() {
        return Err(Error::EmptyPad);
    }
    match pad.as_slice().iter().rposition(|&b| b) {
        Some(last_one) => Ok(pad.prefix(last_one)),
        None => Ok(pad.clone()),
    }
}

pub fn decompress_pad(compressed: &BitString, n: usize) -> Result<BitString> {
    let len = compressed.len();
    if len > n {
        return Err(Error::CompressedTooLong { len, n });
    }
    if len == n {
        if compressed.count_ones() != 0 {
            return Err(Error::CorruptFullLength);
        }
        return Ok(compressed.clone());
    }
    let mut tail = BitString::zeros(n - len).into_bools();
    tail[0] = true;
    Ok(compressed.concat(&BitString::from_bools(tail)))
}

/// Bits saved by compression, mapped to the number of `n`-bit pads saving
/// that many. Enumerates all `2^n` pads.
pub fn codec_census(n: usize) -> Result<BTreeMap<usize, u64>> {
    if n == 0 || n > 20 {
        return Err(Error::InvalidParams {
            n,
            k: 0,
            reason: "census is exhaustive and supports 1 <= n <= 20",
        });
    }
    let mut hist = BTreeMap::new();
    for value in 0..1u64 << n {
        let pad = BitString::from_uint(value, n);
        let saved = n - compress_pad(&pad)?.len();
        *hist.entry(saved).or_insert(0) += 1;
    }
    Ok(hist)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn bits(s: &str) -> BitString {
        s.parse().unwrap()
    }

    #[test]
    fn compress_examples() {
        assert_eq!(
            compress_pad(&bits("1011001001")).unwrap(),
            bits("101100100")
        );
        assert_eq!(compress_pad(&bits("1011001000")).unwrap(), bits("101100"));
        assert_eq!(
            compress_pad(&bits("0000000000")).unwrap(),
            bits("0000000000")
        );
        assert_eq!(compress_pad(&bits("1000")).unwrap(), BitString::new());
        assert_eq!(compress_pad(&BitString::new()), Err(Error::EmptyPad));
    }

    #[test]
    fn decompress_examples() {
        assert_eq!(
            decompress_pad(&bits("101100100"), 10).unwrap(),
            bits("1011001001")
        );
        assert_eq!(
            decompress_pad(&bits("101100"), 10).unwrap(),
            bits("1011001000")
        );
        assert_eq!(decompress_pad(&BitString::new(), 3).unwrap(), bits("100"));
        assert_eq!(decompress_pad(&bits("000"), 3).unwrap(), bits("000"));
    }

    #[test]
    fn decompress_errors() {
        assert_eq!(
            decompress_pad(&bits("0000"), 3),
            Err(Error::CompressedTooLong { len: 4, n: 3 })
        );
        assert_eq!(
            decompress_pad(&bits("010"), 3),
            Err(Error::CorruptFullLength)
        );
    }

    #[test]
    fn census_n10() {
        let c = codec_census(10).unwrap();
        assert_eq!(c[&0], 1);
        assert_eq!(c[&1], 512);
        assert_eq!(c[&10], 1);
        assert_eq!(c.values().sum::<u64>(), 1024);
        assert!(codec_census(0).is_err());
        assert!(codec_census(21).is_err());
    }

    #[test]
    fn exhaustive_roundtrip_and_injectivity() {
        for n in 1..=12 {
            let mut seen = HashSet::new();
            for v in 0..1u64 << n {
                let pad = BitString::from_uint(v, n);
                let c = compress_pad(&pad).unwrap();
                assert!(c.len() <= pad.len());
                assert_eq!(decompress_pad(&c, n).unwrap(), pad);
                assert!(seen.insert(c));
            }
        }
    }
}
