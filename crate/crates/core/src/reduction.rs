//! Transmitted-pad length reduction.
//!
//! The sender draws the pad length from `n, n-1, ..., n-k` with
//! probabilities `1 - k/2^k, 1/2^k, ..., 1/2^k` and sends only that many
//! bits over the secure channel. Before use, both parties complete a short
//! pad of length `n - i` to `n` bits by keeping its first `n - k` bits and
//! writing the reserved pattern `P_i` (the `k` low-order bits of `n - i`)
//! as the tail. A full-length pad never ends in a reserved pattern; its
//! tail is uniform over the `2^k - k` remaining patterns. Together this makes
//! every `k`-bit tail of the completed pad occur with probability `2^-k`, so
//! the completed pad is uniform and the length carries `k` bits of key
//! material for free.
//!
//! `k = 1` is the single-bit protocol: a pad of length `n - 1` is completed
//! with `1` when `n - 1` is odd and `0` when it is even, and a full-length
//! pad has its last bit forced to the opposite value.

use num_rational::Ratio;

use crate::bitcore::{xor, BitString, RandomSource};
use crate::error::{Error, Result};

/// Largest `k` the protocol supports; `2^k` must fit in a `u64` with room
/// for the weight arithmetic.
pub const K_LIMIT: usize = 62;

/// Message length and reduction bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ReductionParams {
    n: usize,
    k: usize,
}

impl ReductionParams {
    /// Rejects `k = 0` and any `k` above [`max_k`]`(n)`.
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidParams {
                n,
                k,
                reason: "k must be at least 1",
            });
        }
        if k > K_LIMIT {
            return Err(Error::InvalidParams {
                n,
                k,
                reason: "k exceeds the supported limit of 62",
            });
        }
        if k > max_k(n) {
            return Err(Error::InvalidParams {
                n,
                k,
                reason: "n must be at least k + 2^(k-1)",
            });
        }
        Ok(Self { n, k })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of pad bits kept verbatim from any transmitted pad.
    pub fn kept_prefix(&self) -> usize {
        self.n - self.k
    }

    /// `(length, probability)` for every transmitted length, `n` first.
    pub fn length_distribution(&self) -> Vec<(usize, Ratio<u64>)> {
        let denom = 1u64 << self.k;
        let k = self.k as u64;
        std::iter::once((self.n, Ratio::new(denom - k, denom)))
            .chain((1..=self.k).map(|i| (self.n - i, Ratio::new(1, denom))))
            .collect()
    }

    /// How many `k`-bit tails a full-length pad may end with.
    pub fn allowed_tail_count(&self) -> u64 {
        (1u64 << self.k) - self.k as u64
    }
}

/// Largest `k` with `n >= k + 2^(k-1)`; zero when no protocol applies.
pub fn max_k(n: usize) -> usize {
    let n = n as u128;
    (1..=u128::BITS as usize - 2)
        .take_while(|&k| (k as u128) + (1u128 << (k - 1)) <= n)
        .last()
        .unwrap_or(0)
}

/// Mean number of pad bits saved, `k(k+1) / 2^(k+1)`.
pub fn expected_reduction(k: usize) -> Result<Ratio<u128>> {
    if k == 0 || k > 125 {
        return Err(Error::InvalidParams {
            n: 0,
            k,
            reason: "expected reduction is defined for 1 <= k <= 125",
        });
    }
    let k = k as u128;
    Ok(Ratio::new(k * (k + 1), 1u128 << (k + 1)))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ReservedPattern {
    pub index: usize,
    pub bits: BitString,
}

/// `P_i`: the `k` low-order bits of `n - i`, most significant first.
pub fn reserved_pattern(params: &ReductionParams, index: usize) -> Result<ReservedPattern> {
    if index == 0 || index > params.k {
        return Err(Error::PatternIndexOutOfRange { index, k: params.k });
    }
    let value = (params.n - index) as u64;
    Ok(ReservedPattern {
        index,
        bits: BitString::from_uint(value, params.k),
    })
}

pub fn reserved_patterns(params: &ReductionParams) -> Vec<ReservedPattern> {
    (1..=params.k)
        .map(|i| reserved_pattern(params, i).expect("index in range"))
        .collect()
}

fn reserved_values_sorted(params: &ReductionParams) -> Vec<u64> {
    let mask = (1u64 << params.k) - 1;
    let mut values: Vec<u64> = (1..=params.k)
        .map(|i| (params.n - i) as u64 & mask)
        .collect();
    values.sort_unstable();
    values
}

/// The `index`-th (zero-based, ascending) tail pattern that is not reserved.
pub fn allowed_tail(params: &ReductionParams, index: u64) -> Option<BitString> {
    if index >= params.allowed_tail_count() {
        return None;
    }
    let mut value = index;
    for reserved in reserved_values_sorted(params) {
        if reserved <= value {
            value += 1;
        }
    }
    Some(BitString::from_uint(value, params.k))
}

/// Transmitted length drawn from [`ReductionParams::length_distribution`].
pub fn sample_pad_length(params: &ReductionParams, src: &mut RandomSource) -> usize {
    let dist = params.length_distribution();
    let probs: Vec<Ratio<u64>> = dist.iter().map(|&(_, p)| p).collect();
    dist[src.sample_rational(&probs)].0
}

/// The random choices behind one generated pad.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PadDraw {
    /// Full-length pad: `n - k` random bits and an index into the allowed
    /// tails.
    Full { prefix: BitString, tail_index: u64 },
    /// Pad shortened by `dropped` bits, all of them random.
    Short { dropped: usize, bits: BitString },
}

/// The pad as sent over the secure channel. Its length is the secret
/// side-information.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratedPad {
    bits: BitString,
}

impl GeneratedPad {
    /// Validates a received pad against `params`.
    pub fn from_transmitted(bits: BitString, params: &ReductionParams) -> Result<Self> {
        check_consistent(&bits, params)?;
        Ok(Self { bits })
    }

    pub fn bits(&self) -> &BitString {
        &self.bits
    }

    pub fn original_length(&self) -> usize {
        self.bits.len()
    }

    pub fn into_bits(self) -> BitString {
        self.bits
    }
}

fn check_consistent(bits: &BitString, params: &ReductionParams) -> Result<()> {
    let len = bits.len();
    let inconsistent = |reason| Error::InconsistentPad {
        len,
        n: params.n,
        k: params.k,
        reason,
    };
    if len > params.n {
        return Err(inconsistent("longer than the message"));
    }
    if len < params.n - params.k {
        return Err(inconsistent("shorter than n - k"));
    }
    if len == params.n {
        let tail = bits.suffix(params.k);
        if reserved_patterns(params).iter().any(|p| p.bits == tail) {
            return Err(inconsistent("full-length pad ends in a reserved pattern"));
        }
    }
    Ok(())
}

/// Deterministically turns a set of random choices into a transmitted pad.
pub fn build_pad(params: &ReductionParams, draw: &PadDraw) -> Result<GeneratedPad> {
    let bits = match draw {
        PadDraw::Full { prefix, tail_index } => {
            if prefix.len() != params.kept_prefix() {
                return Err(Error::LengthMismatch {
                    left: prefix.len(),
                    right: params.kept_prefix(),
                });
            }
            let tail = allowed_tail(params, *tail_index).ok_or(Error::InvalidParams {
                n: params.n,
                k: params.k,
                reason: "tail index beyond the allowed patterns",
            })?;
            prefix.concat(&tail)
        }
        PadDraw::Short { dropped, bits } => {
            if *dropped == 0 || *dropped > params.k {
                return Err(Error::PatternIndexOutOfRange {
                    index: *dropped,
                    k: params.k,
                });
            }
            if bits.len() != params.n - dropped {
                return Err(Error::LengthMismatch {
                    left: bits.len(),
                    right: params.n - dropped,
                });
            }
            bits.clone()
        }
    };
    Ok(GeneratedPad { bits })
}

/// Draws the random choices for one pad.
pub fn sample_draw(params: &ReductionParams, src: &mut RandomSource) -> PadDraw {
    let len = sample_pad_length(params, src);
    if len == params.n {
        let prefix = src.random_bits(params.kept_prefix());
        let tail_index = src.uniform_below(params.allowed_tail_count());
        PadDraw::Full { prefix, tail_index }
    } else {
        PadDraw::Short {
            dropped: params.n - len,
            bits: src.random_bits(len),
        }
    }
}

pub fn generate_reduced_pad(params: &ReductionParams, src: &mut RandomSource) -> GeneratedPad {
    build_pad(params, &sample_draw(params, src)).expect("sampled draws are always valid")
}

/// The `n`-bit pad both parties actually XOR with.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EffectivePad {
    bits: BitString,
}

impl EffectivePad {
    pub fn bits(&self) -> &BitString {
        &self.bits
    }

    pub fn into_bits(self) -> BitString {
        self.bits
    }
}

pub fn effective_pad(pad: &GeneratedPad, params: &ReductionParams) -> Result<EffectivePad> {
    check_consistent(&pad.bits, params)?;
    let len = pad.original_length();
    if len == params.n {
        return Ok(EffectivePad {
            bits: pad.bits.clone(),
        });
    }
    let pattern = reserved_pattern(params, params.n - len)?;
    Ok(EffectivePad {
        bits: pad.bits.prefix(params.kept_prefix()).concat(&pattern.bits),
    })
}

pub fn encrypt_reduced(
    message: &BitString,
    pad: &GeneratedPad,
    params: &ReductionParams,
) -> Result<BitString> {
    if message.len() != params.n {
        return Err(Error::LengthMismatch {
            left: message.len(),
            right: params.n,
        });
    }
    xor(message, effective_pad(pad, params)?.bits())
}

pub fn decrypt_reduced(
    ciphertext: &BitString,
    pad: &GeneratedPad,
    params: &ReductionParams,
) -> Result<BitString> {
    encrypt_reduced(ciphertext, pad, params)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits(s: &str) -> BitString {
        s.parse().unwrap()
    }

    fn params(n: usize, k: usize) -> ReductionParams {
        ReductionParams::new(n, k).unwrap()
    }

    /// Largest k satisfying the bound, by direct search.
    fn max_k_brute(n: usize) -> usize {
        let mut best = 0;
        for k in 1..40usize {
            if k + (1usize << (k - 1)) <= n {
                best = k;
            }
        }
        best
    }

    #[test]
    fn max_k_examples() {
        assert_eq!(max_k(10), 3);
        assert_eq!(max_k(12), 4);
        assert_eq!(max_k(1), 0);
        assert_eq!(max_k(2), 1);
        assert_eq!(max_k(4), 2);
        for n in 0..5000 {
            assert_eq!(max_k(n), max_k_brute(n), "n={n}");
        }
    }

    #[test]
    fn params_validation() {
        assert!(ReductionParams::new(10, 3).is_ok());
        assert!(ReductionParams::new(10, 4).is_err());
        assert!(ReductionParams::new(10, 0).is_err());
        assert!(ReductionParams::new(1, 1).is_err());
        assert!(ReductionParams::new(2, 1).is_ok());
    }

    #[test]
    fn expected_reduction_values() {
        assert_eq!(expected_reduction(1).unwrap(), Ratio::new(1, 2));
        assert_eq!(expected_reduction(2).unwrap(), Ratio::new(3, 4));
        assert_eq!(expected_reduction(3).unwrap(), Ratio::new(3, 4));
        assert_eq!(expected_reduction(4).unwrap(), Ratio::new(5, 8));
        assert!(expected_reduction(0).is_err());
        // k = 2 and 3 tie for the best average saving.
        let best = (1..=40)
            .map(|k| expected_reduction(k).unwrap())
            .max()
            .unwrap();
        assert_eq!(best, Ratio::new(3, 4));
    }

    #[test]
    fn expected_reduction_matches_length_distribution() {
        for k in 1..=8 {
            let p = params(k + (1 << (k - 1)), k);
            let mean: Ratio<u64> = p
                .length_distribution()
                .iter()
                .map(|&(len, prob)| prob * (p.n() - len) as u64)
                .sum();
            let want = expected_reduction(k).unwrap();
            assert_eq!(
                Ratio::new(*mean.numer() as u128, *mean.denom() as u128),
                want
            );
        }
    }

    #[test]
    fn reserved_pattern_examples() {
        assert_eq!(
            reserved_pattern(&params(10, 2), 1).unwrap().bits,
            bits("01")
        );
        assert_eq!(
            reserved_pattern(&params(10, 2), 2).unwrap().bits,
            bits("00")
        );
        assert_eq!(reserved_pattern(&params(10, 1), 1).unwrap().bits, bits("1"));
        assert!(matches!(
            reserved_pattern(&params(10, 2), 3),
            Err(Error::PatternIndexOutOfRange { index: 3, k: 2 })
        ));
        assert!(reserved_pattern(&params(10, 2), 0).is_err());
    }

    #[test]
    fn allowed_tails_exclude_reserved() {
        for n in 2..200 {
            for k in 1..=max_k(n) {
                let p = params(n, k);
                let reserved: Vec<_> = reserved_patterns(&p).into_iter().map(|r| r.bits).collect();
                let allowed: Vec<_> = (0..p.allowed_tail_count())
                    .map(|i| allowed_tail(&p, i).unwrap())
                    .collect();
                let mut every: Vec<_> = allowed
                    .iter()
                    .chain(&reserved)
                    .map(|b| b.to_uint())
                    .collect();
                every.sort_unstable();
                assert_eq!(every, (0..1u64 << k).collect::<Vec<_>>(), "n={n} k={k}");
                assert!(allowed.windows(2).all(|w| w[0].to_uint() < w[1].to_uint()));
                assert!(allowed_tail(&p, p.allowed_tail_count()).is_none());
            }
        }
    }

    #[test]
    fn length_probabilities() {
        let d = params(10, 1).length_distribution();
        assert_eq!(d, vec![(10, Ratio::new(1, 2)), (9, Ratio::new(1, 2))]);
        let d = params(10, 2).length_distribution();
        assert_eq!(
            d,
            vec![
                (10, Ratio::new(1, 2)),
                (9, Ratio::new(1, 4)),
                (8, Ratio::new(1, 4))
            ]
        );
    }

    #[test]
    fn sampled_lengths_follow_weights() {
        let p = params(10, 2);
        let mut src = RandomSource::new(11);
        let trials = 100_000;
        let mut counts = [0usize; 3];
        for _ in 0..trials {
            counts[10 - sample_pad_length(&p, &mut src)] += 1;
        }
        for (count, want) in counts.iter().zip([0.5, 0.25, 0.25]) {
            let freq = *count as f64 / trials as f64;
            assert!((freq - want).abs() < 0.01, "{counts:?}");
        }
    }

    #[test]
    fn full_length_pads_avoid_reserved_tails() {
        let p2 = params(10, 2);
        let p1 = params(10, 1);
        let mut src = RandomSource::new(77);
        let mut full2 = 0;
        for _ in 0..10_000 {
            let gp = generate_reduced_pad(&p2, &mut src);
            assert!(gp.original_length() <= 10);
            if gp.original_length() == 10 {
                full2 += 1;
                let tail = gp.bits().suffix(2);
                assert!(tail != bits("01") && tail != bits("00"));
            }
            let gp = generate_reduced_pad(&p1, &mut src);
            if gp.original_length() == 10 {
                assert_eq!(gp.bits().last(), Some(false));
            }
        }
        assert!(full2 > 0);
    }

    #[test]
    fn effective_pad_examples() {
        let short = bits("101100100");
        let gp = GeneratedPad::from_transmitted(short.clone(), &params(10, 1)).unwrap();
        assert_eq!(
            effective_pad(&gp, &params(10, 1)).unwrap().bits(),
            &bits("1011001001")
        );

        let gp = GeneratedPad::from_transmitted(short, &params(10, 2)).unwrap();
        assert_eq!(
            effective_pad(&gp, &params(10, 2)).unwrap().bits(),
            &bits("1011001001")
        );

        let full = bits("1011001010");
        let gp = GeneratedPad::from_transmitted(full.clone(), &params(10, 2)).unwrap();
        assert_eq!(effective_pad(&gp, &params(10, 2)).unwrap().bits(), &full);
    }

    #[test]
    fn inconsistent_pads_rejected() {
        let p = params(10, 2);
        for s in ["1011001000", "1011001001", "10110010101", "1011001"] {
            assert!(matches!(
                GeneratedPad::from_transmitted(bits(s), &p),
                Err(Error::InconsistentPad { .. })
            ));
        }
    }

    #[test]
    fn reduced_encryption_example() {
        let p = params(10, 1);
        let gp = GeneratedPad::from_transmitted(bits("101100100"), &p).unwrap();
        let c = encrypt_reduced(&bits("0010110101"), &gp, &p).unwrap();
        assert_eq!(c, bits("1001111100"));
        assert_eq!(decrypt_reduced(&c, &gp, &p).unwrap(), bits("0010110101"));

        let zero = encrypt_reduced(&BitString::zeros(10), &gp, &p).unwrap();
        assert_eq!(&zero, effective_pad(&gp, &p).unwrap().bits());

        assert!(matches!(
            encrypt_reduced(&bits("001"), &gp, &p),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn build_pad_rejects_bad_draws() {
        let p = params(10, 2);
        assert!(build_pad(
            &p,
            &PadDraw::Full {
                prefix: BitString::zeros(8),
                tail_index: 2
            }
        )
        .is_err());
        assert!(build_pad(
            &p,
            &PadDraw::Full {
                prefix: BitString::zeros(7),
                tail_index: 0
            }
        )
        .is_err());
        assert!(build_pad(
            &p,
            &PadDraw::Short {
                dropped: 3,
                bits: BitString::zeros(7)
            }
        )
        .is_err());
        assert!(build_pad(
            &p,
            &PadDraw::Short {
                dropped: 1,
                bits: BitString::zeros(8)
            }
        )
        .is_err());
        assert!(build_pad(
            &p,
            &PadDraw::Short {
                dropped: 2,
                bits: BitString::zeros(8)
            }
        )
        .is_ok());
    }

    /// Single-bit rules written out as parity checks on `n - 1`.
    fn odd_even_completion(n: usize, pad: &BitString) -> BitString {
        let odd = (n - 1) % 2 == 1;
        if pad.len() == n - 1 {
            pad.concat(&BitString::from_bools(vec![odd]))
        } else {
            pad.prefix(n - 1).concat(&BitString::from_bools(vec![!odd]))
        }
    }

    #[test]
    fn single_bit_path_matches_parity_rules() {
        let mut src = RandomSource::new(3);
        for n in 2..=256 {
            let p = params(n, 1);
            assert_eq!(
                reserved_pattern(&p, 1).unwrap().bits.last(),
                Some((n - 1) % 2 == 1)
            );
            assert_eq!(allowed_tail(&p, 0).unwrap().last(), Some((n - 1) % 2 == 0));
            for _ in 0..8 {
                let gp = generate_reduced_pad(&p, &mut src);
                let eff = effective_pad(&gp, &p).unwrap();
                assert_eq!(eff.bits(), &odd_even_completion(n, gp.bits()));
            }
        }
    }
}
