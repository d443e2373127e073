//! Secrecy and reduction verification.
//!
//! [`exhaustive_secrecy_check`] walks every coin outcome and every random bit
//! of the reduced-pad protocol with exact rational weights and demands that
//! the completed pad be exactly uniform. The statistical harnesses
//! ([`eve_guess_rate`], [`distinguisher_test`], [`reduction_stats`]) run
//! independent trials in parallel; trial `t` draws everything from its own
//! [`RandomSource`] seeded with [`child_seed`], so results do not depend on
//! scheduling.

use std::fmt;

use num_rational::Ratio;
use rayon::prelude::*;

use crate::bitcore::{BitString, RandomSource};
use crate::error::{Error, Result};
use crate::reduction::{
    build_pad, effective_pad, encrypt_reduced, expected_reduction, generate_reduced_pad,
    reserved_pattern, PadDraw, ReductionParams,
};

/// Largest message length [`exhaustive_secrecy_check`] will enumerate.
pub const EXACT_MAX_N: usize = 10;
/// Largest message length [`distinguisher_test`] will histogram.
pub const DISTINGUISH_MAX_N: usize = 12;

const SEED_STRIDE: u64 = 0x9E37_79B9_7F4A_7C15;

/// Seed for the source owned by trial `trial`.
pub fn child_seed(seed: u64, trial: u64) -> u64 {
    seed ^ SEED_STRIDE.wrapping_mul(trial.wrapping_add(1))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exact,
    Statistical,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Exact => "exact",
            Mode::Statistical => "statistical",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Evidence {
    /// Probability of every `n`-bit completed pad, indexed by its value.
    Exact {
        probabilities: Vec<Ratio<u64>>,
        max_deviation: Ratio<u64>,
    },
    /// Ciphertext histograms for the two messages.
    Statistical {
        counts: [Vec<u64>; 2],
        trials: u64,
        tv_distance: f64,
        threshold: f64,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct SecrecyReport {
    pub params: ReductionParams,
    pub evidence: Evidence,
    pub pass: bool,
}

impl SecrecyReport {
    pub fn mode(&self) -> Mode {
        match self.evidence {
            Evidence::Exact { .. } => Mode::Exact,
            Evidence::Statistical { .. } => Mode::Statistical,
        }
    }

    fn verdict(&self) -> &'static str {
        if self.pass {
            "PASS"
        } else {
            "FAIL"
        }
    }
}

impl fmt::Display for SecrecyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (n, k) = (self.params.n(), self.params.k());
        match &self.evidence {
            Evidence::Exact {
                probabilities,
                max_deviation,
            } => {
                writeln!(f, "exact secrecy check n={n} k={k}")?;
                for (value, p) in probabilities.iter().enumerate() {
                    writeln!(f, "  {} {}", BitString::from_uint(value as u64, n), p)?;
                }
                writeln!(f, "uniform target 1/{}: {}", 1u64 << n, self.verdict())?;
                writeln!(f)?;
                writeln!(f, "mode=exact")?;
                writeln!(f, "n={n}")?;
                writeln!(f, "k={k}")?;
                writeln!(f, "values={}", probabilities.len())?;
                writeln!(f, "max_deviation={max_deviation}")?;
                writeln!(f, "threshold=0")?;
            }
            Evidence::Statistical {
                counts: _,
                trials,
                tv_distance,
                threshold,
            } => {
                writeln!(f, "distinguisher n={n} k={k} trials={trials}")?;
                writeln!(
                    f,
                    "total variation {tv_distance:.6} vs threshold {threshold:.6}: {}",
                    self.verdict()
                )?;
                writeln!(f)?;
                writeln!(f, "mode=statistical")?;
                writeln!(f, "n={n}")?;
                writeln!(f, "k={k}")?;
                writeln!(f, "trials={trials}")?;
                writeln!(f, "tv_distance={tv_distance:.6}")?;
                writeln!(f, "threshold={threshold:.6}")?;
            }
        }
        write!(f, "pass={}", self.pass)
    }
}

/// The honest completion: build the transmitted pad, then complete it.
pub fn protocol_completion(params: &ReductionParams, draw: &PadDraw) -> Result<BitString> {
    Ok(effective_pad(&build_pad(params, draw)?, params)?.into_bits())
}

/// A broken completion for checker sanity tests: full-length pads end in the
/// reserved pattern `P_1` instead of an allowed tail.
pub fn misforced_completion(params: &ReductionParams, draw: &PadDraw) -> Result<BitString> {
    match draw {
        PadDraw::Full { prefix, .. } => Ok(prefix.concat(&reserved_pattern(params, 1)?.bits)),
        short => protocol_completion(params, short),
    }
}

fn all_strings(len: usize) -> impl Iterator<Item = BitString> {
    (0..1u64 << len).map(move |v| BitString::from_uint(v, len))
}

/// Every draw of the protocol with its exact probability.
///
/// A short pad of length `n - i` has weight `2^-k * 2^-(n-i)`; a full pad has
/// weight `(1 - k 2^-k) * 2^-(n-k) / (2^k - k)` for each of its prefixes and
/// allowed tails.
pub fn enumerate_draws(params: &ReductionParams) -> Vec<(PadDraw, Ratio<u64>)> {
    let (n, k) = (params.n(), params.k());
    let coin = Ratio::new(1u64, 1 << k);
    let allowed = (1u64 << k) - k as u64;
    let full_weight = (Ratio::from_integer(1) - coin * k as u64)
        * Ratio::new(1, 1u64 << (n - k))
        * Ratio::new(1, allowed);
    let mut draws = Vec::new();
    for prefix in all_strings(n - k) {
        for tail_index in 0..allowed {
            draws.push((
                PadDraw::Full {
                    prefix: prefix.clone(),
                    tail_index,
                },
                full_weight,
            ));
        }
    }
    for dropped in 1..=k {
        let weight = coin * Ratio::new(1, 1u64 << (n - dropped));
        for bits in all_strings(n - dropped) {
            draws.push((PadDraw::Short { dropped, bits }, weight));
        }
    }
    draws
}

pub fn exhaustive_secrecy_check(params: &ReductionParams) -> Result<SecrecyReport> {
    exhaustive_secrecy_check_with(params, protocol_completion)
}

/// Exact check against an arbitrary completion function.
pub fn exhaustive_secrecy_check_with<F>(
    params: &ReductionParams,
    complete: F,
) -> Result<SecrecyReport>
where
    F: Fn(&ReductionParams, &PadDraw) -> Result<BitString>,
{
    let n = params.n();
    if n > EXACT_MAX_N {
        return Err(Error::InvalidConfig("exact enumeration supports n <= 10"));
    }
    let mut probabilities = vec![Ratio::from_integer(0u64); 1 << n];
    for (draw, weight) in enumerate_draws(params) {
        let pad = complete(params, &draw)?;
        if pad.len() != n {
            return Err(Error::LengthMismatch {
                left: pad.len(),
                right: n,
            });
        }
        probabilities[pad.to_uint() as usize] += weight;
    }
    let target = Ratio::new(1u64, 1 << n);
    let max_deviation = probabilities
        .iter()
        .map(|&p| if p > target { p - target } else { target - p })
        .max()
        .unwrap_or_default();
    let total: Ratio<u64> = probabilities.iter().sum();
    let pass = max_deviation == Ratio::from_integer(0) && total == Ratio::from_integer(1);
    Ok(SecrecyReport {
        params: *params,
        evidence: Evidence::Exact {
            probabilities,
            max_deviation,
        },
        pass,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrialConfig {
    params: ReductionParams,
    trials: u64,
    seed: u64,
    m0: BitString,
    m1: BitString,
}

impl TrialConfig {
    /// Distinguishing messages default to all zeros and all ones.
    pub fn new(params: ReductionParams, trials: u64, seed: u64) -> Result<Self> {
        Self::with_messages(
            params,
            trials,
            seed,
            BitString::zeros(params.n()),
            BitString::ones(params.n()),
        )
    }

    pub fn with_messages(
        params: ReductionParams,
        trials: u64,
        seed: u64,
        m0: BitString,
        m1: BitString,
    ) -> Result<Self> {
        if trials == 0 {
            return Err(Error::InvalidConfig("trials must be at least 1"));
        }
        if m0.len() != params.n() || m1.len() != params.n() {
            return Err(Error::InvalidConfig("messages must be n bits long"));
        }
        if m0 == m1 {
            return Err(Error::InvalidConfig("distinguishing messages must differ"));
        }
        Ok(Self {
            params,
            trials,
            seed,
            m0,
            m1,
        })
    }

    pub fn params(&self) -> &ReductionParams {
        &self.params
    }

    pub fn trials(&self) -> u64 {
        self.trials
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn messages(&self) -> (&BitString, &BitString) {
        (&self.m0, &self.m1)
    }

    fn source(&self, trial: u64) -> RandomSource {
        RandomSource::new(child_seed(self.seed, trial))
    }
}

fn add_counts(mut a: Vec<u64>, b: Vec<u64>) -> Vec<u64> {
    a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
    a
}

#[derive(Clone, Debug, PartialEq)]
pub struct EveReport {
    pub trials: u64,
    /// Correct guesses for each protected position `n-k+1 ..= n`.
    pub correct: Vec<u64>,
}

impl EveReport {
    pub fn per_bit_rate(&self) -> Vec<f64> {
        self.correct
            .iter()
            .map(|&c| c as f64 / self.trials as f64)
            .collect()
    }

    pub fn success_rate(&self) -> f64 {
        let total: u64 = self.correct.iter().sum();
        total as f64 / (self.trials * self.correct.len() as u64) as f64
    }
}

impl fmt::Display for EveReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "eve guessing the last {} message bits over {} trials",
            self.correct.len(),
            self.trials
        )?;
        for (i, rate) in self.per_bit_rate().iter().enumerate() {
            writeln!(f, "  protected bit {}: {:.4}", i + 1, rate)?;
        }
        writeln!(f)?;
        writeln!(f, "mode=statistical")?;
        writeln!(f, "trials={}", self.trials)?;
        writeln!(f, "guessed_bits={}", self.correct.len())?;
        write!(f, "success_rate={:.6}", self.success_rate())
    }
}

/// Eve sees each ciphertext and guesses the `k` protected message bits at
/// random.
pub fn eve_guess_rate(cfg: &TrialConfig) -> EveReport {
    let params = cfg.params;
    let (n, k) = (params.n(), params.k());
    let correct = (0..cfg.trials)
        .into_par_iter()
        .map(|t| {
            let mut src = cfg.source(t);
            let message = src.random_bits(n);
            let pad = generate_reduced_pad(&params, &mut src);
            let ciphertext = encrypt_reduced(&message, &pad, &params).expect("lengths match");
            debug_assert_eq!(ciphertext.len(), n);
            (0..k)
                .map(|j| u64::from(src.next_bit() == message.get(n - k + j).unwrap()))
                .collect::<Vec<_>>()
        })
        .reduce(|| vec![0; k], add_counts);
    EveReport {
        trials: cfg.trials,
        correct,
    }
}

/// `3 * sqrt(2^n / trials)`.
pub fn distinguisher_threshold(n: usize, trials: u64) -> f64 {
    3.0 * ((1u64 << n) as f64 / trials as f64).sqrt()
}

pub fn distinguisher_test(cfg: &TrialConfig) -> Result<SecrecyReport> {
    distinguisher_test_with(cfg, |params, src| {
        let pad = generate_reduced_pad(params, src);
        effective_pad(&pad, params).map(|e| e.into_bits())
    })
}

/// Distinguisher over an arbitrary effective-pad generator.
pub fn distinguisher_test_with<G>(cfg: &TrialConfig, pad_source: G) -> Result<SecrecyReport>
where
    G: Fn(&ReductionParams, &mut RandomSource) -> Result<BitString> + Sync,
{
    let params = cfg.params;
    let n = params.n();
    if n > DISTINGUISH_MAX_N {
        return Err(Error::InvalidConfig("distinguisher supports n <= 12"));
    }
    let bins = 1usize << n;
    let (c0, c1) = (0..cfg.trials)
        .into_par_iter()
        .map(|t| -> Result<(usize, usize)> {
            let mut src = cfg.source(t);
            let p0 = pad_source(&params, &mut src)?;
            let p1 = pad_source(&params, &mut src)?;
            let c0 = crate::bitcore::xor(&cfg.m0, &p0)?;
            let c1 = crate::bitcore::xor(&cfg.m1, &p1)?;
            Ok((c0.to_uint() as usize, c1.to_uint() as usize))
        })
        .try_fold(
            || (vec![0u64; bins], vec![0u64; bins]),
            |(mut h0, mut h1), pair| {
                let (a, b) = pair?;
                h0[a] += 1;
                h1[b] += 1;
                Ok::<_, Error>((h0, h1))
            },
        )
        .try_reduce(
            || (vec![0u64; bins], vec![0u64; bins]),
            |(a0, a1), (b0, b1)| Ok((add_counts(a0, b0), add_counts(a1, b1))),
        )?;
    let trials = cfg.trials;
    let diff: u64 = c0.iter().zip(&c1).map(|(&a, &b)| a.abs_diff(b)).sum();
    let tv_distance = diff as f64 / (2.0 * trials as f64);
    let threshold = distinguisher_threshold(n, trials);
    Ok(SecrecyReport {
        params,
        evidence: Evidence::Statistical {
            counts: [c0, c1],
            trials,
            tv_distance,
            threshold,
        },
        pass: tv_distance < threshold,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct LengthFrequency {
    pub length: usize,
    pub count: u64,
    pub expected: Ratio<u64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReductionStats {
    pub params: ReductionParams,
    pub trials: u64,
    pub mean_saved: f64,
    /// Standard error of `mean_saved` under the protocol's length law.
    pub std_error: f64,
    pub expected_mean: Ratio<u128>,
    pub lengths: Vec<LengthFrequency>,
}

impl ReductionStats {
    pub fn frequency(&self, length: usize) -> Option<f64> {
        self.lengths
            .iter()
            .find(|l| l.length == length)
            .map(|l| l.count as f64 / self.trials as f64)
    }

    pub fn expected_mean_f64(&self) -> f64 {
        *self.expected_mean.numer() as f64 / *self.expected_mean.denom() as f64
    }

    /// Whether the empirical mean lies within `sigmas` standard errors of the
    /// closed form.
    pub fn mean_within(&self, sigmas: f64) -> bool {
        (self.mean_saved - self.expected_mean_f64()).abs() <= sigmas * self.std_error
    }
}

impl fmt::Display for ReductionStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (n, k) = (self.params.n(), self.params.k());
        writeln!(f, "reduction statistics n={n} k={k} trials={}", self.trials)?;
        writeln!(
            f,
            "mean saved bits {:.6} (expected {} = {:.6}, std error {:.6})",
            self.mean_saved,
            self.expected_mean,
            self.expected_mean_f64(),
            self.std_error
        )?;
        for l in &self.lengths {
            writeln!(
                f,
                "  length {:>4}: {:.6} (expected {})",
                l.length,
                l.count as f64 / self.trials as f64,
                l.expected
            )?;
        }
        writeln!(f)?;
        writeln!(f, "mode=statistical")?;
        writeln!(f, "n={n}")?;
        writeln!(f, "k={k}")?;
        writeln!(f, "trials={}", self.trials)?;
        writeln!(f, "mean_saved={:.6}", self.mean_saved)?;
        writeln!(f, "expected_mean={}", self.expected_mean)?;
        writeln!(f, "std_error={:.6}", self.std_error)?;
        for l in &self.lengths {
            writeln!(
                f,
                "freq_{}={:.6}",
                l.length,
                l.count as f64 / self.trials as f64
            )?;
        }
        write!(f, "mean_within_3_sigma={}", self.mean_within(3.0))
    }
}

pub fn reduction_stats(cfg: &TrialConfig) -> ReductionStats {
    let params = cfg.params;
    let (n, k) = (params.n(), params.k());
    let counts = (0..cfg.trials)
        .into_par_iter()
        .map(|t| {
            let pad = generate_reduced_pad(&params, &mut cfg.source(t));
            let mut c = vec![0u64; k + 1];
            c[n - pad.original_length()] = 1;
            c
        })
        .reduce(|| vec![0; k + 1], add_counts);
    let saved: u64 = counts.iter().enumerate().map(|(s, &c)| s as u64 * c).sum();
    let trials = cfg.trials;
    let mean_saved = saved as f64 / trials as f64;

    let dist = params.length_distribution();
    let law_mean: f64 = dist
        .iter()
        .map(|&(len, p)| ratio_f64(p) * (n - len) as f64)
        .sum();
    let law_var: f64 = dist
        .iter()
        .map(|&(len, p)| ratio_f64(p) * ((n - len) as f64 - law_mean).powi(2))
        .sum();
    let lengths = dist
        .iter()
        .map(|&(length, expected)| LengthFrequency {
            length,
            count: counts[n - length],
            expected,
        })
        .collect();
    ReductionStats {
        params,
        trials,
        mean_saved,
        std_error: (law_var / trials as f64).sqrt(),
        expected_mean: expected_reduction(k).expect("k validated by params"),
        lengths,
    }
}

fn ratio_f64(r: Ratio<u64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}
