//! Conveying bits through theoremhood in a small formal system.
//!
//! The system is the pq-system: strings `x p y q z` written with hyphen runs
//! of lengths `x`, `y`, `z`. Axioms are `(a, 1, a + 1)` for every `a >= 1`,
//! and the single rule turns `(a, b, c)` into `(a, b + 1, c + 1)`. A string is
//! a theorem exactly when `x + y == z`.
//!
//! A theorem carries the bit `0` and a well-formed non-theorem carries `1`.
//! Theoremhood here is trivially decidable, so the channel is an illustration
//! of the mechanism and offers no secrecy of its own.

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

use crate::bitcore::RandomSource;
use crate::error::{Error, Result};

/// Smallest size bound at which both theorems and non-theorems exist.
pub const MIN_SIZE_BOUND: usize = 6;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MalformedPq {
    #[error("not well formed: empty string")]
    Empty,
    #[error("not well formed: unexpected byte {found:#04x} at offset {offset}")]
    BadSymbol { offset: usize, found: u8 },
    #[error("not well formed: missing 'p'")]
    MissingP,
    #[error("not well formed: missing 'q'")]
    MissingQ,
    #[error("not well formed: more than one 'p'")]
    ExtraP,
    #[error("not well formed: more than one 'q'")]
    ExtraQ,
    #[error("not well formed: 'q' appears before 'p'")]
    OutOfOrder,
    #[error("not well formed: hyphen group {group} is empty")]
    EmptyGroup { group: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PqString {
    x: usize,
    y: usize,
    z: usize,
}

impl PqString {
    /// `None` unless all three counts are at least 1.
    pub fn new(x: usize, y: usize, z: usize) -> Option<Self> {
        (x >= 1 && y >= 1 && z >= 1).then_some(Self { x, y, z })
    }

    pub fn x(&self) -> usize {
        self.x
    }

    pub fn y(&self) -> usize {
        self.y
    }

    pub fn z(&self) -> usize {
        self.z
    }

    pub fn counts(&self) -> (usize, usize, usize) {
        (self.x, self.y, self.z)
    }

    pub fn surface_len(&self) -> usize {
        self.x + self.y + self.z + 2
    }
}

impl fmt::Display for PqString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}p{}q{}",
            "-".repeat(self.x),
            "-".repeat(self.y),
            "-".repeat(self.z)
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Theorem,
    NonTheorem,
    NotWellFormed,
}

pub fn parse_pq(s: &str) -> Result<PqString, MalformedPq> {
    parse_pq_bytes(s.as_bytes())
}

/// Grammar: `-+ p -+ q -+`, nothing else.
pub fn parse_pq_bytes(input: &[u8]) -> Result<PqString, MalformedPq> {
    if input.is_empty() {
        return Err(MalformedPq::Empty);
    }
    let mut groups = [0usize; 3];
    let mut group = 0;
    for (offset, &byte) in input.iter().enumerate() {
        match (byte, group) {
            (b'-', _) => groups[group] += 1,
            (b'p', 0) => group = 1,
            (b'p', _) => return Err(MalformedPq::ExtraP),
            (b'q', 0) => return Err(MalformedPq::OutOfOrder),
            (b'q', 1) => group = 2,
            (b'q', _) => return Err(MalformedPq::ExtraQ),
            (found, _) => return Err(MalformedPq::BadSymbol { offset, found }),
        }
    }
    match group {
        0 => return Err(MalformedPq::MissingP),
        1 => return Err(MalformedPq::MissingQ),
        _ => {}
    }
    if let Some(empty) = groups.iter().position(|&g| g == 0) {
        return Err(MalformedPq::EmptyGroup { group: empty + 1 });
    }
    Ok(PqString {
        x: groups[0],
        y: groups[1],
        z: groups[2],
    })
}

pub fn is_theorem(ps: &PqString) -> bool {
    ps.x + ps.y == ps.z
}

pub fn classify(s: &str) -> Verdict {
    match parse_pq(s) {
        Ok(ps) if is_theorem(&ps) => Verdict::Theorem,
        Ok(_) => Verdict::NonTheorem,
        Err(_) => Verdict::NotWellFormed,
    }
}

/// Searches derivations breadth-first from the axioms, applying the rule at
/// most `max_steps` times.
///
/// Both the axioms and the rule only ever grow the hyphen counts, so any
/// string exceeding the target in some count is pruned.
pub fn derive_oracle(target: &PqString, max_steps: usize) -> bool {
    let within = |t: &PqString| t.x <= target.x && t.y <= target.y && t.z <= target.z;
    let mut frontier: Vec<PqString> = (1..=target.x)
        .map(|a| PqString {
            x: a,
            y: 1,
            z: a + 1,
        })
        .filter(within)
        .collect();
    let mut seen: HashSet<PqString> = frontier.iter().copied().collect();
    for depth in 0..=max_steps {
        if frontier.contains(target) {
            return true;
        }
        if depth == max_steps {
            break;
        }
        frontier = frontier
            .iter()
            .map(|t| PqString {
                x: t.x,
                y: t.y + 1,
                z: t.z + 1,
            })
            .filter(|t| within(t) && seen.insert(*t))
            .collect();
        if frontier.is_empty() {
            break;
        }
    }
    false
}

/// Every well-formed string with surface length at most `max_len`, ordered
/// by `(x, y, z)`.
pub fn well_formed_up_to(max_len: usize) -> impl Iterator<Item = PqString> {
    let budget = max_len.saturating_sub(2);
    (1..=budget).flat_map(move |x| {
        (1..=budget.saturating_sub(x)).flat_map(move |y| {
            (1..=budget.saturating_sub(x + y)).map(move |z| PqString { x, y, z })
        })
    })
}

fn theorem_count(budget: u64) -> u64 {
    // Theorems need 2(x + y) <= budget with x, y >= 1.
    let s = budget / 2;
    if s < 2 {
        0
    } else {
        s * (s - 1) / 2
    }
}

fn sample_theorem(budget: u64, src: &mut RandomSource) -> PqString {
    let mut index = src.uniform_below(theorem_count(budget));
    for sum in 2..=budget / 2 {
        let pairs = sum - 1;
        if index < pairs {
            let x = index + 1;
            let y = sum - x;
            return PqString {
                x: x as usize,
                y: y as usize,
                z: sum as usize,
            };
        }
        index -= pairs;
    }
    unreachable!("index below theorem count")
}

/// Non-theorems with first count `x` inside the hyphen budget.
fn non_theorems_with_x(budget: u64, x: u64) -> u64 {
    if budget < x + 2 {
        return 0;
    }
    let rest = budget - x;
    let all = rest * (rest - 1) / 2;
    all - (budget / 2).saturating_sub(x)
}

fn sample_non_theorem(budget: u64, src: &mut RandomSource) -> PqString {
    let total: u64 = (1..=budget).map(|x| non_theorems_with_x(budget, x)).sum();
    let mut index = src.uniform_below(total);
    let x = (1..=budget)
        .find(|&x| {
            let c = non_theorems_with_x(budget, x);
            if index < c {
                true
            } else {
                index -= c;
                false
            }
        })
        .expect("index below total");
    for y in 1..=budget - x - 1 {
        let z_max = budget - x - y;
        let skip = x + y <= z_max;
        let count = z_max - u64::from(skip);
        if index < count {
            let mut z = index + 1;
            if skip && z >= x + y {
                z += 1;
            }
            return PqString {
                x: x as usize,
                y: y as usize,
                z: z as usize,
            };
        }
        index -= count;
    }
    unreachable!("index below count for x")
}

/// A uniformly random string of surface length at most `size_bound` that is
/// a theorem when `bit` is `false` and a non-theorem when it is `true`.
pub fn encode_bit(bit: bool, src: &mut RandomSource, size_bound: usize) -> Result<String> {
    if size_bound < MIN_SIZE_BOUND {
        return Err(Error::SizeBoundTooSmall { bound: size_bound });
    }
    let budget = (size_bound - 2) as u64;
    let ps = if bit {
        sample_non_theorem(budget, src)
    } else {
        sample_theorem(budget, src)
    };
    Ok(ps.to_string())
}

/// `false` (bit 0) for a theorem, `true` (bit 1) for a non-theorem.
pub fn decode_string(s: &str) -> Result<bool> {
    let ps = parse_pq(s.trim_end_matches(['\r', '\n']))?;
    Ok(!is_theorem(&ps))
}
