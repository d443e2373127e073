use thiserror::Error;

use crate::facts::MalformedPq;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("length mismatch: {left} bits vs {right} bits")]
    LengthMismatch { left: usize, right: usize },

    #[error("invalid bit character {found:?} at position {position}")]
    InvalidBitChar { position: usize, found: char },

    #[error("pad length must be at least 1 bit")]
    ZeroLengthPad,

    #[error("pad has already been used once")]
    PadConsumed,

    #[error("bad pad file magic: expected \"OTPD\"")]
    BadMagic,

    #[error("truncated pad file: need {expected} bytes, found {found}")]
    Truncated { expected: usize, found: usize },

    #[error("pad file has {extra} unexpected trailing bytes")]
    TrailingBytes { extra: usize },

    #[error("pad file has nonzero padding bits in its final byte")]
    NonzeroPadding,

    #[error("pad file declares {bits} bits, which does not fit in memory")]
    OversizedPad { bits: u64 },

    #[error("invalid reduction parameters n={n}, k={k}: {reason}")]
    InvalidParams {
        n: usize,
        k: usize,
        reason: &'static str,
    },

    #[error("reserved pattern index {index} outside 1..={k}")]
    PatternIndexOutOfRange { index: usize, k: usize },

    #[error("pad of {len} bits is inconsistent with n={n}, k={k}: {reason}")]
    InconsistentPad {
        len: usize,
        n: usize,
        k: usize,
        reason: &'static str,
    },

    #[error("cannot compress an empty pad")]
    EmptyPad,

    #[error("compressed pad has {len} bits, more than message length {n}")]
    CompressedTooLong { len: usize, n: usize },

    #[error(
        "full-length compressed pad contains a 1 bit; only the all-zeros pad is sent uncompressed"
    )]
    CorruptFullLength,

    #[error("message of {len} bits exceeds object entropy of {entropy} bits")]
    MessageExceedsEntropy { len: usize, entropy: usize },

    #[error("feature index {index} outside 1..={entropy}")]
    FeatureOutOfRange { index: usize, entropy: usize },

    #[error("feature index {index} used by more than one statement")]
    DuplicateFeature { index: usize },

    #[error("statement line {line}: {reason}")]
    StatementSyntax { line: usize, reason: String },

    #[error(transparent)]
    MalformedPq(#[from] MalformedPq),

    #[error("size bound {bound} is below the minimum of 6 characters")]
    SizeBoundTooSmall { bound: usize },

    #[error("invalid trial configuration: {0}")]
    InvalidConfig(&'static str),
}
