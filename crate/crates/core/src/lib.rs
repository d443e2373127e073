//! A laboratory for one-time pad protocols.
//!
//! - [`bitcore`]: bit strings, the pinned random source, and the `OTPD` pad
//!   container.
//! - [`otp`]: the classical pad.
//! - [`reduction`]: transmitting a pad shorter than the message without
//!   losing perfect secrecy.
//! - [`codec`]: compressing pads with the publicly known message length.
//! - [`private_object`]: encryption as statements about a shared object.
//! - [`facts`]: bits carried by theoremhood in the pq-system.
//! - [`analysis`]: exact and statistical secrecy verification.
//! - [`cli`]: the `otp-lab` command line.
//!
//! The random source is a seeded ChaCha20 stream, not a true random source;
//! every result in this crate is reproducible from its seed.

pub mod analysis;
pub mod bitcore;
pub mod cli;
pub mod codec;
pub mod error;
pub mod facts;
pub mod otp;
pub mod private_object;
pub mod reduction;

pub use bitcore::{xor, BitString, RandomSource};
pub use error::{Error, Result};
pub use reduction::ReductionParams;
