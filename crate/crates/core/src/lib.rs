//! Exact arithmetic over the rithmomachia number tables.
//!
//! The piece values of the medieval board game rithmomachia are the first
//! terms of a family of *fiboquadratic* sequences: interleavings of squares
//! and consecutive products of a generalized Fibonacci sequence. This crate
//! generates those tables, verifies the Cassini-type identities they carry
//! (Cassini, Catalan, Vajda, Tagiuri, the row-sum law), classifies adjacent
//! rows by the Nicomachus/Boethius ratio taxonomy and searches piece values
//! for the progressions behind the game's major victories.
//!
//! Every integer is a [`ExactInt`] and every quotient an [`ExactRational`];
//! decimal output (golden-ratio approximations, Binet evaluation, convergence
//! errors) goes through the fixed-point [`Decimal`] type and always carries
//! an explicit precision.

pub mod board;
pub mod boethius;
pub mod decimal;
mod error;
pub mod exact;
pub mod fibcore;
pub mod fiboquad;
pub mod identities;
pub mod oeis;

pub use decimal::Decimal;
pub use error::{Error, Result};
pub use exact::{ExactInt, ExactRational};
pub use fibcore::{fib, gfib, GeneralizedFibSeed, GoldenConstants, GoldenElement};

/// Default number of fractional digits for decimal evaluation.
pub const DEFAULT_PRECISION: u32 = 50;
