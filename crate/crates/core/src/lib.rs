//! Exact counting and exhaustive search for extremal zero-sum problems.
//!
//! How many `r`-element subsets of `n` irrational numbers can have a rational
//! sum? A linear map killing exactly the rationals turns the question into
//! counting zero-sum subsets of a multiset of nonzero integers. This crate
//! provides that reduction ([`symbolic`]), exact counters ([`count`]),
//! closed forms and extremal constructions ([`formulas`], [`construct`]),
//! and a canonicalized exhaustive search over small integer windows
//! ([`search`]) used to certify the closed forms and probe the open cases.

pub mod construct;
pub mod count;
pub mod formulas;
pub mod numeric;
pub mod sample;
pub mod search;
pub mod symbolic;
pub mod verify;

pub use count::{IntSequence, IntegerMultiset};
pub use numeric::{binomial, Count, Rational};

/// Toolkit version recorded in every report.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
