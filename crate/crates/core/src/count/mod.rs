//! Exact zero-sum counting over integer multisets and sequences.
//!
//! * [`count_dp`] / [`spectrum`]: r-subset sum counts by dynamic programming
//!   over the support, with [`count_bruteforce`] as the enumeration oracle.
//! * [`count_all_sizes_zero`]: zero-sum subsets of every size.
//! * [`count_intervals_zero`]: zero-sum contiguous runs via prefix sums.
//! * [`sample_chain_check`] / [`exhaustive_chain_check`]: maximal chains of
//!   the signed-size poset.

mod chain;
mod interval;
mod multiset;
mod subset;

use thiserror::Error;

pub use chain::{
    exhaustive_chain_check, sample_chain_check, signed_size, ChainReport, ExhaustiveChainReport, EXHAUSTIVE_CHAIN_MAX_N,
};
pub use interval::{count_intervals_zero, sum_chain_bound_check, sum_chain_zero_counts};
pub use multiset::{IntSequence, IntegerMultiset, MultisetDoc, SupportEntry};
pub use subset::{
    all_sizes_bruteforce, count_all_sizes_zero, count_bruteforce, count_dp, spectrum, spectrum_bruteforce, SumSpectrum,
    BRUTE_FORCE_MAX_N,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CountError {
    /// `index` is zero-based; the message names the element one-based.
    #[error("element {} is zero; all elements must be nonzero", .index + 1)]
    ZeroElement { index: usize },
    #[error("value {value} has multiplicity 0")]
    ZeroMultiplicity { value: i64 },
    #[error("a multiset needs at least one element")]
    Empty,
    #[error("n = {n} exceeds the exhaustive-enumeration limit of {limit}")]
    SizeLimit { n: usize, limit: usize },
    #[error("{0}")]
    Schema(String),
}
