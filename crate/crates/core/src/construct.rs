//! Extremal configurations as integer multisets and sequences.
//!
//! Each generator's zero-sum (or target-sum) count equals the matching
//! closed form in [`crate::formulas`].

use serde::Serialize;

use crate::count::{IntSequence, IntegerMultiset};
use crate::formulas::FormulaError;

/// Names the construction a generated multiset or sequence came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    /// `n - 1` ones and a single `-(r - 1)`.
    OneExceptional,
    /// `n - 2` ones and two copies of `-(r - 1)`.
    TwoExceptional,
    /// `n - floor(n/r)` ones and `floor(n/r)` copies of `-(r - 1)`.
    TwoClass,
    /// `floor(n/2)` ones and `ceil(n/2)` minus ones.
    BalancedSigns,
    /// `-1, 1, -1, 1, ...`.
    AlternatingSigns,
    /// `n - 1` ones and one 2, aimed at target `r`.
    GOneOff,
    /// `n - 2` ones and two 2s, aimed at target `r + 1`.
    GTwoOff,
}

impl Provenance {
    pub fn describe(self) -> &'static str {
        match self {
            Provenance::OneExceptional => "n-1 copies of 1 and one -(r-1)",
            Provenance::TwoExceptional => "n-2 copies of 1 and two -(r-1)",
            Provenance::TwoClass => "n-floor(n/r) copies of 1 and floor(n/r) copies of -(r-1)",
            Provenance::BalancedSigns => "floor(n/2) copies of 1 and ceil(n/2) copies of -1",
            Provenance::AlternatingSigns => "alternating -1, 1, -1, ...",
            Provenance::GOneOff => "n-1 copies of 1 and one 2, target r",
            Provenance::GTwoOff => "n-2 copies of 1 and two 2s, target r+1",
        }
    }
}

fn ones_and(ones: usize, other: i64, copies: usize) -> IntegerMultiset {
    IntegerMultiset::from_support([(1, ones), (other, copies)].into_iter().filter(|&(_, m)| m > 0))
        .expect("nonzero values, positive total")
}

/// Multiset attaining `h_formula(n, r)` zero-sum r-subsets.
pub fn construct_uniform(n: usize, r: usize) -> Result<(IntegerMultiset, Provenance), FormulaError> {
    if r < 2 || r + 1 > n {
        return Err(FormulaError::BadArgs {
            what: "uniform construction",
            n: n as u64,
            r: r as u64,
            need: "2 <= r <= n - 1",
        });
    }
    let neg = -(r as i64 - 1);
    Ok(match (2 * r).cmp(&n) {
        std::cmp::Ordering::Greater => (ones_and(n - 1, neg, 1), Provenance::OneExceptional),
        std::cmp::Ordering::Equal => (ones_and(n - 2, neg, 2), Provenance::TwoExceptional),
        std::cmp::Ordering::Less => {
            let k = n / r;
            (ones_and(n - k, neg, k), Provenance::TwoClass)
        }
    })
}

/// `floor(n/2)` ones and `ceil(n/2)` minus ones.
pub fn construct_nonuniform(n: usize) -> Result<IntegerMultiset, FormulaError> {
    if n < 1 {
        return Err(FormulaError::BadArgs { what: "nonuniform construction", n: 0, r: 0, need: "n >= 1" });
    }
    Ok(ones_and(n / 2, -1, n - n / 2))
}

/// `-1, 1, -1, 1, ...` of length `n`.
pub fn construct_ordered(n: usize) -> Result<IntSequence, FormulaError> {
    if n < 1 {
        return Err(FormulaError::BadArgs { what: "ordered construction", n: 0, r: 0, need: "n >= 1" });
    }
    let values = (0..n).map(|i| if i % 2 == 0 { -1 } else { 1 }).collect();
    Ok(IntSequence::new(values).expect("no zeros"))
}

/// A multiset and target whose r-subset count equals `g_formula(n, r)`,
/// without all elements being equal to `target / r`.
///
/// `n = 2` has no such configuration (both elements would have to share
/// the target class), so it is rejected.
pub fn g_construct(n: usize, r: usize) -> Result<(IntegerMultiset, i128, Provenance), FormulaError> {
    if r < 1 || r + 1 > n || n < 3 {
        return Err(FormulaError::BadArgs {
            what: "g construction",
            n: n as u64,
            r: r as u64,
            need: "1 <= r <= n - 1 and n >= 3",
        });
    }
    Ok(match (2 * r).cmp(&n) {
        std::cmp::Ordering::Less => (ones_and(n - 1, 2, 1), r as i128, Provenance::GOneOff),
        std::cmp::Ordering::Equal => (ones_and(n - 2, 2, 2), r as i128 + 1, Provenance::GTwoOff),
        std::cmp::Ordering::Greater => (ones_and(n - 1, -(r as i64 - 1), 1), 0, Provenance::OneExceptional),
    })
}
