use itertools::Itertools;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::SearchError;
use crate::count::{IntegerMultiset, SupportEntry};

/// The finite window of multisets a search scans: `n` elements with values
/// in `[-V, V] \ {0}` and at most `K` distinct values.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchSpace {
    pub n: usize,
    #[serde(rename = "V")]
    pub max_abs_value: i64,
    #[serde(rename = "K")]
    pub max_support: usize,
}

impl SearchSpace {
    pub fn new(n: usize, max_abs_value: i64, max_support: usize) -> Result<Self, SearchError> {
        let space = SearchSpace { n, max_abs_value, max_support };
        if n < 1 || max_abs_value < 1 || max_support < 1 || max_support as i64 > 2 * max_abs_value {
            return Err(SearchError::InfeasibleSpace(space));
        }
        Ok(space)
    }

    /// `V = max(6, r - 1)`, `K = 3`.
    pub fn default_for(n: usize, r: usize) -> Result<Self, SearchError> {
        Self::new(n, (r as i64 - 1).max(6), 3)
    }

    pub fn contains(&self, m: &IntegerMultiset) -> bool {
        m.len() == self.n
            && m.support().len() <= self.max_support
            && m.support().iter().all(|e| e.value.abs() <= self.max_abs_value)
    }

    /// Nonzero values of the window in ascending order.
    fn values(&self) -> Vec<i64> {
        (-self.max_abs_value..=self.max_abs_value).filter(|&v| v != 0).collect()
    }

    /// Candidate supports, by size and then lexicographically. Supports whose
    /// values share a factor hold no canonical profile and are skipped.
    pub(crate) fn supports(&self) -> Vec<Vec<i64>> {
        let values = self.values();
        (1..=self.max_support.min(self.n))
            .flat_map(|k| values.iter().copied().combinations(k))
            .filter(|s| s.iter().fold(0i64, |g, v| g.gcd(v)) == 1)
            .collect()
    }
}

/// Divides out the gcd of the values, then fixes the sign: the orientation
/// with more positive elements wins, and on a tie the lexicographically
/// smaller `(value, mult)` list.
pub fn canonicalize(m: &IntegerMultiset) -> IntegerMultiset {
    let g = m.support().iter().fold(0i64, |g, e| g.gcd(&e.value));
    let reduced = if g > 1 {
        IntegerMultiset::from_support(m.support().iter().map(|e| (e.value / g, e.mult)))
            .expect("division keeps values nonzero")
    } else {
        m.clone()
    };
    orient(reduced)
}

fn orient(m: IntegerMultiset) -> IntegerMultiset {
    let (p, q) = (m.positives(), m.negatives());
    if p > q {
        return m;
    }
    let neg = m.negated();
    if p < q || neg.support() < m.support() {
        neg
    } else {
        m
    }
}

pub fn is_canonical(m: &IntegerMultiset) -> bool {
    canonicalize(m) == *m
}

/// Compositions of `n` into exactly `k` positive parts, lexicographic.
fn compositions(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(left: usize, parts: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 1 {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for first in 1..=left - (parts - 1) {
            cur.push(first);
            go(left - first, parts - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k >= 1 && k <= n {
        go(n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

/// Canonical profiles with exactly the given support.
pub(crate) fn profiles_with_support(values: &[i64], n: usize) -> impl Iterator<Item = IntegerMultiset> + '_ {
    compositions(n, values.len()).into_iter().filter_map(move |mults| {
        let support: Vec<SupportEntry> =
            values.iter().zip(mults).map(|(&value, mult)| SupportEntry { value, mult }).collect();
        let m = IntegerMultiset::from_sorted_unchecked(support);
        // The gcd condition was checked per support; only the sign rule is left.
        (orient(m.clone()) == m).then_some(m)
    })
}

/// Every canonical multiset of the window exactly once, in a fixed order.
pub fn enumerate_profiles(space: &SearchSpace) -> impl Iterator<Item = IntegerMultiset> {
    let n = space.n;
    space.supports().into_iter().flat_map(move |s| profiles_with_support(&s, n).collect::<Vec<_>>())
}
