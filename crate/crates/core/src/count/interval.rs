use std::collections::HashMap;

use super::IntSequence;
use crate::numeric::Count;

/// Number of nonempty runs `values[i..=j]` with sum zero.
///
/// A zero-sum run is a pair of equal prefix sums, so this is
/// `sum C(multiplicity, 2)` over the prefix-sum histogram.
pub fn count_intervals_zero(s: &IntSequence) -> Count {
    let mut seen: HashMap<i128, u64> = HashMap::from([(0, 1)]);
    let mut prefix: i128 = 0;
    let mut pairs: u64 = 0;
    for &v in s.values() {
        prefix += v as i128;
        let slot = seen.entry(prefix).or_default();
        pairs += *slot;
        *slot += 1;
    }
    Count::from(pairs)
}

/// For each start position, how many of the prefix sums
/// `values[start] + ... + values[k]` (k >= start) are zero.
pub fn sum_chain_zero_counts(s: &IntSequence) -> Vec<usize> {
    let values = s.values();
    (0..values.len())
        .map(|start| {
            let mut sum: i128 = 0;
            values[start..]
                .iter()
                .filter(|&&v| {
                    sum += v as i128;
                    sum == 0
                })
                .count()
        })
        .collect()
}

/// Checks that every sum-chain starting at position `start` (0-based) holds at
/// most `floor((n - start) / 2)` zero sums.
pub fn sum_chain_bound_check(s: &IntSequence) -> bool {
    let n = s.len();
    sum_chain_zero_counts(s).into_iter().enumerate().all(|(start, zeros)| zeros <= (n - start) / 2)
}
