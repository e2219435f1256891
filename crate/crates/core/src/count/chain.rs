//! Maximal chains in the signed-size poset on subsets.
//!
//! A maximal chain starts from the set of negative elements and walks a
//! permutation of all positions: positives are added, negatives removed.
//! Every step raises the running sum, so each chain holds at most one
//! zero-sum subset. A subset with signed size `t` lies on
//! `(p - t)! (n - p + t)!` chains, `p` being the number of positives.

use std::collections::HashMap;

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{CountError, IntegerMultiset};
use crate::numeric::{binomial, Count};

pub const EXHAUSTIVE_CHAIN_MAX_N: usize = 8;

/// `(#positive) - (#negative)`.
pub fn signed_size(subset: &[i64]) -> i64 {
    subset.iter().map(|v| v.signum()).sum()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainReport {
    pub trials: u64,
    pub violations: Count,
    /// Subsets per chain; always `n + 1`.
    pub chain_len: usize,
}

/// Outcome of walking one chain: member sums, the zero-sum member (if any)
/// and whether all chain invariants held.
struct ChainWalk {
    ok: bool,
    zero_member: Option<u32>,
}

fn walk_chain(elements: &[i64], order: &[usize]) -> ChainWalk {
    let n = elements.len();
    let mut member = vec![false; n];
    let mut mask: u32 = 0;
    for (i, &v) in elements.iter().enumerate() {
        if v < 0 {
            member[i] = true;
            mask |= 1 << i;
        }
    }
    let subset_sum =
        |member: &[bool]| -> i128 { elements.iter().zip(member).filter(|(_, &m)| m).map(|(&v, _)| v as i128).sum() };
    let signed = |member: &[bool]| -> i64 {
        signed_size(&elements.iter().zip(member).filter(|(_, &m)| m).map(|(&v, _)| v).collect::<Vec<_>>())
    };

    let mut ok = true;
    let mut sum = subset_sum(&member);
    let mut level = signed(&member);
    let mut zeros = Vec::new();
    if sum == 0 {
        zeros.push(mask);
    }
    let mut len = 1;
    for &i in order {
        let v = elements[i];
        // Positives enter the set, negatives leave it.
        if (v > 0) == member[i] {
            ok = false;
        }
        member[i] = v > 0;
        mask ^= 1 << i;
        let next_sum = subset_sum(&member);
        let next_level = signed(&member);
        if next_sum <= sum || next_level != level + 1 {
            ok = false;
        }
        sum = next_sum;
        level = next_level;
        len += 1;
        if sum == 0 {
            zeros.push(mask);
        }
    }
    if len != n + 1 || zeros.len() > 1 {
        ok = false;
    }
    ChainWalk { ok, zero_member: zeros.first().copied() }
}

/// Samples `trials` uniformly random maximal chains and counts those that
/// break strict monotonicity, the length `n + 1`, or the one-zero rule.
pub fn sample_chain_check(m: &IntegerMultiset, trials: u64, seed: u64) -> ChainReport {
    let elements = m.elements();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..elements.len()).collect();
    let mut violations = 0u64;
    for _ in 0..trials {
        order.shuffle(&mut rng);
        if !walk_chain_unbounded(&elements, &order) {
            violations += 1;
        }
    }
    ChainReport { trials, violations: Count::from(violations), chain_len: elements.len() + 1 }
}

/// Same checks as [`walk_chain`] without the bitmask, so any `n` works.
fn walk_chain_unbounded(elements: &[i64], order: &[usize]) -> bool {
    let mut member: Vec<bool> = elements.iter().map(|&v| v < 0).collect();
    let mut sum: i128 = elements.iter().filter(|&&v| v < 0).map(|&v| v as i128).sum();
    let mut level = -(member.iter().filter(|&&m| m).count() as i64);
    let mut zeros = usize::from(sum == 0);
    let mut len = 1;
    for &i in order {
        let v = elements[i];
        if (v > 0) == member[i] {
            return false;
        }
        member[i] = v > 0;
        let step = if v > 0 { v as i128 } else { -(v as i128) };
        if step <= 0 {
            return false;
        }
        sum += step;
        level += 1;
        len += 1;
        zeros += usize::from(sum == 0);
    }
    let positives = elements.iter().filter(|&&v| v > 0).count() as i64;
    len == elements.len() + 1 && zeros <= 1 && level == positives
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExhaustiveChainReport {
    /// `n!` chains walked.
    pub chains: u64,
    pub violations: u64,
    /// Zero-sum subsets including the empty set.
    pub zero_sum_subsets: u64,
    /// Zero-sum subsets whose observed chain count differs from `(p-t)!(n-p+t)!`.
    pub weight_mismatches: u64,
    /// `zero_sum_subsets <= C(n, floor(n/2))`.
    pub within_bound: bool,
}

fn factorial(k: usize) -> u64 {
    (1..=k as u64).product()
}

/// Walks all `n!` maximal chains (`n <= 8`) and cross-checks the number of
/// chains through every zero-sum subset against the closed form.
pub fn exhaustive_chain_check(m: &IntegerMultiset) -> Result<ExhaustiveChainReport, CountError> {
    let elements = m.elements();
    let n = elements.len();
    if n > EXHAUSTIVE_CHAIN_MAX_N {
        return Err(CountError::SizeLimit { n, limit: EXHAUSTIVE_CHAIN_MAX_N });
    }
    let mut chains = 0u64;
    let mut violations = 0u64;
    let mut through: HashMap<u32, u64> = HashMap::new();
    for order in (0..n).permutations(n) {
        chains += 1;
        let walk = walk_chain(&elements, &order);
        if !walk.ok {
            violations += 1;
        }
        if let Some(mask) = walk.zero_member {
            *through.entry(mask).or_default() += 1;
        }
    }

    let p = m.positives() as i64;
    let mut zero_sum_subsets = 0u64;
    let mut weight_mismatches = 0u64;
    for mask in 0u32..1 << n {
        let subset: Vec<i64> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| elements[i]).collect();
        if subset.iter().map(|&v| v as i128).sum::<i128>() != 0 {
            continue;
        }
        zero_sum_subsets += 1;
        let t = signed_size(&subset);
        let expected = factorial((p - t) as usize) * factorial((n as i64 - p + t) as usize);
        if through.get(&mask).copied().unwrap_or(0) != expected {
            weight_mismatches += 1;
        }
    }
    let within_bound = binomial(n as u64, (n / 2) as i64) >= zero_sum_subsets;
    Ok(ExhaustiveChainReport { chains, violations, zero_sum_subsets, weight_mismatches, within_bound })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ms(pairs: &[(i64, usize)]) -> IntegerMultiset {
        IntegerMultiset::from_support(pairs.iter().copied()).unwrap()
    }

    #[test]
    fn signed_size_examples() {
        assert_eq!(signed_size(&[1, -2]), 0);
        assert_eq!(signed_size(&[]), 0);
        assert_eq!(signed_size(&[3, 5, -1]), 1);
    }

    #[test]
    fn sampled_chains_hold() {
        let r = sample_chain_check(&ms(&[(1, 2), (-1, 2)]), 100, 7);
        assert!(r.violations.is_zero());
        let r = sample_chain_check(&ms(&[(3, 1), (-2, 4)]), 100, 7);
        assert!(r.violations.is_zero());
        let r = sample_chain_check(&ms(&[(1, 5), (-1, 5)]), 1000, 42);
        assert!(r.violations.is_zero());
        assert_eq!(r.chain_len, 11);
        assert_eq!(r.trials, 1000);
    }

    #[test]
    fn sampling_is_seed_deterministic() {
        let m = ms(&[(2, 3), (-3, 2), (1, 1)]);
        assert_eq!(sample_chain_check(&m, 50, 1), sample_chain_check(&m, 50, 1));
    }

    #[test]
    fn bad_order_is_flagged() {
        // Visiting a position twice breaks the poset step.
        assert!(!walk_chain_unbounded(&[1, -1], &[0, 0]));
        assert!(!walk_chain(&[1, -1], &[0, 0]).ok);
    }

    #[test]
    fn exhaustive_chain_weights() {
        let r = exhaustive_chain_check(&ms(&[(1, 2), (-1, 2)])).unwrap();
        assert_eq!(r.chains, 24);
        assert_eq!(r.violations, 0);
        assert_eq!(r.zero_sum_subsets, 6);
        assert_eq!(r.weight_mismatches, 0);
        assert!(r.within_bound);

        let r = exhaustive_chain_check(&ms(&[(1, 3), (2, 1), (-1, 2), (-3, 1)])).unwrap();
        assert_eq!(r.chains, 5040);
        assert_eq!(r.violations, 0);
        assert_eq!(r.weight_mismatches, 0);
        assert!(r.within_bound);

        assert!(exhaustive_chain_check(&ms(&[(1, 9)])).is_err());
    }
}
