//! Seeded random inputs for property checks and the verification suite.
//!
//! Values are drawn from small ranges so that zero sums are common.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::count::{IntSequence, IntegerMultiset};
use crate::numeric::Rational;
use crate::symbolic::{SymbolicReal, SymbolicSet};

fn nonzero(rng: &mut impl Rng, max_abs: i64) -> i64 {
    let v = rng.gen_range(1..=max_abs);
    if rng.gen_bool(0.5) {
        v
    } else {
        -v
    }
}

/// `n` values from `[-max_abs, max_abs] \ {0}`.
pub fn random_values(rng: &mut impl Rng, n: usize, max_abs: i64) -> Vec<i64> {
    assert!(max_abs >= 1);
    (0..n).map(|_| nonzero(rng, max_abs)).collect()
}

/// A multiset whose size is uniform in `1..=n_max` and whose value bound
/// is itself uniform in `1..=max_abs`.
pub fn random_multiset(rng: &mut impl Rng, n_max: usize, max_abs: i64) -> IntegerMultiset {
    let n = rng.gen_range(1..=n_max);
    let bound = rng.gen_range(1..=max_abs);
    IntegerMultiset::from_elements(&random_values(rng, n, bound)).expect("values are nonzero")
}

/// Like [`random_multiset`], but values come from a small random palette
/// so that few distinct values repeat heavily.
pub fn random_clustered_multiset(rng: &mut impl Rng, n_max: usize, max_abs: i64) -> IntegerMultiset {
    let n = rng.gen_range(1..=n_max);
    let k = rng.gen_range(1..=3);
    let palette = random_values(rng, k, max_abs);
    let values: Vec<i64> = (0..n).map(|_| *palette.choose(rng).expect("nonempty palette")).collect();
    IntegerMultiset::from_elements(&values).expect("values are nonzero")
}

pub fn random_sequence(rng: &mut impl Rng, n_max: usize, max_abs: i64) -> IntSequence {
    let n = rng.gen_range(1..=n_max);
    let bound = rng.gen_range(1..=max_abs);
    IntSequence::new(random_values(rng, n, bound)).expect("values are nonzero")
}

fn small_rational(rng: &mut impl Rng) -> Rational {
    Rational::new(rng.gen_range(-3..=3), rng.gen_range(1..=2))
}

/// `n` distinct irrationals over a basis of dimension `d`. Coordinates are
/// halves in `[-3, 3]`, which leaves room for many rational sums.
pub fn random_symbolic_set(rng: &mut impl Rng, n: usize, d: usize) -> SymbolicSet {
    assert!(n >= 1 && d >= 1);
    let mut elements: Vec<SymbolicReal> = Vec::with_capacity(n);
    while elements.len() < n {
        let coords: Vec<Rational> = (0..=d).map(|_| small_rational(rng)).collect();
        let e = SymbolicReal::new(coords).expect("nonempty coordinates");
        if !e.is_rational() && !elements.contains(&e) {
            elements.push(e);
        }
    }
    SymbolicSet::new(elements).expect("irrational and distinct by construction")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generators_respect_bounds() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let m = random_multiset(&mut rng, 9, 4);
            assert!((1..=9).contains(&m.len()));
            assert!(m.support().iter().all(|e| e.value != 0 && e.value.abs() <= 4));
            let c = random_clustered_multiset(&mut rng, 9, 4);
            assert!(c.support().len() <= 3);
            let s = random_sequence(&mut rng, 30, 5);
            assert!(s.values().iter().all(|&v| v != 0 && v.abs() <= 5));
            let set = random_symbolic_set(&mut rng, 6, 2);
            assert_eq!((set.len(), set.dim()), (6, 2));
        }
    }

    #[test]
    fn seeded_generation_is_reproducible() {
        let a = random_multiset(&mut ChaCha8Rng::seed_from_u64(7), 12, 6);
        let b = random_multiset(&mut ChaCha8Rng::seed_from_u64(7), 12, 6);
        assert_eq!(a, b);
    }
}
