//! Irrational numbers as rational coordinate vectors.
//!
//! A [`SymbolicReal`] `(q0; q1, ..., qd)` stands for `q0 + q1*a1 + ... + qd*ad`
//! where `a1..ad` are rationally independent irrationals. The rational
//! numbers are exactly the vectors with `q1 = ... = qd = 0`, so the map
//! dropping `q0` ([`SymbolicReal::core_phi`]) is linear with kernel `Q`, and
//! a subset has rational sum iff its image sums to the zero vector.
//!
//! [`SymbolicSet::reduce_to_multiset`] substitutes `ad := lambda * a1`
//! repeatedly until one irrational remains, then clears denominators. A
//! rational sum stays rational under each substitution, so zero-sum counts
//! of the result dominate the rational-sum counts of the input.

use std::collections::HashSet;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::count::IntegerMultiset;
use crate::numeric::{denominator_lcm, Count, Rational};

/// Largest set size accepted by [`SymbolicSet::rational_sum_count`].
pub const RATIONAL_SUM_MAX_N: usize = 25;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymbolicError {
    #[error("a symbolic real needs at least the rational coordinate")]
    NoCoordinates,
    #[error("element {} has {found} coordinates, expected {expected}", .index + 1)]
    DimensionMismatch { index: usize, expected: usize, found: usize },
    #[error("element {} is rational", .index + 1)]
    RationalElement { index: usize },
    #[error("elements {} and {} are equal", .first + 1, .second + 1)]
    Duplicate { first: usize, second: usize },
    #[error("a symbolic set needs at least one element")]
    Empty,
    #[error("basis indices must be distinct and within 1..={dim}, got src={src}, dst={dst}")]
    BadIndex { src: usize, dst: usize, dim: usize },
    #[error("lambda = {lambda} maps some element to a rational or merges two elements")]
    BadLambda { lambda: Rational },
    #[error("n = {n} exceeds the exhaustive-enumeration limit of {limit}")]
    SizeLimit { n: usize, limit: usize },
    #[error("reduced value {value} does not fit in 64 bits")]
    ValueOverflow { value: BigInt },
}

/// `q0 + q1*a1 + ... + qd*ad` over a formal basis of independent irrationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymbolicReal {
    coords: Vec<Rational>,
}

impl SymbolicReal {
    pub fn new(coords: Vec<Rational>) -> Result<Self, SymbolicError> {
        if coords.is_empty() {
            return Err(SymbolicError::NoCoordinates);
        }
        Ok(SymbolicReal { coords })
    }

    /// Convenience constructor from `(num, den)` pairs.
    pub fn from_fractions(coords: &[(i64, i64)]) -> Result<Self, SymbolicError> {
        Self::new(coords.iter().map(|&(n, d)| Rational::new(n, d)).collect())
    }

    /// Number of irrational basis elements `d`.
    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn rational_part(&self) -> &Rational {
        &self.coords[0]
    }

    pub fn is_rational(&self) -> bool {
        self.coords[1..].iter().all(Rational::is_zero)
    }

    /// The image under the linear map whose kernel is exactly `Q`: the
    /// irrational coordinates `(q1, ..., qd)`.
    pub fn core_phi(&self) -> Vec<Rational> {
        self.coords[1..].to_vec()
    }

    /// Coordinatewise sum; `None` on a dimension mismatch.
    pub fn checked_add(&self, other: &SymbolicReal) -> Option<SymbolicReal> {
        (self.dim() == other.dim())
            .then(|| SymbolicReal { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect() })
    }
}

/// A set of distinct irrationals sharing one basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicSet {
    dim: usize,
    elements: Vec<SymbolicReal>,
}

/// One substitution `a_dst := lambda * a_src` performed by the reduction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PsiStep {
    pub src: usize,
    pub dst: usize,
    pub lambda: Rational,
}

/// Result of [`SymbolicSet::reduce_to_multiset`]: element `i` of the input
/// maps to `values[i] * scale * a1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub values: Vec<BigInt>,
    pub scale: Rational,
    pub steps: Vec<PsiStep>,
}

impl Reduction {
    pub fn values_i64(&self) -> Result<Vec<i64>, SymbolicError> {
        self.values
            .iter()
            .map(|v| i64::try_from(v).map_err(|_| SymbolicError::ValueOverflow { value: v.clone() }))
            .collect()
    }

    pub fn to_multiset(&self) -> Result<IntegerMultiset, SymbolicError> {
        let values = self.values_i64()?;
        Ok(IntegerMultiset::from_elements(&values).expect("reduced values are nonzero"))
    }
}

/// The substitution scale order `1, -1, 2, -2, 3, ...`.
fn lambda_candidates() -> impl Iterator<Item = Rational> {
    (1i64..).flat_map(|k| [Rational::integer(k), Rational::integer(-k)])
}

impl SymbolicSet {
    pub fn new(elements: Vec<SymbolicReal>) -> Result<Self, SymbolicError> {
        let first = elements.first().ok_or(SymbolicError::Empty)?;
        let dim = first.dim();
        for (index, e) in elements.iter().enumerate() {
            if e.dim() != dim {
                return Err(SymbolicError::DimensionMismatch { index, expected: dim + 1, found: e.dim() + 1 });
            }
            if e.is_rational() {
                return Err(SymbolicError::RationalElement { index });
            }
        }
        if let Some((first, second)) = first_duplicate(&elements) {
            return Err(SymbolicError::Duplicate { first, second });
        }
        Ok(SymbolicSet { dim, elements })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[SymbolicReal] {
        &self.elements
    }

    /// Substitutes `a_dst := lambda * a_src`: each `q_src` becomes
    /// `q_src + lambda * q_dst` and coordinate `dst` is dropped.
    ///
    /// Fails with [`SymbolicError::BadLambda`] when an image is rational or
    /// two images coincide; only finitely many `lambda` do either.
    pub fn psi_lambda(&self, lambda: &Rational, src: usize, dst: usize) -> Result<SymbolicSet, SymbolicError> {
        if src == dst || src == 0 || dst == 0 || src > self.dim || dst > self.dim {
            return Err(SymbolicError::BadIndex { src, dst, dim: self.dim });
        }
        if lambda.is_zero() {
            return Err(SymbolicError::BadLambda { lambda: lambda.clone() });
        }
        let elements: Vec<SymbolicReal> = self
            .elements
            .iter()
            .map(|e| {
                let mut coords = e.coords.clone();
                coords[src] = &coords[src] + &(lambda * &coords[dst]);
                coords.remove(dst);
                SymbolicReal { coords }
            })
            .collect();
        let bad = || SymbolicError::BadLambda { lambda: lambda.clone() };
        if elements.iter().any(SymbolicReal::is_rational) || first_duplicate(&elements).is_some() {
            return Err(bad());
        }
        Ok(SymbolicSet { dim: self.dim - 1, elements })
    }

    /// Collapses to one irrational (merging basis index `d` into index 1
    /// with the first admissible `lambda` from `1, -1, 2, -2, ...`), then
    /// clears denominators. Input order is preserved.
    pub fn reduce_to_multiset(&self) -> Reduction {
        let mut current = self.clone();
        let mut steps = Vec::new();
        while current.dim > 1 {
            let (src, dst) = (1, current.dim);
            let (lambda, next) = lambda_candidates()
                .find_map(|lambda| current.psi_lambda(&lambda, src, dst).ok().map(|next| (lambda, next)))
                .expect("only finitely many lambda are inadmissible");
            steps.push(PsiStep { src, dst, lambda });
            current = next;
        }
        let coeffs: Vec<&Rational> = current.elements.iter().map(|e| &e.coords[1]).collect();
        let lcm = denominator_lcm(coeffs.iter().copied());
        let values = coeffs.iter().map(|q| q.scale(&lcm).to_integer().expect("lcm clears every denominator")).collect();
        let scale = Rational::reciprocal_of(&lcm).expect("lcm is positive");
        Reduction { values, scale, steps }
    }

    /// Exhaustive count of r-subsets with rational sum (`n <= 25`).
    pub fn rational_sum_count(&self, r: usize) -> Result<Count, SymbolicError> {
        let n = self.len();
        if n > RATIONAL_SUM_MAX_N {
            return Err(SymbolicError::SizeLimit { n, limit: RATIONAL_SUM_MAX_N });
        }
        if r > n {
            return Ok(Count::zero());
        }
        // Integer images: scale every irrational coordinate by one common denominator.
        let lcm = denominator_lcm(self.elements.iter().flat_map(|e| e.coords[1..].iter()));
        let images: Vec<Vec<BigInt>> = self
            .elements
            .iter()
            .map(|e| e.coords[1..].iter().map(|q| q.scale(&lcm).to_integer().expect("integral")).collect())
            .collect();
        let mut hits = 0u64;
        let mut acc = vec![BigInt::default(); self.dim];
        count_zero_combinations(&images, r, 0, &mut acc, &mut hits);
        Ok(Count::from(hits))
    }
}

fn count_zero_combinations(images: &[Vec<BigInt>], left: usize, from: usize, acc: &mut [BigInt], hits: &mut u64) {
    if left == 0 {
        if acc.iter().all(|x| x.sign() == num_bigint::Sign::NoSign) {
            *hits += 1;
        }
        return;
    }
    for i in from..=images.len() - left {
        for (a, x) in acc.iter_mut().zip(&images[i]) {
            *a += x;
        }
        count_zero_combinations(images, left - 1, i + 1, acc, hits);
        for (a, x) in acc.iter_mut().zip(&images[i]) {
            *a -= x;
        }
    }
}

fn first_duplicate(elements: &[SymbolicReal]) -> Option<(usize, usize)> {
    let mut seen: HashSet<&SymbolicReal> = HashSet::new();
    let dup = elements.iter().position(|e| !seen.insert(e))?;
    let first = elements.iter().position(|e| e == &elements[dup])?;
    Some((first, dup))
}

/// JSON form: `{"basis_dim": d, "elements": [["q0", "q1", ...], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymbolicSetDoc {
    pub basis_dim: usize,
    pub elements: Vec<Vec<Rational>>,
}

impl SymbolicSetDoc {
    pub fn into_set(self) -> Result<SymbolicSet, SymbolicError> {
        let expected = self.basis_dim + 1;
        let elements = self
            .elements
            .into_iter()
            .enumerate()
            .map(|(index, coords)| {
                if coords.len() != expected {
                    return Err(SymbolicError::DimensionMismatch { index, expected, found: coords.len() });
                }
                SymbolicReal::new(coords)
            })
            .collect::<Result<Vec<_>, _>>()?;
        SymbolicSet::new(elements)
    }
}

impl From<&SymbolicSet> for SymbolicSetDoc {
    fn from(s: &SymbolicSet) -> Self {
        SymbolicSetDoc { basis_dim: s.dim, elements: s.elements.iter().map(|e| e.coords.clone()).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::count::count_dp;
    use proptest::prelude::*;

    fn real(coords: &[(i64, i64)]) -> SymbolicReal {
        SymbolicReal::from_fractions(coords).unwrap()
    }

    fn int_real(coords: &[i64]) -> SymbolicReal {
        SymbolicReal::new(coords.iter().map(|&v| Rational::integer(v)).collect()).unwrap()
    }

    fn set(elems: &[&[i64]]) -> SymbolicSet {
        SymbolicSet::new(elems.iter().map(|c| int_real(c)).collect()).unwrap()
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn is_rational_examples() {
        assert!(real(&[(3, 2), (0, 1), (0, 1)]).is_rational());
        assert!(!int_real(&[0, 1, 0]).is_rational());
        assert!(!real(&[(1, 2), (0, 1), (-2, 3)]).is_rational());
    }

    #[test]
    fn core_phi_examples() {
        assert_eq!(real(&[(3, 2), (0, 1), (0, 1)]).core_phi(), vec![q(0, 1), q(0, 1)]);
        assert_eq!(real(&[(0, 1), (1, 1), (-1, 2)]).core_phi(), vec![q(1, 1), q(-1, 2)]);
        let x = int_real(&[1, 1, 0]);
        let y = int_real(&[2, 0, 1]);
        assert_eq!(x.checked_add(&y).unwrap().core_phi(), vec![q(1, 1), q(1, 1)]);
    }

    #[test]
    fn construction_validates() {
        assert_eq!(
            SymbolicSet::new(vec![int_real(&[0, 1]), int_real(&[2, 0])]),
            Err(SymbolicError::RationalElement { index: 1 })
        );
        assert_eq!(
            SymbolicSet::new(vec![int_real(&[0, 1]), int_real(&[0, 1])]),
            Err(SymbolicError::Duplicate { first: 0, second: 1 })
        );
        assert!(matches!(
            SymbolicSet::new(vec![int_real(&[0, 1]), int_real(&[0, 1, 1])]),
            Err(SymbolicError::DimensionMismatch { index: 1, .. })
        ));
        assert_eq!(SymbolicSet::new(vec![]), Err(SymbolicError::Empty));
        assert_eq!(SymbolicError::RationalElement { index: 0 }.to_string(), "element 1 is rational");
    }

    #[test]
    fn psi_lambda_examples() {
        let s = set(&[&[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(s.psi_lambda(&q(2, 1), 1, 2).unwrap(), set(&[&[0, 1], &[0, 2]]));

        let s = set(&[&[0, 1, -1]]);
        assert!(matches!(s.psi_lambda(&q(1, 1), 1, 2), Err(SymbolicError::BadLambda { .. })));

        let s = set(&[&[0, 1, 0], &[0, 1, 1], &[0, 0, 1]]);
        assert_eq!(s.psi_lambda(&q(3, 1), 1, 2).unwrap(), set(&[&[0, 1], &[0, 4], &[0, 3]]));

        // Two images coinciding is also inadmissible.
        let s = set(&[&[0, 1, 0], &[0, 0, 1]]);
        assert!(matches!(s.psi_lambda(&q(1, 1), 1, 2), Err(SymbolicError::BadLambda { .. })));

        assert!(matches!(s.psi_lambda(&q(1, 1), 1, 1), Err(SymbolicError::BadIndex { .. })));
        assert!(matches!(s.psi_lambda(&q(1, 1), 0, 2), Err(SymbolicError::BadIndex { .. })));
        assert!(matches!(s.psi_lambda(&q(0, 1), 1, 2), Err(SymbolicError::BadLambda { .. })));
    }

    #[test]
    fn reduce_examples() {
        let r = set(&[&[0, 1], &[0, -1], &[0, 2]]).reduce_to_multiset();
        assert_eq!(r.values_i64().unwrap(), vec![1, -1, 2]);
        assert_eq!(r.scale, Rational::one());
        assert!(r.steps.is_empty());

        let s = SymbolicSet::new(vec![real(&[(0, 1), (1, 2)]), real(&[(0, 1), (-1, 3)])]).unwrap();
        let r = s.reduce_to_multiset();
        assert_eq!(r.values_i64().unwrap(), vec![3, -2]);
        assert_eq!(r.scale, q(1, 6));

        // lambda = 1 merges two elements and lambda = -1 makes the third rational.
        let s = set(&[&[0, 1, 0], &[0, 0, 1], &[0, -1, -1]]);
        let r = s.reduce_to_multiset();
        assert_eq!(r.values_i64().unwrap(), vec![1, 2, -3]);
        assert_eq!(r.steps, vec![PsiStep { src: 1, dst: 2, lambda: q(2, 1) }]);
        assert_eq!(s.rational_sum_count(3).unwrap(), 1);
        assert_eq!(count_dp(&r.to_multiset().unwrap(), 3, 0), 1);
    }

    #[test]
    fn rational_sum_count_examples() {
        let s = set(&[&[0, 1], &[1, 1], &[0, -2]]);
        assert_eq!(s.rational_sum_count(3).unwrap(), 1);
        assert_eq!(s.rational_sum_count(1).unwrap(), 0);
        let s = set(&[&[0, 1], &[1, -1], &[0, 2], &[5, -2]]);
        assert_eq!(s.rational_sum_count(2).unwrap(), 2);
        assert_eq!(s.rational_sum_count(5).unwrap(), 0);
        let big = SymbolicSet::new((1..=26).map(|k| int_real(&[0, k])).collect()).unwrap();
        assert!(matches!(big.rational_sum_count(2), Err(SymbolicError::SizeLimit { .. })));
    }

    #[test]
    fn json_round_trip() {
        let doc: SymbolicSetDoc =
            serde_json::from_str(r#"{"basis_dim": 2, "elements": [["0","1/2","-2/3"], ["1","0","1"]]}"#).unwrap();
        let s = doc.clone().into_set().unwrap();
        assert_eq!(s.dim(), 2);
        assert_eq!(SymbolicSetDoc::from(&s), doc);
        let bad: SymbolicSetDoc = serde_json::from_str(r#"{"basis_dim": 1, "elements": [["0","1","2"]]}"#).unwrap();
        assert!(matches!(bad.into_set(), Err(SymbolicError::DimensionMismatch { .. })));
    }

    fn symbolic_set(max_n: usize, max_d: usize) -> impl Strategy<Value = SymbolicSet> {
        (1..=max_d, 1..=max_n)
            .prop_flat_map(|(d, n)| prop::collection::vec(prop::collection::vec((-2i64..=2, 1i64..=2), d + 1), n))
            .prop_filter_map("valid symbolic set", |raw| {
                let elems: Vec<SymbolicReal> = raw
                    .iter()
                    .map(|c| SymbolicReal::new(c.iter().map(|&(n, d)| Rational::new(n, d)).collect()).unwrap())
                    .filter(|e| !e.is_rational())
                    .collect();
                let mut uniq = Vec::new();
                for e in elems {
                    if !uniq.contains(&e) {
                        uniq.push(e);
                    }
                }
                SymbolicSet::new(uniq).ok()
            })
    }

    proptest! {
        #[test]
        fn phi_kernel_is_rationals(c in prop::collection::vec((-3i64..=3, 1i64..=3), 1..5)) {
            let x = SymbolicReal::from_fractions(&c).unwrap();
            prop_assert_eq!(x.is_rational(), x.core_phi().iter().all(Rational::is_zero));
        }

        #[test]
        fn phi_is_linear(
            a in prop::collection::vec((-3i64..=3, 1i64..=3), 4),
            b in prop::collection::vec((-3i64..=3, 1i64..=3), 4),
        ) {
            let x = SymbolicReal::from_fractions(&a).unwrap();
            let y = SymbolicReal::from_fractions(&b).unwrap();
            let lhs = x.checked_add(&y).unwrap().core_phi();
            let rhs: Vec<Rational> = x.core_phi().iter().zip(y.core_phi()).map(|(p, q)| p + &q).collect();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn reduction_never_loses_rational_sums(s in symbolic_set(8, 3)) {
            let red = s.reduce_to_multiset();
            prop_assert_eq!(red.values.len(), s.len());
            let m = red.to_multiset().unwrap();
            for r in 1..=s.len() {
                prop_assert!(count_dp(&m, r, 0) >= s.rational_sum_count(r).unwrap());
            }
        }
    }
}
