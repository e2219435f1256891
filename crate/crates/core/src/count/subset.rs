use std::collections::{BTreeMap, HashMap};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use super::{CountError, IntegerMultiset};
use crate::numeric::{pascal_row_big, pascal_row_u128, Count};

/// Largest `n` accepted by the enumeration oracles.
pub const BRUTE_FORCE_MAX_N: usize = 25;

/// Subset counts never exceed `2^n`, so `u128` cells cannot overflow below this.
const U128_SAFE_N: usize = 127;

/// Cap on dense DP cells; wider sum ranges use the sparse kernel.
const DENSE_CELL_LIMIT: i128 = 1 << 25;

/// Number of r-subsets attaining each sum, for every sum that occurs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SumSpectrum {
    r: usize,
    entries: BTreeMap<i128, Count>,
}

impl SumSpectrum {
    pub fn r(&self) -> usize {
        self.r
    }

    pub fn entries(&self) -> &BTreeMap<i128, Count> {
        &self.entries
    }

    pub fn get(&self, target: i128) -> Count {
        self.entries.get(&target).cloned().unwrap_or_default()
    }

    pub fn total(&self) -> Count {
        self.entries.values().sum()
    }
}

/// Cell arithmetic shared by the `u128` and `BigUint` kernels.
trait Tally: Clone {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    /// `self += a * b`; `false` on overflow.
    fn add_product(&mut self, a: &Self, b: &Self) -> bool;
    fn to_count(&self) -> Count;
    fn pascal_row(m: usize) -> Option<Vec<Self>>;
}

impl Tally for u128 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    #[inline]
    fn add_product(&mut self, a: &Self, b: &Self) -> bool {
        match a.checked_mul(*b).and_then(|p| self.checked_add(p)) {
            Some(v) => {
                *self = v;
                true
            }
            None => false,
        }
    }
    fn to_count(&self) -> Count {
        Count::from(*self)
    }
    fn pascal_row(m: usize) -> Option<Vec<Self>> {
        pascal_row_u128(m)
    }
}

impl Tally for BigUint {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_product(&mut self, a: &Self, b: &Self) -> bool {
        *self += a * b;
        true
    }
    fn to_count(&self) -> Count {
        Count::from(self.clone())
    }
    fn pascal_row(m: usize) -> Option<Vec<Self>> {
        Some(pascal_row_big(m))
    }
}

/// Adds `coeff * src[i - shift]` into `dst[i]` over the overlapping range.
#[inline]
fn shifted_accumulate<T: Tally>(dst: &mut [T], src: &[T], shift: i128, coeff: &T) -> bool {
    let width = dst.len() as i128;
    if shift.abs() >= width {
        return true;
    }
    let (dst_start, src_start) = if shift >= 0 { (shift as usize, 0) } else { (0, (-shift) as usize) };
    let len = (width - shift.abs()) as usize;
    for (d, s) in dst[dst_start..dst_start + len].iter_mut().zip(&src[src_start..src_start + len]) {
        if !s.is_zero() && !d.add_product(s, coeff) {
            return false;
        }
    }
    true
}

/// Row `r` of the (size, sum) table, as cells over `[lo, lo + width)`.
fn dense_size_row<T: Tally>(m: &IntegerMultiset, r: usize, lo: i128, width: usize) -> Option<Vec<T>> {
    let mut table = vec![T::zero(); (r + 1) * width];
    table[(-lo) as usize] = T::one();
    for e in m.support() {
        let coeffs = T::pascal_row(e.mult)?;
        // Descending k reads only rows below k, which this value has not touched yet.
        for k in (1..=r).rev() {
            let (lower, upper) = table.split_at_mut(k * width);
            let dst = &mut upper[..width];
            for c in 1..=e.mult.min(k) {
                let src = &lower[(k - c) * width..(k - c + 1) * width];
                if !shifted_accumulate(dst, src, c as i128 * e.value as i128, &coeffs[c]) {
                    return None;
                }
            }
        }
    }
    table.drain(..r * width);
    Some(table)
}

fn sparse_size_row(m: &IntegerMultiset, r: usize) -> BTreeMap<i128, Count> {
    let mut rows: Vec<BTreeMap<i128, Count>> = vec![BTreeMap::new(); r + 1];
    rows[0].insert(0, Count::one());
    for e in m.support() {
        let coeffs: Vec<Count> = pascal_row_big(e.mult).into_iter().map(Count::from).collect();
        for k in (1..=r).rev() {
            let mut add: Vec<(i128, Count)> = Vec::new();
            for c in 1..=e.mult.min(k) {
                for (s, w) in &rows[k - c] {
                    add.push((s + c as i128 * e.value as i128, w * &coeffs[c]));
                }
            }
            for (s, w) in add {
                *rows[k].entry(s).or_default() += w;
            }
        }
    }
    rows.pop().unwrap_or_default()
}

/// All r-subset sums of `m` with their counts.
enum SizeRow {
    Small { lo: i128, cells: Vec<u128> },
    Big { lo: i128, cells: Vec<BigUint> },
    Sparse(BTreeMap<i128, Count>),
}

impl SizeRow {
    fn build(m: &IntegerMultiset, r: usize) -> SizeRow {
        let r_i = r as i128;
        let lo = r_i * (m.min_value().min(0) as i128);
        let hi = r_i * (m.max_value().max(0) as i128);
        let width = hi - lo + 1;
        if width.saturating_mul(r_i + 1) > DENSE_CELL_LIMIT {
            return SizeRow::Sparse(sparse_size_row(m, r));
        }
        let width = width as usize;
        if m.len() <= U128_SAFE_N {
            if let Some(cells) = dense_size_row::<u128>(m, r, lo, width) {
                return SizeRow::Small { lo, cells };
            }
        }
        let cells = dense_size_row::<BigUint>(m, r, lo, width).expect("bigint kernel is total");
        SizeRow::Big { lo, cells }
    }

    fn get(&self, t: i128) -> Count {
        fn cell<T: Tally>(lo: i128, cells: &[T], t: i128) -> Count {
            let idx = t - lo;
            if idx < 0 || idx >= cells.len() as i128 {
                Count::zero()
            } else {
                cells[idx as usize].to_count()
            }
        }
        match self {
            SizeRow::Small { lo, cells } => cell(*lo, cells, t),
            SizeRow::Big { lo, cells } => cell(*lo, cells, t),
            SizeRow::Sparse(map) => map.get(&t).cloned().unwrap_or_default(),
        }
    }

    fn into_entries(self) -> BTreeMap<i128, Count> {
        fn collect<T: Tally>(lo: i128, cells: &[T]) -> BTreeMap<i128, Count> {
            cells
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (lo + i as i128, c.to_count()))
                .collect()
        }
        match self {
            SizeRow::Small { lo, cells } => collect(lo, &cells),
            SizeRow::Big { lo, cells } => collect(lo, &cells),
            SizeRow::Sparse(mut map) => {
                map.retain(|_, c| !c.is_zero());
                map
            }
        }
    }
}

/// Number of r-subsets (of the `n` labeled positions) of `m` summing to `t`.
pub fn count_dp(m: &IntegerMultiset, r: usize, t: i128) -> Count {
    if r > m.len() {
        return Count::zero();
    }
    SizeRow::build(m, r).get(t)
}

/// Every r-subset sum of `m` with its count; the counts total `C(n, r)`.
pub fn spectrum(m: &IntegerMultiset, r: usize) -> SumSpectrum {
    let entries = if r > m.len() { BTreeMap::new() } else { SizeRow::build(m, r).into_entries() };
    SumSpectrum { r, entries }
}

/// Enumerates all r-subsets of the labeled positions and tallies their sums.
pub fn spectrum_bruteforce(m: &IntegerMultiset, r: usize) -> Result<SumSpectrum, CountError> {
    let elements = m.elements();
    let n = elements.len();
    if n > BRUTE_FORCE_MAX_N {
        return Err(CountError::SizeLimit { n, limit: BRUTE_FORCE_MAX_N });
    }
    let mut tally: HashMap<i128, u64> = HashMap::new();
    if r <= n {
        let limit: u32 = 1 << n;
        let mut mask: u32 = (1u32 << r) - 1;
        loop {
            let sum: i128 = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| elements[i] as i128).sum();
            *tally.entry(sum).or_default() += 1;
            if mask == 0 {
                break;
            }
            // Gosper's hack: next mask with the same popcount.
            let low = mask & mask.wrapping_neg();
            let ripple = mask + low;
            mask = (((ripple ^ mask) >> 2) / low) | ripple;
            if mask >= limit {
                break;
            }
        }
    }
    let entries = tally.into_iter().map(|(s, c)| (s, Count::from(c))).collect();
    Ok(SumSpectrum { r, entries })
}

/// Oracle for [`count_dp`]; limited to `n <= BRUTE_FORCE_MAX_N`.
pub fn count_bruteforce(m: &IntegerMultiset, r: usize, t: i128) -> Result<Count, CountError> {
    spectrum_bruteforce(m, r).map(|s| s.get(t))
}

fn dense_all_sizes<T: Tally>(m: &IntegerMultiset, lo: i128, width: usize) -> Option<T> {
    let mut row = vec![T::zero(); width];
    row[(-lo) as usize] = T::one();
    for e in m.support() {
        let coeffs = T::pascal_row(e.mult)?;
        let prev = row.clone();
        for (c, coeff) in coeffs.iter().enumerate().skip(1) {
            if !shifted_accumulate(&mut row, &prev, c as i128 * e.value as i128, coeff) {
                return None;
            }
        }
    }
    Some(row[(-lo) as usize].clone())
}

fn sparse_all_sizes(m: &IntegerMultiset) -> Count {
    let mut row: BTreeMap<i128, Count> = BTreeMap::from([(0, Count::one())]);
    for e in m.support() {
        let coeffs: Vec<Count> = pascal_row_big(e.mult).into_iter().map(Count::from).collect();
        let mut next = row.clone();
        for (c, coeff) in coeffs.iter().enumerate().skip(1) {
            for (s, w) in &row {
                *next.entry(s + c as i128 * e.value as i128).or_default() += w * coeff;
            }
        }
        row = next;
    }
    row.remove(&0).unwrap_or_default()
}

/// Zero-sum subsets of every size; the empty subset is counted iff `include_empty`.
pub fn count_all_sizes_zero(m: &IntegerMultiset, include_empty: bool) -> Count {
    let lo: i128 = m.support().iter().filter(|e| e.value < 0).map(|e| e.value as i128 * e.mult as i128).sum();
    let hi: i128 = m.support().iter().filter(|e| e.value > 0).map(|e| e.value as i128 * e.mult as i128).sum();
    let width = hi - lo + 1;
    let with_empty = if width > DENSE_CELL_LIMIT {
        sparse_all_sizes(m)
    } else {
        let width = width as usize;
        let small = if m.len() <= U128_SAFE_N { dense_all_sizes::<u128>(m, lo, width) } else { None };
        match small {
            Some(v) => Count::from(v),
            None => Count::from(dense_all_sizes::<BigUint>(m, lo, width).expect("bigint kernel is total")),
        }
    };
    if include_empty {
        with_empty
    } else {
        Count::from(with_empty.into_biguint() - 1u32)
    }
}

/// Oracle for [`count_all_sizes_zero`] over all `2^n` subsets.
pub fn all_sizes_bruteforce(m: &IntegerMultiset, include_empty: bool) -> Result<Count, CountError> {
    let elements = m.elements();
    let n = elements.len();
    if n > BRUTE_FORCE_MAX_N {
        return Err(CountError::SizeLimit { n, limit: BRUTE_FORCE_MAX_N });
    }
    let start = if include_empty { 0u32 } else { 1 };
    let hits = (start..1u32 << n)
        .filter(|mask| (0..n).filter(|i| mask >> i & 1 == 1).map(|i| elements[i] as i128).sum::<i128>() == 0)
        .count();
    Ok(Count::from(hits))
}
