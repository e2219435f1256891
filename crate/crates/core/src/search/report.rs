use serde::Serialize;

use super::{search_h, SearchError, SearchSpace, Witness};
use crate::formulas::two_class_value;
use crate::numeric::Count;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// The window holds nothing better than the two-class construction.
    Matches,
    /// A profile in the window beats the construction.
    Exceeds,
    /// The search missed an in-window construction; always a bug.
    SearchBelowConstructionImpossible,
}

/// One `(n, r)` line of a conjecture report. A `matches` verdict only
/// speaks for the recorded window.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjectureRow {
    pub n: usize,
    pub r: usize,
    pub window: SearchSpace,
    pub construction_value: Count,
    pub best: Count,
    pub witnesses: Vec<Witness>,
    pub profiles_scanned: Count,
    pub verdict: Verdict,
}

/// Compares the exhaustive `h(n, r)` search against the two-class value
/// for each pair. Pairs must satisfy `4 <= r < n/2`, and the window must
/// contain the construction (`V >= r - 1`, `K >= 2`).
pub fn conjecture_report(
    pairs: &[(usize, usize)],
    max_abs_value: i64,
    max_support: usize,
    jobs: usize,
) -> Result<Vec<ConjectureRow>, SearchError> {
    let mut spaces = Vec::with_capacity(pairs.len());
    for &(n, r) in pairs {
        if r < 4 || 2 * r >= n {
            return Err(SearchError::BadArgs(format!(
                "pair n = {n}, r = {r} is outside the conjecture range 4 <= r < n/2"
            )));
        }
        let space = SearchSpace::new(n, max_abs_value, max_support)?;
        if max_abs_value < r as i64 - 1 || max_support < 2 {
            return Err(SearchError::BadArgs(format!(
                "window V = {max_abs_value}, K = {max_support} does not contain the construction for r = {r} (need V >= {}, K >= 2)",
                r - 1
            )));
        }
        spaces.push(space);
    }
    pairs
        .iter()
        .zip(spaces)
        .map(|(&(n, r), space)| {
            let construction_value = two_class_value(n as u64, r as u64);
            let res = search_h(&space, r, jobs)?;
            let verdict = match res.best.cmp(&construction_value) {
                std::cmp::Ordering::Equal => Verdict::Matches,
                std::cmp::Ordering::Greater => Verdict::Exceeds,
                std::cmp::Ordering::Less => Verdict::SearchBelowConstructionImpossible,
            };
            Ok(ConjectureRow {
                n,
                r,
                window: space,
                construction_value,
                best: res.best,
                witnesses: res.witnesses,
                profiles_scanned: res.profiles_scanned,
                verdict,
            })
        })
        .collect()
}
