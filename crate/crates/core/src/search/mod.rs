//! Exhaustive search over canonical integer multisets in a bounded window.
//!
//! Zero-sum counts are invariant under scaling and negation, so only one
//! canonical representative per class is evaluated
//! ([`canonicalize`]). Work is split by support set across a rayon pool;
//! partial results merge by maximum with witness union and the final
//! witness list is sorted, so output does not depend on the worker count.

mod profile;
mod report;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::count::{count_all_sizes_zero, count_dp, spectrum, IntegerMultiset};
use crate::numeric::Count;

pub use profile::{canonicalize, enumerate_profiles, is_canonical, SearchSpace};
pub use report::{conjecture_report, ConjectureRow, Verdict};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("infeasible search window n = {}, V = {}, K = {} (need n >= 1, V >= 1, 1 <= K <= 2V)",
        .0.n, .0.max_abs_value, .0.max_support)]
    InfeasibleSpace(SearchSpace),
    #[error("invalid search arguments: {0}")]
    BadArgs(String),
    #[error("could not start worker pool: {0}")]
    Pool(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchKind {
    /// Zero-sum r-subsets.
    H,
    /// r-subsets at the best single target, excluding the all-equal class.
    G,
    /// Zero-sum subsets of every size.
    HAll,
}

/// A maximizing profile; `target` is set for g-searches.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Witness {
    #[serde(flatten)]
    pub profile: IntegerMultiset,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub target: Option<i128>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchResult {
    pub kind: SearchKind,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub include_empty: Option<bool>,
    pub window: SearchSpace,
    pub best: Count,
    pub witnesses: Vec<Witness>,
    pub profiles_scanned: Count,
}

/// Running maximum over a slice of the profile space.
#[derive(Default)]
struct Partial {
    best: Option<Count>,
    witnesses: Vec<Witness>,
    scanned: u64,
}

impl Partial {
    fn offer(&mut self, count: Count, witnesses: impl IntoIterator<Item = Witness>) {
        match &self.best {
            Some(b) if *b > count => return,
            Some(b) if *b == count => {}
            _ => {
                self.best = Some(count);
                self.witnesses.clear();
            }
        }
        self.witnesses.extend(witnesses);
    }

    fn merge(mut self, other: Partial) -> Partial {
        self.scanned += other.scanned;
        if let Some(b) = other.best {
            self.offer(b, other.witnesses);
        }
        self
    }
}

/// Evaluates every canonical profile of `space` with `eval`, which returns
/// the profile's score and the targets attaining it.
fn run_search<F>(space: &SearchSpace, jobs: usize, eval: F) -> Result<(Count, Vec<Witness>, Count), SearchError>
where
    F: Fn(&IntegerMultiset) -> (Count, Vec<Option<i128>>) + Sync,
{
    let units = space.supports();
    let scan_unit = |support: &Vec<i64>| {
        let mut part = Partial::default();
        for m in profile::profiles_with_support(support, space.n) {
            part.scanned += 1;
            let (score, targets) = eval(&m);
            let witnesses: Vec<Witness> = if targets.is_empty() {
                vec![Witness { profile: m, target: None }]
            } else {
                targets.into_iter().map(|target| Witness { profile: m.clone(), target }).collect()
            };
            part.offer(score, witnesses);
        }
        part
    };
    let pool =
        rayon::ThreadPoolBuilder::new().num_threads(jobs).build().map_err(|e| SearchError::Pool(e.to_string()))?;
    let total = pool.install(|| units.par_iter().map(scan_unit).reduce(Partial::default, Partial::merge));
    let mut witnesses = total.witnesses;
    witnesses.sort();
    witnesses.dedup();
    Ok((total.best.unwrap_or_default(), witnesses, Count::from(total.scanned)))
}

/// Maximum number of zero-sum r-subsets over the window.
///
/// `jobs = 0` uses one worker per available core.
pub fn search_h(space: &SearchSpace, r: usize, jobs: usize) -> Result<SearchResult, SearchError> {
    if r < 1 || r > space.n {
        return Err(SearchError::BadArgs(format!("r = {r} must lie in 1..={}", space.n)));
    }
    let (best, witnesses, scanned) = run_search(space, jobs, |m| (count_dp(m, r, 0), vec![None]))?;
    Ok(SearchResult {
        kind: SearchKind::H,
        n: space.n,
        r: Some(r),
        include_empty: None,
        window: *space,
        best,
        witnesses,
        profiles_scanned: scanned,
    })
}

/// Maximum over profiles and targets `t` of the number of r-subsets summing
/// to `t`, skipping a single-valued profile `{v x n}` at `t = r v`.
pub fn search_g(space: &SearchSpace, r: usize, jobs: usize) -> Result<SearchResult, SearchError> {
    if r < 1 || r >= space.n {
        return Err(SearchError::BadArgs(format!("r = {r} must lie in 1..={}", space.n - 1)));
    }
    let (best, witnesses, scanned) = run_search(space, jobs, |m| {
        let trivial = match m.support() {
            [only] => Some(r as i128 * only.value as i128),
            _ => None,
        };
        let mut best = Count::zero();
        let mut targets = Vec::new();
        for (t, c) in spectrum(m, r).entries() {
            if Some(*t) == trivial {
                continue;
            }
            if *c > best {
                best = c.clone();
                targets.clear();
            }
            if *c == best {
                targets.push(Some(*t));
            }
        }
        (best, targets)
    })?;
    Ok(SearchResult {
        kind: SearchKind::G,
        n: space.n,
        r: Some(r),
        include_empty: None,
        window: *space,
        best,
        witnesses,
        profiles_scanned: scanned,
    })
}

/// Maximum number of zero-sum subsets of any size over the window.
pub fn search_h_all(space: &SearchSpace, include_empty: bool, jobs: usize) -> Result<SearchResult, SearchError> {
    let (best, witnesses, scanned) = run_search(space, jobs, |m| (count_all_sizes_zero(m, include_empty), vec![None]))?;
    Ok(SearchResult {
        kind: SearchKind::HAll,
        n: space.n,
        r: None,
        include_empty: Some(include_empty),
        window: *space,
        best,
        witnesses,
        profiles_scanned: scanned,
    })
}
