//! The theorem-backed verification suite.
//!
//! Twelve checks compare exhaustive searches, exact counters and random
//! inputs against the closed forms. [`Plan::full`] holds the reference
//! parameters; [`Plan::capped`] shrinks every size range to a smaller
//! `n_max`. The closed forms are injected through [`Formulas`] so a
//! corrupted table can be shown to fail the suite.

use std::fmt::Write as _;
use std::ops::RangeInclusive;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::construct::{construct_nonuniform, construct_ordered, construct_uniform, g_construct};
use crate::count::{
    count_all_sizes_zero, count_dp, count_intervals_zero, sample_chain_check, spectrum, spectrum_bruteforce,
    sum_chain_bound_check, IntegerMultiset,
};
use crate::formulas::{self, FormulaError, FormulaValue};
use crate::numeric::Count;
use crate::sample;
use crate::search::{conjecture_report, search_h, search_h_all, SearchSpace, Verdict};

/// Largest `n` the search-backed checks accept.
pub const VERIFY_MAX_N: usize = 14;

/// The closed forms under test.
#[derive(Clone, Copy)]
pub struct Formulas {
    pub h: fn(u64, u64) -> Result<FormulaValue, FormulaError>,
    pub g: fn(u64, u64) -> Result<Count, FormulaError>,
    pub h_all: fn(u64) -> Result<Count, FormulaError>,
    pub h_ord: fn(u64) -> Result<Count, FormulaError>,
}

impl Default for Formulas {
    fn default() -> Self {
        Formulas {
            h: formulas::h_formula,
            g: formulas::g_formula,
            h_all: formulas::h_all_formula,
            h_ord: formulas::h_ord_formula,
        }
    }
}

/// Sizes, windows and sample counts for each check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Plan {
    pub pairs_n: RangeInclusive<usize>,
    pub pairs_window: (i64, usize),
    pub triples_n: RangeInclusive<usize>,
    pub triples_window: (i64, usize),
    pub large_r_construct_n: RangeInclusive<usize>,
    pub large_r_search_n: RangeInclusive<usize>,
    pub g_n: RangeInclusive<usize>,
    pub bounds_samples: usize,
    pub bounds_n_max: usize,
    pub oracle_samples: usize,
    pub oracle_n_max: usize,
    pub duality_samples: usize,
    pub duality_n_max: usize,
    pub nonuniform_construct_n: RangeInclusive<usize>,
    pub nonuniform_search_n: RangeInclusive<usize>,
    pub chain_samples: usize,
    pub chain_trials: u64,
    pub chain_n_max: usize,
    pub ordered_construct_n: RangeInclusive<usize>,
    pub ordered_samples: usize,
    pub ordered_n_max: usize,
    pub reduction_samples: usize,
    pub reduction_n_max: usize,
    pub reduction_d_max: usize,
    pub conjecture_n: RangeInclusive<usize>,
    pub conjecture_r: usize,
    pub conjecture_window: (i64, usize),
}

fn cap(range: &RangeInclusive<usize>, n_max: usize) -> RangeInclusive<usize> {
    *range.start()..=(*range.end()).min(n_max)
}

impl Plan {
    /// The reference parameters of the acceptance criteria.
    pub fn full() -> Plan {
        Plan {
            pairs_n: 2..=12,
            pairs_window: (4, 3),
            triples_n: 4..=12,
            triples_window: (6, 3),
            large_r_construct_n: 4..=14,
            large_r_search_n: 4..=12,
            g_n: 3..=14,
            bounds_samples: 500,
            bounds_n_max: 14,
            oracle_samples: 500,
            oracle_n_max: 15,
            duality_samples: 200,
            duality_n_max: 16,
            nonuniform_construct_n: 1..=20,
            nonuniform_search_n: 1..=12,
            chain_samples: 50,
            chain_trials: 1000,
            chain_n_max: 16,
            ordered_construct_n: 1..=200,
            ordered_samples: 500,
            ordered_n_max: 100,
            reduction_samples: 200,
            reduction_n_max: 10,
            reduction_d_max: 3,
            conjecture_n: 9..=13,
            conjecture_r: 4,
            conjecture_window: (6, 3),
        }
    }

    /// Every size bound of `self` clipped to `n_max`. The cheap ordered
    /// checks keep their ranges.
    pub fn capped(&self, n_max: usize) -> Plan {
        Plan {
            pairs_n: cap(&self.pairs_n, n_max),
            triples_n: cap(&self.triples_n, n_max),
            large_r_construct_n: cap(&self.large_r_construct_n, n_max),
            large_r_search_n: cap(&self.large_r_search_n, n_max),
            g_n: cap(&self.g_n, n_max),
            bounds_n_max: self.bounds_n_max.min(n_max),
            oracle_n_max: self.oracle_n_max.min(n_max),
            duality_n_max: self.duality_n_max.min(n_max),
            nonuniform_construct_n: cap(&self.nonuniform_construct_n, n_max),
            nonuniform_search_n: cap(&self.nonuniform_search_n, n_max),
            chain_n_max: self.chain_n_max.min(n_max),
            reduction_n_max: self.reduction_n_max.min(n_max),
            conjecture_n: cap(&self.conjecture_n, n_max),
            ..self.clone()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    /// Cases examined.
    pub cases: u64,
    /// Empty on success; otherwise the first failures.
    pub detail: String,
}

pub const CHECK_NAMES: [&str; 12] = [
    "r=2 search equals floor(n^2/4)",
    "r=3 search equals floor(n/3) C(n-floor(n/3), 2)",
    "r >= n/2 construction and search equal h(n, r)",
    "g construction equals g(n, r), g symmetric",
    "random counts respect g(n, r) and C(n, floor(n/2))",
    "subset-sum DP equals brute force",
    "spectrum complement duality",
    "nonuniform construction and search equal C(n, floor(n/2))",
    "sampled chains increase with at most one zero sum",
    "ordered construction and random sequences vs floor(n^2/4)",
    "reduction keeps or raises rational sum counts",
    "conjecture harness never falls below the construction",
];

/// Shared inputs of all checks.
#[derive(Clone, Copy)]
pub struct Context {
    pub jobs: usize,
    pub seed: u64,
    pub formulas: Formulas,
}

impl Context {
    pub fn new(jobs: usize, seed: u64) -> Self {
        Context { jobs, seed, formulas: Formulas::default() }
    }

    fn rng(&self, id: usize) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ (id as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15))
    }
}

/// Collects failures, keeping the first few messages.
#[derive(Default)]
struct Tally {
    cases: u64,
    failures: u64,
    detail: String,
}

impl Tally {
    fn case(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.failures <= 5 {
                if !self.detail.is_empty() {
                    self.detail.push_str("; ");
                }
                self.detail.push_str(&msg());
            }
        }
    }

    fn fail(&mut self, msg: String) {
        self.case(false, || msg);
    }

    fn finish(mut self, id: usize) -> CheckOutcome {
        if self.failures > 5 {
            let _ = write!(self.detail, "; {} failures in total", self.failures);
        }
        CheckOutcome {
            id,
            name: CHECK_NAMES[id - 1],
            passed: self.failures == 0,
            cases: self.cases,
            detail: self.detail,
        }
    }
}

fn window(n: usize, (v, k): (i64, usize)) -> Result<SearchSpace, String> {
    SearchSpace::new(n, v, k).map_err(|e| e.to_string())
}

/// Checks that `search_h(n, r)` is exactly `h(n, r)` and at most `g(n, r)`.
fn search_equals_h(t: &mut Tally, ctx: &Context, n: usize, r: usize, win: (i64, usize)) {
    let space = match window(n, win) {
        Ok(s) => s,
        Err(e) => return t.fail(e),
    };
    let expected = match (ctx.formulas.h)(n as u64, r as u64) {
        Ok(v) => v.value,
        Err(e) => return t.fail(e.to_string()),
    };
    match search_h(&space, r, ctx.jobs) {
        Ok(res) => {
            t.case(res.best == expected, || format!("n={n} r={r}: search {} vs formula {expected}", res.best));
            if let Ok(g) = (ctx.formulas.g)(n as u64, r as u64) {
                t.case(res.best <= g, || format!("n={n} r={r}: search {} exceeds g = {g}", res.best));
            }
        }
        Err(e) => t.fail(format!("n={n} r={r}: {e}")),
    }
}

fn check_pairs(plan: &Plan, ctx: &Context) -> CheckOutcome {
    let mut t = Tally::default();
    for n in plan.pairs_n.clone().filter(|&n| n >= 3) {
        search_equals_h(&mut t, ctx, n, 2, plan.pairs_window);
    }
    // h(n, r) needs r < n, so n = 2 is checked against floor(n^2/4) = 1 directly.
    if plan.pairs_n.contains(&2) {
        match window(2, plan.pairs_window) {
            Ok(space) => match search_h(&space, 2, ctx.jobs) {
                Ok(res) => t.case(res.best == 1u64, || format!("n=2 r=2: search {}", res.best)),
                Err(e) => t.fail(e.to_string()),
            },
            Err(e) => t.fail(e),
        }
    }
    t.finish(1)
}

fn check_triples(plan: &Plan, ctx: &Context) -> CheckOutcome {
    let mut t = Tally::default();
    for n in plan.triples_n.clone() {
        search_equals_h(&mut t, ctx, n, 3, plan.triples_window);
    }
    t.finish(2)
}

fn check_large_r(plan: &Plan, ctx: &Context) -> CheckOutcome {
    let mut t = Tally::default();
    for n in plan.large_r_construct_n.clone() {
        for r in n.div_ceil(2)..n {
            let expected = match (ctx.formulas.h)(n as u64, r as u64) {
                Ok(v) => v.value,
                Err(e) => {
                    t.fail(e.to_string());
                    continue;
                }
            };
            match construct_uniform(n, r) {
                Ok((m, _)) => {
                    let got = count_dp(&m, r, 0);
                    t.case(got == expected, || format!("n={n} r={r}: construction {got} vs {expected}"));
                }
                Err(e) => t.fail(e.to_string()),
            }
        }
    }
    for n in plan.large_r_search_n.clone() {
        for r in n.div_ceil(2)..n {
            search_equals_h(&mut t, ctx, n, r, ((r as i64 - 1).max(6), 3));
        }
    }
    t.finish(3)
}

fn check_g(plan: &Plan, ctx: &Context) -> CheckOutcome {
    let mut t = Tally::default();
    for n in plan.g_n.clone() {
        for r in 1..n {
            let (g, g_dual) = match ((ctx.formulas.g)(n as u64, r as u64), (ctx.formulas.g)(n as u64, (n - r) as u64)) {
                (Ok(a), Ok(b)) => (a, b),
                (Err(e), _) | (_, Err(e)) => {
                    t.fail(e.to_string());
                    continue;
                }
            };
            t.case(g == g_dual, || format!("n={n} r={r}: g(n,r) = {g} but g(n,n-r) = {g_dual}"));
            match g_construct(n, r) {
                Ok((m, target, _)) => {
                    let got = count_dp(&m, r, target);
                    t.case(got == g, || format!("n={n} r={r}: construction {got} vs g = {g}"));
                }
                Err(e) => t.fail(e.to_string()),
            }
        }
    }
    t.finish(4)
}

/// Alternates uniform and few-valued samples; the latter come closer to
/// the extremal configurations.
fn mixed_multiset(rng: &mut ChaCha8Rng, i: usize, n_max: usize, max_abs: i64) -> IntegerMultiset {
    if i.is_multiple_of(2) {
        sample::random_multiset(rng, n_max, max_abs)
    } else {
        sample::random_clustered_multiset(rng, n_max, max_abs)
    }
}

fn check_upper_bounds(plan: &Plan, ctx: &Context) -> CheckOutcome {
    let mut t = Tally::default();
    let mut rng = ctx.rng(5);
    for i in 0..plan.bounds_samples {
        if plan.bounds_n_max == 0 {
            break;
        }
        let m = mixed_multiset(&mut rng, i, plan.bounds_n_max, 6);
        let n = m.len();
        for r in 1..n {
            match (ctx.formulas.g)(n as u64, r as u64) {
                Ok(g) => {
                    let c = count_dp(&m, r, 0);
                    t.case(c <= g, || format!("{m} r={r}: {c} zero sums exceed g = {g}"));
                }
                Err(e) => t.fail(e.to_string()),
            }
        }
        match (ctx.formulas.h_all)(n as u64) {
            Ok(bound) => {
                let c = count_all_sizes_zero(&m, true);
                t.case(c <= bound, || format!("{m}: {c} zero sums exceed {bound}"));
            }
            Err(e) => t.fail(e.to_string()),
        }
    }
    t.finish(5)
}

fn check_oracle(plan: &Plan, ctx: &Context) -> CheckOutcome {
    let mut t = Tally::default();
    let mut rng = ctx.rng(6);
    for i in 0..plan.oracle_samples {
        if plan.oracle_n_max == 0 {
            break;
        }
        let m = mixed_multiset(&mut rng, i, plan.oracle_n_max, 8);
        for r in 0..=m.len() {
            match spectrum_bruteforce(&m, r) {
                Ok(brute) => t.case(spectrum(&m, r) == brute, || format!("{m} r={r}: spectra differ")),
                Err(e) => t.fail(e.to_string()),
            }
        }
    }
    t.finish(6)
}

fn check_duality(plan: &Plan, ctx: &Context) -> CheckOutcome {
    let mut t = Tally::default();
    let mut rng = ctx.rng(7);
    for i in 0..plan.duality_samples {
        if plan.duality_n_max == 0 {
            break;
        }
        let m = mixed_multiset(&mut rng, i, plan.duality_n_max, 8);
        let (n, total) = (m.len(), m.total_sum());
        for r in 0..=n {
            let (a, b) = (spectrum(&m, r), spectrum(&m, n - r));
            let ok = a.entries().len() == b.entries().len() && a.entries().iter().all(|(&s, c)| b.get(total - s) == *c);
            t.case(ok, || format!("{m} r={r}: spectrum is not the mirror of r' = {}", n - r));
        }
    }
    t.finish(7)
}

fn check_nonuniform(plan: &Plan, ctx: &Context) -> CheckOutcome {
    let mut t = Tally::default();
    for n in plan.nonuniform_construct_n.clone() {
        let expected = match (ctx.formulas.h_all)(n as u64) {
            Ok(v) => v,
            Err(e) => {
                t.fail(e.to_string());
                continue;
            }
        };
        match construct_nonuniform(n) {
            Ok(m) => {
                let got = count_all_sizes_zero(&m, true);
                t.case(got == expected, || format!("n={n}: construction {got} vs {expected}"));
            }
            Err(e) => t.fail(e.to_string()),
        }
    }
    for n in plan.nonuniform_search_n.clone() {
        let expected = match (ctx.formulas.h_all)(n as u64) {
            Ok(v) => v,
            Err(e) => {
                t.fail(e.to_string());
                continue;
            }
        };
        let res = window(n, (2, 3)).and_then(|s| search_h_all(&s, true, ctx.jobs).map_err(|e| e.to_string()));
        match res {
            Ok(res) => t.case(res.best == expected, || format!("n={n}: search {} vs {expected}", res.best)),
            Err(e) => t.fail(e),
        }
    }
    t.finish(8)
}

fn check_chains(plan: &Plan, ctx: &Context) -> CheckOutcome {
    let mut t = Tally::default();
    let mut rng = ctx.rng(9);
    for i in 0..plan.chain_samples {
        if plan.chain_n_max == 0 {
            break;
        }
        let m = mixed_multiset(&mut rng, i, plan.chain_n_max, 6);
        let report = sample_chain_check(&m, plan.chain_trials, ctx.seed.wrapping_add(i as u64));
        t.case(report.violations.is_zero() && report.trials == plan.chain_trials, || {
            format!("{m}: {} of {} chains violate monotonicity", report.violations, report.trials)
        });
    }
    t.finish(9)
}

fn check_ordered(plan: &Plan, ctx: &Context) -> CheckOutcome {
    let mut t = Tally::default();
    for n in plan.ordered_construct_n.clone() {
        match (construct_ordered(n), (ctx.formulas.h_ord)(n as u64)) {
            (Ok(s), Ok(expected)) => {
                let got = count_intervals_zero(&s);
                t.case(got == expected, || format!("n={n}: construction {got} vs {expected}"));
            }
            (Err(e), _) | (_, Err(e)) => t.fail(e.to_string()),
        }
    }
    let mut rng = ctx.rng(10);
    for _ in 0..plan.ordered_samples {
        let s = sample::random_sequence(&mut rng, plan.ordered_n_max, 4);
        let n = s.len() as u64;
        match (ctx.formulas.h_ord)(n) {
            Ok(bound) => {
                let got = count_intervals_zero(&s);
                t.case(got <= bound, || format!("length {n}: {got} zero intervals exceed {bound}"));
            }
            Err(e) => t.fail(e.to_string()),
        }
        t.case(sum_chain_bound_check(&s), || format!("length {n}: a sum-chain holds too many zeros"));
    }
    t.finish(10)
}

fn check_reduction(plan: &Plan, ctx: &Context) -> CheckOutcome {
    use rand::Rng;
    let mut t = Tally::default();
    let mut rng = ctx.rng(11);
    for _ in 0..plan.reduction_samples {
        if plan.reduction_n_max == 0 {
            break;
        }
        let n = rng.gen_range(1..=plan.reduction_n_max);
        let d = rng.gen_range(1..=plan.reduction_d_max);
        let set = sample::random_symbolic_set(&mut rng, n, d);
        let reduction = set.reduce_to_multiset();
        let m = match reduction.to_multiset() {
            Ok(m) => m,
            Err(e) => {
                t.fail(format!("n={n} d={d}: {e}"));
                continue;
            }
        };
        t.case(m.len() == n, || format!("n={n} d={d}: reduced to {} elements", m.len()));
        for r in 1..=n {
            match set.rational_sum_count(r) {
                Ok(before) => {
                    let after = count_dp(&m, r, 0);
                    t.case(after >= before, || format!("n={n} d={d} r={r}: {before} rational sums became {after}"));
                }
                Err(e) => t.fail(e.to_string()),
            }
        }
    }
    t.finish(11)
}

fn check_conjecture(plan: &Plan, ctx: &Context) -> CheckOutcome {
    let mut t = Tally::default();
    let r = plan.conjecture_r;
    let pairs: Vec<(usize, usize)> = plan.conjecture_n.clone().filter(|&n| 2 * r < n).map(|n| (n, r)).collect();
    if pairs.is_empty() {
        return t.finish(12);
    }
    let (v, k) = plan.conjecture_window;
    match conjecture_report(&pairs, v, k, ctx.jobs) {
        Ok(rows) => {
            let mut exceeds = Vec::new();
            for row in &rows {
                let (n, r) = (row.n, row.r);
                if let Ok(h) = (ctx.formulas.h)(n as u64, r as u64) {
                    t.case(h.value == row.construction_value, || {
                        format!("n={n} r={r}: formula {} vs construction {}", h.value, row.construction_value)
                    });
                }
                t.case(row.verdict != Verdict::SearchBelowConstructionImpossible, || {
                    format!("n={n} r={r}: search {} below construction {}", row.best, row.construction_value)
                });
                if row.verdict == Verdict::Exceeds {
                    exceeds.push(format!("n={n} r={r}: {} > {}", row.best, row.construction_value));
                }
            }
            let mut outcome = t.finish(12);
            if !exceeds.is_empty() {
                if !outcome.detail.is_empty() {
                    outcome.detail.push_str("; ");
                }
                outcome.detail.push_str(&format!("exceeds: {}", exceeds.join(", ")));
            }
            outcome
        }
        Err(e) => {
            t.fail(e.to_string());
            t.finish(12)
        }
    }
}

/// Runs check `id` (1 to 12).
pub fn run_check(id: usize, plan: &Plan, ctx: &Context) -> CheckOutcome {
    match id {
        1 => check_pairs(plan, ctx),
        2 => check_triples(plan, ctx),
        3 => check_large_r(plan, ctx),
        4 => check_g(plan, ctx),
        5 => check_upper_bounds(plan, ctx),
        6 => check_oracle(plan, ctx),
        7 => check_duality(plan, ctx),
        8 => check_nonuniform(plan, ctx),
        9 => check_chains(plan, ctx),
        10 => check_ordered(plan, ctx),
        11 => check_reduction(plan, ctx),
        12 => check_conjecture(plan, ctx),
        _ => panic!("no check {id}"),
    }
}

pub fn run_suite(plan: &Plan, ctx: &Context) -> Vec<CheckOutcome> {
    (1..=CHECK_NAMES.len()).map(|id| run_check(id, plan, ctx)).collect()
}
