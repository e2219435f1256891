use std::fmt::Write as _;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde_json::{json, Map, Value};

use zerosum::construct::{construct_nonuniform, construct_ordered, construct_uniform, g_construct};
use zerosum::count::{
    count_all_sizes_zero, count_bruteforce, count_dp, count_intervals_zero, exhaustive_chain_check, sample_chain_check,
    spectrum, MultisetDoc, BRUTE_FORCE_MAX_N, EXHAUSTIVE_CHAIN_MAX_N,
};
use zerosum::formulas::{
    g_formula, h_all_formula, h_formula, h_ord_formula, FormulaError, FormulaStatus, FormulaValue, HRegime,
};
use zerosum::search::{self, conjecture_report, SearchResult, SearchSpace, Verdict};
use zerosum::symbolic::{SymbolicSetDoc, RATIONAL_SUM_MAX_N};
use zerosum::verify::{self, Context, Plan, VERIFY_MAX_N};
use zerosum::{Count, IntegerMultiset};

use crate::{ConstructKind, CountMode, Failure, FormulaKind, Outcome, SearchKind};

fn usage(e: impl ToString) -> Failure {
    Failure::Usage(e.to_string())
}

fn to_map(v: Value) -> Map<String, Value> {
    match v {
        Value::Object(m) => m,
        other => Map::from_iter([("value".to_string(), other)]),
    }
}

fn ok(text: String, inputs: Value, outputs: Value) -> Result<Outcome, Failure> {
    Ok(Outcome { text, inputs, outputs: to_map(outputs), exit: 0 })
}

fn need_r<T>(r: Option<T>, what: &str) -> Result<T, Failure> {
    r.ok_or_else(|| Failure::Usage(format!("{what} needs --r")))
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn status_label(status: FormulaStatus) -> &'static str {
    match status {
        FormulaStatus::Exact => "exact",
        FormulaStatus::LowerBoundConjecturedExact => "lower bound, conjectured exact",
    }
}

pub fn formula(kind: FormulaKind, n: u64, r: Option<u64>) -> Result<Outcome, Failure> {
    let (value, source) = match kind {
        FormulaKind::H => {
            let r = need_r(r, "h")?;
            let regime = HRegime::of(n, r).map_err(usage)?;
            (h_formula(n, r).map_err(usage)?, regime.describe())
        }
        FormulaKind::G => {
            let r = need_r(r, "g")?;
            let v = g_formula(n, r).map_err(usage)?;
            (
                FormulaValue { value: v, status: FormulaStatus::Exact },
                "g(n, r): C(n-1, r) for 2r < n, 2 C(n-2, r-1) for 2r = n, C(n-1, r-1) for 2r > n",
            )
        }
        FormulaKind::HAll => (
            FormulaValue { value: h_all_formula(n).map_err(usage)?, status: FormulaStatus::Exact },
            "h(n) = C(n, floor(n/2))",
        ),
        FormulaKind::HOrd => (
            FormulaValue { value: h_ord_formula(n).map_err(usage)?, status: FormulaStatus::Exact },
            "h_ord(n) = floor(n^2/4)",
        ),
    };
    let text = format!("{} ({})\n  {source}\n", value.value, status_label(value.status));
    ok(
        text,
        json!({ "kind": kind, "n": n, "r": r }),
        json!({ "value": value.value, "status": value.status, "source": source }),
    )
}

/// Exhaustive recount when small enough, otherwise the DP.
fn recount(m: &IntegerMultiset, r: usize, t: i128) -> Count {
    if m.len() <= BRUTE_FORCE_MAX_N {
        count_bruteforce(m, r, t).expect("size checked")
    } else {
        count_dp(m, r, t)
    }
}

pub fn construct(kind: ConstructKind, n: usize, r: Option<usize>) -> Result<Outcome, Failure> {
    let inputs = json!({ "kind": kind, "n": n, "r": r });
    let (doc, provenance, count, expected, target) = match kind {
        ConstructKind::Uniform => {
            let r = need_r(r, "uniform construction")?;
            let (m, p) = construct_uniform(n, r).map_err(usage)?;
            let expected = h_formula(n as u64, r as u64).map_err(usage)?.value;
            (MultisetDoc::from(&m), p, recount(&m, r, 0), expected, Some(0))
        }
        ConstructKind::G => {
            let r = need_r(r, "g construction")?;
            let (m, t, p) = g_construct(n, r).map_err(usage)?;
            let expected = g_formula(n as u64, r as u64).map_err(usage)?;
            (MultisetDoc::from(&m), p, recount(&m, r, t), expected, Some(t))
        }
        ConstructKind::Nonuniform => {
            let m = construct_nonuniform(n).map_err(usage)?;
            let expected = h_all_formula(n as u64).map_err(usage)?;
            let p = zerosum::construct::Provenance::BalancedSigns;
            (MultisetDoc::from(&m), p, count_all_sizes_zero(&m, true), expected, None)
        }
        ConstructKind::Ordered => {
            let s = construct_ordered(n).map_err(usage)?;
            let expected = h_ord_formula(n as u64).map_err(usage)?;
            let p = zerosum::construct::Provenance::AlternatingSigns;
            (MultisetDoc::from(&s), p, count_intervals_zero(&s), expected, None)
        }
    };
    if count != expected {
        return Err(Failure::Internal(format!("construction counts {count}, formula gives {expected}")));
    }
    let shown = match (&doc.support, &doc.values) {
        (Some(_), _) => doc.clone().into_multiset().expect("constructed").to_string(),
        (_, Some(v)) => format!("({})", v.iter().map(i64::to_string).collect::<Vec<_>>().join(", ")),
        _ => unreachable!("constructions fill support or values"),
    };
    let mut text = format!("{shown}\ncount {count}");
    if let Some(t) = target {
        let _ = write!(text, " (target {t})");
    }
    let _ = writeln!(text, "\nprovenance: {}", provenance.describe());
    let mut outputs = serde_json::to_value(&doc).expect("doc serializes");
    let extra = json!({
        "provenance": provenance,
        "count": count,
        "target": target,
        "mode": match kind {
            ConstructKind::Uniform | ConstructKind::G => "r-subsets",
            ConstructKind::Nonuniform => "all-sizes",
            ConstructKind::Ordered => "intervals",
        },
    });
    outputs.as_object_mut().expect("object").extend(to_map(extra));
    ok(text, inputs, outputs)
}

pub fn count(
    input: &Path,
    mode: CountMode,
    r: Option<usize>,
    target: Option<i128>,
    include_empty: bool,
    trials: u64,
    seed: u64,
) -> Result<Outcome, Failure> {
    let doc: MultisetDoc = read_json(input)?;
    let inputs = json!({
        "input": input.display().to_string(),
        "mode": mode,
        "r": r,
        "target": target,
        "include_empty": include_empty,
    });
    match mode {
        CountMode::RSubsets => {
            let m = doc.into_multiset().map_err(usage)?;
            let r = need_r(r, "r-subsets mode")?;
            if r > m.len() {
                return Err(usage(format!("r = {r} exceeds n = {}", m.len())));
            }
            match target {
                Some(t) => {
                    let c = count_dp(&m, r, t);
                    ok(format!("{c}\n"), inputs, json!({ "n": m.len(), "count": c }))
                }
                None => {
                    let sp = spectrum(&m, r);
                    let mut text = format!("sum  count  (r = {r}, n = {})\n", m.len());
                    for (s, c) in sp.entries() {
                        let _ = writeln!(text, "{s}  {c}");
                    }
                    let rows: Vec<Value> = sp.entries().iter().map(|(s, c)| json!({ "sum": s, "count": c })).collect();
                    ok(text, inputs, json!({ "n": m.len(), "count": sp.get(0), "spectrum": rows }))
                }
            }
        }
        CountMode::AllSizes => {
            let m = doc.into_multiset().map_err(usage)?;
            let c = count_all_sizes_zero(&m, include_empty);
            ok(format!("{c}\n"), inputs, json!({ "n": m.len(), "count": c }))
        }
        CountMode::Intervals => {
            let s = doc.into_sequence().map_err(usage)?;
            let c = count_intervals_zero(&s);
            ok(format!("{c}\n"), inputs, json!({ "n": s.len(), "count": c }))
        }
        CountMode::Chains => {
            let m = doc.into_multiset().map_err(usage)?;
            let sampled = sample_chain_check(&m, trials, seed);
            let mut text = format!("{} sampled chains, {} violations\n", sampled.trials, sampled.violations);
            let exhaustive = if m.len() <= EXHAUSTIVE_CHAIN_MAX_N {
                let ex = exhaustive_chain_check(&m).map_err(usage)?;
                let _ = writeln!(
                    text,
                    "{} chains walked, {} violations, {} zero-sum subsets, {} weight mismatches",
                    ex.chains, ex.violations, ex.zero_sum_subsets, ex.weight_mismatches
                );
                Some(ex)
            } else {
                None
            };
            let bad = !sampled.violations.is_zero()
                || exhaustive.as_ref().is_some_and(|e| e.violations > 0 || e.weight_mismatches > 0 || !e.within_bound);
            let inputs = json!({ "input": input.display().to_string(), "mode": mode, "trials": trials, "seed": seed });
            let mut out = ok(text, inputs, json!({ "n": m.len(), "sampled": sampled, "exhaustive": exhaustive }))?;
            if bad {
                out.exit = 3;
            }
            Ok(out)
        }
    }
}

fn search_text(res: &SearchResult) -> String {
    let w = &res.window;
    let mut text = format!(
        "best {}\nwindow n = {}, V = {}, K = {}; {} profiles scanned\nwitnesses ({}):\n",
        res.best,
        res.n,
        w.max_abs_value,
        w.max_support,
        res.profiles_scanned,
        res.witnesses.len()
    );
    for wit in &res.witnesses {
        let _ = match wit.target {
            Some(t) => writeln!(text, "  {}  target {t}", wit.profile),
            None => writeln!(text, "  {}", wit.profile),
        };
    }
    text
}

pub fn search(
    kind: SearchKind,
    n: usize,
    r: Option<usize>,
    max_abs_value: Option<i64>,
    max_support: Option<usize>,
    include_empty: bool,
    jobs: usize,
) -> Result<Outcome, Failure> {
    let default_v = (r.unwrap_or(0) as i64 - 1).max(6);
    let space = SearchSpace::new(n, max_abs_value.unwrap_or(default_v), max_support.unwrap_or(3)).map_err(usage)?;
    let res = match kind {
        SearchKind::H => search::search_h(&space, need_r(r, "h search")?, jobs),
        SearchKind::G => search::search_g(&space, need_r(r, "g search")?, jobs),
        SearchKind::HAll => search::search_h_all(&space, include_empty, jobs),
    }
    .map_err(usage)?;
    for w in &res.witnesses {
        let recount = match kind {
            SearchKind::H => count_dp(&w.profile, r.unwrap_or(0), 0),
            SearchKind::G => count_dp(&w.profile, r.unwrap_or(0), w.target.unwrap_or(0)),
            SearchKind::HAll => count_all_sizes_zero(&w.profile, include_empty),
        };
        if recount != res.best {
            return Err(Failure::Internal(format!("witness {} recounts to {recount}, not {}", w.profile, res.best)));
        }
    }
    // `jobs` is left out of the inputs so reports do not depend on it.
    let inputs = json!({ "kind": kind, "n": n, "r": r, "V": space.max_abs_value, "K": space.max_support });
    ok(search_text(&res), inputs, serde_json::to_value(&res).expect("result serializes"))
}

fn bump(v: Result<Count, FormulaError>) -> Result<Count, FormulaError> {
    v.map(|c| c + Count::one())
}

fn corrupt_h(n: u64, r: u64) -> Result<FormulaValue, FormulaError> {
    h_formula(n, r).map(|v| FormulaValue { value: v.value + Count::one(), ..v })
}

fn corrupt_g(n: u64, r: u64) -> Result<Count, FormulaError> {
    bump(g_formula(n, r))
}

fn corrupt_h_all(n: u64) -> Result<Count, FormulaError> {
    bump(h_all_formula(n))
}

fn corrupt_h_ord(n: u64) -> Result<Count, FormulaError> {
    bump(h_ord_formula(n))
}

pub fn verify(n_max: usize, jobs: usize, seed: u64, corrupt: Option<FormulaKind>) -> Result<Outcome, Failure> {
    if !(1..=VERIFY_MAX_N).contains(&n_max) {
        return Err(usage(format!("--n-max must lie in 1..={VERIFY_MAX_N}, got {n_max}")));
    }
    let mut ctx = Context::new(jobs, seed);
    match corrupt {
        Some(FormulaKind::H) => ctx.formulas.h = corrupt_h,
        Some(FormulaKind::G) => ctx.formulas.g = corrupt_g,
        Some(FormulaKind::HAll) => ctx.formulas.h_all = corrupt_h_all,
        Some(FormulaKind::HOrd) => ctx.formulas.h_ord = corrupt_h_ord,
        None => {}
    }
    let plan = Plan::full().capped(n_max);
    let outcomes = verify::run_suite(&plan, &ctx);
    let mut text = String::new();
    for o in &outcomes {
        let status = if o.passed { "PASS" } else { "FAIL" };
        let _ = write!(text, "{:>2}  {status}  {}  ({} cases)", o.id, o.name, o.cases);
        if !o.detail.is_empty() {
            let _ = write!(text, "  [{}]", o.detail);
        }
        text.push('\n');
    }
    let first_failure = outcomes.iter().find(|o| !o.passed);
    let inputs = json!({ "n_max": n_max, "seed": seed, "corrupt": corrupt });
    let outputs = json!({
        "passed": first_failure.is_none(),
        "checks": outcomes,
    });
    let mut out = ok(text, inputs, outputs)?;
    if let Some(f) = first_failure {
        eprintln!("verification failed: check {} ({})", f.id, f.name);
        out.exit = 1;
    }
    Ok(out)
}

pub fn reduce(input: &Path) -> Result<Outcome, Failure> {
    let doc: SymbolicSetDoc = read_json(input)?;
    let set = doc.into_set().map_err(usage)?;
    let reduction = set.reduce_to_multiset();
    let m = reduction.to_multiset().map_err(usage)?;
    let values = reduction.values_i64().map_err(usage)?;
    let n = set.len();

    let mut text = format!(
        "elements ({})\nscale {}\n",
        values.iter().map(i64::to_string).collect::<Vec<_>>().join(", "),
        reduction.scale
    );
    for step in &reduction.steps {
        let _ = writeln!(text, "step a{} := {} * a{} (lambda = {})", step.dst, step.lambda, step.src, step.lambda);
    }
    text.push_str("r  before  after\n");
    let mut counts = Vec::new();
    for r in 1..=n {
        let after = count_dp(&m, r, 0);
        let before = if n <= RATIONAL_SUM_MAX_N { Some(set.rational_sum_count(r).map_err(usage)?) } else { None };
        if let Some(b) = &before {
            if *b > after {
                return Err(Failure::Internal(format!("r = {r}: {b} rational sums became {after}")));
            }
        }
        let shown = before.as_ref().map_or("-".to_string(), Count::to_string);
        let _ = writeln!(text, "{r}  {shown}  {after}");
        counts.push(json!({ "r": r, "before": before, "after": after }));
    }
    let mut outputs = serde_json::to_value(MultisetDoc::from(&m)).expect("doc serializes");
    outputs.as_object_mut().expect("object").extend(to_map(json!({
        "elements": values,
        "scale": reduction.scale,
        "steps": reduction.steps,
        "counts": counts,
    })));
    // Keep exactly one element field so the output feeds `count` directly.
    outputs.as_object_mut().expect("object").remove("support");
    ok(text, json!({ "input": input.display().to_string(), "n": n, "basis_dim": set.dim() }), outputs)
}

pub fn conjecture(
    ns: &[usize],
    rs: &[usize],
    max_abs_value: i64,
    max_support: usize,
    jobs: usize,
) -> Result<Outcome, Failure> {
    let pairs: Vec<(usize, usize)> = ns.iter().flat_map(|&n| rs.iter().map(move |&r| (n, r))).collect();
    let rows = conjecture_report(&pairs, max_abs_value, max_support, jobs).map_err(usage)?;
    let mut text = format!("window V = {max_abs_value}, K = {max_support}\n n   r  construction  best  verdict\n");
    let mut impossible = false;
    for row in &rows {
        let verdict = match row.verdict {
            Verdict::Matches => "matches",
            Verdict::Exceeds => "EXCEEDS",
            Verdict::SearchBelowConstructionImpossible => {
                impossible = true;
                "search_below_construction_impossible"
            }
        };
        let _ =
            writeln!(text, "{:>2}  {:>2}  {:>12}  {:>4}  {verdict}", row.n, row.r, row.construction_value, row.best);
        if row.verdict == Verdict::Exceeds {
            for w in &row.witnesses {
                let _ = writeln!(text, "      witness {}", w.profile);
            }
        }
    }
    text.push_str("a match is evidence within the window, not a proof\n");
    let inputs = json!({ "n": ns, "r": rs, "V": max_abs_value, "K": max_support });
    let mut out = ok(text, inputs, json!({ "rows": rows }))?;
    if impossible {
        eprintln!("internal inconsistency: search fell below an in-window construction");
        out.exit = 3;
    }
    Ok(out)
}
