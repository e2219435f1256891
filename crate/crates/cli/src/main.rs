//! `zerosum`: closed forms, constructions, exact counts, exhaustive search,
//! the verification suite and conjecture reports from the command line.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or validation
//! error, 3 internal inconsistency.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Parser)]
#[command(name = "zerosum", version, about = "Extremal zero-sum subsequence toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the JSON run report here (`-` for standard output).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a closed form.
    Formula {
        #[arg(long, value_enum)]
        kind: FormulaKind,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        r: Option<u64>,
    },
    /// Emit an extremal construction with its recounted value.
    Construct {
        #[arg(long, value_enum)]
        kind: ConstructKind,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: Option<usize>,
    },
    /// Count zero-sum (or target-sum) subsets of a JSON multiset or sequence.
    Count {
        /// JSON file with one of "support", "elements" or "values".
        input: PathBuf,
        #[arg(long, value_enum)]
        mode: CountMode,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        target: Option<i128>,
        #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
        include_empty: bool,
        /// Chains sampled in `chains` mode.
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Exhaustive search over canonical profiles in a window.
    Search {
        #[arg(long, value_enum)]
        kind: SearchKind,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: Option<usize>,
        /// Largest absolute value (default max(6, r-1)).
        #[arg(long = "V", alias = "v")]
        max_abs_value: Option<i64>,
        /// Largest support size (default 3).
        #[arg(long = "K", alias = "k")]
        max_support: Option<usize>,
        #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
        include_empty: bool,
        /// Worker threads; 0 uses every core.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
    /// Run the theorem-backed verification suite.
    Verify {
        #[arg(long, default_value_t = 10)]
        n_max: usize,
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[arg(long, default_value_t = 20_240_601)]
        seed: u64,
        /// Test fixture: add one to a closed form before checking it.
        #[arg(long, value_enum, hide = true)]
        corrupt: Option<FormulaKind>,
    },
    /// Reduce a set of symbolic irrationals to an integer multiset.
    Reduce {
        /// JSON file `{"basis_dim": d, "elements": [[q0, q1, ..., qd], ...]}`.
        input: PathBuf,
    },
    /// Compare exhaustive search with the two-class construction for 4 <= r < n/2.
    Conjecture {
        /// Values of n, e.g. `9..12` or `9,11,13`.
        #[arg(long, value_parser = parse_list)]
        n: NumberList,
        #[arg(long, value_parser = parse_list)]
        r: NumberList,
        #[arg(long = "V", alias = "v", default_value_t = 6)]
        max_abs_value: i64,
        #[arg(long = "K", alias = "k", default_value_t = 3)]
        max_support: usize,
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FormulaKind {
    H,
    G,
    #[value(name = "h_all", alias = "h-all")]
    HAll,
    #[value(name = "h_ord", alias = "h-ord")]
    HOrd,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstructKind {
    Uniform,
    Nonuniform,
    Ordered,
    G,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CountMode {
    RSubsets,
    AllSizes,
    Intervals,
    Chains,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchKind {
    H,
    G,
    #[value(name = "h_all", alias = "h-all")]
    HAll,
}

#[derive(Clone, Debug)]
pub struct NumberList(pub Vec<usize>);

/// Parses `9..12` (inclusive), `9..=12`, `9,10,12` and mixtures.
fn parse_list(s: &str) -> Result<NumberList, String> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("not a number: {t:?}"));
        if let Some((a, b)) = part.split_once("..") {
            let (a, b) = (num(a)?, num(b.trim_start_matches('='))?);
            if a > b {
                return Err(format!("empty range {part}"));
            }
            out.extend(a..=b);
        } else {
            out.push(num(part)?);
        }
    }
    if out.is_empty() {
        return Err("empty list".into());
    }
    Ok(NumberList(out))
}

/// Why a command stopped early.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Internal(String),
}

/// What a command produced: text for stdout, JSON fields for the report,
/// and its exit status.
pub struct Outcome {
    pub text: String,
    pub inputs: Value,
    pub outputs: Map<String, Value>,
    pub exit: u8,
}

#[derive(Serialize)]
struct RunReport<'a> {
    command: &'a str,
    version: &'a str,
    inputs: &'a Value,
    #[serde(flatten)]
    outputs: &'a Map<String, Value>,
    timing_ms: u64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let (name, result) = match cli.command {
        Command::Formula { kind, n, r } => ("formula", commands::formula(kind, n, r)),
        Command::Construct { kind, n, r } => ("construct", commands::construct(kind, n, r)),
        Command::Count { input, mode, r, target, include_empty, trials, seed } => {
            ("count", commands::count(&input, mode, r, target, include_empty, trials, seed))
        }
        Command::Search { kind, n, r, max_abs_value, max_support, include_empty, jobs } => {
            ("search", commands::search(kind, n, r, max_abs_value, max_support, include_empty, jobs))
        }
        Command::Verify { n_max, jobs, seed, corrupt } => ("verify", commands::verify(n_max, jobs, seed, corrupt)),
        Command::Reduce { input } => ("reduce", commands::reduce(&input)),
        Command::Conjecture { n, r, max_abs_value, max_support, jobs } => {
            ("conjecture", commands::conjecture(&n.0, &r.0, max_abs_value, max_support, jobs))
        }
    };
    let outcome = match result {
        Ok(o) => o,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal inconsistency: {msg}");
            return ExitCode::from(3);
        }
    };

    let report = RunReport {
        command: name,
        version: zerosum::VERSION,
        inputs: &outcome.inputs,
        outputs: &outcome.outputs,
        timing_ms: start.elapsed().as_millis() as u64,
    };
    let json = serde_json::to_string_pretty(&report).expect("report serializes");
    match cli.out.as_deref() {
        Some(p) if p.as_os_str() == "-" => println!("{json}"),
        Some(p) => {
            print!("{}", outcome.text);
            if let Err(e) = std::fs::write(p, json + "\n") {
                eprintln!("error: cannot write {}: {e}", p.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{}", outcome.text),
    }
    ExitCode::from(outcome.exit)
}
