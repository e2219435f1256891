use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn zerosum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zerosum")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// Runs with `--out` and returns the report without its timing field.
fn report(dir: &TempDir, args: &[&str]) -> (Output, Value) {
    let out = dir.path().join("report.json");
    let mut all: Vec<&str> = args.to_vec();
    all.extend(["--out", s(&out)]);
    let o = zerosum(&all);
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert!(v["timing_ms"].is_u64());
    v.as_object_mut().unwrap().remove("timing_ms");
    (o, v)
}

#[test]
fn formula_examples() {
    let o = zerosum(&["formula", "--kind", "h", "--n", "6", "--r", "3"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("12 (exact)"));
    let o = zerosum(&["formula", "--kind", "h_all", "--n", "4"]);
    assert!(stdout(&o).starts_with("6 (exact)"));
    let o = zerosum(&["formula", "--kind", "h", "--n", "10", "--r", "4"]);
    assert!(stdout(&o).starts_with("112 (lower bound, conjectured exact)"));
    let o = zerosum(&["formula", "--kind", "h_ord", "--n", "5"]);
    assert!(stdout(&o).starts_with("6 (exact)"));
    let o = zerosum(&["formula", "--kind", "g", "--n", "6", "--r", "4"]);
    assert!(stdout(&o).starts_with("10 (exact)"));
}

#[test]
fn formula_rejects_bad_arguments() {
    let o = zerosum(&["formula", "--kind", "h", "--n", "5", "--r", "5"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("invalid arguments"));
    assert_eq!(code(&zerosum(&["formula", "--kind", "h", "--n", "5"])), 2);
    assert_eq!(code(&zerosum(&["formula", "--kind", "nope", "--n", "5"])), 2);
}

#[test]
fn formula_report_json() {
    let dir = TempDir::new().unwrap();
    let (_, v) = report(&dir, &["formula", "--kind", "h", "--n", "9", "--r", "4"]);
    assert_eq!(v["command"], "formula");
    assert_eq!(v["value"], "70");
    assert_eq!(v["status"], "lower_bound_conjectured_exact");
    assert!(v["version"].is_string());
    assert_eq!(v["inputs"]["n"], 9);
}

#[test]
fn construct_examples() {
    let o = zerosum(&["construct", "--kind", "uniform", "--n", "9", "--r", "3"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.contains("{-2x3, 1x6}") && text.contains("count 45"), "{text}");
    let text = stdout(&zerosum(&["construct", "--kind", "ordered", "--n", "4"]));
    assert!(text.contains("(-1, 1, -1, 1)") && text.contains("count 4"), "{text}");
    let text = stdout(&zerosum(&["construct", "--kind", "nonuniform", "--n", "5"]));
    assert!(text.contains("{-1x3, 1x2}") && text.contains("count 10"), "{text}");
    assert_eq!(code(&zerosum(&["construct", "--kind", "g", "--n", "2", "--r", "1"])), 2);
    assert_eq!(code(&zerosum(&["construct", "--kind", "uniform", "--n", "5"])), 2);
}

#[test]
fn construct_then_count_round_trip() {
    let dir = TempDir::new().unwrap();
    let cases: Vec<Vec<String>> = [
        ("uniform", 9, Some(3)),
        ("uniform", 12, Some(4)),
        ("uniform", 7, Some(5)),
        ("g", 6, Some(3)),
        ("g", 7, Some(2)),
        ("nonuniform", 9, None),
        ("ordered", 11, None),
    ]
    .iter()
    .map(|(k, n, r)| {
        let mut a = vec!["construct".into(), "--kind".into(), k.to_string(), "--n".into(), n.to_string()];
        if let Some(r) = r {
            a.extend(["--r".into(), r.to_string()]);
        }
        a
    })
    .collect();
    for args in cases {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let (o, v) = report(&dir, &args);
        assert_eq!(code(&o), 0);
        let file = write(&dir, "construction.json", &v.to_string());
        let mode = v["mode"].as_str().unwrap().to_string();
        let mut count_args = vec!["count".to_string(), s(&file).into(), "--mode".into(), mode];
        if let Some(t) = v["target"].as_i64() {
            let r = v["inputs"]["r"].as_u64().unwrap();
            count_args.extend(["--r".into(), r.to_string(), "--target".into(), t.to_string()]);
        }
        let count_args: Vec<&str> = count_args.iter().map(String::as_str).collect();
        let o = zerosum(&count_args);
        assert_eq!(code(&o), 0, "{}", stderr(&o));
        assert_eq!(stdout(&o).trim(), v["count"].as_str().unwrap(), "{args:?}");
    }
}

#[test]
fn count_examples() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.json", r#"{"elements": [1, 1, 1, 1, -2, -2]}"#);
    let o = zerosum(&["count", s(&a), "--mode", "r-subsets", "--r", "3", "--target", "0"]);
    assert_eq!(stdout(&o).trim(), "12");
    let o = zerosum(&["count", s(&a), "--mode", "r-subsets", "--r", "3", "--target", "-3"]);
    assert_eq!(stdout(&o).trim(), "4");
    let text = stdout(&zerosum(&["count", s(&a), "--mode", "r-subsets", "--r", "3"]));
    for line in ["-3  4", "0  12", "3  4"] {
        assert!(text.lines().any(|l| l == line), "{text}");
    }
    let b = write(&dir, "b.json", r#"{"elements": [1, 1, -1, -1]}"#);
    assert_eq!(stdout(&zerosum(&["count", s(&b), "--mode", "all-sizes", "--include-empty", "true"])).trim(), "6");
    assert_eq!(stdout(&zerosum(&["count", s(&b), "--mode", "all-sizes", "--include-empty", "false"])).trim(), "5");
    let c = write(&dir, "c.json", r#"{"values": [-1, 1, -1, 1]}"#);
    assert_eq!(stdout(&zerosum(&["count", s(&c), "--mode", "intervals"])).trim(), "4");
    let d = write(&dir, "d.json", r#"{"support": [{"value": 1, "mult": 4}, {"value": -2, "mult": 2}]}"#);
    assert_eq!(stdout(&zerosum(&["count", s(&d), "--mode", "r-subsets", "--r", "3", "--target", "0"])).trim(), "12");
    let o = zerosum(&["count", s(&d), "--mode", "chains", "--trials", "200", "--seed", "5"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("200 sampled chains, 0 violations"));
}

#[test]
fn count_rejects_bad_input() {
    let dir = TempDir::new().unwrap();
    let z = write(&dir, "z.json", r#"{"elements": [1, -1, 2, 0, 3]}"#);
    let o = zerosum(&["count", s(&z), "--mode", "all-sizes"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("element 4 is zero"), "{}", stderr(&o));
    let both = write(&dir, "both.json", r#"{"elements": [1], "values": [1]}"#);
    assert_eq!(code(&zerosum(&["count", s(&both), "--mode", "all-sizes"])), 2);
    let bad = write(&dir, "bad.json", "not json");
    assert_eq!(code(&zerosum(&["count", s(&bad), "--mode", "all-sizes"])), 2);
    let ok = write(&dir, "ok.json", r#"{"elements": [1, -1]}"#);
    assert_eq!(code(&zerosum(&["count", s(&ok), "--mode", "r-subsets"])), 2);
    assert_eq!(code(&zerosum(&["count", s(&ok), "--mode", "r-subsets", "--r", "3"])), 2);
    assert_eq!(code(&zerosum(&["count", "/nonexistent/x.json", "--mode", "intervals"])), 2);
}

#[test]
fn search_examples() {
    let o = zerosum(&["search", "--kind", "h", "--n", "6", "--r", "3", "--V", "4", "--K", "3"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("best 12\n"));
    assert!(stdout(&o).contains("{-2x2, 1x4}"));
    let o = zerosum(&["search", "--kind", "g", "--n", "5", "--r", "2", "--V", "2", "--K", "2"]);
    assert!(stdout(&o).starts_with("best 6\n"));
    assert!(stdout(&o).contains("{1x4, 2x1}  target 2"));
    let o = zerosum(&["search", "--kind", "h_all", "--n", "4", "--V", "2", "--K", "3"]);
    assert!(stdout(&o).starts_with("best 6\n"));
    let o = zerosum(&["search", "--kind", "h", "--n", "6", "--r", "3", "--V", "1", "--K", "3"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn search_report_json() {
    let dir = TempDir::new().unwrap();
    let (_, v) = report(&dir, &["search", "--kind", "h", "--n", "6", "--r", "3", "--V", "4", "--K", "3"]);
    assert_eq!(v["best"], "12");
    assert_eq!(v["n"], 6);
    assert_eq!(v["r"], 3);
    assert_eq!((v["window"]["V"].as_i64(), v["window"]["K"].as_i64()), (Some(4), Some(3)));
    assert!(v["profiles_scanned"].is_string());
    assert!(!v["witnesses"].as_array().unwrap().is_empty());
}

#[test]
fn jobs_do_not_change_output() {
    let dir = TempDir::new().unwrap();
    for base in [
        vec!["search", "--kind", "h", "--n", "9", "--r", "3", "--V", "5", "--K", "3"],
        vec!["search", "--kind", "g", "--n", "8", "--r", "3", "--V", "4", "--K", "3"],
        vec!["conjecture", "--n", "9,10", "--r", "4"],
    ] {
        let mut outputs = Vec::new();
        for jobs in ["1", "4"] {
            let mut args = base.clone();
            args.extend(["--jobs", jobs]);
            let (o, v) = report(&dir, &args);
            outputs.push((stdout(&o), v));
        }
        assert_eq!(outputs[0], outputs[1], "{base:?}");
    }
}

#[test]
fn verify_examples() {
    let o = zerosum(&["verify", "--n-max", "10"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert_eq!(stdout(&o).lines().filter(|l| l.contains("PASS")).count(), 12);
    assert_eq!(code(&zerosum(&["verify", "--n-max", "3"])), 0);
    assert_eq!(code(&zerosum(&["verify", "--n-max", "15"])), 2);
}

#[test]
fn verify_fails_on_corrupted_formulas() {
    for kind in ["h", "g", "h_all", "h_ord"] {
        let o = zerosum(&["verify", "--n-max", "6", "--corrupt", kind]);
        assert_eq!(code(&o), 1, "{kind}");
        assert!(stderr(&o).contains("verification failed: check"), "{kind}");
        assert!(stdout(&o).contains("FAIL"));
    }
}

#[test]
fn reduce_examples() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.json", r#"{"basis_dim": 1, "elements": [[0, 1], [0, -1], [0, 2]]}"#);
    let o = zerosum(&["reduce", s(&a)]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("elements (1, -1, 2)\n"));

    let b =
        write(&dir, "b.json", r#"{"basis_dim": 2, "elements": [["0", "1", "0"], ["0", "0", "1"], ["0", "-1", "-1"]]}"#);
    let (o, v) = report(&dir, &["reduce", s(&b)]);
    assert!(stdout(&o).starts_with("elements (1, 2, -3)\n"));
    assert_eq!(v["steps"][0]["lambda"], "2");
    assert_eq!(v["counts"][2]["after"], "1");

    // The reduced report is itself a valid count input.
    let file = write(&dir, "reduced.json", &v.to_string());
    let o = zerosum(&["count", s(&file), "--mode", "r-subsets", "--r", "3", "--target", "0"]);
    assert_eq!(stdout(&o).trim(), "1");

    let c = write(&dir, "c.json", r#"{"basis_dim": 2, "elements": [[2, 0, 0], [0, 1, 0]]}"#);
    let o = zerosum(&["reduce", s(&c)]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("element 1 is rational"), "{}", stderr(&o));
    let d = write(&dir, "d.json", r#"{"basis_dim": 1, "elements": [[0, 1], [0, 1]]}"#);
    assert_eq!(code(&zerosum(&["reduce", s(&d)])), 2);
}

#[test]
fn conjecture_examples() {
    let dir = TempDir::new().unwrap();
    let (o, v) = report(&dir, &["conjecture", "--n", "9..12", "--r", "4", "--V", "6", "--K", "3"]);
    assert_eq!(code(&o), 0);
    let rows = v["rows"].as_array().unwrap();
    let values: Vec<&str> = rows.iter().map(|r| r["construction_value"].as_str().unwrap()).collect();
    assert_eq!(values, ["70", "112", "168", "252"]);
    for row in rows {
        assert!(row["verdict"] == "matches" || row["verdict"] == "exceeds");
        assert_eq!(row["window"]["V"], 6);
    }
    let (_, v) = report(&dir, &["conjecture", "--n", "9", "--r", "4"]);
    assert_eq!(v["rows"].as_array().unwrap().len(), 1);
    assert_eq!(code(&zerosum(&["conjecture", "--n", "8", "--r", "4"])), 2);
    assert_eq!(code(&zerosum(&["conjecture", "--n", "9", "--r", "4", "--V", "2"])), 2);
}

#[test]
fn out_dash_prints_json() {
    let o = zerosum(&["formula", "--kind", "h_ord", "--n", "7", "--out", "-"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["value"], "12");
}
