use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const K4: &str = "0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n";
const K33: &str = "0 3\n0 4\n0 5\n1 3\n1 4\n1 5\n2 3\n2 4\n2 5\n";
const C7: &str = "0 1\n1 2\n2 3\n3 4\n4 5\n5 6\n6 0\n";

struct Fixture {
    dir: TempDir,
}

impl Fixture {
    fn new() -> Self {
        let dir = TempDir::new().unwrap();
        for (name, body) in [("k4.edges", K4), ("k33.edges", K33), ("c7.edges", C7), ("bad.edges", "0 1\n1 1\n")] {
            std::fs::write(dir.path().join(name), body).unwrap();
        }
        Fixture { dir }
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_evencycle")).args(args).output().unwrap()
}

fn run_on(args: &[&str], input: &Path) -> Output {
    let mut all: Vec<&str> = args.to_vec();
    all.extend(["--input", input.to_str().unwrap()]);
    run(&all)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn detect_reports_found_or_none() {
    let f = Fixture::new();
    let o = run_on(&["detect", "--k", "3"], &f.path("c7.edges"));
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "none\n");

    let o = run_on(&["detect", "--k", "2"], &f.path("k4.edges"));
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("found"));
    let cycle: Vec<usize> = lines.next().unwrap().split(' ').map(|v| v.parse().unwrap()).collect();
    assert_eq!(cycle.len(), 4);

    let o = run_on(&["detect", "--k", "3"], &f.path("missing.edges"));
    assert_eq!(code(&o), 2);
}

#[test]
fn list_counts() {
    let f = Fixture::new();
    let o = run_on(&["list", "--k", "3", "--seed", "7"], &f.path("k33.edges"));
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.starts_with("6 cycles\n"));
    assert_eq!(out.lines().count(), 7);

    let o = run_on(&["list", "--k", "2", "--oracle"], &f.path("k4.edges"));
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("3 cycles\n"));

    let o = run_on(&["list", "--k", "3"], &f.path("c7.edges"));
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "0 cycles\n");
}

#[test]
fn list_exit_codes() {
    let f = Fixture::new();
    assert_eq!(code(&run_on(&["list", "--k", "3", "--budget", "10"], &f.path("k33.edges"))), 3);
    assert_eq!(code(&run_on(&["list", "--k", "3", "--oracle", "--budget", "2"], &f.path("k33.edges"))), 3);
    assert_eq!(code(&run_on(&["list", "--k", "3"], &f.path("bad.edges"))), 2);
    assert_eq!(code(&run_on(&["list", "--k", "1"], &f.path("k33.edges"))), 2);
    assert_eq!(code(&run_on(&["list", "--k", "3", "--epsilon", "2"], &f.path("k33.edges"))), 2);
    assert_eq!(code(&run_on(&["list", "--k", "3", "--epsilon", "x"], &f.path("k33.edges"))), 2);
    assert_eq!(code(&run_on(&["detect", "--k", "2", "--format", "csv"], &f.path("k4.edges"))), 2);
}

#[test]
fn json_reports_are_byte_identical_across_runs() {
    let f = Fixture::new();
    let args = ["list", "--k", "3", "--seed", "3", "--format", "json"];
    let a = run_on(&args, &f.path("k33.edges"));
    let b = run_on(&args, &f.path("k33.edges"));
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let report: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(report["command"], "list");
    assert_eq!(report["results"]["cycle_count"], 6);
    assert_eq!(report["parameters"]["epsilon"], "1/1000000000");
    assert_eq!(report["input_digest"].as_str().unwrap().len(), 64);
    assert!(report.get("wall_ms").is_none());
    assert!(report["counters"]["cycles"].as_u64() == Some(6));

    let c = run_on(&["list", "--k", "3", "--seed", "3", "--format", "json", "--threads", "1"], &f.path("k33.edges"));
    assert_eq!(a.stdout, c.stdout);

    let timed = run_on(&["list", "--k", "3", "--format", "json", "--timing"], &f.path("k33.edges"));
    let report: serde_json::Value = serde_json::from_slice(&timed.stdout).unwrap();
    assert!(report["wall_ms"].is_number());
}

#[test]
fn list_csv_rows() {
    let f = Fixture::new();
    let o = run_on(&["list", "--k", "2", "--oracle", "--format", "csv"], &f.path("k4.edges"));
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "index,vertices\n0,0 1 2 3\n1,0 1 3 2\n2,0 2 1 3\n");
}

#[test]
fn bench_spec_handling() {
    let o = run(&["bench", "--sizes", ""]);
    assert_eq!(code(&o), 2);
    let o = run(&["bench", "--sizes", "abc"]);
    assert_eq!(code(&o), 2);
    let o = run(&["bench", "--sizes", "2^9", "--format", "csv"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 2);
    assert!(out.starts_with("m,n,seed,t,delta,below_delta_edges,above_delta_edges,total_work"));
    assert!(out.lines().nth(1).unwrap().starts_with("512,256,1,"));
}

#[test]
fn decompose_summary() {
    let f = Fixture::new();
    let o = run_on(&["decompose", "--k", "3"], &f.path("k33.edges"));
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("star bucket: 2 (d* = 4, |V*| = 6)"));
    assert!(out.contains("bucket step: holds"));
    let o = run_on(&["decompose", "--k", "3", "--format", "json"], &f.path("k33.edges"));
    let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["results"]["chain"]["layer_step_holds"], true);
}

#[test]
fn supersat_csv_columns() {
    let o = run(&["supersat", "--left", "3", "--right", "3", "--p", "1", "--k", "3", "--format", "csv"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("L,R,m,k,n,t,ratio,bound_partial,hypothesis_flags"));
    assert!(lines.next().unwrap().starts_with("3,3,9,3,6,6,2/243,"));
    assert_eq!(code(&run(&["supersat", "--left", "3", "--right", "3", "--k", "3"])), 2);
    let o = run(&["supersat", "--left", "12", "--right", "12", "--p", "0.5", "--k", "3", "--budget", "5"]);
    assert_eq!(code(&o), 3);
}

#[test]
fn lp_verify_reports_the_regime_three_cases() {
    let o = run(&["lp-verify", "--format", "json"]);
    let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let results = &report["results"];
    assert_eq!(results["cases"].as_array().unwrap().len(), 36);
    assert_eq!(results["all_certified"], true);
    assert_eq!(results["all_agree"], true);
    assert_eq!(results["global_max"], "5/3");
    assert_eq!(results["over_bound"].as_array().unwrap().len(), 4);
    assert_eq!(results["pass"], false);
    // Certified, cross-checked, but the bound does not hold in every case.
    assert_eq!(code(&o), 1);

    let text = stdout(&run(&["lp-verify"]));
    assert!(text.contains("case (2,2,2,2)  Optimal  optimum 8/5  rows 29  certificate ok  enumeration 8/5\n"));
    assert!(text.ends_with("result: FAIL\n"));
}
