//! End-to-end runs of the `bench` binary.

use std::path::Path;
use std::process::Command;

use wcdag_bench::table::{read_csv, to_csv};

fn bench(args: &[&str]) -> String {
    let out = Command::new(env!("CARGO_BIN_EXE_bench")).args(args).output().unwrap();
    assert!(out.status.success(), "bench {args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn run_into(dir: &Path) -> String {
    bench(&["run", "--experiment", "2", "--n", "8,10", "--seeds", "4", "--k", "1,2", "--out", dir.to_str().unwrap()]);
    let rows = read_csv(&std::fs::read_to_string(dir.join("results.csv")).unwrap()).unwrap();
    to_csv(&rows, false).unwrap()
}

#[test]
fn run_is_reproducible_and_writes_artifacts() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    assert_eq!(run_into(a.path()), run_into(b.path()));
    let meta = std::fs::read_to_string(a.path().join("metadata.txt")).unwrap();
    let hash = |m: &str| m.lines().find(|l| l.starts_with("csv_sha256_without_time")).unwrap().to_string();
    assert_eq!(hash(&meta), hash(&std::fs::read_to_string(b.path().join("metadata.txt")).unwrap()));
    let svgs = std::fs::read_dir(a.path())
        .unwrap()
        .filter(|e| e.as_ref().unwrap().path().extension().is_some_and(|x| x == "svg"));
    assert!(svgs.count() >= 2);
}

#[test]
fn gen_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("star.txt");
    bench(&["gen", "--class", "star", "--n", "6", "--heavy", "100", "--out", file.to_str().unwrap()]);
    let again = bench(&["gen", "--class", "star", "--n", "6", "--heavy", "100"]);
    assert_eq!(std::fs::read_to_string(&file).unwrap(), again);
    let report = bench(&["verify", "--input", file.to_str().unwrap()]);
    assert!(report.contains("nu_1 = 1"), "{report}");
    let lb = bench(&["lb", "--input", file.to_str().unwrap()]);
    assert!(lb.contains("lower_bound = "), "{lb}");
}

#[test]
fn plot_redraws_from_csv() {
    let dir = tempfile::tempdir().unwrap();
    run_into(dir.path());
    let charts = dir.path().join("charts");
    bench(&[
        "plot",
        "--csv",
        dir.path().join("results.csv").to_str().unwrap(),
        "--out",
        charts.to_str().unwrap(),
        "--linear",
    ]);
    assert!(std::fs::read_dir(charts).unwrap().count() >= 2);
}

#[test]
fn bad_input_fails_cleanly() {
    let out = Command::new(env!("CARGO_BIN_EXE_bench")).args(["verify", "--input", "/nonexistent"]).output().unwrap();
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
}
