use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use probe_witness::graph::{parse_graph, parse_witness};
use probe_witness::oracle::verify_witness;

const THETA: &str = "g 5 6\ne 0 2\ne 2 1\ne 0 3\ne 3 1\ne 0 4\ne 4 1\n";

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_probe-witness")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn find_dense_on_theta() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "theta.g", THETA);
    let (code, out, _) = run(&["find-dense", g.to_str().unwrap(), "--epsilon", "1/5"]);
    assert_eq!(code, 0);
    let w = parse_witness(&out).unwrap();
    assert!(w.surplus() >= 1);
    assert!(verify_witness(&parse_graph(THETA).unwrap(), &w).is_valid());
    let (code, _, err) = run(&["find-dense", g.to_str().unwrap(), "--epsilon", "1/2"]);
    assert_eq!(code, 2);
    assert!(err.contains("precondition"));
}

#[test]
fn verify_rejects_unspanned_edge() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "theta.g", THETA);
    let bad = write(dir.path(), "bad.w", "S: 0 2\nedges: 0 1\ngap: 0\n");
    let (code, out, _) = run(&["verify", g.to_str().unwrap(), bad.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(out.starts_with("invalid"));
    let good = write(dir.path(), "good.w", "S: 0 1 2 3 4\nedges: 0 1 2 3 4 5\ngap: 1\n");
    let (code, out, _) = run(&["verify", g.to_str().unwrap(), good.to_str().unwrap()]);
    assert_eq!((code, out.as_str()), (0, "valid\n"));
}

#[test]
fn find_gap_and_oracle() {
    let dir = tempfile::tempdir().unwrap();
    let mut text = String::from("g 3 10\n");
    for i in 0..10 {
        let (u, v) = [(0, 1), (1, 2), (0, 2)][i % 3];
        text.push_str(&format!("e {u} {v}\n"));
    }
    let g = write(dir.path(), "ten.g", &text);
    let (code, out, _) = run(&["find-gap", g.to_str().unwrap(), "--gap", "3"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("S: 0 1 2\n"));
    let (code, out, _) = run(&["oracle", g.to_str().unwrap(), "--kmax", "3"]);
    assert_eq!((code, out.as_str()), (0, "S: 0 1 2\ngap: 7\n"));
    let (code, _, _) = run(&["oracle", g.to_str().unwrap(), "--kmax", "3", "--budget", "4"]);
    assert_eq!(code, 2);
}

#[test]
fn find_hyper_modes() {
    let dir = tempfile::tempdir().unwrap();
    let h = write(dir.path(), "h.g", "h 4 3 5\ne 0 1 2\ne 0 1 3\ne 0 2 3\ne 1 2 3\ne 0 1 2\n");
    let (code, _, err) = run(&["find-hyper", h.to_str().unwrap(), "--k", "4"]);
    assert_eq!(code, 2);
    assert!(err.contains("2^5"));
    let (code, out, _) = run(&["find-hyper", h.to_str().unwrap(), "--k", "4", "--best-effort"]);
    assert_eq!(code, 0);
    assert!(parse_witness(&out).unwrap().surplus() >= 1);
    let sparse = write(dir.path(), "s.g", "h 5 3 1\ne 0 1 2\n");
    let (code, out, _) = run(&["find-hyper", sparse.to_str().unwrap(), "--k", "3", "--best-effort"]);
    assert_eq!((code, out.as_str()), (1, "no witness\n"));
}

#[test]
fn tightness_report_is_stable() {
    let dir = tempfile::tempdir().unwrap();
    let log = dir.path().join("results.txt");
    let args = ["tightness", "--s", "161", "--m", "16", "--t", "3", "--k", "4", "--trials", "100", "--seed", "7"];
    let (code, first, _) = run(&args);
    assert_eq!(code, 0);
    assert!(first.contains("condition_satisfied = true"));
    let mut with_append = args.to_vec();
    with_append.extend(["--append", log.to_str().unwrap()]);
    let (_, second, _) = run(&with_append);
    assert_eq!(first, second);
    assert_eq!(fs::read_to_string(&log).unwrap(), format!("{first}\n"));
    for line in first.lines() {
        assert!(line.contains(" = "), "not a key = value line: {line}");
    }
}

#[test]
fn problems_and_rank_checks() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("v.p");
    let (code, _, _) = run(&["gen-problem", "--n", "3", "--m", "5", "--p", "7", "--out", p.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(run(&["rank-check", p.to_str().unwrap(), "--k", "3"]).0, 0);
    assert_eq!(run(&["rank-check", p.to_str().unwrap(), "--k", "4"]).0, 2);
    let dup = write(dir.path(), "dup.p", "problem 7 2 2\n1 1\n3 3\n");
    let (code, out, _) = run(&["rank-check", dup.to_str().unwrap(), "--k", "2"]);
    assert_eq!((code, out.as_str()), (1, "kwise = false\n"));
}

#[test]
fn audit_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let dense = write(dir.path(), "d.l", "layout 3 4 2\nq 0 1\nq 1 2\nq 0 2\nq 0 1\n");
    let (code, out, _) = run(&["audit", dense.to_str().unwrap(), "--k", "4"]);
    assert_eq!(code, 0);
    assert!(out.contains("verdict = violation\nwitness_cells = 0 1 2\nwitness_queries = 0 1 2 3\n"));
    let (code, out, _) = run(&["audit", dense.to_str().unwrap(), "--n", "16"]);
    assert_eq!(code, 0);
    assert!(out.contains("k = 4\n"));
    let private = write(dir.path(), "p.l", "layout 4 2 2\nq 0 1\nq 2 3\n");
    let (code, out, _) = run(&["audit", private.to_str().unwrap(), "--k", "2"]);
    assert_eq!(code, 1);
    assert!(out.contains("verdict = no_witness_found"));
    let broken = write(dir.path(), "b.l", "layout 2 1 2\nq 0 5\n");
    assert_eq!(run(&["audit", broken.to_str().unwrap(), "--k", "2"]).0, 2);
    assert_eq!(run(&["audit", dense.to_str().unwrap()]).0, 2);
}
