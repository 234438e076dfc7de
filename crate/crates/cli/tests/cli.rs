use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hurwitz3")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path
}

const X: &str = "s2 s0 s1 s1 s1- s2-";

#[test]
fn nf_prints_the_normal_form() {
    let out = run(&["nf", "s2 s1"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "| -1\n");
    assert_eq!(stdout(&run(&["nf", ""])), "| 0\n");
    assert_eq!(stdout(&run(&["nf", "s2 s0 s2"])), "s2 | -1\n");
    assert_eq!(stdout(&run(&["nf", X])), "s2 s0 s1 s1 | 1\n");
}

#[test]
fn parse_errors_exit_with_two() {
    let out = run(&["nf", "s3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("s3"));
}

#[test]
fn vertices_and_components() {
    assert_eq!(stdout(&run(&["vertices", X])), "s2 h0 s1 h1\ns2 h0 h1 s1\n");
    let out = stdout(&run(&["components", "s1"]));
    assert!(out.starts_with("s1 | 0: 1 vertices, 1 components"), "{out}");
    let out = stdout(&run(&["components", X]));
    assert!(out.contains("2 vertices, 1 components"), "{out}");
    let out = stdout(&run(&["components", "s1 s1 s2 s1- s2-"]));
    assert!(out.contains("0 vertices, 0 components") && out.contains("not quasipositive"), "{out}");
    let out = stdout(&run(&["components", "s2 s1"]));
    assert!(out.contains("single orbit"), "{out}");
}

#[test]
fn components_export_dot_and_json() {
    let dir = TempDir::new().unwrap();
    let dot = dir.path().join("g.dot");
    let out = run(&["components", "s0 s0 s1 s1 s2 s0 s0 s2- s1-", "--json", "--dot", dot.to_str().unwrap()]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["v0_size"], 12);
    assert_eq!(json["component_count"], 4);
    assert_eq!(json["p"], 2);
    let dot = fs::read_to_string(dot).unwrap();
    assert!(dot.starts_with("graph G0 {"));
    assert_eq!(dot.matches("subgraph cluster_").count(), 4);
    assert!(dot.contains("kind=\"h"));
}

#[test]
fn equiv_decides_and_certifies() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a", "target: s2 s0 s1 s1 s1- s2-\ns2 : s0\ns2 s1 : s1\n");
    let b = write(&dir, "b", "# the other bracket\ns2 : s0\ns2 : s1\n");
    let out = run(&["equiv", X, a.to_str().unwrap(), b.to_str().unwrap(), "--certificate"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("equivalent\n"), "{text}");
    assert!(text.contains("certificate: "), "{text}");

    let out = run(&["equiv", X, a.to_str().unwrap(), b.to_str().unwrap(), "--json"]);
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["verdict"], "equivalent");
    assert_eq!(json["k"], 2);
    assert!(json.get("certificate").is_none());
}

#[test]
fn equiv_reports_inequivalence() {
    let dir = TempDir::new().unwrap();
    let x = "s0 s0 s1 s1 s2 s0 s0 s2- s1-";
    let a = write(&dir, "a", "s0 s0 : s1\ns0 s0 : s1\ns0 s0 s2 s0 : s0\ns0 s0 s2 s0 : s1\ns0 s0 s2 s0 : s1\n");
    let b = write(&dir, "b", "s0 : s0\ns0 s1 : s1\ns0 s1 : s2\ns0 s1 s0 s0 : s1\ns0 s1 s0 s0 : s1\n");
    let out = run(&["equiv", x, a.to_str().unwrap(), b.to_str().unwrap(), "--json"]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["verdict"], "inequivalent");
    assert_ne!(json["component_a"], json["component_b"]);
}

#[test]
fn equiv_single_orbit_notice() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a", ": s1\n: s0\n");
    let b = write(&dir, "b", ": s0\n: s2\n");
    let out = run(&["equiv", "s2 s1", a.to_str().unwrap(), b.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "equivalent (p<0: single orbit)\n");
}

#[test]
fn equiv_invalid_and_unparseable_inputs() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a", "s2 : s0\ns2 : s1\n");
    let bad = write(&dir, "bad", "s2 : s0\ns2 : s0\n");
    let garbled = write(&dir, "garbled", "s2 s0\n");
    let out = run(&["equiv", X, a.to_str().unwrap(), bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stdout(&out).contains("product mismatch"));
    let out = run(&["equiv", X, a.to_str().unwrap(), garbled.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let missing = dir.path().join("missing");
    let out = run(&["equiv", X, a.to_str().unwrap(), missing.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn orbit_explores_the_orbit() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a", "s2 : s0\ns2 : s1\n");
    let out = stdout(&run(&["orbit", X, a.to_str().unwrap()]));
    assert!(out.contains("(saturated)") && out.contains("2 of 2 weight-0 brackets reached"), "{out}");
    let out = stdout(&run(&["orbit", X, a.to_str().unwrap(), "--budget", "0"]));
    assert!(out.contains("1 factorizations (budget reached)"), "{out}");
    let bad = write(&dir, "bad", ": s1\n");
    assert_eq!(run(&["orbit", X, bad.to_str().unwrap()]).status.code(), Some(3));
}

#[test]
fn check_runs_the_suites() {
    let out = run(&["check", "--max-len", "0"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.lines().filter(|l| l.starts_with("PASS")).count() >= 10, "{text}");
    let a = stdout(&run(&["check", "--max-len", "3", "--seed", "7", "--jobs", "1"]));
    assert!(!a.contains("FAIL"), "{a}");
}
