use std::path::PathBuf;
use std::process::{Command, Output};

const N5: &str = "n 5\nelements 0 a b c 1\ncover 0 a\ncover 0 b\ncover b c\ncover a 1\ncover c 1\n";
const B2: &str = "n 4\nelements 0 a b 1\ncover 0 a\ncover 0 b\ncover a 1\ncover b 1\n";
const VEE: &str = "n 3\ncover 0 2\ncover 1 2\n";

fn fixture(name: &str, text: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("slat-cli-{}-{name}.slat", std::process::id()));
    std::fs::write(&path, text).unwrap();
    path
}

fn slat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_slat")).args(args).output().unwrap()
}

fn run(args: &[&str]) -> (i32, String) {
    let out = slat(args);
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn validate_exit_codes() {
    let good = fixture("valid", N5);
    let (code, out) = run(&["validate", good.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.contains("5 elements"));

    let bad = fixture("noncommutative", "n 2\njoin\n0 0\n1 1\n");
    let (code, out) = run(&["validate", bad.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(out.starts_with("invalid:"));

    let garbled = fixture("garbled", "n 2\njoin\n0 1\n1 x\n");
    assert_eq!(run(&["validate", garbled.to_str().unwrap()]).0, 2);
    assert_eq!(run(&["validate", "/nonexistent/file.slat"]).0, 2);
    assert_eq!(run(&["no-such-command"]).0, 2);
}

#[test]
fn check_sum_reports_witness() {
    let b2 = fixture("sum-b2", B2);
    let (code, out) = run(&["check-sum", b2.to_str().unwrap(), "--c", "0", "--i1", "0,a", "--i2", "0,b"]);
    assert_eq!(code, 0);
    assert!(out.contains("direct sum: true"));

    let n5 = fixture("sum-n5", N5);
    let (code, out) = run(&["check-sum", n5.to_str().unwrap(), "--c", "0", "--i1", "0,b,c", "--i2", "0,a"]);
    assert_eq!(code, 1);
    assert!(out.contains("Abs: fails at"));
    assert!(out.contains("Mod1: holds"));

    let (code, _) = run(&["check-sum", n5.to_str().unwrap(), "--c", "0", "--i1", "0,q", "--i2", "0,a"]);
    assert_eq!(code, 2);
}

#[test]
fn bounded_checks() {
    let b2 = fixture("bounded-b2", B2);
    let path = b2.to_str().unwrap();
    assert_eq!(run(&["check-zero", path, "--i1", "0,a", "--i2", "0,b"]).0, 0);
    assert_eq!(run(&["check-one", path, "--i1", "a,1", "--i2", "b,1"]).0, 0);

    let n5 = fixture("bounded-n5", N5);
    let (code, out) = run(&["check-one", n5.to_str().unwrap(), "--i1", "a,1", "--i2", "b,c,1"]);
    assert_eq!(code, 1);
    assert!(out.contains("Mod1': fails at x1=a x2=c y=b"));

    let vee = fixture("bounded-vee", VEE);
    let (code, out) = run(&["check-zero", vee.to_str().unwrap(), "--i1", "0,2", "--i2", "1,2"]);
    assert_eq!(code, 1);
    assert!(out.contains("not applicable"));
}

#[test]
fn factorize_and_refine() {
    let b2 = fixture("factor-b2", B2);
    let path = b2.to_str().unwrap();
    let (code, out) = run(&["factorize", path]);
    assert_eq!(code, 0);
    assert!(out.starts_with("# 2 factor(s), base 0"));
    assert!(out.contains("1 = (a, b)"));

    let (code, out) = run(&["refine", path, "--c", "0", "--first", "0,a", "0,b", "--second", "0,a", "0,b"]);
    assert_eq!(code, 0);
    assert!(out.contains("I2 join J2: {0,b}"));

    let (code, _) = run(&["refine", path, "--c", "0", "--first", "0,a", "0,a", "--second", "0,a", "0,b"]);
    assert_eq!(code, 2);
}

#[test]
fn congruence_listings() {
    let b2 = fixture("cong-b2", B2);
    let path = b2.to_str().unwrap();
    let (code, out) = run(&["congruences", path]);
    assert_eq!(code, 0);
    assert!(out.contains("{{0,a},{b,1}}"));
    let (code, out) = run(&["factor-pairs", path]);
    assert_eq!(code, 0);
    assert!(out.contains("# 4 pairs"));
    assert!(out.contains("Boolean algebra: true"));

    let capped = Command::new(env!("CARGO_BIN_EXE_slat"))
        .args(["congruences", path])
        .env("SLAT_SIZE_CAP", "3")
        .output()
        .unwrap();
    assert_eq!(capped.status.code(), Some(2));
}

#[test]
fn search_commands() {
    let (code, out) = run(&["independence", "--axiom", "mod1", "--max-n", "5"]);
    assert_eq!(code, 0);
    assert!(out.contains("model of size 5"));
    assert_eq!(run(&["independence", "--axiom", "Mod1", "--max-n", "4"]).0, 1);
    assert_eq!(run(&["independence", "--axiom", "ori"]).0, 2);
    assert_eq!(run(&["independence", "--axiom", "nope"]).0, 2);

    let (code, out) = run(&["enumerate", "--n", "4"]);
    assert_eq!(code, 0);
    assert!(out.trim_end().ends_with("# 5 semilattices of size 4"));
    assert_eq!(run(&["enumerate", "--n", "9"]).0, 2);
}

#[test]
fn dot_output_is_stable() {
    let n5 = fixture("dot-n5", N5);
    let path = n5.to_str().unwrap();
    let args = ["dot", path, "--highlight", "0,b,c", "--highlight", "0,a"];
    let (code, first) = run(&args);
    assert_eq!(code, 0);
    assert!(first.starts_with("digraph semilattice {"));
    assert_eq!(first.matches("subgraph cluster_").count(), 2);
    assert_eq!(run(&args).1, first);
}
