#![allow(non_snake_case)]

use std::process::{Command, Output};

use affschur::matrices::tridiagonal_pairs;
use affschur::schur::mul_formula;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_affschur")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const A: &str = r#"{"r":1,"entries":[[0,0,1],[1,1,1],[2,2,1]]}"#;
const E0: &str = r#"{"r":1,"entries":[[0,0,1],[0,1,1],[2,2,1]]}"#;

// a tridiagonal pair whose product has several terms, off-diagonal entries on both sides
fn wide_pair() -> (String, String) {
    let (b, a) = tridiagonal_pairs(1, 2, 2)
        .into_iter()
        .find(|(b, a)| {
            let n = |m: &affschur::matrices::CodedMatrix| m.entries().iter().filter(|e| e.0 != e.1).count();
            n(b) >= 2 && n(a) >= 2 && mul_formula(b, a).unwrap().len() > 2
        })
        .unwrap();
    (serde_json::to_string(&b.to_json()).unwrap(), serde_json::to_string(&a.to_json()).unwrap())
}

#[test]
fn weyl_length() {
    let o = run(&["weyl", "length", "--d", "2", "--word", "0,1,0"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "(3,2,0,1)");
    let o = run(&["weyl", "length", "--d", "2", "--word", "0,0"]);
    assert_eq!(stdout(&o).trim(), "(0,0,0,0)");
}

#[test]
fn formula_and_oracle_print_identical_json() {
    let (t, a2) = wide_pair();
    let (T, A2) = (t.as_str(), a2.as_str());
    for basis in ["e", "standard"] {
        let f = run(&["schur-mul", "--method", "formula", "--basis", basis, "--b", T, "--a", A2, "--json"]);
        let o = run(&["schur-mul", "--method", "oracle", "--basis", basis, "--b", T, "--a", A2, "--json"]);
        assert!(f.status.success() && o.status.success());
        assert_eq!(f.stdout, o.stdout);
        // determinism
        assert_eq!(run(&["schur-mul", "--method", "formula", "--basis", basis, "--b", T, "--a", A2]).stdout, f.stdout);
    }
}

#[test]
fn every_method_agrees_with_the_oracle() {
    for m in ["formula", "chevalley", "fl19", "typeD"] {
        for basis in ["e", "standard"] {
            let o = run(&["schur-mul", "--method", m, "--basis", basis, "--b", E0, "--a", A, "--diff"]);
            assert!(o.status.success(), "{m} {basis} {}", String::from_utf8_lossy(&o.stderr));
            assert!(stdout(&o).contains("\"equal\":true"));
        }
    }
}

#[test]
fn chevalley_needs_a_generator() {
    let (t, a2) = wide_pair();
    let (T, A2) = (t.as_str(), a2.as_str());
    let o = run(&["schur-mul", "--method", "chevalley", "--b", T, "--a", A2]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn latex_output() {
    let o = run(&["schur-mul", "--method", "formula", "--basis", "standard", "--b", E0, "--a", A, "--latex"]);
    let s = stdout(&o);
    assert!(s.contains("\\left[\\begin{smallmatrix}"), "{s}");
}

#[test]
fn domain_errors_exit_with_two() {
    // margins do not match
    assert_eq!(run(&["schur-mul", "--b", A, "--a", E0]).status.code(), Some(2));
    // even special diagonal
    assert_eq!(run(&["schur-mul", "--b", r#"{"r":1,"entries":[[0,0,2]]}"#, "--a", A]).status.code(), Some(2));
    assert_eq!(run(&["schur-mul", "--b", "not json", "--a", A]).status.code(), Some(2));
    assert_eq!(run(&["iqg-check", "--type", "xx", "--r", "1"]).status.code(), Some(2));
    // clap usage errors share the code
    assert_eq!(run(&["schur-mul", "--method", "nope"]).status.code(), Some(2));
}

#[test]
fn resource_errors_exit_with_three() {
    // the Hecke oracle stops at d = 4
    let big = r#"{"r":1,"entries":[[0,0,1],[1,1,5],[2,2,1]]}"#;
    let o = run(&["schur-mul", "--method", "oracle", "--b", big, "--a", big]);
    assert_eq!(o.status.code(), Some(3), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn canonical_element() {
    let (_, a2) = wide_pair();
    let A2 = a2.as_str();
    let o = run(&["canonical", "--r", "1", "--d", "2", "--L0", "1", "--L1", "1", "--Ld", "1", "--matrix", A2]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("\"element\""));
    let o = run(&["canonical", "--r", "1", "--d", "3", "--L0", "1", "--L1", "1", "--Ld", "1", "--matrix", A2]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn stab_commands() {
    let (t, a2) = wide_pair();
    let (T, A2) = (t.as_str(), a2.as_str());
    let o = run(&["stab-mul", "--b", T, "--a", A2]);
    assert!(o.status.success());
    let o = run(&["stab-mul", "--b", T, "--a", A2, "--level", "8"]);
    assert!(o.status.success());
    for v in ["jj", "ji", "ij", "ii"] {
        let o = run(&["stab-canonical", "--variant", v, "--L0", "1", "--L1", "1", "--Ld", "3", "--matrix", A]);
        assert!(o.status.success(), "{v} {}", String::from_utf8_lossy(&o.stderr));
    }
    let o = run(&["stab-canonical", "--variant", "ji", "--L0", "1", "--L1", "1", "--Ld", "3", "--matrix", A, "--restricted"]);
    assert!(o.status.success());
}

#[test]
fn iqg_check() {
    let o = run(&["iqg-check", "--type", "jj", "--r", "1", "--window", "3"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("all relations hold"));
    let o = run(&["iqg-check", "--type", "ii", "--r", "2", "--window", "-1..1", "--json"]);
    assert!(o.status.success());
    let o = run(&["iqg-check", "--type", "ji", "--r", "1", "--window", "2..-2"]);
    assert!(o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("no λ tested"));
}

#[test]
fn corpus_roundtrip() {
    let dir = std::env::temp_dir().join(format!("affschur-cli-corpus-{}", std::process::id()));
    let d = dir.to_str().unwrap();
    let g1 = run(&["corpus", "generate", "--dir", d, "--families", "1:2"]);
    assert!(g1.status.success());
    let g2 = run(&["corpus", "generate", "--dir", d, "--families", "1:2"]);
    assert_eq!(g1.stdout, g2.stdout);
    for against in ["hashes", "formula", "oracle"] {
        let v = run(&["corpus", "verify", "--dir", d, "--against", against]);
        assert!(v.status.success(), "{against}");
    }
    std::fs::remove_dir_all(&dir).unwrap();
}
