use std::fs;
use std::process::Command;

fn galcov(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_galcov")).args(args).output().unwrap();
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

#[test]
fn verify_is_reproducible_for_a_seed() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.txt");
    let b = dir.path().join("b.txt");
    let (ca, _, _) = galcov(&["verify", "simplifier", "--seed", "7", "--out", a.to_str().unwrap()]);
    let (cb, _, _) = galcov(&["--seed", "7", "verify", "simplifier", "--out", b.to_str().unwrap()]);
    assert_eq!(ca, 0);
    assert_eq!(cb, 0);
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn verify_all_runs_every_suite() {
    let (code, out, _) = galcov(&["verify", "all"]);
    assert!(code == 0 || code == 1);
    assert!(out.trim_end().lines().last().unwrap().starts_with("summary: "));
    assert_eq!(code == 0, !out.lines().any(|l| l.starts_with("FAIL ")));
    let (_, again, _) = galcov(&["verify", "all"]);
    assert_eq!(out, again);
}

#[test]
fn theta_suite_exits_zero() {
    let (code, out, _) = galcov(&["verify", "theta"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("Z^10 x (Z/3)^2 x Z/12"));
}

#[test]
fn cox_of_a_path_enumerates_to_n_factorial() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("p3.graph");
    fs::write(&g, "vertices: 4\nedge: a 1 2\nedge: b 2 3\nedge: c 3 4\n").unwrap();
    let (code, out, err) = galcov(&["cox", g.to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    let p = dir.path().join("p3.pres");
    fs::write(&p, &out).unwrap();
    let (code, simplified, err) = galcov(&["simplify", p.to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    assert!(simplified.contains("gens"), "{simplified}");
}

#[test]
fn snf_reports_invariants() {
    let dir = tempfile::tempdir().unwrap();
    let m = dir.path().join("m.mat");
    fs::write(&m, "2 2\n2 4\n6 8\n").unwrap();
    let (code, out, _) = galcov(&["snf", m.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(out, "diagonal: 2 4\ninvariants: Z^0 x Z/2 x Z/4\n");
}

#[test]
fn phi_of_a_tree_edge_is_a_transposition() {
    let (code, out, err) = galcov(&["phi", "6"]);
    assert_eq!(code, 0, "{err}");
    assert_eq!(out.trim(), "(2 3)");
}

#[test]
fn malformed_input_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let m = dir.path().join("bad.mat");
    fs::write(&m, "2 2\n1 x\n").unwrap();
    let (code, _, err) = galcov(&["snf", m.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.starts_with("error: "));
}
