use std::path::PathBuf;

use dlattice_cli::{run, Outcome};

fn fixture(name: &str) -> String {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures");
    root.join(name).to_string_lossy().into_owned()
}

fn ea(args: &[&str]) -> Outcome {
    run(std::iter::once("ea").chain(args.iter().copied()))
}

#[test]
fn iso_on_boolean_square() {
    let out = ea(&["iso", &fixture("b2.json")]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.starts_with("4 D-filters ↔ 4 D-congruences"));
}

#[test]
fn iso_counts_on_chain_and_mo() {
    for f in ["chain2.json", "mo2.json"] {
        let out = ea(&["iso", &fixture(f)]);
        assert_eq!(out.code, 0);
        assert!(out.stdout.starts_with("2 D-filters ↔ 2 D-congruences"), "{f}: {}", out.stdout);
    }
}

#[test]
fn broken_algebra_is_an_input_error() {
    let out = ea(&["check", &fixture("broken.json")]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("axiom"), "{}", out.stderr);
}

#[test]
fn missing_file_and_bad_flags_exit_two() {
    assert_eq!(ea(&["check", "/nonexistent/alg.json"]).code, 2);
    assert_eq!(ea(&["frobnicate"]).code, 2);
    assert_eq!(ea(&["build", "--kind", "chain"]).code, 2);
    assert_eq!(ea(&["--help"]).code, 0);
}

#[test]
fn build_round_trips_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let l = dir.path().join("l.json");
    let r = dir.path().join("r.json");
    let p = dir.path().join("p.json");
    assert_eq!(ea(&["build", "--kind", "chain", "--n", "1", "-o", l.to_str().unwrap()]).code, 0);
    assert_eq!(ea(&["build", "--kind", "mo", "--n", "2", "-o", r.to_str().unwrap()]).code, 0);
    let out = ea(&["build", "--kind", "hsum", "--left", l.to_str().unwrap(), "--right", r.to_str().unwrap()]);
    assert_eq!(out.code, 0);
    std::fs::write(&p, &out.stdout).unwrap();
    let check = ea(&["check", p.to_str().unwrap(), "--json"]);
    assert_eq!(check.code, 0);
    let v: serde_json::Value = serde_json::from_str(&check.stdout).unwrap();
    assert_eq!(v["algebra"]["n"], 6);
}

#[test]
fn filters_writes_dot() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("f.dot");
    let out = ea(&["filters", &fixture("b2.json"), "--dot", dot.to_str().unwrap(), "--json"]);
    assert_eq!(out.code, 0);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["count"], 4);
    let text = std::fs::read_to_string(&dot).unwrap();
    assert!(text.starts_with("digraph"));
    // Hasse diagram of the four-element Boolean lattice has four covers.
    assert_eq!(text.matches("->").count(), 4);
}

#[test]
fn congruence_modes_agree() {
    let a = ea(&["congruences", &fixture("b3.json"), "--mode", "brute", "--json"]);
    let b = ea(&["congruences", &fixture("b3.json"), "--mode", "filters", "--json"]);
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn lattice_passes_on_mo() {
    let out = ea(&["lattice", &fixture("mo2.json")]);
    assert_eq!(out.code, 0, "{}", out.stdout);
}

#[test]
fn submeasure_commands() {
    let b2 = fixture("b2.json");
    assert_eq!(ea(&["submeasure", "check", &b2, &fixture("b2_submeasure.json")]).code, 0);
    let bad = ea(&["submeasure", "check", &b2, &fixture("b2_not_submeasure.json")]);
    assert_eq!(bad.code, 1);
    assert!(bad.stdout.contains("witness (a, 1)"), "{}", bad.stdout);
    let u = ea(&["submeasure", "uniformity", &b2, &fixture("b2_submeasure.json")]);
    assert_eq!(u.code, 0);
    assert!(u.stdout.starts_with("uniformity {{0},{a},{b},{1}}"));
    assert_eq!(ea(&["submeasure", "uniformity", &b2, &fixture("b2_not_submeasure.json")]).code, 2);
}

#[test]
fn measure_commands() {
    let b2 = fixture("b2.json");
    let m = fixture("b2_measure.json");
    assert_eq!(ea(&["measure", "check", &b2, &m]).code, 0);
    assert_eq!(ea(&["measure", "check", &b2, &fixture("b2_not_measure.json")]).code, 1);
    assert_eq!(ea(&["measure", "uniformity", &b2, &fixture("b2_not_measure.json")]).code, 2);
    for norm in ["max", "sum"] {
        let out = ea(&["measure", "decompose", &b2, &m, "--norm", norm, "--json"]);
        assert_eq!(out.code, 0, "{}", out.stdout);
        let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["counts"]["strictly_finer_than_every_factor"], 1);
    }
}

#[test]
fn small_suite_json_is_stable() {
    let a = ea(&["suite", "--max-n", "4", "--json"]);
    let b = ea(&["suite", "--max-n", "4", "--json"]);
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout);
    assert!(!a.stdout.contains("timings_ms"));
    let t = ea(&["suite", "--max-n", "2", "--json", "--timings"]);
    assert!(t.stdout.contains("timings_ms"));
}
