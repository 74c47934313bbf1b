//! End-to-end tests of the `covers` binary: JSON output, determinism, exit
//! codes.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_covers"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> serde_json::Value {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn det_trefoil() {
    assert_eq!(json(&["det", "corpus:trefoil"])["det"], "3");
    assert_eq!(json(&["det", "corpus:6_1"])["det"], "9");
    assert_eq!(json(&["det", "corpus:unknot"])["det"], "1");
}

#[test]
fn corpus_listing() {
    let v = json(&["--corpus"]);
    let names: Vec<&str> = v.as_array().unwrap().iter().map(|e| e["name"].as_str().unwrap()).collect();
    assert_eq!(
        names,
        ["unknot", "trefoil", "figure-eight", "six-one", "k1-1-1", "k2-1-1"]
    );
}

#[test]
fn colorings_count() {
    let v = json(&["colorings", "corpus:trefoil", "--p", "3"]);
    assert_eq!(v["count"], 9);
    assert_eq!(v["admits_dihedral_cover"], true);
    let v = json(&["colorings", "corpus:figure-eight", "--p", "3"]);
    assert_eq!(v["admits_dihedral_cover"], false);
}

#[test]
fn tl_trefoil() {
    let v = json(&["tl", "--e", "2,-2", "--p", "3"]);
    assert_eq!(v["signatures"]["1"], -2);
    assert_eq!(v["signatures"]["2"], -2);
    assert_eq!(v["sum"], -4);
}

#[test]
fn predict_cp2_profile() {
    let v = json(&[
        "predict", "--p", "3", "--sigma-x", "0", "--chi-x", "2", "--chi-b", "2", "--e-b", "0",
        "--xi", "-1",
    ]);
    assert_eq!(v["sigma_Y"], 1);
    assert_eq!(v["chi_Y"], 3);
    assert_eq!(v["rank"], 1);
    assert_eq!(v["descriptor"]["normal_form"], "+I_1");
}

#[test]
fn xi_rational_output() {
    let v = json(&["xi", "--system", "trefoil"]);
    assert_eq!(v["xi"], "-8/3");
    assert_eq!(v["integral"], false);
    let v = json(&["xi", "--system", "k1-case1"]);
    assert_eq!(v["xi"], "0");
    assert_eq!(v["integral"], true);
}

#[test]
fn charknots_case_and_class() {
    let v = json(&["charknots", "--family", "k1", "--a", "1", "--b", "1"]);
    assert_eq!(v["record"]["case"], 2);
    let class: Vec<&str> = v["class_mod_3"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_str().unwrap())
        .collect();
    assert_eq!(class, ["-1", "1", "1", "0", "1", "1"]);
}

#[test]
fn appendix_table_shape() {
    let v = json(&["reproduce-appendix-a", "--p", "3", "--bound", "2"]);
    // two families × 4×4 nonzero (a,b) pairs
    assert_eq!(v["rows"].as_array().unwrap().len(), 32);
}

#[test]
fn deterministic_output() {
    for args in [
        vec!["enumerate-slice", "--p", "5", "--bound", "4"],
        vec!["linking", "corpus:trefoil", "--p", "3"],
        vec!["colorings", "corpus:six-one", "--p", "3"],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{args:?} not byte-identical");
    }
}

#[test]
fn exit_codes() {
    // 64: unknown command / usage
    assert_eq!(run(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(run(&[]).status.code(), Some(64));
    // 65: invalid input
    assert_eq!(run(&["det", "corpus:nope"]).status.code(), Some(65));
    assert_eq!(run(&["det", "/no/such/file.json"]).status.code(), Some(65));
    assert_eq!(run(&["xi", "--system", "trefoil", "--p", "5"]).status.code(), Some(65));
    assert_eq!(
        run(&["predict", "--p", "4", "--sigma-x", "0", "--chi-x", "2", "--chi-b", "0", "--e-b", "0"])
            .status
            .code(),
        Some(65)
    );
    // 70: mathematically inconsistent data (non-integral signature formula)
    assert_eq!(
        run(&["predict", "--p", "3", "--sigma-x", "0", "--chi-x", "2", "--chi-b", "2", "--e-b", "1"])
            .status
            .code(),
        Some(70)
    );
    // errors go to stderr, nothing on stdout
    let out = run(&["det", "corpus:nope"]);
    assert!(out.stdout.is_empty());
    assert!(!out.stderr.is_empty());
}

#[test]
fn diagram_file_roundtrip() {
    // a diagram exported to the interchange format is accepted back
    let entry = covers::corpus::find("trefoil").unwrap();
    let dir = std::env::temp_dir().join(format!("covers-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let arc_path = dir.join("trefoil-arc.json");
    std::fs::write(&arc_path, entry.diagram().to_json()).unwrap();
    let v = json(&["det", arc_path.to_str().unwrap()]);
    assert_eq!(v["det"], "3");
    let emb_path = dir.join("trefoil-embedded.json");
    std::fs::write(
        &emb_path,
        covers::diagram::embedded_to_json(&entry.embedded().unwrap()),
    )
    .unwrap();
    let v = json(&["linking", emb_path.to_str().unwrap(), "--p", "3"]);
    assert_eq!(v["curves"].as_array().unwrap().len(), 2);
    std::fs::remove_dir_all(&dir).ok();
}
