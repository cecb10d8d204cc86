use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use monact::fraisse::CategorySpec;
use monact_cli::input::{self, canonical, MonogenicFile, MonoidFile, TopologyFile};
use monact_cli::Report;
use serde_json::Value;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_monact"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_json(args: &[&str]) -> (Report, i32) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let out = run(&all);
    let text = String::from_utf8(out.stdout).unwrap();
    let report: Report = serde_json::from_str(&text).unwrap_or_else(|e| panic!("{e}: {text}"));
    (report, out.status.code().unwrap())
}

fn p(name: &str) -> String {
    data(name).display().to_string()
}

#[test]
fn analyze_m3_reports_dictionary() {
    let (r, code) = run_json(&["analyze", &p("m3.json")]);
    assert_eq!(code, 0);
    assert_eq!(r.payload["topos"]["de_morgan"]["value"], false);
    assert_eq!(r.payload["topos"]["local"]["value"], true);
    assert_eq!(r.payload["disagreements"], Value::Array(vec![]));
    assert_eq!(r.inputs.len(), 1);
    assert_eq!(r.inputs[0].sha256.len(), 64);
}

#[test]
fn analyze_z2_is_boolean() {
    let (r, code) = run_json(&["analyze", &p("z2.json")]);
    assert_eq!(code, 0);
    assert_eq!(r.payload["topos"]["boolean_atomic"]["value"], true);
}

#[test]
fn malformed_table_reports_location() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"size\": 2,\n \"table\": [[0, 1], [1 0]]}").unwrap();
    let out = run(&["analyze", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("bad.json:2:"), "{err}");
    assert!(err.contains("parse error"), "{err}");
}

#[test]
fn non_associative_table_is_a_validation_failure() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("nonassoc.json");
    // identity 0, and 1·1 = 2, 1·2 = 1, 2·x = 2: (1·1)·2 = 2 but 1·(1·2) = 1
    std::fs::write(&bad, r#"{"size": 3, "table": [[0,1,2],[1,2,1],[2,2,2]]}"#).unwrap();
    let out = run(&["analyze", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("not associative"));
}

#[test]
fn congruence_counts() {
    let (r, code) = run_json(&["congruences", &p("m3.json")]);
    assert_eq!(code, 0);
    assert_eq!(r.payload["congruences"].as_array().unwrap().len(), 3);
    assert_eq!(r.payload["is_chain"], true);
    assert_eq!(r.payload["spot_checks"]["ok"], true);
    let (r, _) = run_json(&["congruences", &p("trivial.json")]);
    assert_eq!(r.payload["congruences"].as_array().unwrap().len(), 1);
    let (r, _) = run_json(&["congruences", &p("z2.json")]);
    assert_eq!(r.payload["congruences"].as_array().unwrap().len(), 2);
}

#[test]
fn cap_exceeded_exits_three() {
    let out = run(&["--cap-congruences", "2", "congruences", &p("m3.json")]);
    assert_eq!(out.status.code(), Some(3));
    let out = run(&["--cap-subsets", "2", "complete", &p("m3.json"), &p("m3-tau.json")]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn complete_m3_worked_instance() {
    let (r, code) = run_json(&["complete", &p("m3.json"), &p("m3-tau.json")]);
    assert_eq!(code, 0);
    let c = &r.payload["completion"];
    assert_eq!(c["monoid"]["size"], 2);
    assert_eq!(c["unit_injective"], false);
    assert_eq!(r.payload["powder_quotient"]["monoid"]["size"], 2);
    assert!(r.payload["invariants"]
        .as_array()
        .unwrap()
        .iter()
        .all(|i| i["ok"] == true));
}

#[test]
fn complete_discrete_and_indiscrete() {
    let dir = tempfile::tempdir().unwrap();
    let disc = dir.path().join("disc.json");
    let ind = dir.path().join("ind.json");
    std::fs::write(&disc, r#"{"base": [[0], [1], [2], [3]]}"#).unwrap();
    std::fs::write(&ind, r#"{"opens": [[], [0, 1, 2, 3]]}"#).unwrap();
    let (r, code) = run_json(&["complete", &p("t2.json"), disc.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(r.payload["completion"]["monoid"]["size"], 4);
    assert_eq!(r.payload["completion"]["unit_injective"], true);
    let (r, code) = run_json(&["complete", &p("t2.json"), ind.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(r.payload["completion"]["monoid"]["size"], 1);
}

#[test]
fn invalid_opens_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"opens": [[], [0], [1], [0, 1, 2]]}"#).unwrap();
    let out = run(&["complete", &p("m3.json"), bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn topology_labels_follow_the_monoid_file() {
    // in the relabelled file the identity is input element 2, so {2} here is
    // the same set as {0} in m3.json
    let dir = tempfile::tempdir().unwrap();
    let tau = dir.path().join("tau.json");
    std::fs::write(&tau, r#"{"base": [[2], [0, 1]]}"#).unwrap();
    let (a, _) = run_json(&["complete", &p("m3.json"), &p("m3-tau.json")]);
    let (b, _) = run_json(&["complete", &p("m3-relabeled.json"), tau.to_str().unwrap()]);
    assert_eq!(b.payload["monoid"]["input_identity"], 2);
    assert_eq!(a.payload["completion"]["monoid"], b.payload["completion"]["monoid"]);
}

#[test]
fn morita_verdicts() {
    let (r, _) = run_json(&["morita", &p("m3.json"), &p("m3-relabeled.json")]);
    assert_eq!(r.payload["morita_equivalent"], true);
    let (r, _) = run_json(&["morita", &p("m3.json"), &p("z3.json")]);
    assert_eq!(r.payload["morita_equivalent"], false);
    let (r, code) = run_json(&["morita", &p("t2.json"), &p("trivial.json")]);
    assert_eq!(code, 0);
    assert_eq!(r.payload["morita_equivalent"], false);
    let locals = r.payload["first"]["local_submonoids"].as_array().unwrap();
    assert!(locals
        .iter()
        .any(|l| l["order"] == 1 && l["isomorphic_to_other"] == true));
    assert!(!r.warnings.is_empty());
}

#[test]
fn monogenic_subcommands() {
    let (r, code) = run_json(&["monogenic", "classify", &p("monogenic-sample.json")]);
    assert_eq!(code, 0);
    let shapes = &r.payload["classification"]["element_shapes"];
    assert_eq!(shapes[0], serde_json::json!({"a": 1, "b": 2}));
    let (r, code) = run_json(&["monogenic", "compare", "1", "2", "3", "2"]);
    assert_eq!(code, 0);
    assert_eq!(r.payload["mono_exists"], true);
    assert_eq!(r.payload["monos_split"], serde_json::json!([false]));
    let (r, code) = run_json(&["monogenic", "profinite", "4"]);
    assert_eq!(code, 0);
    assert_eq!(r.payload["monoid"]["size"], 5);
    assert_eq!(run(&["monogenic", "profinite", "0"]).status.code(), Some(2));
}

#[test]
fn fraisse_lin_orders_has_empty_deficit() {
    let (r, code) = run_json(&["fraisse", "run", "lin_orders", "--steps", "20"]);
    assert_eq!(code, 0);
    assert_eq!(r.payload["deficit"]["problems"], Value::Array(vec![]));
    assert_eq!(r.payload["deficit"]["stage_bound"], 5);
    assert_eq!(r.payload["deficit"]["problem_bound"], 3);
}

#[test]
fn fraisse_unknown_system() {
    let out = run(&["fraisse", "run", "no_such_system"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr)
        .unwrap()
        .contains("unknown extension system"));
}

#[test]
fn ofs_validate_nonjcp() {
    let (r, code) = run_json(&["fraisse", "ofs-validate", &p("nonjcp.json")]);
    assert_eq!(code, 2);
    assert_eq!(r.payload["joint_covering_ok"], false);
    assert_eq!(r.payload["factorization_ok"], true);
    assert_eq!(
        r.payload["checks"]["joint_covering"]["witness"],
        "there is no joint cover of X and Y"
    );
    let (r, code) = run_json(&["fraisse", "ofs-validate", &p("trivial-category.json")]);
    assert_eq!(code, 0);
    assert_eq!(r.payload["all_ok"], true);
}

#[test]
fn reports_are_reproducible_and_round_trip() {
    for args in [
        vec!["--json", "complete", &p("m3.json"), &p("m3-tau.json")],
        vec!["--json", "fraisse", "run", "lin_orders", "--steps", "8"],
        vec!["--json", "analyze", &p("t2.json")],
    ]
    .iter()
    {
        let args: Vec<&str> = args.iter().map(|s| s.as_ref()).collect();
        let a = run(&args).stdout;
        let b = run(&args).stdout;
        assert_eq!(a, b);
        let report: Report = serde_json::from_slice(&a).unwrap();
        let again: Report = serde_json::from_str(&report.to_json()).unwrap();
        assert_eq!(report, again);
        assert_eq!(report.to_json().trim(), String::from_utf8(a).unwrap().trim());
        assert!(report.timing.is_none());
    }
}

#[test]
fn timing_is_opt_in() {
    let (r, _) = run_json(&["--timing", "congruences", &p("z2.json")]);
    assert!(r.timing.is_some());
}

fn reserialize<T: serde::de::DeserializeOwned + serde::Serialize>(path: &Path) {
    let text = std::fs::read_to_string(path).unwrap();
    let shown = path.display().to_string();
    let once: T = input::parse(&shown, &text).unwrap();
    let first = canonical(&once);
    let twice: T = input::parse(&shown, &first).unwrap();
    assert_eq!(first, canonical(&twice), "{shown}");
}

#[test]
fn input_files_reserialize_idempotently() {
    for m in [
        "m3.json",
        "m3-relabeled.json",
        "z2.json",
        "z3.json",
        "t2.json",
        "trivial.json",
    ] {
        reserialize::<MonoidFile>(&data(m));
    }
    reserialize::<TopologyFile>(&data("m3-tau.json"));
    reserialize::<MonogenicFile>(&data("monogenic-sample.json"));
    for c in ["nonjcp.json", "coeq2.json", "trivial-category.json"] {
        reserialize::<CategorySpec>(&data(c));
    }
}
