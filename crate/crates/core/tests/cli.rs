use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).display().to_string()
}

fn hochcat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hochcat")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let out = hochcat(&all);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn dims(rows: &Value) -> Vec<u64> {
    rows.as_array().unwrap().iter().filter(|r| r["edge_caveat"].is_null()).map(|r| r["dim"].as_u64().unwrap()).collect()
}

#[test]
fn hh_of_dual_numbers_from_a_file() {
    let v = json(&["hh", &data("dual_numbers.json")]);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(dims(&v["betti"]), vec![2, 1, 1, 1]);
    let edge = v["betti"].as_array().unwrap().last().unwrap();
    assert_eq!(edge["degree"], 4);
    assert_eq!(edge["edge_caveat"], "upper_bound");
}

#[test]
fn hh_of_the_arrow_is_the_ground_field() {
    let v = json(&["hh", &data("a2.json")]);
    assert_eq!(dims(&v["betti"]), vec![1, 0, 0, 0]);
}

#[test]
fn json_reports_are_byte_identical_across_runs() {
    for args in [
        vec!["--json", "hh", "builtin:upper_triangular"],
        vec!["--json", "gs-compare", "builtin:pseudocircle"],
        vec!["--json", "deform", "builtin:dual_numbers", "--enumerate"],
    ] {
        let a = hochcat(&args);
        let b = hochcat(&args);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn out_flag_writes_the_same_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let p = path.display().to_string();
    let written = hochcat(&["--json", "--out", &p, "hh", "builtin:A3"]);
    assert_eq!(written.status.code(), Some(0));
    assert!(written.stdout.is_empty());
    let printed = hochcat(&["--json", "hh", "builtin:A3"]);
    assert_eq!(std::fs::read(&path).unwrap(), printed.stdout);
}

#[test]
fn broken_associativity_exits_2_naming_the_triple() {
    let f = data("nonassociative.json");
    let out = hochcat(&["validate", &f]);
    assert_eq!(out.status.code(), Some(2));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("nonassociative.json"));
    assert!(text.contains("associativity: (x, x, x)"), "{text}");

    let hh = hochcat(&["hh", &f]);
    assert_eq!(hh.status.code(), Some(2));
    let err = String::from_utf8_lossy(&hh.stderr);
    assert!(err.contains("nonassociative.json") && err.contains("associativity"), "{err}");
}

#[test]
fn malformed_input_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{ \"objects\": [").unwrap();
    assert_eq!(hochcat(&["hh", &path.display().to_string()]).status.code(), Some(2));
    assert_eq!(hochcat(&["hh", "builtin:nope"]).status.code(), Some(2));
    assert_eq!(hochcat(&["--scalars", "fp:4", "hh", "builtin:ground"]).status.code(), Some(2));
}

#[test]
fn windows_beyond_the_cap_exit_4() {
    assert_eq!(hochcat(&["--window", "7", "hh", "builtin:ground"]).status.code(), Some(4));
    assert_eq!(hochcat(&["--window", "6", "hh", "builtin:ground"]).status.code(), Some(0));
    assert_eq!(hochcat(&["--max-dim", "10", "hh", "builtin:matrix2"]).status.code(), Some(4));
}

#[test]
fn mayer_vietoris_on_the_pseudocircle() {
    let v = json(&["mv", &data("pseudocircle.json"), "--cover", &data("pseudocircle_cover.json")]);
    assert_eq!(v["passes"], true);
    assert_eq!(dims(&v["hc_x"]), vec![1, 1, 0, 0]);
    let out = hochcat(&["mv", &data("pseudocircle.json"), "--cover", &data("pseudocircle_cover.json")]);
    let text = String::from_utf8_lossy(&out.stdout);
    let row = text.lines().find(|l| l.starts_with("HC(X) ")).unwrap();
    assert_eq!(row.split_whitespace().skip(1).take(3).collect::<Vec<_>>(), ["1", "1", "0"]);
}

#[test]
fn a_cover_that_misses_a_point_exits_2() {
    let out = hochcat(&["mv", &data("pseudocircle.json"), "--u", "U_a", "--v", "U_b"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn opposite_and_censoring_comparisons_agree() {
    let v = json(&["compare", "builtin:upper_triangular", "--opposite"]);
    assert_eq!(v["comparison"]["equal"], true);
    let v = json(&["compare", "builtin:A2", &data("a2.json")]);
    assert_eq!(v["comparison"]["equal"], true);
}

#[test]
fn different_categories_compare_unequal_without_failing() {
    let out = hochcat(&["compare", "builtin:dual_numbers", "builtin:ground"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("differ"));
}

#[test]
fn square_zero_deformation_is_unobstructed() {
    let v = json(&["deform", &data("dual_numbers.json"), &data("square_zero_deformation.json")]);
    assert_eq!(v["first_order"]["associative_mod_t2"], true);
    assert_eq!(v["cocycle"], true);
    assert_eq!(v["second_order"]["unobstructed"], true);
    assert_eq!(v["second_order"]["defects_vanish"], true);
}

#[test]
fn suite_subset_passes() {
    let v = json(&["suite", "--criterion", "2", "--criterion", "3"]);
    assert_eq!(v["passed"], true);
    assert_eq!(v["criteria"].as_array().unwrap().len(), 2);
}

#[test]
fn fp_scalars_override() {
    let v = json(&["--scalars", "fp:2", "hh", "builtin:dual_numbers"]);
    assert_eq!(v["scalars"], "fp:2");
    assert_eq!(dims(&v["betti"]), vec![2, 2, 2, 2]);
}

#[test]
fn presheaf_file_matches_its_builtin_in_all_three_models() {
    let file = json(&["gs-compare", &data("dual_over_chain.json")]);
    let builtin = json(&["gs-compare", "builtin:dual_over_chain"]);
    assert_eq!(file["equal"], true);
    for model in ["bicomplex", "incidence_category", "category_algebra"] {
        assert_eq!(dims(&file[model]), vec![2, 1, 1, 1], "{model}");
        assert_eq!(file[model], builtin[model]);
    }
}
