//! End-to-end tests driving the compiled binary over the shipped fixtures.

use serde_json::Value;
use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
        .to_str()
        .unwrap()
        .to_string()
}

fn gsep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gsep"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn facets_of_the_shipped_example() {
    let out = gsep(&["facets", &fixture("ex-running.mat")]);
    assert!(out.status.success());
    let v = json_of(&out);
    assert_eq!(v["count"], 12);
    assert_eq!(v["facets"].as_array().unwrap().len(), 12);
    let first = &v["facets"][0];
    for key in ["cut", "normal", "vertices"] {
        assert!(first.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn cuts_and_flows_counts() {
    let out = gsep(&["cuts", &fixture("ex-running.mat")]);
    assert!(out.status.success());
    let v = json_of(&out);
    assert_eq!(v["k"], 2);
    assert_eq!(v["count"], 17);

    let out = gsep(&["cuts", "--k", "3", &fixture("ex-running.mat")]);
    assert_eq!(json_of(&out)["count"], 75);

    let out = gsep(&["flows", &fixture("ex-running.mat")]);
    assert_eq!(json_of(&out)["count"], 7);
}

#[test]
fn polar_points_match_the_cut_count() {
    let out = gsep(&["polar-points", "--k", "1", &fixture("ex-running.mat")]);
    assert!(out.status.success());
    assert_eq!(json_of(&out)["count"], 17);
}

#[test]
fn binomial_counts() {
    let out = gsep(&["graver", &fixture("ex-running.mat")]);
    assert_eq!(json_of(&out)["count"], 37);

    let out = gsep(&["groebner", &fixture("ex-running.mat")]);
    let v = json_of(&out);
    assert_eq!(v["count"], 23);
    // every binomial serializes its two monomials by variable name
    assert!(v["binomials"][0].get("plus").is_some());
    assert!(v["binomials"][0].get("minus").is_some());
}

#[test]
fn triangulation_shape() {
    let out = gsep(&["triangulate", &fixture("ex-running.mat")]);
    let v = json_of(&out);
    let faces = v["cone_facets"].as_array().unwrap();
    assert_eq!(faces.len(), 16);
    for f in faces {
        let f = f.as_array().unwrap();
        assert_eq!(f.len(), 4);
        assert!(f.iter().any(|x| x == 0));
    }
    assert_eq!(v["boundary_facets"].as_array().unwrap().len(), 16);
}

#[test]
fn hstar_and_gamma() {
    let out = gsep(&["hstar", &fixture("ex-running.mat")]);
    let v = json_of(&out);
    assert_eq!(v["counts"], serde_json::json!([1, 11, 45, 119]));
    assert_eq!(v["hstar"], serde_json::json!([1, 7, 7, 1]));

    let out = gsep(&["gamma", &fixture("ex-running.mat")]);
    let v = json_of(&out);
    assert_eq!(v["gamma"], serde_json::json!([1, 4]));
}

#[test]
fn graph_inputs_work_everywhere() {
    let out = gsep(&["from-graph", &fixture("c3.graph")]);
    let v = json_of(&out);
    assert_eq!(v["matrix"], serde_json::json!([[1, 0, 1], [0, 1, -1]]));
    assert_eq!(v["labels"], serde_json::json!([1, 2, 3]));

    let out = gsep(&["bases", &fixture("c3.graph")]);
    let v = json_of(&out);
    assert_eq!(v["count"], 3);

    let out = gsep(&["circuits", &fixture("c3.graph")]);
    let v = json_of(&out);
    assert_eq!(v["circuits"], serde_json::json!([[1, 2, 3]]));
}

#[test]
fn check_accepts_the_example_and_rejects_the_witness() {
    let out = gsep(&["check", &fixture("ex-running.mat")]);
    assert!(out.status.success());
    let v = json_of(&out);
    assert_eq!(v["ok"], true);
    assert_eq!(v["totally_unimodular"], true);

    let out = gsep(&["check", &fixture("bad.mat")]);
    assert_eq!(out.status.code(), Some(2));
    let v = json_of(&out);
    assert_eq!(v["error"]["kind"], "not-unimodular");
    assert_eq!(v["error"]["rows"], serde_json::json!([1, 2]));
    assert_eq!(v["error"]["cols"], serde_json::json!([1, 2]));
    assert_eq!(v["error"]["det"], 2);
}

#[test]
fn missing_input_is_an_io_error() {
    let out = gsep(&["cuts", &fixture("no-such-file.mat")]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json_of(&out)["error"]["kind"], "io");
}

#[test]
fn zero_k_is_rejected() {
    let out = gsep(&["cuts", "--k", "0", &fixture("ex-running.mat")]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn equivalence_of_the_signed_pair() {
    let out = gsep(&["equiv", &fixture("u23-m1.mat"), &fixture("u23-m2.mat")]);
    assert!(out.status.success());
    let v = json_of(&out);
    assert_eq!(v["equivalent"], true);
    assert_eq!(v["transform"], serde_json::json!([[1, 0], [0, -1]]));
    assert_eq!(v["perm"], serde_json::json!([0, 1, 2]));
    assert_eq!(v["signs"], serde_json::json!([1, -1, 1]));
}

#[test]
fn equivalence_with_a_correspondence_file() {
    let out = gsep(&[
        "equiv",
        &fixture("u23-m1.mat"),
        &fixture("u23-m2.mat"),
        "--correspondence",
        &fixture("u23-corr.txt"),
    ]);
    assert!(out.status.success());
    let v = json_of(&out);
    assert_eq!(v["equivalent"], true);
    assert_eq!(v["correspondence"], serde_json::json!([0, 1, 2]));
}

#[test]
fn equivalence_of_the_two_graph_fixtures() {
    let out = gsep(&["equiv", &fixture("whitney-g.graph"), &fixture("whitney-h.graph")]);
    assert!(out.status.success());
    assert_eq!(json_of(&out)["equivalent"], true);
}

#[test]
fn different_sizes_are_not_equivalent() {
    let out = gsep(&["equiv", &fixture("u23-m1.mat"), &fixture("ex-running.mat")]);
    assert!(out.status.success());
    assert_eq!(json_of(&out)["equivalent"], false);
}

#[test]
fn output_is_byte_deterministic() {
    let a = gsep(&["facets", &fixture("ex-running.mat")]);
    let b = gsep(&["facets", &fixture("ex-running.mat")]);
    assert_eq!(a.stdout, b.stdout);
    let a = gsep(&["groebner", &fixture("ex-running.mat")]);
    let b = gsep(&["groebner", &fixture("ex-running.mat")]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn text_format_carries_the_same_counts() {
    let out = gsep(&["facets", "--format", "text", &fixture("ex-running.mat")]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("count: 12"));
    assert!(!text.contains('{'));
}

#[test]
fn out_flag_writes_the_same_report() {
    let path = std::env::temp_dir().join(format!("gsep-out-{}.json", std::process::id()));
    let direct = gsep(&["info", &fixture("ex-running.mat")]);
    let redirected = gsep(&[
        "info",
        &fixture("ex-running.mat"),
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(redirected.status.success());
    assert!(redirected.stdout.is_empty());
    let written = std::fs::read(&path).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(written, direct.stdout);
}
