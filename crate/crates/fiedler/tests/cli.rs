use std::process::Command;

use fiedler::cli::run;
use serde_json::Value;

fn data(name: &str) -> String {
    format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(std::iter::once("fiedler").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> Value {
    let (code, out, err) = call(args);
    assert_eq!(code, 0, "{err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn lambda2_petersen() {
    let (code, out, _) = call(&["lambda2", "named:petersen"]);
    assert_eq!(code, 0);
    assert!(out.contains("\"lambda2\": 2.000000000000"), "{out}");
    let v = json(&["lambda2", "--vector", "named:heawood"]);
    assert_eq!(v["vector"].as_array().unwrap().len(), 14);
    let (_, csv, _) = call(&["--format", "csv", "lambda2", "B?"]);
    assert!(csv.contains("lambda2,0.000000000000"), "{csv}");
}

#[test]
fn enumerate_streams_graph6() {
    let (code, out, _) = call(&["enumerate", "trees", "-n", "4", "-d", "3"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 2);
    let (_, out, _) = call(&["enumerate", "cubic", "-n", "10"]);
    assert_eq!(out.lines().count(), 19);
    let (_, out, _) = call(&["enumerate", "graphs", "-n", "6", "-m", "8", "--min-degree", "2"]);
    assert_eq!(out.lines().count(), 11);
}

#[test]
fn enumerate_maximizers() {
    let v = json(&["--threads", "2", "enumerate", "--max-lambda2", "cubic", "-n", "6"]);
    assert_eq!(v["enumerated"], 2);
    assert_eq!(v["maximizer_count"], 1);
    assert_eq!(v["best_lambda2"].to_string(), "3.000000000000");
    let v = json(&["enumerate", "file", &data("family.g6"), "--max-lambda2"]);
    assert_eq!(v["enumerated"], 4);
    assert_eq!(v["maximizer_count"], 2);
}

#[test]
fn bounds_flags_attained_girth_bound() {
    let v = json(&["bounds", &data("tutte_12cage.g6")]);
    assert_eq!(v["n"], 126);
    let girth = v["bounds"].as_array().unwrap().iter().find(|e| e["name"] == "girth").unwrap().clone();
    assert_eq!(girth["attained"], true);
    assert_eq!(v["tightest"], "girth");
    let v = json(&["bounds", "named:petersen"]);
    let girth = v["bounds"].as_array().unwrap().iter().find(|e| e["name"] == "girth").unwrap().clone();
    assert_eq!(girth["attained"], false);
}

#[test]
fn bounds_substitutes_for_small_trees() {
    let v = json(&["bounds", "Bw"]);
    let precise = v["bounds"].as_array().unwrap().iter().find(|e| e["name"] == "tree_precise").unwrap().clone();
    assert_eq!(precise["applicable"], false);
    let v = json(&["bounds", "D?{"]);
    let e = v["bounds"].as_array().unwrap().iter().find(|e| e["name"] == "tree_precise").unwrap().clone();
    assert_eq!(e["note"], "substituted basic_diameter");
    assert!(e["value"].as_f64().unwrap() >= v["lambda2"].as_f64().unwrap());
}

#[test]
fn tree_split_reports_components() {
    let v = json(&["tree-split", "UhCa?C@?c??@?@?@?@??@_????G??G??G??G???G"]);
    assert_eq!(v["component_sizes"], serde_json::json!([9, 6, 6]));
    assert_eq!(v["well_balanced"], false);
    assert!(v["composed_bound"].as_f64().unwrap() >= v["lambda2"].as_f64().unwrap());
    let (code, _, err) = call(&["tree-split", "named:petersen"]);
    assert_eq!(code, 1);
    assert!(err.contains("not a tree"));
}

#[test]
fn verify_exit_codes() {
    let (code, out, _) = call(&["verify", "k2", "-n", "7"]);
    assert_eq!(code, 0, "{out}");
    let (code, out, _) = call(&["verify", "cubic", "-K", "2"]);
    assert_eq!(code, 0, "{out}");
    let (code, out, _) = call(&["verify", "tree2", "-d", "3", "-K", "4", "--samples", "50", "--seed", "7"]);
    assert_eq!(code, 3);
    assert!(out.contains("SAMPLED (not exhaustive)"));
    let (code, out, _) = call(&["verify", "tree2", "-d", "3", "-K", "2"]);
    assert_eq!(code, 0, "{out}");
}

#[test]
fn augment_and_compare_default_to_csv() {
    let (code, out, _) = call(&["augment", "-n", "10", "-m", "12"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "step,i,j,lambda2");
    assert_eq!(lines.len(), 13);
    let (_, out, _) = call(&["compare", "-n", "20", "--m-list", "36,40"]);
    assert!(out.starts_with("m,augmented,b,bipartite,regular_d"));
    assert!(out.lines().nth(1).unwrap().starts_with("36,"));
    assert!(out.lines().nth(1).unwrap().ends_with("d_not_integer"));
    let (_, out, _) = call(&["--format", "json", "augment", "-n", "4", "-m", "2"]);
    assert!(serde_json::from_str::<Value>(&out).unwrap().is_array());
}

#[test]
fn consensus_matches_lambda2() {
    let v = json(&["consensus", "named:heawood", "--seed", "3"]);
    assert_eq!(v["within_2_percent"], true);
    let (code, _, err) = call(&["consensus", "named:petersen", "--dt", "1"]);
    assert_eq!(code, 1);
    assert!(err.contains("time step"));
}

#[test]
fn output_is_reproducible() {
    let args = ["--threads", "3", "enumerate", "--max-lambda2", "trees", "-n", "12", "-d", "3"];
    assert_eq!(call(&args).1, call(&args).1);
    let (_, timed, _) = call(&["--timing", "lambda2", "named:petersen"]);
    assert!(timed.contains("wall_time_s"));
    assert!(!call(&["lambda2", "named:petersen"]).1.contains("wall_time_s"));
}

#[test]
fn usage_errors() {
    assert_eq!(call(&["lambda2"]).0, 1);
    assert_eq!(call(&["lambda2", "!!!"]).0, 1);
    assert_eq!(call(&["enumerate", "trees", "-n", "30", "-d", "3"]).0, 1);
    let (code, out, _) = call(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("Usage"));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_fiedler");
    let ok = Command::new(bin).args(["lambda2", "named:petersen"]).output().unwrap();
    assert!(ok.status.success());
    assert!(String::from_utf8_lossy(&ok.stdout).contains("2.000000000000"));
    let bad = Command::new(bin).args(["lambda2", "named:nope"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(1));
    assert!(!bad.stderr.is_empty());
    let sampled = Command::new(bin).args(["verify", "tree2", "-d", "3", "-K", "4", "--samples", "10"]).output().unwrap();
    assert_eq!(sampled.status.code(), Some(3));
}
