use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_grassproj"))
}

fn run(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut input = child.stdin.take().unwrap();
    input.write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    drop(input);
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stderr));
    })
}

fn fixture(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("grassproj-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn form(terms: &[(&[usize], &str)]) -> String {
    let ts: Vec<String> = terms
        .iter()
        .map(|(idx, c)| format!(r#"{{"idx":{idx:?},"coef":"{c}"}}"#))
        .collect();
    format!(r#"{{"dim":6,"grade":3,"terms":[{}]}}"#, ts.join(","))
}

const MONOMIALS_6: &str = r#"{"polys":[{"coeffs":["1"]},{"coeffs":["0","1"]},{"coeffs":["0","0","1"]},
    {"coeffs":["0","0","0","1"]},{"coeffs":["0","0","0","0","1"]},{"coeffs":["0","0","0","0","0","1"]}]}"#;

#[test]
fn version_is_the_schema_version() {
    let out = run(&["--version"], None);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("schema 1"));
}

#[test]
fn schubert_degree_of_gr36() {
    let out = run(&["wronski", "degree", "-m", "3", "-n", "6"], None);
    assert!(out.status.success());
    assert_eq!(json(&out)["degree"], 42);
}

#[test]
fn segre_demo_lists_the_four_orbits() {
    let out = run(&["demo", "segre-normal-forms"], None);
    assert!(out.status.success());
    let labels: Vec<String> = json(&out)
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["report"]["label"].as_str().unwrap().to_string())
        .collect();
    assert_eq!(labels, ["O0", "O1", "O5", "O10"]);
}

#[test]
fn classify_reads_stdin() {
    let w = form(&[(&[1, 2, 3], "1"), (&[1, 4, 5], "1")]);
    let out = run(&["orbits", "classify", "--form", "-"], Some(&w));
    assert!(out.status.success());
    assert_eq!(json(&out)["label"], "O5");
}

#[test]
fn fiber_partners_of_the_o0_point() {
    let base = fixture("base.json", &form(&[(&[1, 2, 3], "1")]));
    let point = fixture("point.json", &form(&[(&[1, 2, 3], "1"), (&[4, 5, 6], "1")]));
    let out = run(
        &["grass", "fiber-partners", "--base", base.to_str().unwrap(), "--point", point.to_str().unwrap()],
        None,
    );
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["partners"][0]["terms"][0]["idx"], serde_json::json!([4, 5, 6]));
}

fn sigma_center() -> String {
    center_with_first(form(&[(&[1, 3, 4], "1"), (&[1, 5, 6], "1")]))
}

fn center_with_first(first: String) -> String {
    // e_i ∧ (e12 + e34 + e56), with the first generator replaceable
    let gens = [
        first,
        form(&[(&[2, 3, 4], "1"), (&[2, 5, 6], "1")]),
        form(&[(&[1, 2, 3], "1"), (&[3, 5, 6], "1")]),
        form(&[(&[1, 2, 4], "1"), (&[4, 5, 6], "1")]),
        form(&[(&[1, 2, 5], "1"), (&[3, 4, 5], "1")]),
        form(&[(&[1, 2, 6], "1"), (&[3, 4, 6], "1")]),
    ];
    format!(r#"{{"dim":6,"grade":3,"basis":[{}]}}"#, gens.join(","))
}

#[test]
fn detect_self_adjoint_center() {
    let out = run(&["selfadj", "detect", "--center", "-"], Some(&sigma_center()));
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["status"], "self_adjoint");
}

#[test]
fn detect_refutes_a_perturbed_center() {
    let c = center_with_first(form(&[(&[1, 3, 4], "1"), (&[1, 5, 6], "1"), (&[2, 4, 6], "1")]));
    let out = run(&["selfadj", "detect", "--center", "-"], Some(&c));
    assert_eq!(out.status.code(), Some(1));
    assert_ne!(json(&out)["status"], "self_adjoint");
}

#[test]
fn verify_is_deterministic() {
    let center = fixture("center.json", &sigma_center());
    let sigma = fixture(
        "sigma.json",
        r#"{"dim":6,"grade":2,"terms":[{"idx":[1,2],"coef":"1"},{"idx":[3,4],"coef":"1"},{"idx":[5,6],"coef":"1"}]}"#,
    );
    let args = [
        "selfadj",
        "verify",
        "--center",
        center.to_str().unwrap(),
        "--sigma",
        sigma.to_str().unwrap(),
        "--trials",
        "20",
        "--seed",
        "7",
    ];
    let a = run(&args, None);
    let b = run(&args, None);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["passes"], 20);
}

#[test]
fn demo_output_is_byte_identical() {
    let a = run(&["demo", "self-adjoint-detection", "--seed", "3"], None);
    let b = run(&["demo", "self-adjoint-detection", "--seed", "3"], None);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn x6_center_is_out_of_the_detectors_range() {
    // its center is 10-dimensional; see the README on this fixture
    let fs = fixture("fs6.json", MONOMIALS_6);
    let built = run(&["wronski", "build-center", "--fs", fs.to_str().unwrap(), "-m", "3"], None);
    assert_eq!(json(&built)["dim_z"], 10);
    let center = run(
        &["wronski", "build-center", "--fs", fs.to_str().unwrap(), "-m", "3", "--center-only"],
        None,
    );
    let out = run(&["selfadj", "detect", "--center", "-"], Some(&String::from_utf8(center.stdout).unwrap()));
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn pole_placement_poly_of_double_integrator() {
    let r = fixture(
        "siso.json",
        r#"{"A":{"rows":2,"cols":2,"data":["0","1","0","0"]},
            "B":{"rows":2,"cols":1,"data":["0","1"]},
            "C":{"rows":1,"cols":2,"data":["1","0"]}}"#,
    );
    let k = fixture("k.json", r#"{"rows":1,"cols":1,"data":["-3"]}"#);
    let out = run(
        &["syscon", "pp", "--realization", r.to_str().unwrap(), "--gain", k.to_str().unwrap()],
        None,
    );
    assert!(out.status.success());
    // det(sI - [[0,1],[-3,0]]) = s^2 + 3
    assert_eq!(json(&out)["poly"]["coeffs"], serde_json::json!(["3/1", "0/1", "1/1"]));
}

#[test]
fn adjoint_of_second_order_operator() {
    let op = r#"{"coeffs":[{"num":{"coeffs":[]}},{"num":{"coeffs":["0","1"]}}]}"#;
    let out = run(&["wronski", "adjoint", "--op", "-"], Some(op));
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["self_adjoint"], false);
    assert_eq!(v["adjoint"]["op"]["coeffs"][0]["num"]["coeffs"], serde_json::json!(["-1/1"]));
}

#[test]
fn malformed_json_exits_2() {
    let out = run(&["orbits", "classify", "--form", "-"], Some("{\"dim\": 6,"));
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["wronski", "degree", "-m", "3"], None).status.code(), Some(2));
    assert_eq!(run(&["wronski", "degree", "-m", "6", "-n", "6"], None).status.code(), Some(2));
}
