//! Black-box tests of the `mppa` binary: exit codes, printed output, and
//! the JSON surface.

use std::io::Write;
use std::process::{Command, Output};

fn mppa(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mppa"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

#[test]
fn nf_prints_the_normal_form() {
    let out = mppa(&["nf", "--algebra", "a2loc", "--expr", "estar*e*l"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "id(1) - l");
}

#[test]
fn verify_passes_on_a_real_suite() {
    let out = mppa(&["verify", "--suite", "invrels"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("[PASS]"));
}

#[test]
fn verify_rejects_an_unknown_suite() {
    let out = mppa(&["verify", "--suite", "bogus"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_json_is_well_formed() {
    let out = mppa(&["verify", "--suite", "a2", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(v["all_passed"], serde_json::Value::Bool(true));
    assert!(v["entries"].as_array().map(|a| !a.is_empty()).unwrap_or(false));
}

#[test]
fn verify_a2_diagrams() {
    let out = mppa(&["verify", "--suite", "a2-diagrams"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("all passed"));
}

#[test]
fn verify_output_is_deterministic() {
    let a = mppa(&["verify", "--suite", "laurent", "--truncation", "3"]);
    let b = mppa(&["verify", "--suite", "laurent", "--truncation", "3"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn critical_pairs_all_joinable() {
    let out = mppa(&["critical-pairs"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(!stdout(&out).contains("FAIL"));
}

fn a2_quiver_file() -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().expect("tempfile");
    write!(
        f,
        r#"{{"vertices":["1","2"],"edges":[{{"id":"e","src":"1","tgt":"2"}}],"q":{{"1":"1","2":"1"}}}}"#
    )
    .expect("write quiver");
    f
}

#[test]
fn moment_prints_each_vertex() {
    let f = a2_quiver_file();
    let path = f.path().to_str().unwrap();
    let out = mppa(&["moment", "--quiver", path]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("mu_1 = "));
    assert!(text.contains("mu_2 = "));

    let out = mppa(&["moment", "--quiver", path, "--vertex", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn build_upsilon_round_trips() {
    let f = a2_quiver_file();
    let dir = tempfile::tempdir().expect("tempdir");
    let out_path = dir.path().join("upsilon.json");
    let out = mppa(&[
        "build-upsilon",
        "--quiver",
        f.path().to_str().unwrap(),
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&out_path).expect("output file");
    let v: serde_json::Value = serde_json::from_str(&text).expect("valid json");
    assert!(v["differential"].get("zp_1").is_some());
    assert!(v["differential"].get("zp_2").is_some());
}

#[test]
fn oracle_distinguishes_equal_from_different() {
    let f = a2_quiver_file();
    let path = f.path().to_str().unwrap();
    let base = [
        "oracle", "--quiver", path, "--dims", "2,3", "--trials", "20", "--seed", "7",
    ];
    let mut equal = base.to_vec();
    equal.extend(["--expr", "a_e * a_e_inv", "--expr", "id(1)"]);
    assert_eq!(mppa(&equal).status.code(), Some(0));

    let mut differ = base.to_vec();
    differ.extend(["--expr", "e", "--expr", "e + e"]);
    assert_eq!(mppa(&differ).status.code(), Some(1));

    let mut one_expr = base.to_vec();
    one_expr.extend(["--expr", "e"]);
    assert_eq!(mppa(&one_expr).status.code(), Some(2));
}
