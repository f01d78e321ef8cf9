//! End-to-end tests of the `singpoincare` binary against the shipped job
//! files: output contents, formats, and exit codes.

use std::path::PathBuf;
use std::process::{Command, Output};

fn job(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("jobs");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_singpoincare"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn resolve_cusp_text() {
    let out = run(&["resolve", &job("cusp.json")]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("3 components"), "{text}");
    assert!(text.contains("C: [2, 3, 6]"), "{text}");
}

#[test]
fn resolve_cusp_dot() {
    let out = run(&["resolve", &job("cusp.json"), "--format", "dot"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("graph resolution {"), "{text}");
    assert!(text.contains("chi=-1"), "{text}");
}

#[test]
fn poincare_cusp_truncate_10() {
    let out = run(&["poincare", &job("cusp.json"), "--truncate", "10"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(
        text.contains("(1 - t^2)^-1 (1 - t^3)^-1 (1 - t^6)"),
        "{text}"
    );
    assert!(
        text.contains("1 + t^2 + t^3 + t^4 + t^5 + t^6 + t^7 + t^8 + t^9 + t^10"),
        "{text}"
    );
}

#[test]
fn alexander_and_zeta_of_cusp() {
    let out = run(&["alexander", &job("cusp.json")]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("1 - t + t^2"), "{}", stdout(&out));

    let out = run(&["zeta", &job("cusp.json")]);
    assert!(out.status.success());
    assert!(
        stdout(&out).contains("(1 - t^2)^-1 (1 - t^3)^-1 (1 - t^6)"),
        "{}",
        stdout(&out)
    );
}

#[test]
fn oracle_hopf_compare_matches() {
    let out = run(&["oracle", &job("hopf.json"), "--compare"]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).contains("MATCH"), "{}", stdout(&out));
}

#[test]
fn oracle_mixed_cusp_line_compare() {
    let out = run(&["oracle", &job("mixed_cusp_line.json"), "--compare"]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).contains("MATCH"), "{}", stdout(&out));
}

#[test]
fn equivariant_a1() {
    let out = run(&["equivariant", &job("a1_equivariant.json")]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("(1 - [1/2] t^2)^-2"), "{text}");
    assert!(text.contains("invariant part: 1 + 3*t^2 + 5*t^4"), "{text}");
}

#[test]
fn ideal_command() {
    let out = run(&["ideal", &job("cusp_ideal.json")]);
    assert!(out.status.success(), "{}", stderr(&out));
    // I = I_{E3} * I_C has valuation vector M e_3 + (2,3,6) = (4,6,12);
    // the factor keys are 4, 6, 12
    let text = stdout(&out);
    assert!(text.contains("(1 - t^4)^-1 (1 - t^6)^-1 (1 - t^12)"), "{text}");
}

#[test]
fn graph_mode_poincare() {
    let out = run(&["poincare", &job("cusp_graph.json"), "--truncate", "8"]);
    assert!(out.status.success());
    assert!(
        stdout(&out).contains("(1 - t^2)^-1 (1 - t^3)^-1 (1 - t^6)"),
        "{}",
        stdout(&out)
    );
}

#[test]
fn json_format_is_structured() {
    let out = run(&["poincare", &job("cusp.json"), "--format", "json"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["command"], "poincare");
    assert!(doc["factor_form"]["factors"].is_array());
}

#[test]
fn missing_file_exits_1() {
    let out = run(&["poincare", "/nonexistent/job.json"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn malformed_job_exits_1_with_location() {
    let dir = std::env::temp_dir().join("singpoincare_cli_test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("broken.json");
    std::fs::write(&path, "{ \"branches\": [ }").unwrap();
    let out = run(&["poincare", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = stderr(&out);
    assert!(err.contains("line"), "{err}");
}

#[test]
fn math_domain_error_exits_2() {
    // A1 graph in plane-curve mode: det(-E) = 2, not unimodular
    let dir = std::env::temp_dir().join("singpoincare_cli_test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("a1_plane.json");
    std::fs::write(
        &path,
        r#"{
            "graph": {"components": [{"id": "E1", "self_intersection": -2}]},
            "ideals": [{"name": "I", "k": [1]}],
            "options": {"mode": "plane-curve"}
        }"#,
    )
    .unwrap();
    let out = run(&["poincare", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("det(-E)"), "{}", stderr(&out));
}

#[test]
fn usage_error_exits_1() {
    let out = run(&["frobnicate", "whatever.json"]);
    assert_eq!(out.status.code(), Some(1));
}
