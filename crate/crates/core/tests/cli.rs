//! End-to-end tests of the `ahoch` binary: exit codes, output schemas,
//! and determinism.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ahoch"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).to_string()
}

#[test]
fn series_jordan_plane_text() {
    let out = run(&["--char", "0", "--h", "x^2", "series"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("composition length = 1"));
    assert!(text.contains("semisimple: true"));
    assert!(text.contains("mu = 2"));
}

#[test]
fn charp_enveloping_algebra() {
    let out = run(&["--char", "3", "--h", "x", "charp"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("free over Z(A_h): true (rank 1)"));
    assert!(text.contains("(x^3)*y^2"));
}

#[test]
fn report_separable() {
    let out = run(&["--char", "0", "--h", "x^2+1", "report"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("HH^2(A_h) = 0"));
}

#[test]
fn machine_output_is_json_lines() {
    let out = run(&[
        "--char",
        "0",
        "--h-factored",
        "x^3,(x-1)^2",
        "--format",
        "machine",
        "series",
    ]);
    assert!(out.status.success());
    for line in stdout(&out).lines() {
        let v: serde_json::Value = serde_json::from_str(line).expect("valid JSON line");
        assert_eq!(v["schema_version"], 1);
        assert_eq!(v["record"], "series");
        assert_eq!(v["length"], 3);
        assert_eq!(v["m_h"], 2);
        assert_eq!(v["semisimple"], false);
        let mus: Vec<&str> = v["factors"]
            .as_array()
            .unwrap()
            .iter()
            .map(|f| f["mu"].as_str().unwrap())
            .collect();
        assert!(mus.contains(&"3/2") && mus.contains(&"1") && mus.contains(&"2"));
    }
}

#[test]
fn exit_codes() {
    // parse error: 2
    let out = run(&["--char", "0", "--h", "x^)", "report"]);
    assert_eq!(out.status.code(), Some(2));
    // domain error: 3 (bracket against trivial HH^2)
    let out = run(&[
        "--char",
        "0",
        "--h",
        "x",
        "bracket",
        "--derivation",
        "dg:g=1",
        "--class",
        "yh",
    ]);
    assert_eq!(out.status.code(), Some(3));
    // success: 0
    let out = run(&["--char", "0", "--h", "x^3", "report"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn verify_suite_passes_and_is_deterministic() {
    let args = [
        "--seed",
        "11",
        "--max-x-deg",
        "3",
        "--max-yh-deg",
        "2",
        "--format",
        "machine",
        "verify",
        "chain",
        "--trials",
        "5",
    ];
    let out1 = run(&args);
    let out2 = run(&args);
    assert!(out1.status.success());
    assert_eq!(stdout(&out1), stdout(&out2));
    let last = stdout(&out1);
    let summary: serde_json::Value = serde_json::from_str(last.lines().last().unwrap()).unwrap();
    assert_eq!(summary["record"], "verify-summary");
    assert_eq!(summary["passed"], true);
    assert_eq!(summary["seed"], 11);
}

#[test]
fn bracket_general_route() {
    let out = run(&[
        "--char",
        "0",
        "--h",
        "x^2",
        "bracket",
        "--derivation",
        "general:dx=0,dyhat=x^2",
        "--class",
        "yh^2",
    ]);
    assert!(out.status.success());
    // D_{x^2} = D_h is inner, so the bracket class is 0
    assert!(stdout(&out).contains("lifting route: 0"));
}

#[test]
fn help_documents_derivation_specs() {
    let out = run(&["--help"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("dg:g=<poly>"));
    assert!(text.contains("ad:g=<poly>,n=<int>"));
    assert!(text.contains("general:dx=<elt>,dyhat=<elt>"));
}
