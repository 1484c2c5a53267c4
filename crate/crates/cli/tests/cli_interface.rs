//! Drive the compiled binary: flags, formats, exit codes, and report
//! determinism.

use std::process::Command;

fn legch() -> Command {
    Command::new(env!("CARGO_BIN_EXE_legch"))
}

#[test]
fn dga_text_output_contains_the_table_line() {
    let out = legch().args(["dga", "--lambda", "7"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("d(e0) = t^-1 + c7 + c7*a*b"), "{}", text);
    assert!(text.contains("check diagram_matches_table: ok"));
}

#[test]
fn dga_from_file_and_unknot_differential() {
    let dir = std::env::temp_dir().join("legch_cli_test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("unknot.leg");
    std::fs::write(&path, "L1; R1; @1\n").unwrap();
    let out = legch()
        .args(["dga", "--file", path.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("1 + t"), "{}", text);
}

#[test]
fn aug_counts_match_the_variety() {
    let out = legch()
        .args(["aug", "--lambda", "5", "--field", "5", "--format", "json"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["results"]["count"], 21);
    assert_eq!(v["results"]["homotopy_classes"], 21);
}

#[test]
fn twist_m2_count_equals_lambda_count() {
    let twist = legch()
        .args([
            "aug", "--twist", "7", "3", "0", "--field", "3", "--m", "2", "--format", "json",
        ])
        .output()
        .unwrap();
    let lambda = legch()
        .args(["aug", "--lambda", "7", "--field", "3", "--format", "json"])
        .output()
        .unwrap();
    let tv: serde_json::Value = serde_json::from_slice(&twist.stdout).unwrap();
    let lv: serde_json::Value = serde_json::from_slice(&lambda.stdout).unwrap();
    assert_eq!(tv["results"]["count"], lv["results"]["count"]);
}

#[test]
fn reports_are_deterministic_modulo_timing() {
    let run = || {
        let out = legch()
            .args([
                "linearized",
                "--lambda",
                "5",
                "--field",
                "3",
                "--format",
                "json",
            ])
            .output()
            .unwrap();
        let mut v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        v.as_object_mut().unwrap().remove("timing_ms");
        v
    };
    assert_eq!(run(), run());
}

#[test]
fn usage_errors_exit_two() {
    let out = legch().args(["dga"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = legch()
        .args(["aug", "--lambda", "5", "--m", "1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn golden_mismatch_exits_one() {
    // point the binary at a bogus golden by running from a temp cwd is not
    // possible (goldens resolve relative to the manifest), so check the
    // paper-suite filter error instead as the usage-error path, and a
    // passing obstruct run as the zero path
    let out = legch()
        .args(["paper-suite", "--only", "no-such-criterion"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = legch()
        .args([
            "obstruct",
            "--q",
            "3",
            "--m",
            "2",
            "--n",
            "0",
            "--ext-max",
            "2",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn ainf_verify_formality_passes() {
    let out = legch()
        .args(["ainf", "--lambda", "5", "verify-formality"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("Formality: PASS"));
}

#[test]
fn ainf_lambda3_banner() {
    let out = legch()
        .args(["ainf", "--lambda", "3", "minimal-model"])
        .output()
        .unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("informational"), "{}", text);
}

#[test]
fn paper_suite_fast_passes() {
    let out = legch().args(["paper-suite", "--fast"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("10 of 10 criteria passed"), "{}", text);
}
