//! End-to-end tests of the `tbinom` binary: golden outputs, the format
//! resolution order (flag over environment over default), the exit-code
//! contract, and the file-output path.

use std::path::Path;
use std::process::{Command, Output};

fn tbinom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tbinom"))
        .args(args)
        .env_remove("TBINOM_FORMAT")
        .output()
        .expect("binary runs")
}

fn stdout_of(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("stdout is UTF-8")
}

#[test]
fn coeff_golden_outputs() {
    let latex = tbinom(&["coeff", "--k", "1", "--format", "latex"]);
    assert_eq!(stdout_of(&latex), "t x\n");

    let at_one = tbinom(&["coeff", "--k", "2", "--x", "5", "--t", "1"]);
    assert_eq!(stdout_of(&at_one), "[\"10\",\"1\"]\n");

    let poly = tbinom(&["coeff", "--k", "3", "--x", "2"]);
    assert_eq!(
        stdout_of(&poly),
        "{\"var\":\"t\",\"coeffs\":[[\"0\",\"1\"],[\"1\",\"3\"],[\"-1\",\"3\"]]}\n"
    );

    let unit = tbinom(&["coeff", "--k", "0"]);
    assert_eq!(stdout_of(&unit), "{\"var\":\"t\",\"coeffs\":[[\"1\",\"1\"]]}\n");

    let expansion = tbinom(&["coeff", "--k", "2"]);
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&expansion)).unwrap();
    assert_eq!(v["k"], "2");
    assert_eq!(v["coeffs"][1]["coeffs"][2][0], "1");
}

#[test]
fn coeff_half_x_half_t() {
    // <1/2, 1> = t/2, then t = 1/3 gives 1/6.
    let out = tbinom(&["coeff", "--k", "1", "--x", "1/2", "--t", "1/3"]);
    assert_eq!(stdout_of(&out), "[\"1\",\"6\"]\n");
}

#[test]
fn format_resolution_order() {
    let from_env = Command::new(env!("CARGO_BIN_EXE_tbinom"))
        .args(["coeff", "--k", "1"])
        .env("TBINOM_FORMAT", "latex")
        .output()
        .unwrap();
    assert_eq!(stdout_of(&from_env), "t x\n");

    let flag_wins = Command::new(env!("CARGO_BIN_EXE_tbinom"))
        .args(["coeff", "--k", "1", "--format", "csv"])
        .env("TBINOM_FORMAT", "latex")
        .output()
        .unwrap();
    assert_eq!(stdout_of(&flag_wins), "i,coeff\n1,t\n");
}

#[test]
fn usage_errors_exit_nonzero() {
    // --t without --x is malformed.
    let out = tbinom(&["coeff", "--k", "2", "--t", "1"]);
    assert!(!out.status.success());

    let bad_s = tbinom(&["psi", "--r", "2", "--s", "3"]);
    assert!(!bad_s.status.success());
    assert!(String::from_utf8_lossy(&bad_s.stderr).contains("--s"));

    let bad_r = tbinom(&["psi", "--r", "0", "--s", "0"]);
    assert!(!bad_r.status.success());
}

#[test]
fn verify_single_identity() {
    let out = tbinom(&["verify", "--identity", "thm1", "--order", "12"]);
    assert!(out.status.success());
    assert_eq!(
        stdout_of(&out),
        "{\"identity_id\":\"thm1\",\"parameters\":{\"order\":\"12\"},\"holds\":true}\n"
    );
}

#[test]
fn verify_rejects_unknown_identity() {
    let out = tbinom(&["verify", "--identity", "bogus"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown identity id"));
}

#[test]
fn verify_rejects_inconsistent_ranges() {
    let out = tbinom(&["verify", "--identity", "thm2", "--order", "5", "--max-k", "6"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("--order"));
}

#[test]
fn verify_all_streams_the_catalog() {
    let out = tbinom(&[
        "verify", "--identity", "all", "--order", "8", "--max-k", "6", "--max-n", "5", "--max-r",
        "3",
    ]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 21);
    for line in lines {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["holds"], true);
    }
}

#[test]
fn table_agrees_and_exits_zero() {
    let out = tbinom(&["table", "--max-k", "4", "--format", "csv"]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "k,i,method1,method2,agree");
    assert_eq!(lines.len(), 1 + 10);
    assert!(lines[1..].iter().all(|line| line.ends_with(",true")));
    // The leading coefficient row is t^k.
    assert_eq!(lines[10], "4,4,t^4,t^4,true");

    let json = tbinom(&["table", "--max-k", "3"]);
    for line in stdout_of(&json).lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["agree"], true);
        assert_eq!(v["method1"], v["method2"]);
    }
}

#[test]
fn psi_outputs() {
    let latex = tbinom(&["psi", "--r", "2", "--s", "0", "--format", "latex"]);
    assert!(latex.status.success());
    assert_eq!(stdout_of(&latex), "2\\psi_2 = e^{u} - 1\n");

    let json = tbinom(&["psi", "--r", "3", "--s", "0"]);
    assert!(json.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&json)).unwrap();
    assert_eq!(v["solution"]["scale"], serde_json::json!(["-6", "1"]));
    assert_eq!(v["solution"]["terms"]["2"]["coeffs"][1][0], "-1");
    assert_eq!(v["verdicts"]["initial_condition"], true);
    assert_eq!(v["verdicts"]["ode_residual"], true);
    assert_eq!(v["verdicts"]["t1_specialization"], true);

    // The one shape whose t = 1 specialization is out of scope.
    let degenerate = tbinom(&["psi", "--r", "1", "--s", "0"]);
    assert!(degenerate.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&degenerate)).unwrap();
    assert!(v["verdicts"].get("t1_specialization").is_none());

    let deep = tbinom(&["psi", "--r", "5", "--s", "2"]);
    assert!(deep.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&deep)).unwrap();
    assert!(v["verdicts"].as_object().unwrap().values().all(|b| b == &serde_json::json!(true)));
}

#[test]
fn output_flag_writes_a_file() {
    let path = std::env::temp_dir().join(format!("tbinom-cli-test-{}.json", std::process::id()));
    let out = tbinom(&[
        "coeff",
        "--k",
        "1",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(stdout_of(&out).is_empty());
    let written = std::fs::read_to_string(Path::new(&path)).unwrap();
    assert_eq!(written, "{\"k\":\"1\",\"coeffs\":[{\"var\":\"t\",\"coeffs\":[[\"0\",\"1\"],[\"1\",\"1\"]]}]}\n");
    std::fs::remove_file(&path).ok();
}
