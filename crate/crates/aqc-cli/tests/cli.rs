//! End-to-end tests over the compiled binary: output formats, round-trips,
//! and the exit-code contract.

use std::process::{Command, Output};

fn aqc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_aqc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = aqc(args);
    assert!(
        out.status.success(),
        "command {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf8 output")
}

fn exit_code(args: &[&str]) -> i32 {
    aqc(args).status.code().expect("exit code")
}

#[test]
fn triangle_plain_aligns_rows() {
    assert_eq!(stdout(&["triangle", "--q", "2", "--n", "3"]), "1\n1\n1  1\n4  2\n");
    assert_eq!(stdout(&["triangle", "--q", "1", "--n", "0"]), "1\n");
}

#[test]
fn triangle_csv_lists_every_entry() {
    let raw = stdout(&["triangle", "--q", "2", "--n", "4", "--format", "csv"]);
    let lines: Vec<&str> = raw.lines().collect();
    assert_eq!(lines[0], "n,k,value");
    assert_eq!(lines[1], "0,0,1");
    assert_eq!(lines.last(), Some(&"4,2,1"));
    assert_eq!(lines.len(), 10);
}

#[test]
fn triangle_json_round_trips() {
    let raw = stdout(&["triangle", "--q", "5", "--n", "13", "--format", "json"]);
    let value: serde_json::Value = serde_json::from_str(raw.trim_end()).unwrap();
    assert_eq!(value["q"], serde_json::json!(5));
    assert_eq!(value["rows"][13][0].to_string(), "6226657980");
    assert_eq!(serde_json::to_string(&value).unwrap(), raw.trim_end());
}

#[test]
fn triangle_single_column_output() {
    assert_eq!(
        stdout(&["triangle", "--q", "1", "--n", "6", "--k", "0"]),
        "1,0,1,2,9,44,265\n"
    );
    assert_eq!(
        stdout(&["triangle", "--q", "1", "--n", "4", "--k", "1", "--format", "csv"]),
        "n,k,value\n0,1,0\n1,1,1\n2,1,0\n3,1,3\n4,1,8\n"
    );
}

#[test]
fn triangle_survives_the_oracle_check() {
    assert_eq!(exit_code(&["triangle", "--q", "2", "--n", "7", "--check-oracle"]), 0);
}

#[test]
fn free_matches_the_reference_sequences() {
    assert_eq!(
        stdout(&["free", "--q", "5", "--n", "9"]),
        "1,1,2,6,24,119,718,5034,40296,362760\n"
    );
    assert_eq!(stdout(&["free", "--q", "1", "--n", "4"]), "1,0,1,2,9\n");
    assert_eq!(stdout(&["free", "--q", "3", "--n", "0"]), "1\n");
}

#[test]
fn free_routes_agree_under_method_both() {
    let formula = stdout(&["free", "--q", "2", "--n", "30"]);
    assert_eq!(formula, stdout(&["free", "--q", "2", "--n", "30", "--method", "both"]));
    assert_eq!(
        formula,
        stdout(&["free", "--q", "2", "--n", "30", "--method", "recurrence"])
    );
}

#[test]
fn free_json_round_trips() {
    let raw = stdout(&["free", "--q", "2", "--n", "6", "--format", "json"]);
    let value: serde_json::Value = serde_json::from_str(raw.trim_end()).unwrap();
    assert_eq!(value["values"][5], serde_json::json!(99));
    assert_eq!(serde_json::to_string(&value).unwrap(), raw.trim_end());
}

#[test]
fn multi_lists_the_nonzero_terms() {
    let raw = stdout(&["multi", "--n", "5", "--lengths", "1,2,3,4,5"]);
    assert_eq!(raw.lines().count(), 14);
    let rows: Vec<Vec<&str>> = raw.lines().map(|l| l.split_whitespace().collect()).collect();
    assert!(rows.contains(&vec!["5", "0", "0", "0", "0", "1"]));
    assert!(rows.contains(&vec!["0", "0", "0", "0", "0", "34"]));

    assert_eq!(stdout(&["multi", "--n", "0", "--lengths", "2"]), "0  1\n");
}

#[test]
fn multi_agrees_with_enumeration() {
    assert_eq!(exit_code(&["multi", "--n", "6", "--lengths", "2,3", "--check-oracle"]), 0);
}

#[test]
fn multi_csv_and_json_forms() {
    let csv = stdout(&["multi", "--n", "5", "--lengths", "1,2", "--format", "csv"]);
    assert_eq!(csv.lines().next(), Some("n,ks,value"));
    assert!(csv.contains("5,\"1,2\",3"));

    let raw = stdout(&["multi", "--n", "5", "--lengths", "1,2", "--format", "json"]);
    let value: serde_json::Value = serde_json::from_str(raw.trim_end()).unwrap();
    assert_eq!(value["terms"].as_array().unwrap().len(), 9);
    assert_eq!(serde_json::to_string(&value).unwrap(), raw.trim_end());
}

#[test]
fn permpoly_single_length() {
    assert_eq!(stdout(&["permpoly", "--n", "6", "--q", "3"]), "697 + 22*x + x^2\n");
    let raw = stdout(&["permpoly", "--n", "6", "--q", "3", "--format", "json"]);
    let value: serde_json::Value = serde_json::from_str(raw.trim_end()).unwrap();
    assert_eq!(value["coeffs"], serde_json::json!([697, 22, 1]));
}

#[test]
fn permpoly_rencontres() {
    assert_eq!(stdout(&["permpoly", "--n", "4", "--rencontres"]), "9 + 8*x + 6*x^2 + x^4\n");
}

#[test]
fn permpoly_joint_polynomial() {
    let raw = stdout(&["permpoly", "--n", "5", "--lengths", "1,2,3,4,5"]);
    assert_eq!(
        raw.trim_end(),
        "34 + 34*x + 6*y + z + v + 17*x^2 + 6*x*y + 2*x*u + 2*y*z \
         + 6*x^3 + 3*x^2*z + 3*x*y^2 + 4*x^3*y + x^5"
    );
    let csv = stdout(&["permpoly", "--n", "5", "--lengths", "1,2,3,4,5", "--format", "csv"]);
    assert_eq!(csv.lines().count(), 15);
}

#[test]
fn verify_reports_one_line_per_check() {
    let raw = stdout(&["verify", "--scope", "gf"]);
    let lines: Vec<&str> = raw.lines().collect();
    assert_eq!(lines.len(), 3);
    assert!(lines[0].starts_with("ok   ordinary series"));
    assert!(lines[1].starts_with("ok   exponential series"));
    assert_eq!(lines[2], "all 2 checks passed");
}

#[test]
fn verify_all_scope_passes_at_default_limits() {
    let raw = stdout(&["verify"]);
    assert!(raw.lines().all(|l| l.starts_with("ok   ") || l.starts_with("all ")));
    assert!(raw.trim_end().ends_with("checks passed"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(exit_code(&["triangle", "--n", "3"]), 2);
    assert_eq!(exit_code(&["triangle", "--q", "0", "--n", "3"]), 2);
    assert_eq!(exit_code(&["free", "--q", "2", "--n", "5", "--method", "fast"]), 2);
    assert_eq!(exit_code(&["multi", "--n", "4", "--lengths", "2,2"]), 2);
    assert_eq!(exit_code(&["multi", "--n", "11", "--lengths", "1", "--check-oracle"]), 2);
    assert_eq!(exit_code(&["permpoly", "--n", "3"]), 2);
    assert_eq!(exit_code(&["permpoly", "--n", "3", "--q", "1", "--rencontres"]), 2);
    assert_eq!(exit_code(&["permpoly", "--n", "12", "--q", "2"]), 2);
    assert_eq!(exit_code(&["verify", "--scope", "oracle", "--n-max", "11"]), 2);
    assert_eq!(exit_code(&["verify", "--scope", "gf", "--order", "10"]), 2);
}
