//! End-to-end checks of the binary: output shapes, reference values and
//! exit codes.

use std::process::Command;

fn chordal(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_chordal"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn count_csv_matches_reference_column() {
    let out = chordal(&["count", "--family", "all", "--n-max", "6", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text, "n,count\n1,1\n2,2\n3,8\n4,61\n5,821\n6,17962\n");
}

#[test]
fn count_json_is_deterministic() {
    let a = chordal(&["count", "--family", "2conn-maps", "--n-max", "12"]);
    let b = chordal(&["count", "--family", "2conn-maps", "--n-max", "12"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let doc: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(doc["family"], "two_connected_maps");
    // Rows start at n = 1, so index 10 holds B_11.
    assert_eq!(doc["rows"][10]["n"], 11);
    assert_eq!(doc["rows"][10]["count"], "2607");
}

#[test]
fn constants_theorem_2_reports_sigma_inverse() {
    let out = chordal(&["constants", "--theorem", "2"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let constants = doc["report"]["constants"].as_array().unwrap();
    let sigma_inv = constants
        .iter()
        .find(|c| c["name"] == "sigma_inv")
        .expect("sigma_inv present")["value"]
        .as_f64()
        .unwrap();
    assert!((sigma_inv - 6.40375).abs() < 5e-5);
}

#[test]
fn series_dump_has_exact_rationals() {
    let out = chordal(&["series", "--family", "connected", "--order", "4"]);
    assert!(out.status.success());
    let rows: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    // c_4 = 35, EGF coefficient 35/24.
    assert_eq!(rows[4]["numerator"], "35");
    assert_eq!(rows[4]["denominator"], "24");
}

#[test]
fn verify_small_battery_exits_zero() {
    let out = chordal(&["verify", "--order", "24", "--oracle-n", "4"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(out.status.success(), "verify failed:\n{text}");
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 11);
    assert!(text.contains("verify: all checks passed"));
}

#[test]
fn oracle_matches_census() {
    let out = chordal(&["oracle", "--n", "5"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["all"], "821");
    assert_eq!(doc["connected"], "540");
}

#[test]
fn usage_errors_exit_two() {
    let out = chordal(&["count", "--family", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
    let out = chordal(&["--bogus-flag"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn domain_errors_exit_one() {
    let out = chordal(&["oracle", "--n", "9"]);
    assert_eq!(out.status.code(), Some(1));
}
