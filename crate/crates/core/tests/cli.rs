use std::path::Path;
use std::process::{Command, Output};

fn flagchow(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flagchow"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn golden(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    std::fs::read_to_string(path).expect("golden file exists")
}

fn assert_golden(args: &[&str], name: &str) {
    let out = flagchow(args);
    assert!(out.status.success(), "{args:?} failed");
    assert_eq!(String::from_utf8(out.stdout).unwrap(), golden(name), "{args:?}");
}

#[test]
fn present_matches_golden() {
    assert_golden(
        &["present", "--g", "2", "--space", "siegel", "--format", "json"],
        "present_g2_siegel.json",
    );
    assert_golden(
        &["present", "--g", "3", "--space", "levi", "--format", "json"],
        "present_g3_levi.json",
    );
}

#[test]
fn chern_matches_golden() {
    assert_golden(
        &["chern", "--g", "2", "--bundle", "normal", "--format", "json"],
        "chern_g2_normal.json",
    );
}

#[test]
fn table_matches_golden() {
    assert_golden(&["table", "--gmax", "3", "--format", "json"], "table_gmax3.json");
    assert_golden(&["table", "--gmax", "3"], "table_gmax3.txt");
}

#[test]
fn exit_status_follows_report_status() {
    let ok = flagchow(&["verify", "--g", "2", "--which", "all"]);
    assert_eq!(ok.status.code(), Some(0));
    let pre = flagchow(&["verify", "--g", "1", "--which", "theorem", "--format", "json"]);
    assert_eq!(pre.status.code(), Some(2));
    let text = String::from_utf8(pre.stdout).unwrap();
    assert!(text.contains("\"status\": \"error\""));
    assert!(text.contains("precondition"));
    let budget = flagchow(&["table", "--gmax", "9"]);
    assert_eq!(budget.status.code(), Some(2));
}

#[test]
fn bad_arguments_are_rejected_by_the_parser() {
    let out = flagchow(&["chern", "--g", "2", "--bundle", "cotangent"]);
    assert!(!out.status.success());
    let out = flagchow(&["present", "--g", "2", "--group", "1,2"]);
    assert!(!out.status.success());
}

#[test]
fn custom_subsets() {
    let out = flagchow(&[
        "present", "--g", "2", "--group", "1,2", "--parabolic", "", "--format", "json",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\"total_dimension\": 8"));
}

#[test]
fn timing_is_opt_in() {
    let plain = flagchow(&["chern", "--g", "1", "--bundle", "tangent", "--format", "json"]);
    assert!(!String::from_utf8(plain.stdout).unwrap().contains("wall_time_ms"));
    let timed = flagchow(&[
        "chern", "--g", "1", "--bundle", "tangent", "--format", "json", "--timing",
    ]);
    assert!(String::from_utf8(timed.stdout).unwrap().contains("wall_time_ms"));
}
