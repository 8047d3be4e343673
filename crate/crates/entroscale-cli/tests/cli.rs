//! Black-box checks of the command-line contract: output layout, exit
//! codes, and config-file precedence.

use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_entroscale"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("entroscale-cli-test-{}-{name}", std::process::id()));
    p
}

#[test]
fn scales_prints_pinned_multipliers() {
    let out = run(&["scales"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "schedule,multiplier,lambda");
    assert_eq!(
        lines[1],
        "vanilla,1.0000000000000000e0,1.2500000000000000e-1"
    );
    assert!(lines[5].starts_with("infoscale,1.3704474014666341e0,"));
}

#[test]
fn infoscale_is_exactly_one_at_the_training_length() {
    let out = run(&["scales", "--n-te", "64"]);
    let text = stdout(&out);
    assert!(text.contains("infoscale,1.0000000000000000e0,1.2500000000000000e-1"));
}

#[test]
fn bad_flag_value_exits_2() {
    let out = run(&["scales", "--n-te", "many"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_schedule_exits_2() {
    let out = run(&["entropy-sweep", "--schedule", "thermostat"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("unknown schedule"));
}

#[test]
fn zero_trials_exits_2_with_grid_context() {
    let out = run(&["entropy-sweep", "--trials", "0"]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert!(err.contains("at grid point n=64"), "stderr: {err}");
    assert!(err.contains("at least one trial"), "stderr: {err}");
}

#[test]
fn failed_check_exits_3_after_printing_the_table() {
    let out = run(&["theorem1", "--tol", "1e-12", "--alphas", "8"]);
    assert_eq!(out.status.code(), Some(3));
    let text = stdout(&out);
    assert!(text.starts_with("alpha,theoretical,numerical,abs_error\n"));
    assert_eq!(text.lines().count(), 2);
    assert!(stderr(&out).contains("exceeds tolerance"));
}

#[test]
fn config_file_fills_defaults_and_flags_win() {
    let path = scratch("cfg");
    std::fs::write(&path, "# comment\nd=32\nalphas=8\ntol=1e-3\n").unwrap();
    let cfg = path.to_str().unwrap();

    let from_config = run(&["theorem1", "--config", cfg]);
    assert_eq!(from_config.status.code(), Some(0));
    let text = stdout(&from_config);
    // eta*(8, 32), not the d=64 default value
    assert!(text.contains("2.5756189520989947e-1"), "got: {text}");

    let overridden = run(&["theorem1", "--config", cfg, "--alphas", "64"]);
    let text = stdout(&overridden);
    assert!(!text.contains("8.0000000000000000e0,"));
    assert!(text.contains("6.4000000000000000e1,"));
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn malformed_config_exits_2_with_line_number() {
    let path = scratch("badcfg");
    std::fs::write(&path, "d=32\nno equals sign here\n").unwrap();
    let out = run(&["theorem1", "--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 2"));
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn missing_config_exits_2() {
    let out = run(&["scales", "--config", "/nonexistent/entroscale.cfg"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn out_flag_writes_the_file_and_keeps_stdout_empty() {
    let path = scratch("out");
    let out = run(&["scales", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert!(written.starts_with("schedule,multiplier,lambda\n"));
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn heatmap_header_is_exact() {
    let out = run(&["heatmap", "--n", "4", "--d", "8"]);
    let text = stdout(&out);
    assert!(text.starts_with("i,j,value\n"));
    assert_eq!(text.lines().count(), 17);
    let out = run(&["heatmap", "--n", "4", "--d", "8", "--which", "sideways"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn attend_emits_json_with_window_dependent_cosine_scale() {
    let out = run(&[
        "attend", "--n", "8", "--d", "8", "--mask", "windowed", "--w", "4",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(value["last_row"]["allowed"], 4);
    assert!(text.contains("\"cos_scale\":1.6000000000000000e1"));

    let out = run(&["attend", "--n", "8", "--d", "8", "--w", "4"]);
    assert!(stdout(&out).contains("\"cos_scale\":1.2800000000000000e2"));
}

#[test]
fn out_of_domain_closed_forms_degrade_to_nan_rows() {
    let out = run(&[
        "entropy-sweep",
        "--schedule",
        "loglength",
        "--lengths",
        "4096",
        "--trials",
        "5",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let row = text.lines().nth(1).unwrap();
    let cells: Vec<&str> = row.split(',').collect();
    assert_eq!(cells[0], "4096");
    assert_ne!(cells[2], "NaN", "the Monte Carlo column stays finite");
    assert_eq!(cells[4], "NaN");
    assert_eq!(cells[5], "NaN");
}
