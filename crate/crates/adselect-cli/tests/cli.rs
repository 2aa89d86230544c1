//! End-to-end tests of the `adselect` binary: argument handling, output
//! shapes, reproducibility across reruns and worker counts, and the error
//! text users actually see.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use adselect::sim::CSV_HEADER;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_adselect"))
}

fn tmp(name: &str) -> PathBuf {
    Path::new(env!("CARGO_TARGET_TMPDIR")).join(name)
}

fn stdout_of(output: &Output) -> &str {
    std::str::from_utf8(&output.stdout).expect("stdout is UTF-8")
}

fn stderr_of(output: &Output) -> &str {
    std::str::from_utf8(&output.stderr).expect("stderr is UTF-8")
}

/// The example used throughout the crate docs: greedy stops at goal 12,
/// refinement reaches the optimum 14.
fn example_csv(name: &str) -> PathBuf {
    let path = tmp(name);
    fs::write(&path, "6,4,0\n0,4,4\n0,0,4\n").expect("write matrix");
    path
}

// ── solve ───────────────────────────────────────────────────────────────

#[test]
fn solve_refines_the_example_matrix() {
    let matrix = example_csv("solve_example.csv");
    let output = bin()
        .args(["solve", "--matrix"])
        .arg(&matrix)
        .args(["--select", "2", "--seed", "7"])
        .output()
        .unwrap();
    assert!(output.status.success(), "stderr: {}", stderr_of(&output));
    let stdout = stdout_of(&output);
    assert!(stdout.contains("seed: 7"));
    assert!(stdout.contains("selected: 0,2"));
    assert!(stdout.contains("baseline_goal: 12"));
    assert!(stdout.contains("final_goal: 14"));
    assert!(stdout.contains("matched: false"));
    assert!(stdout.contains("iterations_run: 2"));
}

#[test]
fn solve_with_one_round_is_the_plain_baseline() {
    let matrix = example_csv("solve_baseline.csv");
    let output = bin()
        .args(["solve", "--matrix"])
        .arg(&matrix)
        .args(["--select", "2", "--power", "1", "--seed", "7"])
        .output()
        .unwrap();
    assert!(output.status.success());
    let stdout = stdout_of(&output);
    assert!(stdout.contains("selected: 1,2"));
    assert!(stdout.contains("final_goal: 12"));
    assert!(stdout.contains("matched: true"));
    assert!(stdout.contains("improvement_ratio: 0"));
}

#[test]
fn solve_rejects_an_oversized_selection() {
    let matrix = example_csv("solve_oversized.csv");
    let output = bin()
        .args(["solve", "--matrix"])
        .arg(&matrix)
        .args(["--select", "5"])
        .output()
        .unwrap();
    assert!(!output.status.success());
    let stderr = stderr_of(&output);
    assert!(stderr.contains("--select 5"), "stderr: {stderr}");
    assert!(stderr.contains("3 creative columns"), "stderr: {stderr}");
}

#[test]
fn solve_rejects_removing_the_whole_selection() {
    let matrix = example_csv("solve_remove_all.csv");
    let output = bin()
        .args(["solve", "--matrix"])
        .arg(&matrix)
        .args(["--select", "2", "--remove", "2"])
        .output()
        .unwrap();
    assert!(!output.status.success());
    assert!(stderr_of(&output).contains("--remove 2 must be smaller than --select 2"));
}

#[test]
fn solve_reports_csv_diagnostics_with_line_numbers() {
    let path = tmp("solve_ragged.csv");
    fs::write(&path, "1,2\n3\n").unwrap();
    let output = bin()
        .args(["solve", "--matrix"])
        .arg(&path)
        .args(["--select", "1"])
        .output()
        .unwrap();
    assert!(!output.status.success());
    assert!(stderr_of(&output).contains("line 2: expected 2 fields, found 1"));
}

// ── split-prob ──────────────────────────────────────────────────────────

#[test]
fn split_prob_prints_the_pair_probability() {
    let output = bin().args(["split-prob", "--select", "6", "--remove", "3"]).output().unwrap();
    assert!(output.status.success());
    assert_eq!(stdout_of(&output), "0.6\n");
}

#[test]
fn split_prob_needs_at_least_two_members() {
    let output = bin().args(["split-prob", "--select", "1", "--remove", "1"]).output().unwrap();
    assert!(!output.status.success());
    assert!(stderr_of(&output).contains("at least two"));
}

// ── simulate ────────────────────────────────────────────────────────────

fn tiny_simulate_args() -> Vec<&'static str> {
    vec![
        "simulate",
        "--rows",
        "5",
        "--cols",
        "20",
        "--select",
        "3",
        "--trajectories",
        "8",
        "--repeats",
        "2",
        "--seed",
        "9",
    ]
}

#[test]
fn simulate_writes_one_csv_row_per_repeat() {
    let output = bin().args(tiny_simulate_args()).output().unwrap();
    assert!(output.status.success(), "stderr: {}", stderr_of(&output));
    let stdout = stdout_of(&output);
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(lines.len(), 3);
    assert_eq!(lines[0], CSV_HEADER);
    assert!(lines[1].starts_with("1,"));
    assert!(lines[2].starts_with("2,"));
    // the resolved config echoes on stderr, keeping stdout machine-readable
    let stderr = stderr_of(&output);
    assert!(stderr.contains("\"base_seed\":9"), "stderr: {stderr}");
    assert!(stderr.contains("seed: 9"));
}

#[test]
fn simulate_reruns_and_worker_counts_are_byte_identical() {
    let first = bin().args(tiny_simulate_args()).args(["--workers", "1"]).output().unwrap();
    let second = bin().args(tiny_simulate_args()).args(["--workers", "1"]).output().unwrap();
    let third = bin().args(tiny_simulate_args()).args(["--workers", "3"]).output().unwrap();
    assert!(first.status.success());
    assert_eq!(stdout_of(&first), stdout_of(&second));
    assert_eq!(stdout_of(&first), stdout_of(&third));
}

#[test]
fn simulate_presets_accept_overrides() {
    let output = bin()
        .args(["simulate", "--preset", "base-r1", "--trajectories", "4", "--repeats", "1"])
        .args(["--seed", "3"])
        .output()
        .unwrap();
    assert!(output.status.success(), "stderr: {}", stderr_of(&output));
    let lines: Vec<&str> = stdout_of(&output).lines().collect();
    assert_eq!(lines.len(), 2, "header plus one repeat row");
    assert!(stderr_of(&output).contains("\"trajectories\":4"));
}

#[test]
fn simulate_rejects_unknown_presets_and_lists_the_known_ones() {
    let output = bin().args(["simulate", "--preset", "huge-r9"]).output().unwrap();
    assert!(!output.status.success());
    let stderr = stderr_of(&output);
    assert!(stderr.contains("unknown preset \"huge-r9\""), "stderr: {stderr}");
    assert!(stderr.contains("base-r1"), "stderr: {stderr}");
}

#[test]
fn simulate_preset_conflicts_with_dimension_flags() {
    let output =
        bin().args(["simulate", "--preset", "base-r1", "--rows", "5"]).output().unwrap();
    assert_eq!(output.status.code(), Some(2), "clap rejects the combination");
    assert!(stderr_of(&output).contains("cannot be used with"));
}

#[test]
fn simulate_needs_a_complete_instance_description() {
    let output = bin().args(["simulate", "--rows", "5"]).output().unwrap();
    assert!(!output.status.success());
    assert!(stderr_of(&output)
        .contains("simulate needs --preset, --config, or all of --rows, --cols, and --select"));
}

#[test]
fn simulate_round_trips_a_json_report_as_config() {
    let a_csv = tmp("roundtrip_a.csv");
    let b_json = tmp("roundtrip_b.json");
    let c_csv = tmp("roundtrip_c.csv");

    let a = bin()
        .args(tiny_simulate_args())
        .args(["--output"])
        .arg(&a_csv)
        .output()
        .unwrap();
    assert!(a.status.success(), "stderr: {}", stderr_of(&a));

    let b = bin()
        .args(tiny_simulate_args())
        .args(["--format", "json", "--output"])
        .arg(&b_json)
        .output()
        .unwrap();
    assert!(b.status.success());

    // rerunning from the report's embedded config reproduces the CSV exactly
    let c = bin()
        .args(["simulate", "--config"])
        .arg(&b_json)
        .args(["--output"])
        .arg(&c_csv)
        .output()
        .unwrap();
    assert!(c.status.success(), "stderr: {}", stderr_of(&c));

    let a_text = fs::read_to_string(&a_csv).unwrap();
    let c_text = fs::read_to_string(&c_csv).unwrap();
    assert_eq!(a_text, c_text);
    assert!(a_text.starts_with(CSV_HEADER));
}

// ── oracle-check ────────────────────────────────────────────────────────

#[test]
fn oracle_check_reports_a_clean_ordering() {
    let output = bin()
        .args(["oracle-check", "--rows", "4", "--cols", "8", "--select", "3"])
        .args(["--trajectories", "20", "--seed", "5"])
        .output()
        .unwrap();
    assert!(output.status.success(), "stderr: {}", stderr_of(&output));
    let stdout = stdout_of(&output);
    assert!(stdout.contains("seed: 5"));
    assert!(stdout.contains("instances: 20"));
    assert!(stdout.contains("ordering_violations: 0"));
    assert!(stdout.contains("power_above_greedy:"));
}

#[test]
fn oracle_check_refuses_oversized_budgets() {
    let output = bin()
        .args(["oracle-check", "--rows", "3", "--cols", "30", "--select", "10"])
        .args(["--trajectories", "5", "--seed", "5", "--budget", "1000"])
        .output()
        .unwrap();
    assert!(!output.status.success());
    assert!(stderr_of(&output).contains("exceeds the budget of 1000"));
}
