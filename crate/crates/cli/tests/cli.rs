//! End-to-end tests of the seqnorm binary: exit codes, format output
//! and determinism.

use std::process::{Command, Output};

fn seqnorm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_seqnorm"))
        .args(args)
        .env_remove("SEQNORM_TOL")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn verify_p31_verified_exit_zero() {
    let out = seqnorm(&["verify", "--theorem", "P3-1", "--alpha", "1", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["schema"], 1);
    assert_eq!(doc["report"]["verdict"], "verified");
    assert_eq!(doc["report"]["closed_form"]["value"], 4.0);
    assert_eq!(doc["report"]["argmax_n"], 1);
}

#[test]
fn verify_t34_matches_spec_example() {
    let out = seqnorm(&["verify", "--theorem", "T3-4", "--alpha", "0.5", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["report"]["verdict"], "verified");
    let est = doc["report"]["estimate"].as_f64().unwrap();
    assert!((est - 1.0).abs() < 1e-8);
}

#[test]
fn verify_t36_bound_holds() {
    let out = seqnorm(&["verify", "--theorem", "T3-6", "--alpha", "0.5", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["report"]["verdict"], "bound-holds");
    let est = doc["report"]["estimate"].as_f64().unwrap();
    let bound = doc["report"]["closed_form"]["value"].as_f64().unwrap();
    assert!(est <= bound + 1e-6);
    assert!((bound - 2.0 * std::f64::consts::PI).abs() < 1e-12);
}

#[test]
fn verify_t31_spec_invocation() {
    let out = seqnorm(&[
        "verify",
        "--theorem",
        "T3-1",
        "--operator",
        "norlund:cesaro:alpha=2",
        "--v",
        "shifted:alpha=1",
        "--w",
        "reciprocal",
        "--N",
        "10000",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let est = doc["report"]["estimate"].as_f64().unwrap();
    assert!((est - 4.0).abs() < 1e-6);
}

#[test]
fn same_job_same_seed_byte_identical() {
    let args = [
        "verify", "--theorem", "C2-2", "--seed", "42", "--format", "json",
    ];
    let a = seqnorm(&args);
    let b = seqnorm(&args);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), b.status.code());
}

#[test]
fn unknown_theorem_usage_error() {
    let out = seqnorm(&["verify", "--theorem", "T9-9"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn invalid_alpha_domain_usage_error() {
    let out = seqnorm(&["verify", "--theorem", "T3-5", "--alpha", "1.0"]);
    assert_eq!(out.status.code(), Some(2), "{}", stdout(&out));
}

#[test]
fn witness_defect_instance_fails_honestly() {
    // the closed-form equality is false for w = 1/n; the verdict must
    // be `failed` with exit 3, not a silently loosened pass
    let out = seqnorm(&[
        "verify", "--theorem", "T2-1", "--w", "reciprocal", "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["report"]["verdict"], "failed");
}

#[test]
fn tolerance_env_tighter_than_method_is_inconclusive() {
    let out = Command::new(env!("CARGO_BIN_EXE_seqnorm"))
        .args(["verify", "--theorem", "C2-1", "--format", "json"])
        .env("SEQNORM_TOL", "1e-15")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4), "{}", stdout(&out));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["report"]["verdict"], "inconclusive");
}

#[test]
fn sweep_c21_spec_grid() {
    let out = seqnorm(&[
        "sweep", "--theorem", "C2-1", "--alpha", "1:2:1", "--p", "2", "--format", "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    let header = lines.next().unwrap();
    assert!(header.starts_with("theorem_id,alpha,p,closed_form,estimate,gap,bracket_width,verdict,argmax_n"));
    assert!(header.ends_with("runtime_ms"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 2);
    assert!(rows[0].contains(",2,") && rows[0].contains("verified"));
    // α = 2 row carries the closed form 8/3
    assert!(rows[1].contains("2.666666666666"));
}

#[test]
fn sweep_reports_partial_failures_per_row() {
    // α = 1 is outside the T3-5 domain: that row errors, the others pass
    let out = seqnorm(&[
        "sweep", "--theorem", "T3-5", "--alpha", "0.5:1:0.25", "--format", "csv",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 4);
    assert!(text.contains("bound-holds"));
    assert!(text.contains("error"));
}

#[test]
fn matrix_csv_euler_half() {
    let out = seqnorm(&[
        "matrix", "--operator", "hausdorff:euler:alpha=0.5", "--N", "4", "--format", "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let rows: Vec<Vec<f64>> = text
        .trim()
        .lines()
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 4);
    // binomial rows: each sums to 1
    for row in &rows {
        let sum: f64 = row.iter().sum();
        assert!((sum - 1.0).abs() < 1e-12);
    }
    assert!((rows[1][0] - 0.5).abs() < 1e-15);
    assert!((rows[3][1] - 0.375).abs() < 1e-12);
}

#[test]
fn check_conditions_cesaro2() {
    let out = seqnorm(&[
        "check-conditions", "--operator", "norlund:cesaro:alpha=2", "--ground", "6",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("condition (1) non-negative entries: holds"));
    assert!(text.contains("condition (2) prefix domination (ground 6): holds"));
    assert!(text.contains("ConvergedNumerically"));
}

#[test]
fn check_conditions_planted_counterexample() {
    let out = seqnorm(&[
        "check-conditions", "--operator", "explicit:0,1;0,0", "--ground", "2",
    ]);
    assert_eq!(out.status.code(), Some(4));
    assert!(stdout(&out).contains("FAILS at M=[1], N=[2]"));
}

#[test]
fn sweep_t21_p_grid_closed_forms() {
    // closed forms are p* = p/(p-1): 3, 2, 5/3, 1.5 at p = 1.5, 2, 2.5, 3
    let out = seqnorm(&[
        "sweep", "--theorem", "T2-1", "--p", "1.5:3:0.5", "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let rows: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 4);
    for (row, want) in rows.iter().zip([3.0, 2.0, 5.0 / 3.0, 1.5]) {
        let closed = row["closed_form"].as_f64().unwrap();
        assert!((closed - want).abs() < 1e-9, "{closed} vs {want}");
        assert_eq!(row["verdict"], "verified");
    }
}

#[test]
fn run_all_filter_selects_and_empty_filter_is_usage_error() {
    let out = seqnorm(&["run-all", "--filter", "P3-1"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("3/3 instances pass"));
    let out = seqnorm(&["run-all", "--filter", "no-such-theorem"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn run_all_exits_with_failure_code_and_reports_matrix() {
    let out = seqnorm(&["run-all"]);
    // the catalog honestly carries the known-false closed-form equality
    // instance (Cesàro-1 witness against w = 1/n), so run-all exits 3
    assert_eq!(out.status.code(), Some(3));
    let text = stdout(&out);
    assert!(text.contains("P3-1"));
    assert!(text.contains("verified"));
    assert!(text.lines().count() > 30);
    let pass_line = text.lines().last().unwrap();
    assert!(pass_line.contains("31/32 instances pass"), "{pass_line}");
}
