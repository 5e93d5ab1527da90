//! Verification harness: theorem jobs, sweeps and report serialization
//! for the summability-operator norm library.

// domain guards use `!(x > 0)` so NaN parameters are rejected too
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod jobs;
pub mod output;
pub mod sweep;

use seqnorm_core::norms::Verdict;

pub use jobs::{run_job, JobOutput, JobParams};
pub use output::Format;

/// Stable process exit codes.
pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_FAILED: i32 = 3;
pub const EXIT_INCONCLUSIVE: i32 = 4;

/// Exit code for a verdict: 0 for verified/bound-holds, 3 for failed,
/// 4 for inconclusive.
pub fn exit_code_for(verdict: Verdict) -> i32 {
    match verdict {
        Verdict::Verified | Verdict::BoundHolds => EXIT_OK,
        Verdict::Failed => EXIT_FAILED,
        Verdict::Inconclusive => EXIT_INCONCLUSIVE,
    }
}

/// Tolerance override from the SEQNORM_TOL environment variable.
pub fn tolerance_from_env() -> Result<Option<f64>, String> {
    match std::env::var("SEQNORM_TOL") {
        Ok(text) => text
            .parse::<f64>()
            .map(Some)
            .map_err(|e| format!("SEQNORM_TOL must be a number, got `{text}`: {e}")),
        Err(_) => Ok(None),
    }
}

/// One row of the run-all summary.
#[derive(Debug, Clone, serde::Serialize)]
pub struct CatalogRow {
    pub theorem: String,
    pub instance: String,
    pub closed_form: Option<f64>,
    pub estimate: f64,
    pub verdict: String,
    pub detail: String,
}

/// Execute the verification catalog, optionally filtered by a
/// substring of the theorem id or instance label; returns the rows and
/// the process exit code (0 all pass, 3 any failure, 4 inconclusive
/// only). An empty selection is an error.
pub fn run_all(
    seed: u64,
    tol_override: Option<f64>,
    filter: Option<&str>,
) -> Result<(Vec<CatalogRow>, i32), String> {
    let mut catalog = jobs::full_catalog();
    if let Some(needle) = filter {
        catalog.retain(|(label, params)| {
            label.contains(needle) || params.theorem.as_str().contains(needle)
        });
        if catalog.is_empty() {
            return Err(format!("catalog filter `{needle}` matches nothing"));
        }
    }
    let mut rows = Vec::with_capacity(catalog.len());
    let mut failed = 0usize;
    let mut inconclusive = 0usize;
    for (instance, mut params) in catalog {
        params.seed = seed;
        params.tol_override = tol_override;
        let theorem = params.theorem;
        match run_job(&params) {
            Ok(out) => {
                let verdict = out.report.verdict;
                match verdict {
                    Verdict::Failed => failed += 1,
                    Verdict::Inconclusive => inconclusive += 1,
                    _ => {}
                }
                rows.push(CatalogRow {
                    theorem: theorem.to_string(),
                    instance,
                    closed_form: out.report.closed_form.finite(),
                    estimate: out.report.estimate,
                    verdict: verdict.as_str().to_string(),
                    detail: out
                        .report
                        .caveat
                        .clone()
                        .or_else(|| out.report.notes.first().cloned())
                        .unwrap_or_default(),
                });
            }
            Err(e) => {
                failed += 1;
                rows.push(CatalogRow {
                    theorem: theorem.to_string(),
                    instance,
                    closed_form: None,
                    estimate: f64::NAN,
                    verdict: "error".into(),
                    detail: e.to_string(),
                });
            }
        }
    }
    let code = if failed > 0 {
        EXIT_FAILED
    } else if inconclusive > 0 {
        EXIT_INCONCLUSIVE
    } else {
        EXIT_OK
    };
    Ok((rows, code))
}
