//! Output rendering: json, csv and plain tables.

use crate::jobs::JobOutput;
use crate::CatalogRow;
use seqnorm_core::norms::ClosedForm;

/// Output format selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

fn closed_to_string(c: &ClosedForm) -> String {
    match c {
        ClosedForm::Finite(v) => format!("{v}"),
        ClosedForm::Infinite => "inf".into(),
        ClosedForm::None => String::new(),
    }
}

/// CSV header shared by verify and sweep (sweep appends runtime_ms).
pub const CSV_HEADER: &str =
    "theorem_id,alpha,p,closed_form,estimate,gap,bracket_width,verdict,argmax_n";

/// One CSV row for a job result.
pub fn job_csv_row(out: &JobOutput) -> String {
    let r = &out.report;
    let gap = r
        .closed_form
        .finite()
        .map(|c| format!("{}", r.estimate - c))
        .unwrap_or_default();
    let width = r
        .bracket
        .map(|(lo, hi)| format!("{}", hi - lo))
        .unwrap_or_default();
    format!(
        "{},{},{},{},{},{},{},{},{}",
        r.theorem,
        out.params.alpha.map(|a| a.to_string()).unwrap_or_default(),
        out.params.p.map(|p| p.to_string()).unwrap_or_default(),
        closed_to_string(&r.closed_form),
        r.estimate,
        gap,
        width,
        r.verdict.as_str(),
        r.argmax_n.map(|n| n.to_string()).unwrap_or_default(),
    )
}

/// Render a verify result in the requested format.
pub fn render_job(out: &JobOutput, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(out).expect("reports serialize"),
        Format::Csv => format!("{CSV_HEADER}\n{}", job_csv_row(out)),
        Format::Table => {
            let r = &out.report;
            let mut lines = Vec::new();
            lines.push(format!("theorem      {}", r.theorem));
            lines.push(format!("verdict      {}", r.verdict.as_str()));
            match &r.closed_form {
                ClosedForm::None => {}
                other => lines.push(format!("closed form  {}", closed_to_string(other))),
            }
            lines.push(format!("estimate     {}", r.estimate));
            if let Some((lo, hi)) = r.bracket {
                lines.push(format!("bracket      [{lo}, {hi}] (width {:.3e})", hi - lo));
            }
            if let Some(n) = r.argmax_n {
                lines.push(format!("argmax n     {n}"));
            }
            lines.push(format!(
                "tolerances   rel {:.1e}, abs {:.1e}",
                r.tolerances.rel, r.tolerances.abs
            ));
            match &r.witness {
                seqnorm_core::norms::WitnessInfo::PrefixIndicator { ones, check_ratio } => lines
                    .push(format!(
                        "witness      prefix indicator of length {ones} (ratio check {check_ratio})"
                    )),
                seqnorm_core::norms::WitnessInfo::WeightPrefix { len, check_ratio } => lines.push(
                    format!("witness      weight prefix of length {len} (ratio check {check_ratio})"),
                ),
                seqnorm_core::norms::WitnessInfo::PowerDecay { delta, truncation } => lines.push(
                    format!("witness      x_n = n^(-1/p-δ), δ = {delta}, truncation {truncation}"),
                ),
                seqnorm_core::norms::WitnessInfo::Description(d) => {
                    lines.push(format!("witness      {d}"))
                }
                seqnorm_core::norms::WitnessInfo::None => {}
            }
            if !r.convergence.is_empty() {
                lines.push("convergence  n → value".into());
                for point in &r.convergence {
                    lines.push(format!("             {:>8} → {}", point.n, point.value));
                }
            }
            if let Some(caveat) = &r.caveat {
                lines.push(format!("caveat       {caveat}"));
            }
            for note in &r.notes {
                lines.push(format!("note         {note}"));
            }
            lines.join("\n")
        }
    }
}

/// Render the run-all summary.
pub fn render_catalog(rows: &[CatalogRow], format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(rows).expect("rows serialize"),
        Format::Csv => {
            let mut lines = vec!["theorem_id,instance,closed_form,estimate,verdict".to_string()];
            for r in rows {
                lines.push(format!(
                    "{},\"{}\",{},{},{}",
                    r.theorem,
                    r.instance,
                    r.closed_form.map(|c| c.to_string()).unwrap_or_default(),
                    r.estimate,
                    r.verdict
                ));
            }
            lines.join("\n")
        }
        Format::Table => {
            let mut lines = Vec::new();
            lines.push(format!(
                "{:<6} {:<40} {:>14} {:>14}  {}",
                "id", "instance", "closed", "estimate", "verdict"
            ));
            for r in rows {
                let closed = r
                    .closed_form
                    .map(|c| format!("{c:.10}"))
                    .unwrap_or_else(|| "-".into());
                let detail = if r.detail.is_empty() {
                    String::new()
                } else {
                    format!("  [{}]", r.detail)
                };
                lines.push(format!(
                    "{:<6} {:<40} {:>14} {:>14.10}  {}{}",
                    r.theorem, r.instance, closed, r.estimate, r.verdict, detail
                ));
            }
            let pass = rows
                .iter()
                .filter(|r| r.verdict == "verified" || r.verdict == "bound-holds")
                .count();
            lines.push(format!("{pass}/{} instances pass", rows.len()));
            lines.join("\n")
        }
    }
}
