//! Parameter sweeps over α and/or p grids.

use std::time::Instant;

use serde::Serialize;

use crate::jobs::{run_job, JobParams};
use crate::output::Format;
use seqnorm_core::error::{Error, Result};

/// Inclusive numeric grid parsed from `value` or `start:stop:step`.
#[derive(Debug, Clone)]
pub struct GridSpec {
    pub values: Vec<f64>,
}

impl GridSpec {
    pub fn parse(text: &str) -> Result<Self> {
        let parts: Vec<&str> = text.split(':').collect();
        let values = match parts.as_slice() {
            [single] => vec![single
                .parse::<f64>()
                .map_err(|e| Error::Parse(format!("bad grid value `{single}`: {e}")))?],
            [start, stop, step] => {
                let start = start
                    .parse::<f64>()
                    .map_err(|e| Error::Parse(format!("bad grid start `{start}`: {e}")))?;
                let stop = stop
                    .parse::<f64>()
                    .map_err(|e| Error::Parse(format!("bad grid stop `{stop}`: {e}")))?;
                let step = step
                    .parse::<f64>()
                    .map_err(|e| Error::Parse(format!("bad grid step `{step}`: {e}")))?;
                if !(step > 0.0) || stop < start {
                    return Err(Error::Parse(format!(
                        "grid `{text}` needs start <= stop and step > 0"
                    )));
                }
                let mut values = Vec::new();
                let count = ((stop - start) / step + 1e-9).floor() as usize;
                for i in 0..=count {
                    values.push(start + step * i as f64);
                }
                values
            }
            _ => {
                return Err(Error::Parse(format!(
                    "grid `{text}` must be `value` or `start:stop:step`"
                )))
            }
        };
        Ok(GridSpec { values })
    }
}

/// One sweep result row.
#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub theorem: String,
    pub alpha: Option<f64>,
    pub p: Option<f64>,
    pub closed_form: Option<f64>,
    pub estimate: Option<f64>,
    pub gap: Option<f64>,
    pub bracket_width: Option<f64>,
    pub verdict: String,
    pub argmax_n: Option<usize>,
    pub runtime_ms: u128,
}

/// Run the sweep; rows are ordered by grid position and partial
/// failures become per-row `error` verdicts.
pub fn run_sweep(
    base: &JobParams,
    alphas: &[Option<f64>],
    ps: &[Option<f64>],
) -> Vec<SweepRow> {
    let mut rows = Vec::new();
    for &alpha in alphas {
        for &p in ps {
            let mut params = base.clone();
            params.alpha = alpha.or(params.alpha);
            params.p = p.or(params.p);
            let start = Instant::now();
            let row = match run_job(&params) {
                Ok(out) => {
                    let r = &out.report;
                    SweepRow {
                        theorem: r.theorem.to_string(),
                        alpha: params.alpha,
                        p: params.p,
                        closed_form: r.closed_form.finite(),
                        estimate: Some(r.estimate),
                        gap: r.closed_form.finite().map(|c| r.estimate - c),
                        bracket_width: r.bracket.map(|(lo, hi)| hi - lo),
                        verdict: r.verdict.as_str().to_string(),
                        argmax_n: r.argmax_n,
                        runtime_ms: start.elapsed().as_millis(),
                    }
                }
                Err(e) => SweepRow {
                    theorem: base.theorem.to_string(),
                    alpha: params.alpha,
                    p: params.p,
                    closed_form: None,
                    estimate: None,
                    gap: None,
                    bracket_width: None,
                    verdict: format!("error: {e}"),
                    argmax_n: None,
                    runtime_ms: start.elapsed().as_millis(),
                },
            };
            rows.push(row);
        }
    }
    rows
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(|x| x.to_string()).unwrap_or_default()
}

/// Render sweep rows.
pub fn render_sweep(rows: &[SweepRow], format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(rows).expect("rows serialize"),
        Format::Csv | Format::Table => {
            let mut lines = vec![format!("{},runtime_ms", crate::output::CSV_HEADER)];
            for r in rows {
                // quote the verdict: error rows carry free text
                lines.push(format!(
                    "{},{},{},{},{},{},{},\"{}\",{},{}",
                    r.theorem,
                    opt(&r.alpha),
                    opt(&r.p),
                    opt(&r.closed_form),
                    opt(&r.estimate),
                    opt(&r.gap),
                    opt(&r.bracket_width),
                    r.verdict,
                    opt(&r.argmax_n),
                    r.runtime_ms
                ));
            }
            lines.join("\n")
        }
    }
}
