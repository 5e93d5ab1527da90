//! seqnorm: build summability matrix operators on weighted and Lorentz
//! sequence spaces, evaluate their norms and certify the classical
//! bounds numerically.

use clap::{Parser, Subcommand};

use seqnorm::jobs::{run_job, JobParams};
use seqnorm::output::{render_catalog, render_job, Format};
use seqnorm::sweep::{render_sweep, run_sweep, GridSpec};
use seqnorm::{exit_code_for, run_all, tolerance_from_env, EXIT_FAILED, EXIT_INCONCLUSIVE, EXIT_OK, EXIT_USAGE};
use seqnorm_core::matrices::{check_condition_3, OperatorSpec, TruncatedMatrix};
use seqnorm_core::norms::TheoremId;
use seqnorm_core::spaces::WeightSequence;
use seqnorm_core::Real;

#[derive(Parser)]
#[command(
    name = "seqnorm",
    version,
    about = "Operator norms of summability matrices on weighted and Lorentz sequence spaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct JobArgs {
    /// Theorem identifier (T2-1, C2-1..C2-4, T2-2, EX2, T3-1..T3-6, C3-1, L3-1, L3-2, P3-1, P3-2)
    #[arg(long)]
    theorem: String,
    /// Operator spec, e.g. `norlund:cesaro:alpha=2`, `copson:alpha=1`, `hilbert`
    #[arg(long)]
    operator: Option<String>,
    /// Measure spec, e.g. `cesaro:alpha=1`, `euler:alpha=0.25`, `atoms:0.5=0.7,1.0=0.3`
    #[arg(long)]
    measure: Option<String>,
    /// Source-side weight, e.g. `shifted:alpha=1`, `power:alpha=0.5`
    #[arg(long)]
    v: Option<String>,
    /// Target-side weight, e.g. `reciprocal`, `partial-sum-power:alpha=0.5`
    #[arg(long)]
    w: Option<String>,
    /// Family/bound order α where the theorem takes one; sweeps accept
    /// a grid `start:stop:step`
    #[arg(long)]
    alpha: Option<String>,
    /// Exponent p > 1; sweeps accept a grid `start:stop:step`
    #[arg(long)]
    p: Option<String>,
    /// Witness decay offset δ ∈ (0, 1/p)
    #[arg(long)]
    delta: Option<f64>,
    /// Truncation / probe horizon
    #[arg(long = "N")]
    n: Option<usize>,
    /// Direct-summation cutoff for tail oracles
    #[arg(long)]
    k_tail: Option<usize>,
    /// Seed for randomized property suites
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Verify one theorem instance and print its report
    Verify(JobArgs),
    /// Verify a theorem across an α and/or p grid
    Sweep(JobArgs),
    /// Print the N×N truncation of an operator
    Matrix {
        #[arg(long)]
        operator: String,
        #[arg(long = "N", default_value_t = 8)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Check the structural conditions (1), (2), (3) and decreasing
    /// preservation for an operator
    CheckConditions {
        #[arg(long)]
        operator: String,
        /// Exhaustive condition-(2) ground-set size (≤ 10)
        #[arg(long, default_value_t = 6)]
        ground: usize,
        /// Weight for the condition-(3) probe
        #[arg(long, default_value = "reciprocal")]
        w: String,
        #[arg(long = "N", default_value_t = 10_000)]
        n: usize,
    },
    /// Run the whole verification catalog
    RunAll {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Only run catalog entries whose theorem id or label contains
        /// this substring
        #[arg(long)]
        filter: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
}

fn single_value(name: &str, text: &Option<String>) -> Result<Option<f64>, String> {
    match text {
        None => Ok(None),
        Some(t) => {
            if t.contains(':') {
                return Err(format!(
                    "--{name} {t} is a grid; grids are only valid with the sweep subcommand"
                ));
            }
            t.parse::<f64>()
                .map(Some)
                .map_err(|e| format!("bad --{name} value `{t}`: {e}"))
        }
    }
}

fn params_from(args: &JobArgs) -> Result<JobParams, String> {
    let theorem = TheoremId::parse(&args.theorem)
        .ok_or_else(|| format!("unknown theorem id `{}`", args.theorem))?;
    let tol_override = tolerance_from_env()?;
    Ok(JobParams {
        theorem,
        operator: args.operator.clone(),
        measure: args.measure.clone(),
        v: args.v.clone(),
        w: args.w.clone(),
        alpha: single_value("alpha", &args.alpha)?,
        p: single_value("p", &args.p)?,
        delta: args.delta,
        n: args.n,
        k_tail: args.k_tail,
        seed: args.seed,
        tol_override,
    })
}

fn usage_error(message: impl std::fmt::Display) -> ! {
    eprintln!("error: {message}");
    std::process::exit(EXIT_USAGE);
}

/// Print to stdout, exiting quietly when the reader closed the pipe.
fn emit(text: impl std::fmt::Display) {
    use std::io::Write;
    if writeln!(std::io::stdout(), "{text}").is_err() {
        std::process::exit(EXIT_OK);
    }
}

fn main() {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify(args) => {
            let format = args.format;
            let params = params_from(&args).unwrap_or_else(|e| usage_error(e));
            match run_job(&params) {
                Ok(out) => {
                    emit(render_job(&out, format));
                    std::process::exit(exit_code_for(out.report.verdict));
                }
                Err(e) => match e {
                    seqnorm_core::Error::Domain(_)
                    | seqnorm_core::Error::Parse(_)
                    | seqnorm_core::Error::Unsupported(_) => usage_error(e),
                    other => {
                        eprintln!("error: {other}");
                        std::process::exit(EXIT_INCONCLUSIVE);
                    }
                },
            }
        }
        Command::Sweep(job) => {
            let format = job.format;
            let alpha = job.alpha.clone();
            let p = job.p.clone();
            let mut stripped = JobArgs { alpha: None, p: None, ..job };
            stripped.alpha = None;
            stripped.p = None;
            let params = params_from(&stripped).unwrap_or_else(|e| usage_error(e));
            let alphas: Vec<Option<f64>> = match alpha {
                Some(text) => GridSpec::parse(&text)
                    .unwrap_or_else(|e| usage_error(e))
                    .values
                    .into_iter()
                    .map(Some)
                    .collect(),
                None => vec![None],
            };
            let ps: Vec<Option<f64>> = match p {
                Some(text) => GridSpec::parse(&text)
                    .unwrap_or_else(|e| usage_error(e))
                    .values
                    .into_iter()
                    .map(Some)
                    .collect(),
                None => vec![None],
            };
            let rows = run_sweep(&params, &alphas, &ps);
            emit(render_sweep(&rows, format));
            let any_fail = rows
                .iter()
                .any(|r| r.verdict == "failed" || r.verdict.starts_with("error"));
            let any_inconclusive = rows.iter().any(|r| r.verdict == "inconclusive");
            std::process::exit(if any_fail {
                EXIT_FAILED
            } else if any_inconclusive {
                EXIT_INCONCLUSIVE
            } else {
                EXIT_OK
            });
        }
        Command::Matrix { operator, n, format } => {
            let spec =
                OperatorSpec::<Real>::parse(&operator).unwrap_or_else(|e| usage_error(e));
            let trunc = TruncatedMatrix::new(&spec, n).unwrap_or_else(|e| usage_error(e));
            match format {
                Format::Json => {
                    let rows: Vec<Vec<f64>> = (1..=n)
                        .map(|i| (1..=n).map(|j| trunc.entry(i, j)).collect())
                        .collect();
                    let doc = serde_json::json!({
                        "schema": 1,
                        "operator": operator,
                        "n": n,
                        "rows": rows,
                    });
                    emit(serde_json::to_string_pretty(&doc).unwrap());
                }
                Format::Csv => {
                    for i in 1..=n {
                        let row: Vec<String> =
                            (1..=n).map(|j| trunc.entry(i, j).to_string()).collect();
                        emit(row.join(","));
                    }
                }
                Format::Table => {
                    for i in 1..=n {
                        let row: Vec<String> =
                            (1..=n).map(|j| format!("{:>12.8}", trunc.entry(i, j))).collect();
                        emit(row.join(" "));
                    }
                }
            }
        }
        Command::CheckConditions {
            operator,
            ground,
            w,
            n,
        } => {
            let spec =
                OperatorSpec::<Real>::parse(&operator).unwrap_or_else(|e| usage_error(e));
            let weight =
                WeightSequence::<Real>::parse(&w).unwrap_or_else(|e| usage_error(e));
            let order = ground.clamp(12, seqnorm_core::matrices::MAX_TRUNCATION);
            let trunc = TruncatedMatrix::new(&spec, order).unwrap_or_else(|e| usage_error(e));
            let c1 = trunc.check_condition_1();
            emit(format!("condition (1) non-negative entries: {}", if c1 { "holds" } else { "FAILS" }));
            let c2 = trunc
                .check_condition_2(ground)
                .unwrap_or_else(|e| usage_error(e));
            match (&c2.holds, &c2.witness) {
                (true, _) => emit(format!("condition (2) prefix domination (ground {ground}): holds")),
                (false, Some((m, nn))) => emit(format!(
                    "condition (2) prefix domination (ground {ground}): FAILS at M={m:?}, N={nn:?}"
                )),
                (false, None) => emit("condition (2): FAILS"),
            }
            let c3 = check_condition_3(&spec, &weight, n).unwrap_or_else(|e| usage_error(e));
            emit(format!(
                "condition (3) Σ w_i a(i,1) probe to N={n}: {:?} (increment ratio {:.4}{})",
                c3.verdict,
                c3.increment_ratio,
                c3.tail_estimate
                    .map(|t| format!(", tail est {t:.3e}"))
                    .unwrap_or_default()
            ));
            for (at, value) in &c3.checkpoints {
                emit(format!("    partial sum at {at}: {value}"));
            }
            let dec = trunc.check_decreasing_preserved();
            emit(format!(
                "decreasing inputs preserved (order {order}): {}",
                if dec { "holds" } else { "FAILS" }
            ));
            let all = c1
                && c2.holds
                && dec
                && c3.verdict == seqnorm_core::matrices::ConvergenceVerdict::ConvergedNumerically;
            std::process::exit(if all { EXIT_OK } else { EXIT_INCONCLUSIVE });
        }
        Command::RunAll { seed, filter, format } => {
            let tol = tolerance_from_env().unwrap_or_else(|e| usage_error(e));
            let (rows, code) =
                run_all(seed, tol, filter.as_deref()).unwrap_or_else(|e| usage_error(e));
            emit(render_catalog(&rows, format));
            std::process::exit(code);
        }
    }
}
