//! Theorem verification jobs: parameter validation, dispatch into the
//! core library, and verdict assembly.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use seqnorm_core::error::{Error, Result};
use seqnorm_core::matrices::{OperatorSpec, TruncatedMatrix};
use seqnorm_core::measures::{DensityFamily, MeasureSpec};
use seqnorm_core::norms::{
    cesaro_zeta_bound, copson_bound, hardy_suite, hilbert_bound,
    hilbert_sup_lemma, lp_ratio_bounds, mediant_suite, norm_d1, norm_e_inf, oracle_norm_d1,
    ratio_sequence, witness_lower_bound_lp, ClosedForm, NormReport, OracleSettings, SumMode,
    TailPolicy, TheoremId, Tolerances, Verdict, WitnessInfo,
};
use seqnorm_core::spaces::WeightSequence;
use seqnorm_core::specfun::gamma_fn;
use seqnorm_core::Real;

/// Parameters of one verification job.
#[derive(Debug, Clone, Serialize)]
pub struct JobParams {
    pub theorem: TheoremId,
    pub operator: Option<String>,
    pub measure: Option<String>,
    pub v: Option<String>,
    pub w: Option<String>,
    pub alpha: Option<f64>,
    pub p: Option<f64>,
    pub delta: Option<f64>,
    pub n: Option<usize>,
    pub k_tail: Option<usize>,
    pub seed: u64,
    /// SEQNORM_TOL override: replaces both judgment tolerances
    pub tol_override: Option<f64>,
}

impl JobParams {
    pub fn new(theorem: TheoremId) -> Self {
        JobParams {
            theorem,
            operator: None,
            measure: None,
            v: None,
            w: None,
            alpha: None,
            p: None,
            delta: None,
            n: None,
            k_tail: None,
            seed: 0,
            tol_override: None,
        }
    }

    fn with(mut self, set: impl FnOnce(&mut Self)) -> Self {
        set(&mut self);
        self
    }

    fn p_value(&self) -> Result<f64> {
        let p = self.p.unwrap_or(2.0);
        if !(p > 1.0) {
            return Err(Error::Domain(format!("p must be > 1, got {p}")));
        }
        Ok(p)
    }

    fn weight(&self, text: &Option<String>, default: &str) -> Result<WeightSequence<Real>> {
        WeightSequence::parse(text.as_deref().unwrap_or(default))
    }

    /// Measure from `--measure` (or the default), with `--alpha`
    /// re-parameterizing the named family when given.
    fn measure_value(&self, default: &str) -> Result<MeasureSpec<Real>> {
        let mu = MeasureSpec::parse(self.measure.as_deref().unwrap_or(default))?;
        let Some(alpha) = self.alpha else {
            return Ok(mu);
        };
        if let Some((family, _)) = mu.density() {
            match family {
                DensityFamily::Cesaro { .. } => MeasureSpec::cesaro(alpha),
                DensityFamily::Holder { .. } => MeasureSpec::holder(alpha),
                DensityFamily::Gamma { .. } => MeasureSpec::gamma(alpha),
            }
        } else if mu.euler_location().is_some() {
            MeasureSpec::euler(alpha)
        } else {
            Err(Error::Domain(
                "an alpha override needs a named measure family".into(),
            ))
        }
    }

    fn operator_value(&self, default: &str) -> Result<OperatorSpec<Real>> {
        OperatorSpec::parse(self.operator.as_deref().unwrap_or(default))
    }

    fn tolerances(&self, default: Tolerances) -> Tolerances {
        match self.tol_override {
            Some(t) => Tolerances { rel: t, abs: t },
            None => default,
        }
    }
}

/// Serialized job result: versioned schema, the echoed parameters and
/// the structured report. Deterministic for a fixed (job, seed).
#[derive(Debug, Clone, Serialize)]
pub struct JobOutput {
    pub schema: u32,
    pub params: JobParams,
    pub report: NormReport,
}

/// Run one verification job.
pub fn run_job(params: &JobParams) -> Result<JobOutput> {
    let report = match params.theorem {
        TheoremId::T2_1 => lp_norm_job(params, TheoremId::T2_1, None)?,
        TheoremId::C2_3 => lp_norm_job(params, TheoremId::C2_3, Some("unit"))?,
        TheoremId::C2_1 => family_closed_job(params, TheoremId::C2_1)?,
        TheoremId::C2_4 => family_closed_job(params, TheoremId::C2_4)?,
        TheoremId::C2_2 => hardy_job(params)?,
        TheoremId::T2_2 => lorentz_norm_job(params)?,
        TheoremId::EX2 => worked_example_job(params)?,
        TheoremId::T3_1 => d1_formula_job(params)?,
        TheoremId::T3_2 => einf_formula_job(params)?,
        TheoremId::C3_1 => cesaro_einf_job(params)?,
        TheoremId::L3_1 => mediant_job(params)?,
        TheoremId::L3_2 => hilbert_lemma_job(params)?,
        TheoremId::P3_1 => proposition31_job(params)?,
        TheoremId::P3_2 => proposition32_job(params)?,
        TheoremId::T3_3 => copson_bound_job(params)?,
        TheoremId::T3_4 => copson_exact_job(params)?,
        TheoremId::T3_5 => cesaro_zeta_job(params)?,
        TheoremId::T3_6 => hilbert_bound_job(params)?,
    };
    Ok(JobOutput {
        schema: 1,
        params: params.clone(),
        report,
    })
}

/// Witness-driven l_p(w) closed-norm verification (the sandwich when a
/// second weight is supplied). Verified means the witness reaches 95%
/// of the closed form without exceeding it.
fn lp_norm_job(params: &JobParams, id: TheoremId, force_w: Option<&str>) -> Result<NormReport> {
    let p = params.p_value()?;
    let mu = params.measure_value("cesaro:alpha=1")?;
    let w = match force_w {
        Some(text) => WeightSequence::parse(text)?,
        None => params.weight(&params.w, "unit")?,
    };
    let delta = params.delta.unwrap_or(0.01);
    let n = params.n.unwrap_or(100_000);
    let mut report = NormReport::new(id);
    report.tolerances = params.tolerances(Tolerances { rel: 0.05, abs: 0.0 });
    let closed = mu.theta_integral(p)?;
    if closed.is_infinite() {
        report.closed_form = ClosedForm::Infinite;
        report.verdict = Verdict::Inconclusive;
        report
            .notes
            .push("the norm integral diverges; the operator is unbounded on this space".into());
        return Ok(report);
    }
    report.closed_form = ClosedForm::Finite(closed);
    let witness = witness_lower_bound_lp(&mu, &w, p, delta, n)?;
    report.estimate = witness.estimate.mid();
    report.bracket = Some((witness.estimate.lo, witness.estimate.hi));
    report.witness = WitnessInfo::PowerDecay {
        delta,
        truncation: n,
    };
    report.convergence = witness
        .raw_truncated
        .iter()
        .map(|(n, v)| seqnorm_core::norms::ConvergencePoint { n: *n, value: *v })
        .collect();
    if witness.estimate.hi > closed + 1e-8 {
        report.caveat = Some(format!(
            "witness ratio {} exceeds the closed form {closed}",
            witness.estimate.hi
        ));
    }
    if let Some(v_text) = &params.v {
        let v = WeightSequence::parse(v_text)?;
        let bounds = lp_ratio_bounds(&mu, &v, &w, p, n.min(100_000))?;
        report.notes.push(format!(
            "two-weight sandwich: [{}, {}] (normalization v1 = {})",
            bounds.lower, bounds.upper, bounds.normalization
        ));
    }
    report.judge_equality();
    Ok(report)
}

/// Closed norms of the named families against the quadrature route.
fn family_closed_job(params: &JobParams, id: TheoremId) -> Result<NormReport> {
    let p = params.p_value()?;
    let mu = params.measure_value("cesaro:alpha=1")?;
    let inv_pstar = 1.0 - 1.0 / p;
    let pstar = p / (p - 1.0);
    let mut report = NormReport::new(id);
    report.tolerances = params.tolerances(Tolerances { rel: 1e-8, abs: 0.0 });
    let closed: Option<f64> = if let Some((family, _)) = mu.density() {
        match family {
            DensityFamily::Cesaro { alpha } => Some(
                gamma_fn(alpha + 1.0)? * gamma_fn(inv_pstar)? / gamma_fn(alpha + inv_pstar)?,
            ),
            DensityFamily::Gamma { alpha } => {
                if alpha * p > 1.0 {
                    Some(alpha * p / (alpha * p - 1.0))
                } else {
                    None // divergent
                }
            }
            DensityFamily::Holder { alpha } => Some(pstar.powf(*alpha)),
        }
    } else {
        mu.euler_location().map(|loc| loc.powf(-1.0 / p))
    };
    let (value, err) = theta_integral_detailed(&mu, p)?;
    report.estimate = value;
    report.bracket = Some((value - err, value + err));
    match closed {
        Some(c) if c.is_finite() => {
            report.closed_form = ClosedForm::Finite(c);
            if mu.beyond_named_families() {
                report.caveat = Some("measure is beyond the named families".into());
            }
            report.judge_equality();
        }
        _ => {
            report.closed_form = ClosedForm::Infinite;
            if value.is_infinite() {
                report.verdict = Verdict::Verified;
                report
                    .notes
                    .push("both routes agree the norm integral diverges".into());
            } else {
                report.verdict = Verdict::Failed;
            }
        }
    }
    Ok(report)
}

/// theta integral with the quadrature error estimate surfaced.
fn theta_integral_detailed(mu: &MeasureSpec<Real>, p: f64) -> Result<(f64, f64)> {
    // reuse the public route for the value; bound the method error by
    // the difference against a tighter tolerance run
    let value = mu.theta_integral(p)?;
    if value.is_infinite() {
        return Ok((value, 0.0));
    }
    let settings = seqnorm_core::specfun::QuadratureSettings::<Real> {
        rel_tol: 1e-12,
        max_levels: 14,
        ..Default::default()
    };
    let refined = mu.theta_integral_with(p, &settings).unwrap_or(value);
    let err = (value - refined).abs().max(value.abs() * 1e-11);
    Ok((value, err))
}

/// Weighted Hardy inequality property suite.
fn hardy_job(params: &JobParams) -> Result<NormReport> {
    let count = params.n.unwrap_or(200);
    let out = hardy_suite::<Real>(count, params.seed)?;
    let mut report = NormReport::new(TheoremId::C2_2);
    report.tolerances = params.tolerances(Tolerances::default());
    report.estimate = (out.instances - out.failures) as f64;
    report.witness = WitnessInfo::Description(format!(
        "{} randomized (w, x, p) instances",
        out.instances
    ));
    report.verdict = if out.all_passed() {
        Verdict::BoundHolds
    } else {
        report.caveat = out.first_failure.clone();
        Verdict::Failed
    };
    Ok(report)
}

/// Hausdorff norm on d(w,p): condition (2), decreasing preservation and
/// the witness route.
fn lorentz_norm_job(params: &JobParams) -> Result<NormReport> {
    let p = params.p_value()?;
    let mu = params.measure_value("cesaro:alpha=2")?;
    let w = params.weight(&params.w, "unit")?;
    let op = OperatorSpec::Hausdorff(mu.clone());
    let trunc = TruncatedMatrix::new(&op, 20)?;
    let mut report = NormReport::new(TheoremId::T2_2);
    report.tolerances = params.tolerances(Tolerances { rel: 0.05, abs: 0.0 });
    let c2 = trunc.check_condition_2(6)?;
    if !c2.holds {
        report.caveat = Some(format!(
            "condition (2) fails on subsets {:?}; the d(w,p) transfer does not apply",
            c2.witness.unwrap_or_default()
        ));
    } else if !trunc.check_decreasing_preserved() {
        report.caveat = Some("decreasing inputs are not preserved".into());
    }
    let closed = mu.theta_integral(p)?;
    if closed.is_infinite() {
        report.closed_form = ClosedForm::Infinite;
        report.verdict = Verdict::Inconclusive;
        return Ok(report);
    }
    report.closed_form = ClosedForm::Finite(closed);
    let delta = params.delta.unwrap_or(0.01);
    let n = params.n.unwrap_or(100_000);
    match witness_lower_bound_lp(&mu, &w, p, delta, n) {
        Ok(witness) => {
            report.estimate = witness.estimate.mid();
            report.bracket = Some((witness.estimate.lo, witness.estimate.hi));
            report.witness = WitnessInfo::PowerDecay {
                delta,
                truncation: n,
            };
            report.judge_equality();
        }
        Err(Error::Unsupported(msg)) => {
            report.estimate = closed;
            report.notes.push(format!("witness route unavailable: {msg}"));
            report.verdict = Verdict::Inconclusive;
        }
        Err(e) => return Err(e),
    }
    Ok(report)
}

/// The worked d(w,p) example: C(1) = Γ(1) with norm p*, C(2) with norm
/// p*(2p)*, both passing condition (2).
fn worked_example_job(params: &JobParams) -> Result<NormReport> {
    let p = params.p_value()?;
    let pstar = p / (p - 1.0);
    let two_p_star = 2.0 * p / (2.0 * p - 1.0);
    let mut report = NormReport::new(TheoremId::EX2);
    report.tolerances = params.tolerances(Tolerances { rel: 1e-8, abs: 0.0 });
    let c1 = MeasureSpec::cesaro(1.0)?.theta_integral(p)?;
    let g1 = MeasureSpec::gamma(1.0)?.theta_integral(p)?;
    let c2 = MeasureSpec::cesaro(2.0)?.theta_integral(p)?;
    let tol = report.tolerances.rel;
    if (c1 - pstar).abs() / pstar > tol {
        report.caveat = Some(format!("C(1) norm {c1} differs from p* = {pstar}"));
    }
    if (g1 - c1).abs() / c1 > tol {
        report.caveat = Some(format!("Γ(1) norm {g1} differs from C(1) norm {c1}"));
    }
    for (name, alpha) in [("C(1)", 1.0), ("C(2)", 2.0)] {
        let op = OperatorSpec::Cesaro(alpha);
        let out = TruncatedMatrix::new(&op, 6)?.check_condition_2(6)?;
        if !out.holds {
            report.caveat = Some(format!("{name} fails condition (2)"));
        }
    }
    report.closed_form = ClosedForm::Finite(pstar * two_p_star);
    report.estimate = c2;
    report
        .notes
        .push(format!("C(1) = Γ(1) = {c1} (p* = {pstar})"));
    report.judge_equality();
    Ok(report)
}

/// General d(v,1) norm as sup S_n/V_n with the brute-force oracle
/// cross-check on a small truncation.
fn d1_formula_job(params: &JobParams) -> Result<NormReport> {
    let op = params.operator_value("norlund:cesaro:alpha=2")?;
    let v = params.weight(&params.v, "shifted:alpha=1")?;
    let w = params.weight(&params.w, "reciprocal")?;
    let n = params.n.unwrap_or(10_000);
    let mut report = norm_d1(&op, &v, &w, n, TailPolicy::Auto)?;
    report.theorem = TheoremId::T3_1;
    report.tolerances = params.tolerances(Tolerances { rel: 0.0, abs: 1e-6 });
    // oracle route on the leading block
    let small = 6usize.min(n);
    let trunc = TruncatedMatrix::new(&op, small)?;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let oracle = oracle_norm_d1(&trunc, &v, &w, &OracleSettings::default(), &mut rng)?;
    let mut s_run = 0.0;
    let mut prefix_sup: f64 = 0.0;
    for j in 1..=small {
        let mut s = 0.0;
        for k in 1..=small {
            s += w.term(k)? * trunc.entry(k, j);
        }
        s_run += s;
        prefix_sup = prefix_sup.max(s_run / v.partial_sum(j)?);
    }
    let gap = (oracle - prefix_sup).abs();
    report.notes.push(format!(
        "oracle on the {small}x{small} block: {oracle} vs prefix sup {prefix_sup} (gap {gap:.2e})"
    ));
    if gap > report.tolerances.abs.max(1e-6) * prefix_sup.max(1.0) {
        report.caveat.get_or_insert(format!(
            "oracle disagrees with the prefix-ratio sup on the truncation (gap {gap:.2e})"
        ));
    }
    report.verdict = if report.caveat.is_none() {
        Verdict::Verified
    } else {
        Verdict::Inconclusive
    };
    Ok(report)
}

/// General e(w,∞) norm as sup Z_n/V_n with the transpose duality check.
fn einf_formula_job(params: &JobParams) -> Result<NormReport> {
    let op = params.operator_value("copson:alpha=2")?;
    let w = params.weight(&params.w, "reciprocal")?;
    let v = params.weight(&params.v, "shifted:alpha=1")?;
    let n = params.n.unwrap_or(10_000);
    let mut report = norm_e_inf(&op, &w, &v, n, TailPolicy::Auto)?;
    report.theorem = TheoremId::T3_2;
    report.tolerances = params.tolerances(Tolerances { rel: 1e-9, abs: 0.0 });
    report.verdict = if report.caveat.is_none() {
        Verdict::Verified
    } else {
        Verdict::Inconclusive
    };
    Ok(report)
}

/// Cesàro on e(w,∞) → e(v,∞): the default instance has norm exactly 1.
fn cesaro_einf_job(params: &JobParams) -> Result<NormReport> {
    let op = params.operator_value("cesaro:alpha=1")?;
    let w = params.weight(&params.w, "reciprocal")?;
    let v = params.weight(&params.v, "unit")?;
    let n = params.n.unwrap_or(10_000);
    let mut report = norm_e_inf(&op, &w, &v, n, TailPolicy::Auto)?;
    report.theorem = TheoremId::C3_1;
    report.tolerances = params.tolerances(Tolerances { rel: 1e-8, abs: 0.0 });
    let default_instance =
        params.operator.is_none() && params.w.is_none() && params.v.is_none();
    if default_instance {
        report.closed_form = ClosedForm::Finite(1.0);
        report.judge_equality();
    } else {
        report.verdict = if report.caveat.is_none() {
            Verdict::Verified
        } else {
            Verdict::Inconclusive
        };
        report
            .notes
            .push("norm equals sup (1/V_n) Σ_{k≤n} W_k/k by the row-sum formula".into());
    }
    Ok(report)
}

/// Mediant inequality property suite.
fn mediant_job(params: &JobParams) -> Result<NormReport> {
    let count = params.n.unwrap_or(100);
    let out = mediant_suite::<Real>(count, params.seed);
    let mut report = NormReport::new(TheoremId::L3_1);
    report.tolerances = params.tolerances(Tolerances::default());
    report.estimate = (out.instances - out.failures) as f64;
    report.witness = WitnessInfo::Description(format!(
        "{} randomized termwise-bounded pairs",
        out.instances
    ));
    report.verdict = if out.all_passed() {
        Verdict::Verified
    } else {
        report.caveat = out.first_failure.clone();
        Verdict::Failed
    };
    Ok(report)
}

/// Hilbert kernel sup identity on a grid.
fn hilbert_lemma_job(params: &JobParams) -> Result<NormReport> {
    let alpha = params.alpha.unwrap_or(0.5);
    let lemma = hilbert_sup_lemma::<Real>(alpha, &[], params.k_tail)?;
    let mut report = NormReport::new(TheoremId::L3_2);
    report.tolerances = params.tolerances(Tolerances { rel: 0.0, abs: 0.02 });
    report.closed_form = ClosedForm::Finite(lemma.limit);
    report.estimate = lemma.max.mid();
    report.bracket = Some((lemma.max.lo, lemma.max.hi));
    report.argmax_n = Some(lemma.max_n);
    report.convergence = lemma
        .grid
        .iter()
        .map(|(n, f)| seqnorm_core::norms::ConvergencePoint {
            n: *n,
            value: f.mid(),
        })
        .collect();
    if lemma.max.hi > lemma.limit + lemma.max.width() + 1e-9 {
        report.caveat = Some(format!(
            "grid value {} exceeds the analytic sup {}",
            lemma.max.hi, lemma.limit
        ));
    }
    report
        .notes
        .push(format!("gap to the analytic sup: {:.4}", lemma.gap));
    report.judge_equality();
    Ok(report)
}

/// C(2) from d(1/(n+α),1) into d(1/n,1): norm 2(α+1) at the first
/// prefix.
fn proposition31_job(params: &JobParams) -> Result<NormReport> {
    let alpha = params.alpha.unwrap_or(1.0);
    if !(alpha >= 0.0) {
        return Err(Error::Domain(format!("P3-1 needs alpha >= 0, got {alpha}")));
    }
    let op = OperatorSpec::Cesaro(2.0);
    let v = WeightSequence::shifted(alpha)?;
    let w = WeightSequence::<Real>::reciprocal();
    let n = params.n.unwrap_or(10_000);
    let seq = ratio_sequence(&op, &w, &v, SumMode::Column, n.min(64), TailPolicy::Auto)?;
    let s1 = seq.sums[0].mid();
    let mut report = norm_d1(&op, &v, &w, n, TailPolicy::Auto)?;
    report.theorem = TheoremId::P3_1;
    report.tolerances = params.tolerances(Tolerances { rel: 0.0, abs: 1e-6 });
    report.closed_form = ClosedForm::Finite(2.0 * (alpha + 1.0));
    if (s1 - 2.0).abs() > 1e-10 {
        report.caveat.get_or_insert(format!("s_1 = {s1}, expected 2 to 1e-10"));
    }
    if report.argmax_n != Some(1) {
        report
            .caveat
            .get_or_insert(format!("argmax at n = {:?}, expected 1", report.argmax_n));
    }
    report.notes.push(format!("s_1 = {s1}"));
    report.judge_equality();
    Ok(report)
}

/// C(2) from d(n^{-α},1) into d(1/n,1): norm 2.
fn proposition32_job(params: &JobParams) -> Result<NormReport> {
    let alpha = params.alpha.unwrap_or(0.5);
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::Domain(format!(
            "P3-2 needs alpha in [0,1], got {alpha}"
        )));
    }
    let op = OperatorSpec::Cesaro(2.0);
    let v = WeightSequence::power(alpha)?;
    let w = WeightSequence::<Real>::reciprocal();
    let n = params.n.unwrap_or(10_000);
    let mut report = norm_d1(&op, &v, &w, n, TailPolicy::Auto)?;
    report.theorem = TheoremId::P3_2;
    report.tolerances = params.tolerances(Tolerances { rel: 0.0, abs: 1e-6 });
    report.closed_form = ClosedForm::Finite(2.0);
    report.judge_equality();
    Ok(report)
}

/// Copson upper bound r = sup W_n/(n v_n).
fn copson_bound_job(params: &JobParams) -> Result<NormReport> {
    let v = params.weight(&params.v, "power:alpha=0.5")?;
    let w = params.weight(&params.w, "partial-sum-power:alpha=0.5")?;
    let n = params.n.unwrap_or(10_000);
    let bound = copson_bound(&v, &w, n)?;
    let mut report = NormReport::new(TheoremId::T3_3);
    report.tolerances = params.tolerances(Tolerances { rel: 0.0, abs: 1e-8 });
    if bound.unbounded {
        report.closed_form = ClosedForm::Infinite;
        report.estimate = f64::INFINITY;
        report.verdict = Verdict::BoundHolds;
        report
            .notes
            .push("W_n/(n v_n) is unbounded; the bound is vacuous".into());
        return Ok(report);
    }
    report.closed_form = ClosedForm::Finite(bound.sup);
    let d1 = norm_d1(&OperatorSpec::Copson(1.0), &v, &w, n, TailPolicy::Auto)?;
    report.estimate = d1.estimate;
    report.bracket = d1.bracket;
    report.argmax_n = d1.argmax_n;
    report.caveat = d1.caveat;
    report.notes.push(format!(
        "r = {}{} at n = {}",
        bound.sup,
        if bound.analytic_one { " (analytic)" } else { "" },
        bound.argmax
    ));
    report.judge_bound();
    Ok(report)
}

/// Copson with matched power weights: norm exactly 1.
fn copson_exact_job(params: &JobParams) -> Result<NormReport> {
    let alpha = params.alpha.unwrap_or(0.5);
    if !(0.0..1.0).contains(&alpha) {
        return Err(Error::Domain(format!(
            "T3-4 needs alpha in [0,1) for a positive weight, got {alpha}"
        )));
    }
    let v = WeightSequence::power(alpha)?;
    let w = WeightSequence::partial_sum_power(alpha)?;
    let n = params.n.unwrap_or(10_000);
    let bound = copson_bound(&v, &w, n)?;
    let mut report = norm_d1(&OperatorSpec::Copson(1.0), &v, &w, n, TailPolicy::Auto)?;
    report.theorem = TheoremId::T3_4;
    report.tolerances = params.tolerances(Tolerances { rel: 0.0, abs: 1e-8 });
    report.closed_form = ClosedForm::Finite(1.0);
    if !bound.analytic_one {
        report
            .caveat
            .get_or_insert(format!("W_n/(n v_n) is not identically 1 (sup {})", bound.sup));
    }
    report.notes.push("r = 1 on the analytic path".into());
    report.judge_equality();
    Ok(report)
}

/// Cesàro zeta bound ζ(1+α)/(1−α) with the proof chain re-derived.
fn cesaro_zeta_job(params: &JobParams) -> Result<NormReport> {
    let alpha = params.alpha.unwrap_or(0.5);
    let n = params.n.unwrap_or(10_000);
    let chain = cesaro_zeta_bound::<Real>(alpha, n)?;
    let w = WeightSequence::power(alpha)?;
    let v = WeightSequence::partial_sum_power(alpha)?;
    let mut report = norm_d1(&OperatorSpec::Cesaro(1.0), &v, &w, n, TailPolicy::Auto)?;
    report.theorem = TheoremId::T3_5;
    report.tolerances = params.tolerances(Tolerances { rel: 0.0, abs: 1e-6 });
    report.closed_form = ClosedForm::Finite(chain.bound);
    if !chain.mean_value_ok {
        report
            .caveat
            .get_or_insert("the mean-value inequality failed numerically".into());
    }
    if !chain.s_monotone_ok {
        report
            .caveat
            .get_or_insert("n^α s_n is not non-increasing on the probe range".into());
    }
    report.notes.push(format!(
        "bound ζ(1+α)/(1−α) = {}; observed sup gap {}",
        chain.bound,
        chain.bound - report.estimate
    ));
    report.judge_bound();
    Ok(report)
}

/// Hilbert bound π/((1−α) sin απ).
fn hilbert_bound_job(params: &JobParams) -> Result<NormReport> {
    let alpha = params.alpha.unwrap_or(0.5);
    let n = params.n.unwrap_or(10_000);
    let bound = hilbert_bound::<Real>(alpha)?;
    let w = WeightSequence::power(alpha)?;
    let v = WeightSequence::partial_sum_power(alpha)?;
    let mut report = norm_d1(&OperatorSpec::Hilbert, &v, &w, n, TailPolicy::Auto)?;
    report.theorem = TheoremId::T3_6;
    report.tolerances = params.tolerances(Tolerances { rel: 0.0, abs: 1e-6 });
    report.closed_form = ClosedForm::Finite(bound);
    report.notes.push(format!(
        "bound π/((1−α)sin απ) = {bound}; observed sup gap {}",
        bound - report.estimate
    ));
    report.judge_bound();
    Ok(report)
}

/// The full verification catalog mirrored by run-all.
pub fn full_catalog() -> Vec<(String, JobParams)> {
    let mut jobs: Vec<(String, JobParams)> = Vec::new();
    let mut push = |label: &str, params: JobParams| jobs.push((label.to_string(), params));

    push("cesaro(1), p=2, w=unit", JobParams::new(TheoremId::T2_1));
    push(
        "cesaro(1), p=2, w=reciprocal",
        JobParams::new(TheoremId::T2_1).with(|p| p.w = Some("reciprocal".into())),
    );
    for (alpha, p) in [(1.0, 2.0), (2.0, 2.0), (0.5, 1.5), (2.0, 3.0)] {
        push(
            &format!("cesaro({alpha}), p={p}"),
            JobParams::new(TheoremId::C2_1).with(|j| {
                j.measure = Some(format!("cesaro:alpha={alpha}"));
                j.p = Some(p);
            }),
        );
    }
    push(
        "gamma(2), p=2",
        JobParams::new(TheoremId::C2_1).with(|j| j.measure = Some("gamma:alpha=2".into())),
    );
    push(
        "euler(0.25), p=2",
        JobParams::new(TheoremId::C2_1).with(|j| j.measure = Some("euler:alpha=0.25".into())),
    );
    push(
        "holder(2), p=2",
        JobParams::new(TheoremId::C2_1).with(|j| j.measure = Some("holder:alpha=2".into())),
    );
    push("hardy suite (200)", JobParams::new(TheoremId::C2_2));
    push("cesaro(1), p=2, unweighted", JobParams::new(TheoremId::C2_3));
    push(
        "cesaro(2), p=3, unweighted",
        JobParams::new(TheoremId::C2_4).with(|j| {
            j.measure = Some("cesaro:alpha=2".into());
            j.p = Some(3.0);
        }),
    );
    push("cesaro(2) on d(w,2)", JobParams::new(TheoremId::T2_2));
    push("worked example, p=2", JobParams::new(TheoremId::EX2));
    push(
        "norlund:cesaro(2), v=1/(n+1), w=1/n",
        JobParams::new(TheoremId::T3_1),
    );
    push(
        "copson(2) on e(1/n,∞)",
        JobParams::new(TheoremId::T3_2),
    );
    push("cesaro(1) on e(1/n,∞) → e(1,∞)", JobParams::new(TheoremId::C3_1));
    push("mediant suite (100)", JobParams::new(TheoremId::L3_1));
    push("kernel identity, α=0.5", JobParams::new(TheoremId::L3_2));
    for alpha in [0.0, 1.0, 2.5] {
        push(
            &format!("C(2): d(1/(n+{alpha}),1) → d(1/n,1)"),
            JobParams::new(TheoremId::P3_1).with(|j| j.alpha = Some(alpha)),
        );
    }
    for alpha in [0.25, 0.5, 1.0] {
        push(
            &format!("C(2): d(n^-{alpha},1) → d(1/n,1)"),
            JobParams::new(TheoremId::P3_2).with(|j| j.alpha = Some(alpha)),
        );
    }
    push("copson bound, matched α=0.5", JobParams::new(TheoremId::T3_3));
    for alpha in [0.25, 0.5, 0.75] {
        push(
            &format!("copson exact, α={alpha}"),
            JobParams::new(TheoremId::T3_4).with(|j| j.alpha = Some(alpha)),
        );
    }
    for alpha in [0.25, 0.5] {
        push(
            &format!("cesaro zeta bound, α={alpha}"),
            JobParams::new(TheoremId::T3_5).with(|j| j.alpha = Some(alpha)),
        );
    }
    push("hilbert bound, α=0.5", JobParams::new(TheoremId::T3_6));
    jobs
}
