//! Closed-form norms and the named upper bounds.

use crate::error::{Error, Result};
use crate::matrices::OperatorSpec;
use crate::measures::MeasureSpec;
use crate::norms::inner::{tail_power_sum, Bracket, InnerSums, TailPolicy};
use crate::scalar::Scalar;
use crate::spaces::WeightSequence;
use crate::specfun::zeta_fn;

/// l_p(w) norm of the Hausdorff operator: ∫ θ^{-1/p} dμ.
///
/// The same value is the norm on unweighted l_p (unit weight), on
/// l_p(w) for every decreasing weight, and on d(w,p) under condition
/// (2); +∞ signals an unbounded operator.
pub fn closed_norm_lp<T: Scalar>(mu: &MeasureSpec<T>, p: T) -> Result<T> {
    mu.theta_integral(p)
}

/// Two-sided sandwich for the l_p(v) → l_p(w) norm.
#[derive(Debug, Clone, Copy)]
pub struct RatioBounds<T> {
    /// (inf w_n/v_n)^{1/p} ∫ θ^{-1/p} dμ
    pub lower: T,
    /// (sup w_n/v_n)^{1/p} ∫ θ^{-1/p} dμ; +∞ when the ratio is unbounded
    pub upper: T,
    /// the norm integral ∫ θ^{-1/p} dμ itself
    pub theta_integral: T,
    /// v was rescaled by 1/v₁ to meet the standing assumption v₁ = 1;
    /// this is the recorded v₁
    pub normalization: T,
    /// inf/sup include the analytic n → ∞ limit (false for explicit
    /// weights, where only the scan window is available)
    pub limits_analytic: bool,
}

/// Sandwich bounds for the Hausdorff operator from l_p(v) into l_p(w):
/// the weight ratio w_n/v_n is scanned over n ≤ n_scan and completed
/// with the analytic limit from the rules' power asymptotics.
pub fn lp_ratio_bounds<T: Scalar>(
    mu: &MeasureSpec<T>,
    v: &WeightSequence<T>,
    w: &WeightSequence<T>,
    p: T,
    n_scan: usize,
) -> Result<RatioBounds<T>> {
    if !v.is_nonincreasing() || !w.is_nonincreasing() {
        return Err(Error::domain("the sandwich needs non-increasing weights"));
    }
    if n_scan == 0 {
        return Err(Error::domain("ratio scan needs n_scan >= 1"));
    }
    let integral = mu.theta_integral(p)?;
    let v1 = v.term(1)?;
    let scan_cap = n_scan
        .min(v.len_limit().unwrap_or(usize::MAX))
        .min(w.len_limit().unwrap_or(usize::MAX));
    let mut inf_ratio = T::infinity();
    let mut sup_ratio = T::zero();
    for n in 1..=scan_cap {
        // ratio after normalizing v to v₁ = 1
        let r = w.term(n)? / (v.term(n)? / v1);
        inf_ratio = inf_ratio.min(r);
        sup_ratio = sup_ratio.max(r);
    }
    let mut limits_analytic = false;
    if let (Some(aw), Some(av)) = (w.power_asymptotics(), v.power_asymptotics()) {
        limits_analytic = true;
        let delta = aw.exponent - av.exponent;
        if delta < T::zero() {
            inf_ratio = T::zero();
        } else if delta > T::zero() {
            sup_ratio = T::infinity();
        } else {
            let limit = aw.coefficient / av.coefficient * v1;
            inf_ratio = inf_ratio.min(limit);
            sup_ratio = sup_ratio.max(limit);
        }
    }
    let inv_p = p.recip();
    Ok(RatioBounds {
        lower: inf_ratio.powf(inv_p) * integral,
        upper: if sup_ratio.is_infinite() {
            T::infinity()
        } else {
            sup_ratio.powf(inv_p) * integral
        },
        theta_integral: integral,
        normalization: v1,
        limits_analytic,
    })
}

/// The Copson bound r = sup_n W_n/(n v_n).
#[derive(Debug, Clone, Copy)]
pub struct CopsonBoundReport<T> {
    pub sup: T,
    pub argmax: usize,
    /// the matched power pair makes the ratio identically 1
    pub analytic_one: bool,
    /// the ratio grows without bound (sup is +∞)
    pub unbounded: bool,
}

/// r = sup_n W_n/(n v_n); the d(v,1) norm of the Copson operator is at
/// most r. Exactly 1 on the matched power pair v_n = n^{-α},
/// W_n = n^{1-α}; +∞ when the growth exponents force divergence.
pub fn copson_bound<T: Scalar>(
    v: &WeightSequence<T>,
    w: &WeightSequence<T>,
    n_max: usize,
) -> Result<CopsonBoundReport<T>> {
    if n_max == 0 {
        return Err(Error::domain("copson bound needs n_max >= 1"));
    }
    use crate::spaces::WeightRule;
    // analytic matched pair W_n/(n v_n) = 1
    let analytic_one = match (w.rule(), v.rule()) {
        (WeightRule::PartialSumPower { alpha: aw }, WeightRule::Power { alpha: av }) => aw == av,
        (WeightRule::Unit, WeightRule::Unit) => true,
        _ => false,
    };
    if analytic_one {
        return Ok(CopsonBoundReport {
            sup: T::one(),
            argmax: 1,
            analytic_one: true,
            unbounded: false,
        });
    }
    let scan_cap = n_max
        .min(v.len_limit().unwrap_or(usize::MAX))
        .min(w.len_limit().unwrap_or(usize::MAX));
    let mut sup = T::zero();
    let mut argmax = 1usize;
    for n in 1..=scan_cap {
        let r = w.partial_sum(n)? / (T::of_usize(n) * v.term(n)?);
        if r > sup {
            sup = r;
            argmax = n;
        }
    }
    let mut unbounded = false;
    if let (Some(aw), Some(av)) = (w.power_asymptotics(), v.power_asymptotics()) {
        // W_n grows like n^{1+e_w} (log for e_w = -1); n v_n like n^{1+e_v}
        let numer = if aw.exponent > -T::one() {
            T::one() + aw.exponent
        } else {
            T::zero() // logarithmic
        };
        let denom = T::one() + av.exponent;
        if numer > denom || (numer == denom && aw.exponent == -T::one()) {
            unbounded = true;
            sup = T::infinity();
        } else if numer == denom && aw.exponent > -T::one() {
            let limit = aw.coefficient / (T::one() + aw.exponent) / av.coefficient;
            sup = sup.max(limit);
        }
    }
    Ok(CopsonBoundReport {
        sup,
        argmax,
        analytic_one: false,
        unbounded,
    })
}

/// ζ(1+α)/(1−α) bound data for the Cesàro operator with power weights.
#[derive(Debug, Clone, Copy)]
pub struct CesaroZetaReport<T> {
    /// ζ(1+α)/(1−α)
    pub bound: T,
    /// (1−α)/n^α ≤ n^{1-α} − (n−1)^{1-α} held on the whole probe range
    pub mean_value_ok: bool,
    /// n^α s_n non-increasing on the probe range (s_n = Σ_{k≥n} k^{-1-α})
    pub s_monotone_ok: bool,
}

/// The ζ(1+α)/(1−α) upper bound for the Cesàro operator from
/// d(n^{1-α}−(n−1)^{1-α}, 1) into d(n^{-α}, 1), 0 < α < 1, together
/// with numeric re-derivations of the two proof steps.
pub fn cesaro_zeta_bound<T: Scalar>(alpha: T, n_probe: usize) -> Result<CesaroZetaReport<T>> {
    if !(alpha > T::zero() && alpha < T::one()) {
        return Err(Error::domain(format!(
            "the zeta bound needs 0 < alpha < 1 (singular at the endpoints), got {alpha}"
        )));
    }
    let bound = zeta_fn(T::one() + alpha)? / (T::one() - alpha);
    let mut mean_value_ok = true;
    let mut s_monotone_ok = true;
    let slack = T::of(1e-12);
    let mut prev = T::infinity();
    for n in 1..=n_probe.max(2) {
        let nn = T::of_usize(n);
        let lhs = (T::one() - alpha) * nn.powf(-alpha);
        let rhs = nn.powf(T::one() - alpha) - (nn - T::one()).powf(T::one() - alpha);
        if lhs > rhs + slack {
            mean_value_ok = false;
        }
        let fa = nn.powf(alpha) * tail_power_sum(T::one() + alpha, n - 1);
        if fa > prev + slack {
            s_monotone_ok = false;
        }
        prev = fa;
    }
    Ok(CesaroZetaReport {
        bound,
        mean_value_ok,
        s_monotone_ok,
    })
}

/// Grid evaluation of the Hilbert kernel sup identity.
#[derive(Debug, Clone)]
pub struct HilbertLemmaReport<T> {
    /// the analytic limit π/sin(απ)
    pub limit: T,
    /// (n, f_n) with f_n = n^α Σ_k 1/(k^α (k+n)), bracketed
    pub grid: Vec<(usize, Bracket<T>)>,
    /// largest grid value
    pub max: Bracket<T>,
    pub max_n: usize,
    /// limit − max (the sup is approached from below as n → ∞)
    pub gap: T,
}

/// sup_n n^α Σ_k 1/(k^α(k+n)) = π/sin(απ) for 0 < α < 1: evaluates
/// f_n on the grid (log-spaced up to 10⁴ when empty) with certified
/// tails and reports the gap to the analytic limit.
pub fn hilbert_sup_lemma<T: Scalar>(
    alpha: T,
    n_grid: &[usize],
    k_tail: Option<usize>,
) -> Result<HilbertLemmaReport<T>> {
    if !(alpha > T::zero() && alpha < T::one()) {
        return Err(Error::domain(format!(
            "the kernel identity needs 0 < alpha < 1 (sin απ vanishes at the endpoints), got {alpha}"
        )));
    }
    let default_grid: Vec<usize> = {
        let mut g = vec![1usize, 2, 3, 5, 8];
        let mut n = 10usize;
        while n <= 10_000 {
            g.push(n);
            g.push(n * 3);
            n *= 10;
        }
        g.retain(|x| *x <= 10_000);
        g.sort_unstable();
        g.dedup();
        g
    };
    let grid_source: &[usize] = if n_grid.is_empty() { &default_grid } else { n_grid };
    let w = if alpha == T::one() {
        WeightSequence::reciprocal()
    } else {
        WeightSequence::power(alpha)?
    };
    let policy = match k_tail {
        Some(k) => TailPolicy::TruncateAt(k),
        None => TailPolicy::Auto,
    };
    let mut inner = InnerSums::resolve(&OperatorSpec::Hilbert, &w, policy)?;
    let mut grid = Vec::with_capacity(grid_source.len());
    let mut max = Bracket::point(T::neg_infinity());
    let mut max_n = 0usize;
    for &n in grid_source {
        if n == 0 {
            return Err(Error::domain("grid indices start at 1"));
        }
        let s = inner.eval(n)?;
        let f = Bracket::new(
            T::of_usize(n).powf(alpha) * s.lo,
            T::of_usize(n).powf(alpha) * s.hi,
        );
        if f.mid() > max.mid() {
            max = f;
            max_n = n;
        }
        grid.push((n, f));
    }
    let pi = T::of(std::f64::consts::PI);
    let limit = pi / (alpha * pi).sin();
    Ok(HilbertLemmaReport {
        limit,
        gap: limit - max.mid(),
        grid,
        max,
        max_n,
    })
}

/// π/((1−α) sin απ): the d(v,1) bound for the Hilbert operator with
/// w_n = n^{-α}, V_n = n^{1-α}, 0 < α < 1.
pub fn hilbert_bound<T: Scalar>(alpha: T) -> Result<T> {
    if !(alpha > T::zero() && alpha < T::one()) {
        return Err(Error::domain(format!(
            "the Hilbert bound needs 0 < alpha < 1, got {alpha}"
        )));
    }
    let pi = T::of(std::f64::consts::PI);
    Ok(pi / ((T::one() - alpha) * (alpha * pi).sin()))
}
