//! Extremal witness sequences for the l_p(w) norm, and the weighted
//! Hardy inequality check.
//!
//! The witness x_n = n^{-1/p-δ} approaches the closed-form norm as
//! δ → 0. Its Rayleigh ratio ‖Hx‖_{w,p}/‖x‖_{w,p} is evaluated by
//! direct summation to the truncation point plus explicit tail
//! control: the norm tails are completed with Euler–Maclaurin smooth
//! prefixes and a certified midpoint integral, so the reported value
//! estimates the ratio of the *infinite* witness, not of its cut-off.

use crate::error::{Error, Result};
use crate::measures::{DensityFamily, MeasureSpec};
use crate::norms::inner::{tail_power_sum, Bracket};
use crate::scalar::Scalar;
use crate::spaces::{FiniteSequence, WeightRule, WeightSequence};
use crate::specfun::{integrate01, QuadratureSettings};

/// Operators with a prefix-sum fast path for the witness ratio.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum WitnessOp {
    Identity,
    CesaroOne,
    CesaroTwo,
    GammaTwo,
}

fn witness_op<T: Scalar>(mu: &MeasureSpec<T>) -> Result<WitnessOp> {
    if mu.euler_location() == Some(T::one()) {
        return Ok(WitnessOp::Identity);
    }
    if let Some(alpha) = mu.pure_density_order(|alpha| DensityFamily::Cesaro { alpha }) {
        if alpha == T::one() {
            return Ok(WitnessOp::CesaroOne);
        }
        if alpha == T::of(2.0) {
            return Ok(WitnessOp::CesaroTwo);
        }
    }
    if let Some(alpha) = mu.pure_density_order(|alpha| DensityFamily::Gamma { alpha }) {
        if alpha == T::of(2.0) {
            return Ok(WitnessOp::GammaTwo);
        }
    }
    Err(Error::unsupported(
        "witness evaluation supports the identity (point mass at 1), Cesàro orders 1 and 2, \
         and the Gamma order-2 measure"
            .to_string(),
    ))
}

/// Euler–Maclaurin smooth continuation of the prefix sum Σ_{m≤x} m^r.
#[derive(Debug, Clone, Copy)]
struct PowerPrefix<T> {
    r: T,
    constant: T,
}

impl<T: Scalar> PowerPrefix<T> {
    /// Anchor the constant with a direct sum at n₀.
    fn new(r: T, anchor: usize) -> Self {
        let mut direct = T::zero();
        for m in 1..=anchor {
            direct = direct + T::of_usize(m).powf(r);
        }
        let constant = direct - Self::smooth_raw(r, T::of_usize(anchor));
        PowerPrefix { r, constant }
    }

    fn smooth_raw(r: T, x: T) -> T {
        let r1 = r - T::one();
        let r2 = r - T::of(2.0);
        let r3 = r - T::of(3.0);
        let r4 = r - T::of(4.0);
        x.powf(r + T::one()) / (r + T::one()) + x.powf(r) * T::of(0.5)
            + r * x.powf(r1) / T::of(12.0)
            - r * r1 * r2 * x.powf(r - T::of(3.0)) / T::of(720.0)
            + r * r1 * r2 * r3 * r4 * x.powf(r - T::of(5.0)) / T::of(30240.0)
    }

    /// x^{r-? } scaled view: x^{-(r+1)}·P(x), evaluated from ln x so it
    /// stays finite for astronomically large x (negative powers only).
    fn scaled_from_ln(&self, ln_x: T) -> T {
        let e = |c: T| (c * ln_x).exp();
        let r = self.r;
        let r1 = r - T::one();
        let r2 = r - T::of(2.0);
        let r3 = r - T::of(3.0);
        let r4 = r - T::of(4.0);
        self.constant * e(-(r + T::one()))
            + (r + T::one()).recip()
            + e(-T::one()) * T::of(0.5)
            + r * e(-T::of(2.0)) / T::of(12.0)
            - r * r1 * r2 * e(-T::of(4.0)) / T::of(720.0)
            + r * r1 * r2 * r3 * r4 * e(-T::of(6.0)) / T::of(30240.0)
    }
}

/// Witness ratio report.
#[derive(Debug, Clone)]
pub struct WitnessReport<T> {
    /// tail-corrected ‖Hx‖_{w,p}/‖x‖_{w,p} with its certification pad
    pub estimate: Bracket<T>,
    /// raw cut-off ratios at quarter, half and full truncation — these
    /// climb toward the estimate as the truncation grows
    pub raw_truncated: Vec<(usize, T)>,
    pub delta: T,
    pub truncation: usize,
}

/// Rayleigh ratio of the witness x_n = n^{-1/p-δ} under the Hausdorff
/// operator of `mu` on l_p(w), with explicit tail control past the
/// truncation. Requires 0 < δ < 1/p and an exact power weight.
pub fn witness_lower_bound_lp<T: Scalar>(
    mu: &MeasureSpec<T>,
    w: &WeightSequence<T>,
    p: T,
    delta: T,
    truncation: usize,
) -> Result<WitnessReport<T>> {
    if !(p > T::one()) {
        return Err(Error::domain(format!("witness needs p > 1, got {p}")));
    }
    if !(delta > T::zero() && delta < p.recip()) {
        return Err(Error::domain(format!(
            "witness needs 0 < delta < 1/p, got delta = {delta}"
        )));
    }
    if truncation < 64 {
        return Err(Error::domain("witness truncation must be at least 64"));
    }
    let op = witness_op(mu)?;
    if op == WitnessOp::Identity {
        return Ok(WitnessReport {
            estimate: Bracket::point(T::one()),
            raw_truncated: vec![(truncation, T::one())],
            delta,
            truncation,
        });
    }
    let beta = match w.rule() {
        WeightRule::Unit => T::zero(),
        WeightRule::Reciprocal => T::one(),
        WeightRule::Power { alpha } => *alpha,
        _ => {
            return Err(Error::unsupported(
                "witness evaluation needs an exact power weight".to_string(),
            ))
        }
    };
    let s = p.recip() + delta;
    let n = truncation;

    // direct pass: x, the transformed sequence, both norm sums
    let mut prefix_x = T::zero(); // Σ m^{-s}
    let mut prefix_mx = T::zero(); // Σ m·m^{-s}
    let mut num_part = T::zero();
    let mut den_part = T::zero();
    let mut raw = Vec::with_capacity(3);
    let marks = [n / 4, n / 2, n];
    for m in 1..=n {
        let mm = T::of_usize(m);
        let x = mm.powf(-s);
        prefix_x = prefix_x + x;
        prefix_mx = prefix_mx + mm * x;
        let hx = match op {
            WitnessOp::CesaroOne => prefix_x / mm,
            WitnessOp::GammaTwo => T::of(2.0) * prefix_mx / (mm * (mm + T::one())),
            WitnessOp::CesaroTwo => {
                T::of(2.0) * ((mm + T::one()) * prefix_x - prefix_mx) / (mm * (mm + T::one()))
            }
            WitnessOp::Identity => unreachable!(),
        };
        let wm = mm.powf(-beta);
        num_part = num_part + wm * hx.powf(p);
        den_part = den_part + wm * x.powf(p);
        if marks.contains(&m) {
            raw.push((m, (num_part / den_part).powf(p.recip())));
        }
    }

    // tails: ‖x‖ part is a pure power sum; ‖Hx‖ needs the smooth prefix
    let den_tail = tail_power_sum(beta + s * p, n);
    let px = PowerPrefix::new(-s, n.min(400));
    let pmx = PowerPrefix::new(T::one() - s, n.min(400));
    let psi = move |ln_x: T| -> T {
        // ψ(x) = x^s · (Hx)(x), all pieces scaled to stay finite
        let inv_x = (-ln_x).exp();
        let x_pow_p = px.scaled_from_ln(ln_x); // x^{s-1} P(x)
        match op {
            WitnessOp::CesaroOne => x_pow_p,
            WitnessOp::GammaTwo => {
                let x_pow_q = pmx.scaled_from_ln(ln_x); // x^{s-2} Q(x)
                T::of(2.0) * x_pow_q / (T::one() + inv_x)
            }
            WitnessOp::CesaroTwo => {
                let x_pow_q = pmx.scaled_from_ln(ln_x);
                T::of(2.0) * x_pow_p - T::of(2.0) * x_pow_q / (T::one() + inv_x)
            }
            WitnessOp::Identity => unreachable!(),
        }
    };
    // ∫_X^∞ x^{-(1+ε)} ψ(x)^p dx, ε = β + δp, via x = X t^{-m_sub}
    let eps = beta + delta * p;
    let x_cut = T::of_usize(n) + T::of(0.5);
    let ln_x_cut = x_cut.ln();
    let m_sub = (2.0 / eps.as_f64()).ceil().clamp(1.0, 256.0);
    let m_sub_t = T::of(m_sub);
    let settings = QuadratureSettings {
        rel_tol: T::of(1e-9),
        max_levels: 12,
        endpoint_exponents: (m_sub_t * eps - T::one(), T::zero()),
    };
    let integrand = move |pt: crate::specfun::SplitPoint<T>| -> T {
        let t = pt.theta;
        let ln_x = ln_x_cut - m_sub_t * t.ln();
        m_sub_t * (-eps * ln_x_cut).exp() * t.powf(m_sub_t * eps - T::one()) * psi(ln_x).powf(p)
    };
    let est = integrate01(integrand, &settings)?;
    let num_tail = est.value;
    // midpoint-rule pad: finite-difference slope of g at the cut
    let g_at = |x: T| -> T { x.powf(-(T::one() + eps)) * psi(x.ln()).powf(p) };
    let pad = (g_at(x_cut) - g_at(x_cut + T::one())).abs() / T::of(12.0)
        + est.error_estimate.abs()
        + num_tail * T::of(1e-9);

    let num = Bracket::point(num_part + num_tail).pad(pad);
    let den = den_part + den_tail;
    let estimate = Bracket::new(
        (num.lo / den).powf(p.recip()),
        (num.hi / den).powf(p.recip()),
    );
    Ok(WitnessReport {
        estimate,
        raw_truncated: raw,
        delta,
        truncation: n,
    })
}

/// Outcome of one weighted Hardy inequality evaluation.
#[derive(Debug, Clone, Copy)]
pub struct HardyCheck<T> {
    /// Σ w_n ((1/n) Σ_{i≤n} x_i)^p including an upper tail bound
    pub lhs: T,
    /// (p*)^p Σ w_n x_n^p
    pub rhs: T,
    pub holds: bool,
}

/// Weighted Hardy inequality: Σ w_n ((1/n)Σ_{i≤n}x_i)^p ≤ (p*)^p Σ w_n x_n^p
/// for non-negative x and non-increasing w. The left side is evaluated
/// over ten times the support plus an integral-test tail bound, so a
/// `holds` answer is not an artifact of truncation.
pub fn hardy_inequality_check<T: Scalar>(
    w: &WeightSequence<T>,
    x: &FiniteSequence<T>,
    p: T,
) -> Result<HardyCheck<T>> {
    if !(p > T::one()) {
        return Err(Error::domain(format!("Hardy check needs p > 1, got {p}")));
    }
    if !w.is_nonincreasing() {
        return Err(Error::domain("Hardy check needs a non-increasing weight"));
    }
    if x.values().iter().any(|v| *v < T::zero()) {
        return Err(Error::domain("Hardy check needs non-negative x"));
    }
    let support = x.support_len();
    if support == 0 {
        return Ok(HardyCheck {
            lhs: T::zero(),
            rhs: T::zero(),
            holds: true,
        });
    }
    let pstar = p / (p - T::one());
    let horizon = (10 * support).min(w.len_limit().unwrap_or(usize::MAX));
    let mut lhs = T::zero();
    let mut rhs = T::zero();
    let mut xsum = T::zero();
    for i in 1..=horizon {
        let xi = x.get(i);
        xsum = xsum + xi;
        let mean = xsum / T::of_usize(i);
        lhs = lhs + w.term(i)? * mean.powf(p);
        if xi != T::zero() {
            rhs = rhs + w.term(i)? * xi.powf(p);
        }
    }
    // tail of the left side: means are X_S/n with w_n ≤ w_horizon
    let tail = w.term(horizon)? * xsum.powf(p) * tail_power_sum(p, horizon);
    lhs = lhs + tail;
    let rhs = pstar.powf(p) * rhs;
    let scale = lhs.abs().max(rhs.abs()).max(T::one());
    Ok(HardyCheck {
        lhs,
        rhs,
        holds: lhs <= rhs + scale * T::of(1e-12),
    })
}
