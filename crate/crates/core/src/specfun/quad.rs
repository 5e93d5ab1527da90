//! Tanh-sinh (double-exponential) quadrature on (0,1).
//!
//! The transform θ = (1 + tanh((π/2)·sinh t))/2 pushes the evaluation
//! points double-exponentially close to the endpoints, which makes the
//! rule converge for integrands with integrable endpoint singularities.
//! Abscissas are handed to the integrand as a [`SplitPoint`] carrying
//! both θ and 1−θ at full precision, so densities like (1−θ)^{α-1}
//! lose nothing near θ = 1.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Hard cap on the tanh-sinh parameter; beyond this every f64 abscissa
/// has underflowed into an endpoint.
const T_MAX: f64 = 7.0;

/// Controls for [`integrate01`].
#[derive(Debug, Clone, Copy)]
pub struct QuadratureSettings<T> {
    /// Stop once successive refinements agree to this relative tolerance.
    pub rel_tol: T,
    /// Maximum number of step halvings.
    pub max_levels: u32,
    /// Declared integrable-singularity exponents at θ = 0 and θ = 1;
    /// the integrand may not blow up faster than θ^e0 · (1−θ)^e1.
    pub endpoint_exponents: (T, T),
}

impl<T: Scalar> Default for QuadratureSettings<T> {
    fn default() -> Self {
        QuadratureSettings {
            rel_tol: T::of(1e-10),
            max_levels: 12,
            endpoint_exponents: (T::zero(), T::zero()),
        }
    }
}

impl<T: Scalar> QuadratureSettings<T> {
    /// Settings with declared endpoint exponents and default tolerance.
    pub fn with_exponents(e0: T, e1: T) -> Self {
        QuadratureSettings {
            endpoint_exponents: (e0, e1),
            ..Self::default()
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.rel_tol > T::zero()) {
            return Err(Error::domain("quadrature rel_tol must be > 0"));
        }
        if self.max_levels < 1 {
            return Err(Error::domain("quadrature max_levels must be >= 1"));
        }
        let (e0, e1) = self.endpoint_exponents;
        if !(e0 > -T::one()) || !(e1 > -T::one()) {
            return Err(Error::domain(format!(
                "endpoint exponents must be > -1 for integrability, got ({e0}, {e1})"
            )));
        }
        Ok(())
    }
}

/// Abscissa on (0,1) with its complement computed without cancellation.
#[derive(Debug, Clone, Copy)]
pub struct SplitPoint<T> {
    /// The point θ itself.
    pub theta: T,
    /// 1 − θ, accurate even when θ is within an ulp of 1.
    pub complement: T,
}

impl<T: Scalar> SplitPoint<T> {
    /// |log θ| without precision loss on either side of the interval.
    pub fn abs_log_theta(self) -> T {
        if self.theta < T::of(0.5) {
            -self.theta.ln()
        } else {
            -(-self.complement).ln_1p()
        }
    }
}

/// Converged quadrature estimate.
#[derive(Debug, Clone, Copy)]
pub struct QuadEstimate<T> {
    /// The integral estimate.
    pub value: T,
    /// Difference between the last two refinement levels.
    pub error_estimate: T,
    /// Levels actually used.
    pub levels_used: u32,
    /// Total integrand evaluations.
    pub evaluations: usize,
}

/// Rule state threaded through the level loop.
struct Accumulator<'a, T, F> {
    f: &'a F,
    total: T,
    evaluations: usize,
}

impl<T: Scalar, F: Fn(SplitPoint<T>) -> T> Accumulator<'_, T, F> {
    fn eval(&mut self, pt: SplitPoint<T>) -> Result<T> {
        self.evaluations += 1;
        let v = (self.f)(pt);
        if !v.is_finite() {
            return Err(Error::IntegrandNotFinite {
                theta: pt.theta.as_f64(),
            });
        }
        Ok(v)
    }

    /// Add the symmetric node pair at parameter t > 0. Returns false when
    /// the pair is negligible or has underflowed into an endpoint.
    fn add_pair(&mut self, t: f64) -> Result<bool> {
        let u = std::f64::consts::FRAC_PI_2 * t.sinh();
        let q = (-2.0 * u).exp();
        let small = q / (1.0 + q);
        // the guard tests the converted value: narrower scalars underflow
        // into the endpoint earlier than f64 does
        if !(T::of(small) > T::zero()) {
            return Ok(false);
        }
        let big = 1.0 / (1.0 + q);
        // dθ/dt = (π/4) cosh t · sech²u,  sech²u = 4q/(1+q)²
        let weight = T::of(std::f64::consts::PI * t.cosh() * q / ((1.0 + q) * (1.0 + q)));
        let left = self.eval(SplitPoint {
            theta: T::of(small),
            complement: T::of(big),
        })?;
        let right = self.eval(SplitPoint {
            theta: T::of(big),
            complement: T::of(small),
        })?;
        let contribution = weight * (left + right);
        let negligible = contribution.abs() <= self.total.abs() * T::epsilon() * T::of(0.25);
        self.total = self.total + contribution;
        Ok(!negligible)
    }
}

/// Integrate `f` over (0,1) with tanh-sinh refinement.
///
/// Returns the estimate once two successive levels agree to
/// `settings.rel_tol`; failure to converge is an explicit error carrying
/// the best estimate, never a silently wrong value. A non-finite
/// integrand value at an interior node is also an error.
pub fn integrate01<T, F>(f: F, settings: &QuadratureSettings<T>) -> Result<QuadEstimate<T>>
where
    T: Scalar,
    F: Fn(SplitPoint<T>) -> T,
{
    settings.validate()?;
    // tolerances below float resolution can never be certified
    let certifiable = settings.rel_tol >= T::epsilon() * T::of(4.0);

    let mut acc = Accumulator {
        f: &f,
        total: T::zero(),
        evaluations: 0,
    };

    // level 0: h = 1, nodes at integer t
    let center = acc.eval(SplitPoint {
        theta: T::of(0.5),
        complement: T::of(0.5),
    })?;
    acc.total = T::of(std::f64::consts::FRAC_PI_4) * center;
    let mut misses = 0u32;
    let mut k = 1u64;
    while (k as f64) <= T_MAX {
        if acc.add_pair(k as f64)? {
            misses = 0;
        } else {
            misses += 1;
            if misses >= 2 {
                break;
            }
        }
        k += 1;
    }

    let mut h = 1.0f64;
    let mut estimate = acc.total;
    let mut last_increment = T::infinity();

    for level in 1..=settings.max_levels {
        h *= 0.5;
        let mut misses = 0u32;
        let mut k = 1u64;
        loop {
            let t = k as f64 * h;
            if t > T_MAX {
                break;
            }
            if acc.add_pair(t)? {
                misses = 0;
            } else {
                misses += 1;
                if misses >= 2 {
                    break;
                }
            }
            k += 2; // only odd multiples are new at this level
        }
        let new_estimate = T::of(h) * acc.total;
        last_increment = (new_estimate - estimate).abs();
        estimate = new_estimate;
        let tol = settings.rel_tol * estimate.abs().max(T::of(1e-300));
        if certifiable && level >= 2 && last_increment <= tol {
            return Ok(QuadEstimate {
                value: estimate,
                error_estimate: last_increment,
                levels_used: level,
                evaluations: acc.evaluations,
            });
        }
    }

    Err(Error::QuadratureDidNotConverge {
        best: estimate.as_f64(),
        increment: last_increment.as_f64(),
        levels: settings.max_levels,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn settings(e0: f64, e1: f64) -> QuadratureSettings<f64> {
        QuadratureSettings::with_exponents(e0, e1)
    }

    #[test]
    fn constant_integrates_to_one() {
        let r = integrate01(|_| 1.0f64, &QuadratureSettings::default()).unwrap();
        assert!((r.value - 1.0).abs() < 1e-12, "got {}", r.value);
    }

    #[test]
    fn inverse_sqrt_singularity() {
        let r = integrate01(|pt| pt.theta.powf(-0.5), &settings(-0.5, 0.0)).unwrap();
        assert!((r.value - 2.0).abs() < 1e-10, "got {}", r.value);
    }

    #[test]
    fn double_singularity_beta_half_half() {
        let r = integrate01(
            |pt| pt.theta.powf(-0.5) * pt.complement.powf(-0.5),
            &settings(-0.5, -0.5),
        )
        .unwrap();
        let pi = std::f64::consts::PI;
        assert!((r.value - pi).abs() / pi < 1e-10, "got {}", r.value);
    }

    #[test]
    fn smooth_polynomial() {
        let r = integrate01(|pt: SplitPoint<f64>| pt.theta * pt.theta, &QuadratureSettings::default()).unwrap();
        assert!((r.value - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn log_singularity() {
        // ∫ -log θ dθ = 1
        let r = integrate01(|pt| pt.abs_log_theta(), &settings(-0.01, 0.0)).unwrap();
        assert!((r.value - 1.0).abs() < 1e-10, "got {}", r.value);
    }

    #[test]
    fn near_one_complement_precision() {
        // ∫ (1-θ)^{-1/2} dθ = 2; only passes with an exact complement
        let r = integrate01(|pt| pt.complement.powf(-0.5), &settings(0.0, -0.5)).unwrap();
        assert!((r.value - 2.0).abs() < 1e-10, "got {}", r.value);
    }

    #[test]
    fn beta_matches_gamma_route() {
        use crate::specfun::beta_fn;
                let grid = [0.3f64, 1.0, 2.5];
        for &(a, b) in grid
            .iter()
            .flat_map(|a| grid.iter().map(move |b| (*a, *b)))
            .collect::<Vec<_>>()
            .iter()
        {
            let quad = integrate01(
                |pt| pt.theta.powf(a - 1.0) * pt.complement.powf(b - 1.0),
                &settings(a - 1.0, b - 1.0),
            )
            .unwrap()
            .value;
            let closed = beta_fn(a, b).unwrap();
            assert!(
                (quad - closed).abs() / closed < 1e-8,
                "B({a},{b}): {quad} vs {closed}"
            );
        }
    }

    #[test]
    fn nan_integrand_is_an_error() {
        let r = integrate01(
            |pt| {
                if pt.theta > 0.4 && pt.theta < 0.6 {
                    f64::NAN
                } else {
                    1.0
                }
            },
            &QuadratureSettings::default(),
        );
        assert!(matches!(r, Err(Error::IntegrandNotFinite { .. })));
    }

    #[test]
    fn invalid_settings_rejected() {
        let s = QuadratureSettings::<f64> {
            endpoint_exponents: (-1.0, 0.0),
            ..Default::default()
        };
        assert!(integrate01(|_| 1.0, &s).is_err());
        let s2 = QuadratureSettings::<f64> {
            rel_tol: 0.0,
            ..Default::default()
        };
        assert!(integrate01(|_| 1.0, &s2).is_err());
    }

    #[test]
    fn nonconvergence_is_explicit() {
        // tolerance far below what any float rule can certify
        let s = QuadratureSettings::<f64> {
            rel_tol: 1e-30,
            ..Default::default()
        };
        let r = integrate01(|pt| pt.theta.powf(-0.5), &s);
        assert!(matches!(r, Err(Error::QuadratureDidNotConverge { .. })));
    }
}
