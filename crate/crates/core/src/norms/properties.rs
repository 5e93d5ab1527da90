//! Randomized property suites shared by the test targets and the CLI.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::matrices::TruncatedMatrix;
use crate::norms::witness::hardy_inequality_check;
use crate::scalar::Scalar;
use crate::spaces::{norm as space_norm, FiniteSequence, SpaceSpec, WeightSequence};

/// Aggregate outcome of one randomized suite.
#[derive(Debug, Clone)]
pub struct PropertyOutcome {
    pub instances: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

impl PropertyOutcome {
    pub fn all_passed(&self) -> bool {
        self.failures == 0
    }

    fn record(&mut self, failed: bool, describe: impl FnOnce() -> String) {
        self.instances += 1;
        if failed {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(describe());
            }
        }
    }
}

fn random_decreasing<T: Scalar, R: Rng>(rng: &mut R, len: usize) -> Vec<T> {
    let mut v: Vec<f64> = (0..len).map(|_| rng.gen::<f64>() + 1e-6).collect();
    v.sort_by(|a, b| b.partial_cmp(a).unwrap());
    v.into_iter().map(T::of).collect()
}

/// Weighted Hardy inequality on random (w decreasing, x ≥ 0, p) triples.
pub fn hardy_suite<T: Scalar>(count: usize, seed: u64) -> Result<PropertyOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = PropertyOutcome {
        instances: 0,
        failures: 0,
        first_failure: None,
    };
    let ps = [1.5f64, 2.0, 3.0];
    for i in 0..count {
        let w = WeightSequence::explicit(random_decreasing::<T, _>(&mut rng, 160))?;
        let support = 1 + rng.gen_range(0..12);
        let x = FiniteSequence::new(
            (0..support)
                .map(|_| T::of(rng.gen::<f64>() * 3.0))
                .collect(),
        );
        let p = T::of(ps[i % ps.len()]);
        let check = hardy_inequality_check(&w, &x, p)?;
        out.record(!check.holds, || {
            format!(
                "instance {i}: lhs {} > rhs {} at p {p}",
                check.lhs.as_f64(),
                check.rhs.as_f64()
            )
        });
    }
    Ok(out)
}

/// Termwise ratio bounds transfer to prefix-sum ratios.
pub fn mediant_suite<T: Scalar>(count: usize, seed: u64) -> PropertyOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = PropertyOutcome {
        instances: 0,
        failures: 0,
        first_failure: None,
    };
    for i in 0..count {
        let len = 200;
        let s: Vec<T> = (0..len).map(|_| T::of(rng.gen::<f64>() * 10.0 + 1e-3)).collect();
        let v: Vec<T> = (0..len).map(|_| T::of(rng.gen::<f64>() * 10.0 + 1e-3)).collect();
        let mut lo = T::infinity();
        let mut hi = T::zero();
        for (a, b) in s.iter().zip(&v) {
            lo = lo.min(*a / *b);
            hi = hi.max(*a / *b);
        }
        let slack = T::of(1e-12);
        let mut sp = T::zero();
        let mut vp = T::zero();
        let mut bad = None;
        for (n, (a, b)) in s.iter().zip(&v).enumerate() {
            sp = sp + *a;
            vp = vp + *b;
            let r = sp / vp;
            if r < lo - slack || r > hi + slack {
                bad = Some((n + 1, r));
                break;
            }
        }
        out.record(bad.is_some(), || {
            let (n, r) = bad.unwrap();
            format!(
                "instance {i}: prefix ratio {} at n={n} escapes [{}, {}]",
                r.as_f64(),
                lo.as_f64(),
                hi.as_f64()
            )
        });
    }
    out
}

/// Rearrangement dominance ‖Ax‖_{d(w,p)} ≤ ‖Ax*‖_{d(w,p)} for operators
/// passing conditions (1)(2) and random non-negative inputs.
pub fn dominance_suite<T: Scalar>(count: usize, seed: u64) -> Result<PropertyOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = PropertyOutcome {
        instances: 0,
        failures: 0,
        first_failure: None,
    };
    let ps = [1.0f64, 1.5, 2.0];
    for i in 0..count {
        let order = 4 + rng.gen_range(0..9); // up to 12
        let matrix = super::oracle::random_condition2_matrix::<T, _>(order, &mut rng);
        let trunc = TruncatedMatrix::from_explicit(&matrix)?;
        let w = WeightSequence::explicit(random_decreasing::<T, _>(&mut rng, order))?;
        let support = 1 + rng.gen_range(0..order.min(12));
        let x = FiniteSequence::new(
            (0..support)
                .map(|_| T::of(rng.gen::<f64>() * 2.0))
                .collect(),
        );
        let p = T::of(ps[i % ps.len()]);
        let space = SpaceSpec::lorentz(p, w)?;
        let plain = space_norm(&trunc.apply(&x)?, &space)?;
        let star = space_norm(&trunc.apply(&x.decreasing_rearrangement())?, &space)?;
        let failed = plain > star + T::of(1e-10) * (T::one() + star.abs());
        out.record(failed, || {
            format!(
                "instance {i}: ‖Ax‖ {} > ‖Ax*‖ {} (order {order}, p {p})",
                plain.as_f64(),
                star.as_f64()
            )
        });
    }
    Ok(out)
}
