//! Brute-force oracle for the d(v,1) → d(w,1) norm on small instances.
//!
//! Maximizes ‖Ax‖_{d(w,1)}/‖x‖_{d(v,1)} over prefix indicators, a
//! dense grid of non-increasing vectors and random non-increasing
//! directions. For operators with conditions (1) and (2) the maximum
//! must land on a prefix indicator, so this independently confirms
//! `sup_n S_n/V_n` computed by the ratio machinery.

use rand::Rng;

use crate::error::{Error, Result};
use crate::matrices::{ExplicitMatrix, TruncatedMatrix};
use crate::scalar::Scalar;
use crate::spaces::{norm as space_norm, FiniteSequence, SpaceSpec, WeightSequence};

/// Search controls for [`oracle_norm_d1`].
#[derive(Debug, Clone, Copy)]
pub struct OracleSettings {
    /// grid levels per coordinate (candidate count is C(N+R, R))
    pub grid_resolution: usize,
    /// number of random non-increasing directions
    pub random_directions: usize,
}

impl Default for OracleSettings {
    fn default() -> Self {
        OracleSettings {
            grid_resolution: 6,
            random_directions: 10_000,
        }
    }
}

/// Largest instance the oracle searches exhaustively.
pub const MAX_ORACLE_ORDER: usize = 8;

fn visit_nonincreasing<F: FnMut(&[usize]) -> crate::error::Result<()>>(
    n: usize,
    cap: usize,
    stack: &mut Vec<usize>,
    f: &mut F,
) -> crate::error::Result<()> {
    if stack.len() == n {
        return f(stack);
    }
    let top = stack.last().copied().unwrap_or(cap);
    for level in (0..=top).rev() {
        stack.push(level);
        visit_nonincreasing(n, cap, stack, f)?;
        stack.pop();
    }
    Ok(())
}

/// Brute-force maximum of ‖Ax‖_{d(w,1)}/‖x‖_{d(v,1)} over the
/// decreasing cone, on a truncation of order ≤ 8.
///
/// Refuses instances violating conditions (1) or (2): the claim that
/// prefix indicators are extremal needs them.
pub fn oracle_norm_d1<T: Scalar, R: Rng>(
    matrix: &TruncatedMatrix<T>,
    v: &WeightSequence<T>,
    w: &WeightSequence<T>,
    settings: &OracleSettings,
    rng: &mut R,
) -> Result<T> {
    let n = matrix.order();
    if n > MAX_ORACLE_ORDER {
        return Err(Error::unsupported(format!(
            "oracle instances are capped at order {MAX_ORACLE_ORDER}, got {n}"
        )));
    }
    if !matrix.check_condition_1() {
        return Err(Error::unsupported(
            "oracle refused: condition (1) fails".to_string(),
        ));
    }
    if !matrix.check_condition_2(n)?.holds {
        return Err(Error::unsupported(
            "oracle refused: condition (2) fails".to_string(),
        ));
    }
    let w_space = SpaceSpec::lorentz(T::one(), w.clone())?;
    let v_space = SpaceSpec::lorentz(T::one(), v.clone())?;
    let mut best = T::zero();
    let mut consider = |x: &FiniteSequence<T>| -> Result<()> {
        let den = space_norm(x, &v_space)?;
        if den == T::zero() {
            return Ok(());
        }
        let y = matrix.apply(x)?;
        let num = space_norm(&y, &w_space)?;
        let ratio = num / den;
        if ratio > best {
            best = ratio;
        }
        Ok(())
    };

    // (i) prefix indicators
    for ones in 1..=n {
        consider(&FiniteSequence::prefix_indicator(ones))?;
    }
    // (ii) exhaustive grid of non-increasing level vectors
    let r = settings.grid_resolution.max(1);
    let mut stack = Vec::with_capacity(n);
    visit_nonincreasing(n, r, &mut stack, &mut |levels| {
        if levels[0] == 0 {
            return Ok(()); // the zero vector
        }
        let x = FiniteSequence::new(
            levels
                .iter()
                .map(|l| T::of_usize(*l) / T::of_usize(r))
                .collect(),
        );
        consider(&x)
    })?;
    // (iii) random non-increasing directions
    for _ in 0..settings.random_directions {
        let mut x: Vec<T> = (0..n).map(|_| T::of(rng.gen::<f64>())).collect();
        x.sort_by(|a, b| b.partial_cmp(a).unwrap());
        consider(&FiniteSequence::new(x))?;
    }
    Ok(best)
}

/// Random dense matrix satisfying conditions (1) and (2) by
/// construction: entries are upper-tail sums of an i.i.d. non-negative
/// field, hence non-increasing along both rows and columns.
pub fn random_condition2_matrix<T: Scalar, R: Rng>(order: usize, rng: &mut R) -> ExplicitMatrix<T> {
    let base: Vec<Vec<f64>> = (0..order)
        .map(|_| (0..order).map(|_| rng.gen::<f64>()).collect())
        .collect();
    let rows = (0..order)
        .map(|i| {
            (0..order)
                .map(|j| {
                    let mut acc = 0.0;
                    for row in base.iter().skip(i) {
                        for value in row.iter().skip(j) {
                            acc += value;
                        }
                    }
                    T::of(acc)
                })
                .collect()
        })
        .collect();
    ExplicitMatrix::new(rows).expect("construction is non-empty")
}
