//! Weighted column/row sums s_n = Σ_k w_k a(k,n) with certified tails.
//!
//! The sums run over infinitely many rows for lower-triangular and
//! dense operators, so each supported (operator, weight) pair gets a
//! tail strategy: an exact closed form (Copson columns are finite,
//! Cesàro-1 columns telescope into power-sum tails, Cesàro-2 against
//! 1/n reduces by partial fractions, Hilbert columns get a midpoint
//! Euler–Maclaurin integral with an explicit error bound) or an honest
//! truncation bracket. Unsupported combinations are refused rather
//! than silently truncated.

use crate::error::{Error, Result};
use crate::matrices::{MatrixStructure, OperatorSpec};
use crate::scalar::Scalar;
use crate::spaces::{WeightRule, WeightSequence};
use crate::specfun::{integrate01, power_sum_tail, QuadratureSettings};

/// Two-sided enclosure of a real value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket<T> {
    pub lo: T,
    pub hi: T,
}

impl<T: Scalar> Bracket<T> {
    pub fn point(v: T) -> Self {
        Bracket { lo: v, hi: v }
    }

    pub fn new(lo: T, hi: T) -> Self {
        debug_assert!(lo <= hi);
        Bracket { lo, hi }
    }

    /// Center estimate.
    pub fn mid(&self) -> T {
        (self.lo + self.hi) * T::of(0.5)
    }

    pub fn width(&self) -> T {
        self.hi - self.lo
    }

    pub fn add(&self, other: &Self) -> Self {
        Bracket {
            lo: self.lo + other.lo,
            hi: self.hi + other.hi,
        }
    }

    /// Widen symmetrically by `pad ≥ 0`.
    pub fn pad(&self, pad: T) -> Self {
        Bracket {
            lo: self.lo - pad,
            hi: self.hi + pad,
        }
    }

    /// Divide by a positive scalar.
    pub fn div_pos(&self, d: T) -> Self {
        debug_assert!(d > T::zero());
        Bracket {
            lo: self.lo / d,
            hi: self.hi / d,
        }
    }
}

/// Which family of inner sums a ratio sequence uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SumMode {
    /// s_n = Σ_k w_k a(k,n) (column sums; the d(v,1)→d(w,1) norm)
    Column,
    /// z_n = Σ_k w_k a(n,k) (row sums; the e(w,∞)→e(v,∞) norm)
    Row,
}

/// Tail handling for the infinite inner sums.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TailPolicy {
    /// closed forms / certified Euler–Maclaurin tails (the default)
    Auto,
    /// direct summation to the cutoff with an integral-test bracket;
    /// mainly a cross-check route for the closed forms
    TruncateAt(usize),
}

/// Direct-summation cutoff for the Hilbert Euler–Maclaurin path.
const HILBERT_DIRECT_TERMS: usize = 400;

/// Below this index the power-sum tail switches to a short direct sum
/// (the Euler–Maclaurin remainder is only small for moderate n).
const POWER_TAIL_DIRECT_BELOW: usize = 40;

/// Σ_{k>m} k^{-q} accurate to ~1e-16 relative for every m ≥ 0.
pub(crate) fn tail_power_sum<T: Scalar>(q: T, m: usize) -> T {
    if m >= POWER_TAIL_DIRECT_BELOW {
        return power_sum_tail(q, m);
    }
    let mut acc = power_sum_tail(q, POWER_TAIL_DIRECT_BELOW);
    for k in (m + 1)..=POWER_TAIL_DIRECT_BELOW {
        acc = acc + T::of_usize(k).powf(-q);
    }
    acc
}

#[derive(Debug, Clone, PartialEq)]
enum ColumnForm<T> {
    /// identity operator: s_n = w_n
    Identity,
    /// finite columns (upper-triangular / explicit operator, or an
    /// explicit weight list): exact direct sums
    FiniteColumns,
    /// transpose of Cesàro-1: s_n = W_n / n
    CopsonOne,
    /// transpose of Cesàro-2: s_n = 2[(n+1)W_n − M_n]/(n(n+1))
    CopsonTwo,
    /// Cesàro-1 against an exact power weight k^{-β}: s_n = Σ_{k≥n} k^{-1-β}
    CesaroOneZeta { beta: T },
    /// Cesàro-2 against w = 1/k: s_n = 2 + 2(1−n)·Σ_{k≥n} k^{-2}
    CesaroTwoReciprocal,
    /// Hilbert against k^{-β}: direct head + EM midpoint integral tail
    HilbertPower { beta: T },
}

/// Evaluator for the weighted column sums of one (operator, weight) pair.
pub(crate) struct InnerSums<T> {
    op: OperatorSpec<T>,
    w: WeightSequence<T>,
    form: ColumnForm<T>,
    policy: TailPolicy,
    /// cache of M_n = Σ_{k≤n} k·w_k for the Copson-2 path
    moment_prefix: Vec<T>,
    /// k^{-β} for the Hilbert head
    hilbert_pows: Vec<T>,
}

fn exact_power_exponent<T: Scalar>(w: &WeightSequence<T>) -> Option<T> {
    match w.rule() {
        WeightRule::Unit => Some(T::zero()),
        WeightRule::Reciprocal => Some(T::one()),
        WeightRule::Power { alpha } => Some(*alpha),
        _ => None,
    }
}

impl<T: Scalar> InnerSums<T> {
    /// Resolve a tail strategy for s_n(op, w); `Err` when no honest
    /// strategy exists.
    pub fn resolve(op: &OperatorSpec<T>, w: &WeightSequence<T>, policy: TailPolicy) -> Result<Self> {
        let form = Self::classify(op, w)?;
        Ok(InnerSums {
            op: op.clone(),
            w: w.clone(),
            form,
            policy,
            moment_prefix: Vec::new(),
            hilbert_pows: Vec::new(),
        })
    }

    fn classify(op: &OperatorSpec<T>, w: &WeightSequence<T>) -> Result<ColumnForm<T>> {
        if op.is_identity() {
            return Ok(ColumnForm::Identity);
        }
        if matches!(w.rule(), WeightRule::Explicit(_)) {
            return Ok(ColumnForm::FiniteColumns);
        }
        match op.structure() {
            MatrixStructure::UpperTriangular => {
                // columns are finite; recognize the two Copson fast paths
                let inner_order = match op {
                    OperatorSpec::Copson(alpha) => Some(*alpha),
                    OperatorSpec::Transposed(inner) => inner.cesaro_order(),
                    _ => None,
                };
                if let Some(alpha) = inner_order {
                    if alpha == T::one() {
                        return Ok(ColumnForm::CopsonOne);
                    }
                    if alpha == T::of(2.0) {
                        return Ok(ColumnForm::CopsonTwo);
                    }
                }
                Ok(ColumnForm::FiniteColumns)
            }
            MatrixStructure::LowerTriangular => {
                if let OperatorSpec::Explicit(_) = op {
                    return Ok(ColumnForm::FiniteColumns);
                }
                let Some(alpha) = op.cesaro_order() else {
                    return Err(Error::unsupported(
                        "no tail strategy for the column sums of this lower-triangular operator; \
                         supported: Cesàro orders 1 and 2, identity, explicit matrices"
                            .to_string(),
                    ));
                };
                if alpha == T::one() {
                    match exact_power_exponent(w) {
                        Some(beta) if beta > T::zero() => Ok(ColumnForm::CesaroOneZeta { beta }),
                        Some(_) => Err(Error::Divergent(
                            "Σ_k w_k/k diverges for a non-decaying weight (condition (3) fails)"
                                .to_string(),
                        )),
                        None => Err(Error::unsupported(
                            "Cesàro-1 column sums need an exact power weight".to_string(),
                        )),
                    }
                } else if alpha == T::of(2.0) {
                    if matches!(w.rule(), WeightRule::Reciprocal) {
                        Ok(ColumnForm::CesaroTwoReciprocal)
                    } else if matches!(w.rule(), WeightRule::Unit) {
                        Err(Error::Divergent(
                            "Σ_k a(k,n) over rows of Cesàro-2 diverges against the unit weight"
                                .to_string(),
                        ))
                    } else {
                        Err(Error::unsupported(
                            "Cesàro-2 column sums are closed-form only against w_n = 1/n"
                                .to_string(),
                        ))
                    }
                } else {
                    Err(Error::unsupported(format!(
                        "no column-sum tail strategy for Cesàro order {alpha}"
                    )))
                }
            }
            MatrixStructure::Dense => match op {
                OperatorSpec::Hilbert => match exact_power_exponent(w) {
                    Some(beta) if beta > T::zero() => Ok(ColumnForm::HilbertPower { beta }),
                    Some(_) => Err(Error::Divergent(
                        "Σ_k w_k/(k+n) diverges for a non-decaying weight (condition (3) fails)"
                            .to_string(),
                    )),
                    None => Err(Error::unsupported(
                        "Hilbert column sums need an exact power weight".to_string(),
                    )),
                },
                OperatorSpec::Explicit(_) => Ok(ColumnForm::FiniteColumns),
                _ => Err(Error::unsupported(
                    "no column-sum tail strategy for this dense operator".to_string(),
                )),
            },
        }
    }

    fn moment_prefix(&mut self, n: usize) -> Result<T> {
        if self.moment_prefix.len() < n {
            let mut acc = self.moment_prefix.last().copied().unwrap_or_else(T::zero);
            for m in (self.moment_prefix.len() + 1)..=n {
                acc = acc + T::of_usize(m) * self.w.term(m)?;
                self.moment_prefix.push(acc);
            }
        }
        Ok(self.moment_prefix[n - 1])
    }

    /// s_n with its certified bracket.
    pub fn eval(&mut self, n: usize) -> Result<Bracket<T>> {
        if n == 0 {
            return Err(Error::domain("column sums are indexed from n = 1"));
        }
        if let TailPolicy::TruncateAt(cutoff) = self.policy {
            return self.eval_truncated(n, cutoff);
        }
        let eps = T::of(1e-14);
        match &self.form {
            ColumnForm::Identity => Ok(Bracket::point(self.w.term(n)?)),
            ColumnForm::FiniteColumns => Ok(Bracket::point(self.finite_column_sum(n, None)?)),
            ColumnForm::CopsonOne => {
                let v = self.w.partial_sum(n)? / T::of_usize(n);
                Ok(Bracket::point(v).pad(v.abs() * eps))
            }
            ColumnForm::CopsonTwo => {
                let nn = T::of_usize(n);
                let wn = self.w.partial_sum(n)?;
                let mn = self.moment_prefix(n)?;
                let v = T::of(2.0) * ((nn + T::one()) * wn - mn) / (nn * (nn + T::one()));
                Ok(Bracket::point(v).pad(v.abs() * eps))
            }
            ColumnForm::CesaroOneZeta { beta } => {
                let v = tail_power_sum(T::one() + *beta, n - 1);
                Ok(Bracket::point(v).pad(v.abs() * T::of(1e-13)))
            }
            ColumnForm::CesaroTwoReciprocal => {
                let nn = T::of_usize(n);
                let tail2 = tail_power_sum(T::of(2.0), n - 1);
                let v = T::of(2.0) * (T::one() + (T::one() - nn) * tail2);
                Ok(Bracket::point(v).pad(v.abs().max(nn * tail2) * T::of(1e-13)))
            }
            ColumnForm::HilbertPower { beta } => self.hilbert_sum(n, *beta),
        }
    }

    /// Exact finite column sum; `limit` caps the row range (used by the
    /// truncated policy), otherwise the structural column length and
    /// any explicit weight length apply.
    fn finite_column_sum(&self, n: usize, limit: Option<usize>) -> Result<T> {
        let mut k_max = match self.op.structure() {
            MatrixStructure::UpperTriangular => n,
            _ => match &self.op {
                OperatorSpec::Explicit(m) => m.size(),
                _ => usize::MAX,
            },
        };
        if let Some(lim) = self.w.len_limit() {
            k_max = k_max.min(lim);
        }
        if let Some(lim) = limit {
            k_max = k_max.min(lim);
        }
        if k_max == usize::MAX {
            return Err(Error::unsupported(
                "finite column evaluation needs a finite row range".to_string(),
            ));
        }
        let mut acc = T::zero();
        for k in 1..=k_max {
            let a = self.op.entry(k, n)?;
            if a != T::zero() {
                acc = acc + self.w.term(k)? * a;
            }
        }
        Ok(acc)
    }

    /// Direct summation to `cutoff` with an integral-test bracket.
    fn eval_truncated(&mut self, n: usize, cutoff: usize) -> Result<Bracket<T>> {
        match &self.form {
            ColumnForm::Identity => Ok(Bracket::point(self.w.term(n)?)),
            ColumnForm::FiniteColumns | ColumnForm::CopsonOne | ColumnForm::CopsonTwo => {
                Ok(Bracket::point(self.finite_column_sum(n, Some(cutoff.max(n)))?))
            }
            ColumnForm::CesaroOneZeta { beta } => {
                let q = T::one() + *beta;
                let mut partial = T::zero();
                for k in n..=cutoff.max(n) {
                    partial = partial + T::of_usize(k).powf(-q);
                }
                let m = T::of_usize(cutoff.max(n));
                let upper = m.powf(T::one() - q) / (q - T::one());
                let lower = (m + T::one()).powf(T::one() - q) / (q - T::one());
                Ok(Bracket::new(partial + lower, partial + upper))
            }
            ColumnForm::CesaroTwoReciprocal => {
                let mut partial = T::zero();
                let nn = T::of_usize(n);
                for k in n..=cutoff.max(n) {
                    let kk = T::of_usize(k);
                    partial = partial
                        + T::of(2.0) * (kk - nn + T::one()) / (kk * kk * (kk + T::one()));
                }
                // remaining terms are ≤ 2/k², so the tail is ≤ 2/m
                let m = T::of_usize(cutoff.max(n));
                Ok(Bracket::new(partial, partial + T::of(2.0) / m))
            }
            ColumnForm::HilbertPower { beta } => {
                let mut partial = T::zero();
                let nn = T::of_usize(n);
                for k in 1..=cutoff {
                    let kk = T::of_usize(k);
                    partial = partial + kk.powf(-*beta) / (kk + nn);
                }
                // tail terms are k^{-1-β} · k/(k+n) with k/(k+n) ∈ [K/(K+n), 1)
                let m = T::of_usize(cutoff);
                let upper = m.powf(-*beta) / *beta;
                let lower = (m + T::one()).powf(-*beta) / *beta * (m / (m + nn));
                Ok(Bracket::new(partial + lower, partial + upper))
            }
        }
    }

    /// Hilbert column sum s_n = Σ_k k^{-β}/(k+n): direct head to K, then
    /// the midpoint Euler–Maclaurin tail
    ///   Σ_{k>K} g(k) = ∫_{K+1/2}^∞ g ± |g'(K+1/2)|/24,
    /// with the integral reduced to an incomplete-beta form
    ///   ∫_X^∞ x^{-β}/(x+n) dx = n^{-β} T^β ∫_0^1 u^{β-1}(1−Tu)^{-β} du,
    /// T = n/(X+n), evaluated by tanh-sinh quadrature.
    fn hilbert_sum(&mut self, n: usize, beta: T) -> Result<Bracket<T>> {
        let k_direct = HILBERT_DIRECT_TERMS;
        if self.hilbert_pows.is_empty() {
            self.hilbert_pows = (1..=k_direct)
                .map(|k| T::of_usize(k).powf(-beta))
                .collect();
        }
        let nn = T::of_usize(n);
        let mut head = T::zero();
        for (k, pow) in self.hilbert_pows.iter().enumerate() {
            head = head + *pow / (T::of_usize(k + 1) + nn);
        }
        let x = T::of_usize(k_direct) + T::of(0.5);
        let t_sub = nn / (x + nn);
        let settings = QuadratureSettings {
            rel_tol: T::of(1e-9),
            max_levels: 12,
            endpoint_exponents: (beta - T::one(), T::zero()),
        };
        let est = integrate01(
            |pt| {
                // 1 − T·u without cancellation: (1−T) + T·(1−u)
                let one_minus_tu = (T::one() - t_sub) + t_sub * pt.complement;
                pt.theta.powf(beta - T::one()) * one_minus_tu.powf(-beta)
            },
            &settings,
        )?;
        let integral = nn.powf(-beta) * t_sub.powf(beta) * est.value;
        // |g'(X)|/24, doubled for the higher-order EM remainder terms
        let g_prime = beta * x.powf(-beta - T::one()) / (x + nn)
            + x.powf(-beta) / ((x + nn) * (x + nn));
        let pad = g_prime / T::of(12.0)
            + est.error_estimate.abs() * nn.powf(-beta) * t_sub.powf(beta)
            + integral * T::of(1e-9);
        let v = head + integral;
        Ok(Bracket::point(v).pad(pad))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrices::OperatorSpec;
    use crate::spaces::WeightSequence;
    use crate::specfun::zeta_fn;

    #[test]
    fn copson_one_column_sums_are_wn_over_n() {
        let op = OperatorSpec::Copson(1.0f64);
        let w = WeightSequence::<f64>::reciprocal();
        let mut sums = InnerSums::resolve(&op, &w, TailPolicy::Auto).unwrap();
        for n in [1usize, 5, 100] {
            let s = sums.eval(n).unwrap().mid();
            let want = w.partial_sum(n).unwrap() / n as f64;
            assert!((s - want).abs() < 1e-13);
        }
    }

    #[test]
    fn cesaro_one_column_sums_match_zeta() {
        // s_1 = Σ_k w_k/k = ζ(2) for w = 1/k
        let op = OperatorSpec::Cesaro(1.0f64);
        let w = WeightSequence::<f64>::reciprocal();
        let mut sums = InnerSums::resolve(&op, &w, TailPolicy::Auto).unwrap();
        let s1 = sums.eval(1).unwrap();
        let z2 = zeta_fn(2.0f64).unwrap();
        assert!((s1.mid() - z2).abs() < 1e-11, "{} vs {z2}", s1.mid());
    }

    #[test]
    fn copson_column_sums_equal_cesaro_row_sums_oracle() {
        // s_n(Cᵗ) must equal the directly computed Σ_{k≤n} w_k a(n,k) of C
        let cop = OperatorSpec::Copson(2.0f64);
        let ces = OperatorSpec::Cesaro(2.0f64);
        let w = WeightSequence::<f64>::reciprocal();
        let mut sums = InnerSums::resolve(&cop, &w, TailPolicy::Auto).unwrap();
        for n in [1usize, 3, 17, 64] {
            let fast = sums.eval(n).unwrap().mid();
            let mut direct = 0.0f64;
            for k in 1..=n {
                direct += w.term(k).unwrap() * ces.entry(n, k).unwrap();
            }
            assert!(
                (fast - direct).abs() < 1e-12 * (1.0 + direct.abs()),
                "n={n}: {fast} vs {direct}"
            );
        }
    }

    #[test]
    fn cesaro_two_partial_fractions_against_truncation_oracle() {
        let op = OperatorSpec::Cesaro(2.0f64);
        let w = WeightSequence::<f64>::reciprocal();
        let mut auto = InnerSums::resolve(&op, &w, TailPolicy::Auto).unwrap();
        let mut brute = InnerSums::resolve(&op, &w, TailPolicy::TruncateAt(2_000_000)).unwrap();
        // s_1 = 2 exactly
        assert!((auto.eval(1).unwrap().mid() - 2.0).abs() < 1e-12);
        for n in [1usize, 2, 7, 50, 311] {
            let closed = auto.eval(n).unwrap();
            let bracket = brute.eval(n).unwrap();
            assert!(
                closed.mid() >= bracket.lo - 1e-12 && closed.mid() <= bracket.hi + 1e-12,
                "n={n}: closed {} outside [{}, {}]",
                closed.mid(),
                bracket.lo,
                bracket.hi
            );
        }
    }

    #[test]
    fn hilbert_em_against_truncation_oracle() {
        let op = OperatorSpec::<f64>::Hilbert;
        for beta in [0.25f64, 0.5, 0.75, 1.0] {
            let w = if beta == 1.0 {
                WeightSequence::<f64>::reciprocal()
            } else {
                WeightSequence::power(beta).unwrap()
            };
            let mut auto = InnerSums::resolve(&op, &w, TailPolicy::Auto).unwrap();
            let mut brute = InnerSums::resolve(&op, &w, TailPolicy::TruncateAt(3_000_000)).unwrap();
            for n in [1usize, 37, 5000] {
                let em = auto.eval(n).unwrap();
                let bracket = brute.eval(n).unwrap();
                assert!(
                    em.hi >= bracket.lo && em.lo <= bracket.hi,
                    "beta={beta} n={n}: EM [{}, {}] vs oracle [{}, {}]",
                    em.lo,
                    em.hi,
                    bracket.lo,
                    bracket.hi
                );
                assert!(em.width() < 1e-6);
            }
        }
    }

    #[test]
    fn divergent_and_unsupported_are_refused() {
        let c1 = OperatorSpec::Cesaro(1.0f64);
        let unit = WeightSequence::<f64>::unit();
        assert!(matches!(
            InnerSums::resolve(&c1, &unit, TailPolicy::Auto),
            Err(Error::Divergent(_))
        ));
        let hil = OperatorSpec::<f64>::Hilbert;
        assert!(matches!(
            InnerSums::resolve(&hil, &unit, TailPolicy::Auto),
            Err(Error::Divergent(_))
        ));
        let c3 = OperatorSpec::Cesaro(3.0f64);
        let rec = WeightSequence::<f64>::reciprocal();
        assert!(matches!(
            InnerSums::resolve(&c3, &rec, TailPolicy::Auto),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn identity_sums_are_the_weight() {
        let id = OperatorSpec::Hausdorff(crate::measures::MeasureSpec::euler(1.0f64).unwrap());
        let w = WeightSequence::power(0.5f64).unwrap();
        let mut sums = InnerSums::resolve(&id, &w, TailPolicy::Auto).unwrap();
        for n in [1usize, 4, 9] {
            assert_eq!(sums.eval(n).unwrap().mid(), w.term(n).unwrap());
        }
    }
}
