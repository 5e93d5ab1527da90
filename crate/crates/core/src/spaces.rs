//! Weight sequences and the three sequence-space norms.
//!
//! A [`WeightSequence`] is a rule-generated positive sequence with
//! cached partial sums. A [`FiniteSequence`] is a finitely supported
//! sequence (index origin 1). [`SpaceSpec`] tags which of the three
//! norms a computation uses: the weighted p-norm on `l_p(w)`, the
//! Lorentz norm on `d(w,p)` (p-norm of the decreasing rearrangement),
//! or the sup norm `sup_k X*_k / W_k` on `e(w,∞)`.

use std::sync::Mutex;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Closed-form rule generating a positive weight sequence.
#[derive(Debug, Clone, PartialEq)]
pub enum WeightRule<T> {
    /// w_n = 1
    Unit,
    /// w_n = 1/n
    Reciprocal,
    /// w_n = n^{-α}, α ≥ 0
    Power { alpha: T },
    /// w_n = 1/(n+α), α ≥ 0
    Shifted { alpha: T },
    /// w_n = n^{1-α} − (n−1)^{1-α}, α ∈ [0,1); telescopes to W_n = n^{1-α}
    PartialSumPower { alpha: T },
    /// explicit positive list (index origin 1)
    Explicit(Vec<T>),
}

/// Leading power-law behaviour `coefficient · n^{exponent}` of a rule,
/// used for monotonicity analysis of weight ratios.
#[derive(Debug, Clone, Copy)]
pub struct PowerAsymptotics<T> {
    pub exponent: T,
    pub coefficient: T,
}

/// Rule-generated weight sequence with cached partial sums.
#[derive(Debug)]
pub struct WeightSequence<T> {
    rule: WeightRule<T>,
    partial_sums: Mutex<Vec<T>>,
}

impl<T: Clone> Clone for WeightSequence<T> {
    fn clone(&self) -> Self {
        WeightSequence {
            rule: self.rule.clone(),
            partial_sums: Mutex::new(self.partial_sums.lock().unwrap().clone()),
        }
    }
}

impl<T: PartialEq> PartialEq for WeightSequence<T> {
    fn eq(&self, other: &Self) -> bool {
        self.rule == other.rule
    }
}

impl<T: Scalar> WeightSequence<T> {
    /// Build a weight sequence, validating the rule parameters.
    pub fn new(rule: WeightRule<T>) -> Result<Self> {
        match &rule {
            WeightRule::Power { alpha } | WeightRule::Shifted { alpha } => {
                if !(*alpha >= T::zero()) {
                    return Err(Error::domain(format!(
                        "weight rule needs alpha >= 0, got {alpha}"
                    )));
                }
            }
            WeightRule::PartialSumPower { alpha } => {
                if !(*alpha >= T::zero() && *alpha < T::one()) {
                    return Err(Error::domain(format!(
                        "partial-sum-power needs alpha in [0,1) for positive terms, got {alpha}"
                    )));
                }
            }
            WeightRule::Explicit(values) => {
                if values.is_empty() {
                    return Err(Error::domain("explicit weight list must be non-empty"));
                }
                if values.iter().any(|v| !(*v > T::zero())) {
                    return Err(Error::domain(
                        "explicit weight list must be strictly positive",
                    ));
                }
            }
            WeightRule::Unit | WeightRule::Reciprocal => {}
        }
        Ok(WeightSequence {
            rule,
            partial_sums: Mutex::new(Vec::new()),
        })
    }

    pub fn unit() -> Self {
        Self::new(WeightRule::Unit).expect("unit rule is always valid")
    }

    pub fn reciprocal() -> Self {
        Self::new(WeightRule::Reciprocal).expect("reciprocal rule is always valid")
    }

    pub fn power(alpha: T) -> Result<Self> {
        Self::new(WeightRule::Power { alpha })
    }

    pub fn shifted(alpha: T) -> Result<Self> {
        Self::new(WeightRule::Shifted { alpha })
    }

    pub fn partial_sum_power(alpha: T) -> Result<Self> {
        Self::new(WeightRule::PartialSumPower { alpha })
    }

    pub fn explicit(values: Vec<T>) -> Result<Self> {
        Self::new(WeightRule::Explicit(values))
    }

    pub fn rule(&self) -> &WeightRule<T> {
        &self.rule
    }

    /// Length bound for explicit rules; closed-form rules are unbounded.
    pub fn len_limit(&self) -> Option<usize> {
        match &self.rule {
            WeightRule::Explicit(v) => Some(v.len()),
            _ => None,
        }
    }

    /// w_n (index origin 1).
    pub fn term(&self, n: usize) -> Result<T> {
        if n == 0 {
            return Err(Error::domain("weight index origin is 1"));
        }
        let x = T::of_usize(n);
        Ok(match &self.rule {
            WeightRule::Unit => T::one(),
            WeightRule::Reciprocal => x.recip(),
            WeightRule::Power { alpha } => x.powf(-*alpha),
            WeightRule::Shifted { alpha } => (x + *alpha).recip(),
            WeightRule::PartialSumPower { alpha } => {
                let e = T::one() - *alpha;
                x.powf(e) - (x - T::one()).powf(e)
            }
            WeightRule::Explicit(values) => *values.get(n - 1).ok_or_else(|| {
                Error::domain(format!(
                    "explicit weight list has {} entries, index {n} out of range",
                    values.len()
                ))
            })?,
        })
    }

    /// W_n = w_1 + … + w_n, cached; analytic for telescoping rules.
    pub fn partial_sum(&self, n: usize) -> Result<T> {
        if n == 0 {
            return Err(Error::domain("weight index origin is 1"));
        }
        match &self.rule {
            WeightRule::Unit => Ok(T::of_usize(n)),
            WeightRule::PartialSumPower { alpha } => Ok(T::of_usize(n).powf(T::one() - *alpha)),
            _ => {
                let mut cache = self.partial_sums.lock().unwrap();
                if cache.len() < n {
                    let mut acc = cache.last().copied().unwrap_or_else(T::zero);
                    for m in (cache.len() + 1)..=n {
                        acc = acc + self.term(m)?;
                        cache.push(acc);
                    }
                }
                Ok(cache[n - 1])
            }
        }
    }

    /// First n terms as a vector.
    pub fn terms(&self, n: usize) -> Result<Vec<T>> {
        (1..=n).map(|m| self.term(m)).collect()
    }

    /// True for rules whose terms are non-increasing by construction,
    /// checked elementwise for explicit lists.
    pub fn is_nonincreasing(&self) -> bool {
        match &self.rule {
            WeightRule::Explicit(values) => values.windows(2).all(|w| w[0] >= w[1]),
            _ => true,
        }
    }

    /// Leading power-law behaviour, when the rule has one.
    pub fn power_asymptotics(&self) -> Option<PowerAsymptotics<T>> {
        let (exponent, coefficient) = match &self.rule {
            WeightRule::Unit => (T::zero(), T::one()),
            WeightRule::Reciprocal => (-T::one(), T::one()),
            WeightRule::Power { alpha } => (-*alpha, T::one()),
            WeightRule::Shifted { .. } => (-T::one(), T::one()),
            WeightRule::PartialSumPower { alpha } => (-*alpha, T::one() - *alpha),
            WeightRule::Explicit(_) => return None,
        };
        Some(PowerAsymptotics {
            exponent,
            coefficient,
        })
    }

    /// Parse a CLI weight string: `unit`, `reciprocal`, `power:alpha=0.5`,
    /// `shifted:alpha=1`, `partial-sum-power:alpha=0.5`, `explicit:1,0.5`.
    pub fn parse(text: &str) -> Result<Self> {
        fn alpha_of<T: Scalar>(spec: &str, rest: Option<&str>) -> Result<T> {
            let rest = rest.ok_or_else(|| {
                Error::Parse(format!("weight rule `{spec}` needs `:alpha=<value>`"))
            })?;
            let value = rest
                .strip_prefix("alpha=")
                .ok_or_else(|| Error::Parse(format!("expected `alpha=<value>`, got `{rest}`")))?;
            value
                .parse::<f64>()
                .map(T::of)
                .map_err(|e| Error::Parse(format!("bad alpha `{value}`: {e}")))
        }
        let (head, rest) = match text.split_once(':') {
            Some((h, r)) => (h, Some(r)),
            None => (text, None),
        };
        match head {
            "unit" => Ok(Self::unit()),
            "reciprocal" => Ok(Self::reciprocal()),
            "power" => Self::power(alpha_of(head, rest)?),
            "shifted" => Self::shifted(alpha_of(head, rest)?),
            "partial-sum-power" | "psp" => Self::partial_sum_power(alpha_of(head, rest)?),
            "explicit" => {
                let rest =
                    rest.ok_or_else(|| Error::Parse("explicit needs a value list".into()))?;
                let values = rest
                    .split(',')
                    .map(|s| {
                        s.trim()
                            .parse::<f64>()
                            .map(T::of)
                            .map_err(|e| Error::Parse(format!("bad weight `{s}`: {e}")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Self::explicit(values)
            }
            other => Err(Error::Parse(format!("unknown weight rule `{other}`"))),
        }
    }
}

/// Finitely supported real sequence, index origin 1.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteSequence<T> {
    values: Vec<T>,
}

impl<T: Scalar> FiniteSequence<T> {
    pub fn new(values: Vec<T>) -> Self {
        FiniteSequence { values }
    }

    /// Prefix indicator (1, …, 1, 0, …) with n ones.
    pub fn prefix_indicator(n: usize) -> Self {
        FiniteSequence {
            values: vec![T::one(); n],
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    /// x_n, zero beyond the stored support.
    pub fn get(&self, n: usize) -> T {
        if n == 0 {
            return T::zero();
        }
        self.values.get(n - 1).copied().unwrap_or_else(T::zero)
    }

    /// Support length with trailing zeros trimmed.
    pub fn support_len(&self) -> usize {
        let mut len = self.values.len();
        while len > 0 && self.values[len - 1] == T::zero() {
            len -= 1;
        }
        len
    }

    /// Decreasing rearrangement of (|x_n|): absolute values sorted
    /// non-increasing (stable sort, multiset preserved, length kept).
    pub fn decreasing_rearrangement(&self) -> Self {
        let mut abs: Vec<T> = self.values.iter().map(|v| v.abs()).collect();
        abs.sort_by(|a, b| b.partial_cmp(a).expect("weights and inputs are not NaN"));
        FiniteSequence { values: abs }
    }

    pub fn scale(&self, c: T) -> Self {
        FiniteSequence {
            values: self.values.iter().map(|v| *v * c).collect(),
        }
    }
}

/// Which norm a computation uses.
#[derive(Debug, Clone)]
pub enum SpaceSpec<T> {
    /// l_p(w) with norm (Σ w_n |x_n|^p)^{1/p}
    LpW { p: T, weight: WeightSequence<T> },
    /// Lorentz d(w,p): the l_p(w) norm of the decreasing rearrangement
    Lorentz { p: T, weight: WeightSequence<T> },
    /// e(w,∞) with norm sup_k X*_k / W_k
    EWInf { weight: WeightSequence<T> },
}

impl<T: Scalar> SpaceSpec<T> {
    pub fn lp_w(p: T, weight: WeightSequence<T>) -> Result<Self> {
        if !(p >= T::one()) {
            return Err(Error::domain(format!("l_p(w) requires p >= 1, got {p}")));
        }
        Ok(SpaceSpec::LpW { p, weight })
    }

    pub fn lorentz(p: T, weight: WeightSequence<T>) -> Result<Self> {
        if !(p >= T::one()) {
            return Err(Error::domain(format!("d(w,p) requires p >= 1, got {p}")));
        }
        if !weight.is_nonincreasing() {
            return Err(Error::domain("d(w,p) requires a non-increasing weight"));
        }
        Ok(SpaceSpec::Lorentz { p, weight })
    }

    pub fn e_w_inf(weight: WeightSequence<T>) -> Result<Self> {
        if !weight.is_nonincreasing() {
            return Err(Error::domain("e(w,∞) requires a non-increasing weight"));
        }
        Ok(SpaceSpec::EWInf { weight })
    }
}

fn weighted_p_norm<T: Scalar>(x: &FiniteSequence<T>, p: T, w: &WeightSequence<T>) -> Result<T> {
    let mut acc = T::zero();
    for (i, v) in x.values().iter().enumerate() {
        if *v == T::zero() {
            continue;
        }
        acc = acc + w.term(i + 1)? * v.abs().powf(p);
    }
    Ok(acc.powf(p.recip()))
}

/// Norm of a finitely supported sequence in the given space.
///
/// For `e(w,∞)` the supremum over all k reduces to a maximum over
/// k ≤ support length: past the support X*_k is constant while W_k
/// grows, so the tail ratio only decreases (asserted).
pub fn norm<T: Scalar>(x: &FiniteSequence<T>, space: &SpaceSpec<T>) -> Result<T> {
    match space {
        SpaceSpec::LpW { p, weight } => weighted_p_norm(x, *p, weight),
        SpaceSpec::Lorentz { p, weight } => {
            weighted_p_norm(&x.decreasing_rearrangement(), *p, weight)
        }
        SpaceSpec::EWInf { weight } => {
            let star = x.decreasing_rearrangement();
            let mut best = T::zero();
            let mut xsum = T::zero();
            for (i, v) in star.values().iter().enumerate() {
                xsum = xsum + *v;
                let ratio = xsum / weight.partial_sum(i + 1)?;
                if ratio > best {
                    best = ratio;
                }
            }
            if !star.is_empty() {
                // flat tail cannot beat the interior maximum
                let k = star.len();
                if weight.len_limit().is_none_or(|lim| lim > k) {
                    let tail_ratio = xsum / weight.partial_sum(k + 1)?;
                    debug_assert!(tail_ratio <= best + T::epsilon());
                }
            }
            Ok(best)
        }
    }
}
