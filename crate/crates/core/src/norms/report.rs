//! Result records for norm verifications.

use serde::{Deserialize, Serialize};

/// Identifier for each verified statement (section-local numbering).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[allow(non_camel_case_types)]
pub enum TheoremId {
    /// Hausdorff l_p(v) → l_p(w) sandwich and l_p(w) closed norm
    T2_1,
    /// Cesàro/Hölder/Gamma/Euler closed norms on l_p(w)
    C2_1,
    /// weighted Hardy inequality
    C2_2,
    /// Hausdorff closed norm on unweighted l_p
    C2_3,
    /// family closed norms on unweighted l_p
    C2_4,
    /// Hausdorff norm on d(w,p) under condition (2)
    T2_2,
    /// the C(1), Γ(1), C(2) worked example on d(w,p)
    EX2,
    /// d(v,1) → d(w,1) norm as sup S_n/V_n
    T3_1,
    /// e(w,∞) → e(v,∞) norm as sup Z_n/V_n and transpose duality
    T3_2,
    /// Cesàro norm on e(w,∞) → e(v,∞)
    C3_1,
    /// mediant inequality for prefix-sum ratios
    L3_1,
    /// Hilbert kernel sup identity π/sin(απ)
    L3_2,
    /// C(2) from d(1/(n+α),1) into d(1/n,1): norm 2(α+1)
    P3_1,
    /// C(2) from d(n^{-α},1) into d(1/n,1): norm 2
    P3_2,
    /// Copson upper bound r = sup W_n/(n v_n)
    T3_3,
    /// Copson exact norm 1 for matched power weights
    T3_4,
    /// Cesàro zeta upper bound ζ(1+α)/(1−α)
    T3_5,
    /// Hilbert upper bound π/((1−α) sin απ)
    T3_6,
}

impl TheoremId {
    pub const ALL: [TheoremId; 18] = [
        TheoremId::T2_1,
        TheoremId::C2_1,
        TheoremId::C2_2,
        TheoremId::C2_3,
        TheoremId::C2_4,
        TheoremId::T2_2,
        TheoremId::EX2,
        TheoremId::T3_1,
        TheoremId::T3_2,
        TheoremId::C3_1,
        TheoremId::L3_1,
        TheoremId::L3_2,
        TheoremId::P3_1,
        TheoremId::P3_2,
        TheoremId::T3_3,
        TheoremId::T3_4,
        TheoremId::T3_5,
        TheoremId::T3_6,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            TheoremId::T2_1 => "T2-1",
            TheoremId::C2_1 => "C2-1",
            TheoremId::C2_2 => "C2-2",
            TheoremId::C2_3 => "C2-3",
            TheoremId::C2_4 => "C2-4",
            TheoremId::T2_2 => "T2-2",
            TheoremId::EX2 => "EX2",
            TheoremId::T3_1 => "T3-1",
            TheoremId::T3_2 => "T3-2",
            TheoremId::C3_1 => "C3-1",
            TheoremId::L3_1 => "L3-1",
            TheoremId::L3_2 => "L3-2",
            TheoremId::P3_1 => "P3-1",
            TheoremId::P3_2 => "P3-2",
            TheoremId::T3_3 => "T3-3",
            TheoremId::T3_4 => "T3-4",
            TheoremId::T3_5 => "T3-5",
            TheoremId::T3_6 => "T3-6",
        }
    }

    pub fn parse(text: &str) -> Option<Self> {
        Self::ALL.iter().copied().find(|t| t.as_str() == text)
    }
}

impl std::fmt::Display for TheoremId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for TheoremId {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for TheoremId {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        TheoremId::parse(&text)
            .ok_or_else(|| serde::de::Error::custom(format!("unknown theorem id `{text}`")))
    }
}

/// Closed-form reference value: finite, +∞ (unbounded operator) or
/// none (the statement supplies only a bound or a property).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum ClosedForm {
    Finite(f64),
    Infinite,
    None,
}

impl ClosedForm {
    pub fn finite(&self) -> Option<f64> {
        match self {
            ClosedForm::Finite(v) => Some(*v),
            _ => None,
        }
    }
}

/// Verification verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    /// estimate matches the closed form within tolerance and the
    /// witness ratio does not exceed the closed form
    Verified,
    /// estimate stays below the stated bound (inequality statements)
    BoundHolds,
    /// a stated equality or bound is numerically violated
    Failed,
    /// the numerics cannot distinguish (still rising at the horizon,
    /// tolerance finer than the method accuracy, conditions unchecked)
    Inconclusive,
}

impl Verdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Verified | Verdict::BoundHolds)
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Verified => "verified",
            Verdict::BoundHolds => "bound-holds",
            Verdict::Failed => "failed",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

/// Tolerances a verdict was issued under.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub rel: f64,
    pub abs: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            rel: 1e-8,
            abs: 1e-10,
        }
    }
}

/// Witness achieving (or approaching) the norm, described for the report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WitnessInfo {
    /// prefix indicator (1,…,1,0,…) with `ones` ones; `check_ratio` is
    /// the ratio recomputed through matrix application on a truncation
    PrefixIndicator { ones: usize, check_ratio: f64 },
    /// the weight sequence itself (e(w,∞) extremal input)
    WeightPrefix { len: usize, check_ratio: f64 },
    /// power-decay witness n^{-1/p-δ}
    PowerDecay { delta: f64, truncation: usize },
    /// free-form description
    Description(String),
    None,
}

/// Convergence table entry: value observed at a truncation/grid point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConvergencePoint {
    pub n: usize,
    pub value: f64,
}

/// Structured outcome of one theorem verification.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormReport {
    pub theorem: TheoremId,
    pub closed_form: ClosedForm,
    pub estimate: f64,
    /// certified enclosure of the estimate, when the computation
    /// carries brackets
    pub bracket: Option<(f64, f64)>,
    pub witness: WitnessInfo,
    pub convergence: Vec<ConvergencePoint>,
    /// n attaining the reported sup, when meaningful
    pub argmax_n: Option<usize>,
    pub verdict: Verdict,
    pub tolerances: Tolerances,
    /// blocks a passing verdict when set (condition failures, witness
    /// mismatches, duality gaps)
    pub caveat: Option<String>,
    pub notes: Vec<String>,
}

impl NormReport {
    pub fn new(theorem: TheoremId) -> Self {
        NormReport {
            theorem,
            closed_form: ClosedForm::None,
            estimate: f64::NAN,
            bracket: None,
            witness: WitnessInfo::None,
            convergence: Vec::new(),
            argmax_n: None,
            verdict: Verdict::Inconclusive,
            tolerances: Tolerances::default(),
            caveat: None,
            notes: Vec::new(),
        }
    }

    /// Issue the verdict for an equality statement: `verified` needs the
    /// estimate within tolerance of the closed form and the witness
    /// ratio not above it; a mismatch finer than the certified bracket
    /// width stays `inconclusive` rather than `failed`.
    pub fn judge_equality(&mut self) {
        if let Some(caveat) = &self.caveat {
            self.verdict = Verdict::Inconclusive;
            self.notes.push(format!("not judged: {caveat}"));
            return;
        }
        let Some(closed) = self.closed_form.finite() else {
            self.verdict = Verdict::Inconclusive;
            return;
        };
        let tol = self.tolerances.abs + self.tolerances.rel * closed.abs();
        let err = (self.estimate - closed).abs();
        let witness_ok = match &self.witness {
            WitnessInfo::PrefixIndicator { check_ratio, .. }
            | WitnessInfo::WeightPrefix { check_ratio, .. } => *check_ratio <= closed + tol,
            _ => true,
        };
        if err <= tol && witness_ok {
            self.verdict = Verdict::Verified;
        } else {
            let method_floor = self.bracket.map_or(0.0, |(lo, hi)| hi - lo);
            if err <= method_floor {
                self.verdict = Verdict::Inconclusive;
                self.notes.push(format!(
                    "mismatch {err:.3e} is within the certified bracket width {method_floor:.3e}; tolerance is finer than the method"
                ));
            } else {
                self.verdict = Verdict::Failed;
            }
        }
    }

    /// Issue the verdict for an inequality statement: `bound-holds` when
    /// the estimate (its upper bracket, when present) stays below the
    /// closed-form bound plus tolerance.
    pub fn judge_bound(&mut self) {
        if let Some(caveat) = &self.caveat {
            self.verdict = Verdict::Inconclusive;
            self.notes.push(format!("not judged: {caveat}"));
            return;
        }
        let Some(bound) = self.closed_form.finite() else {
            self.verdict = Verdict::Inconclusive;
            return;
        };
        let tol = self.tolerances.abs + self.tolerances.rel * bound.abs();
        let high = self.bracket.map_or(self.estimate, |(_, hi)| hi);
        if high <= bound + tol {
            self.verdict = Verdict::BoundHolds;
        } else if self.estimate <= bound + tol {
            self.verdict = Verdict::Inconclusive;
            self.notes.push(
                "estimate is below the bound but its bracket is not; tighten the tail policy"
                    .into(),
            );
        } else {
            self.verdict = Verdict::Failed;
        }
    }
}
