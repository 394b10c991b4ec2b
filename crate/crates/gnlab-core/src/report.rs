//! Inequality check reports and the three-valued verdict logic.
//!
//! Every checker returns an [`InequalityReport`]: the raw integrals on both
//! sides, the theorem constant, the hypothesis checklist, and a verdict.
//! Because both sides come out of adaptive quadrature, the comparison is
//! interval-based: each side carries an uncertainty band of
//! [`crate::tol::VERDICT_SIGMA`] times its error estimate, and the verdict
//! is `inconclusive` whenever the bands overlap — near-equality cases are
//! reported as such rather than guessed.

use serde::Serialize;

use crate::quadrature::QuadResult;
use crate::tol;

/// Which inequality a report refers to. The serialized identifiers are part
/// of the CSV/JSON interface and are kept short and stable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TheoremId {
    /// Unweighted gradient-interpolation bound (ratio tracking only).
    ClassicalGn,
    /// Full-Hessian weighted bound with constant (p−1+√(n−1))^{p/2}.
    Main2,
    /// Split bound through the infinity-Laplacian and the Laplacian.
    Goal3,
    /// Ball bound through the Laplacian plus a Hardy-type remainder.
    Goal4,
    /// Single-constant absorbed bound on balls (smallness parameter D).
    Goal5,
    /// General-domain absorbed bound through the spade operator (κ < 1).
    Goal6,
    /// One-dimensional weighted Hardy inequality with sharp constant.
    Hardy,
    /// Harmonic field on an exterior-domain truncation: the bound fails.
    Counterexample,
}

impl TheoremId {
    pub fn name(self) -> &'static str {
        match self {
            TheoremId::ClassicalGn => "classical_gn",
            TheoremId::Main2 => "main2",
            TheoremId::Goal3 => "goal3",
            TheoremId::Goal4 => "goal4",
            TheoremId::Goal5 => "goal5",
            TheoremId::Goal6 => "goal6",
            TheoremId::Hardy => "hardy",
            TheoremId::Counterexample => "counterexample",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Fails,
    Inconclusive,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

/// One entry of the hypothesis checklist.
#[derive(Debug, Clone, Serialize)]
pub struct HypothesisRecord {
    pub name: String,
    pub satisfied: bool,
    pub detail: String,
}

impl HypothesisRecord {
    pub fn new(name: &str, satisfied: bool, detail: impl Into<String>) -> Self {
        HypothesisRecord {
            name: name.into(),
            satisfied,
            detail: detail.into(),
        }
    }
}

/// One term of the right-hand side: a labeled integral and the multiplier it
/// enters the comparison with (on the comparison scale).
#[derive(Debug, Clone, Serialize)]
pub struct RhsTerm {
    pub label: String,
    pub integral: QuadResult,
    pub multiplier: f64,
}

/// Full record of one inequality check.
#[derive(Debug, Clone, Serialize)]
pub struct InequalityReport {
    pub theorem_id: TheoremId,
    pub p: f64,
    pub n: u32,
    /// Weight descriptor string (family, parameters, offset).
    pub weight: String,
    /// Profile descriptor string.
    pub profile: String,
    /// Raw left-hand integral.
    pub lhs: QuadResult,
    /// Raw right-hand integrals with their multipliers.
    pub rhs_terms: Vec<RhsTerm>,
    /// The theorem constant multiplying the whole right-hand side.
    pub constant: f64,
    /// Left side mapped to the comparison scale (identity or the 2/p power).
    pub lhs_compare: f64,
    /// constant · Σ multiplier_i · term_i on the comparison scale.
    pub rhs_compare: f64,
    /// Propagated uncertainties on the comparison scale.
    pub lhs_sigma: f64,
    pub rhs_sigma: f64,
    /// lhs_compare / rhs_compare; `None` when the right side is exactly 0.
    pub ratio: Option<f64>,
    pub hypotheses: Vec<HypothesisRecord>,
    pub verdict: Verdict,
    /// Free-form observations (critical points, heuristic constants, …).
    pub notes: Vec<String>,
    /// Echo of the inputs needed to reproduce this check in isolation.
    pub config_echo: serde_json::Value,
}

impl InequalityReport {
    /// CSV header used by sweep outputs.
    pub const CSV_HEADER: [&'static str; 9] = [
        "theorem_id",
        "p",
        "n",
        "weight",
        "lhs",
        "rhs",
        "constant",
        "ratio",
        "verdict",
    ];
}

/// Interval comparison of `lhs ≤ rhs` with uncertainty bands.
pub fn decide(lhs: f64, lhs_sigma: f64, rhs: f64, rhs_sigma: f64) -> Verdict {
    let k = tol::VERDICT_SIGMA;
    if lhs + k * lhs_sigma <= rhs - k * rhs_sigma {
        Verdict::Holds
    } else if lhs - k * lhs_sigma > rhs + k * rhs_sigma {
        Verdict::Fails
    } else {
        Verdict::Inconclusive
    }
}

/// Map a non-negative integral with uncertainty to the `x^{2/p}` comparison
/// scale, propagating the error to first order (with a conservative fallback
/// at zero, where the derivative of the power map blows up).
pub fn to_power_scale(value: f64, sigma: f64, exponent: f64) -> (f64, f64) {
    debug_assert!(exponent > 0.0 && exponent <= 1.0);
    if value <= 0.0 {
        return (0.0, sigma.abs().powf(exponent));
    }
    let v = value.powf(exponent);
    let s = exponent * value.powf(exponent - 1.0) * sigma;
    (v, s)
}
