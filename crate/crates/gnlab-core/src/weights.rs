//! Weight families and their transformation calculus.
//!
//! A weight is a positive function `h` on an interval `(0, B)` that is
//! integrable near zero. From `h` and a real offset `C` we build
//!
//! ```text
//! H_C(λ) = ∫_0^λ h(s) ds − C
//! T(λ)   = H_C(λ) / h(λ)
//! G(λ)   = T(λ) · h(λ)^e        for e = 1/p or 2/p
//! ```
//!
//! The derived constants that drive the inequality checkers (the sup of
//! `|G'|/h^e`, the smallness parameter `D`, the absorbed constants `A` and
//! `A_Ω`) live in [`ConstantsLedger`], built by [`build_ledger`].
//!
//! Everything here is immutable after construction and safe to share across
//! worker threads.

use serde::Serialize;
use std::path::Path;

use crate::error::{Error, Result};
use crate::spline::MonotoneCubic;
use crate::tol;

/// The supported weight shapes.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum WeightFamily {
    /// h(λ) = λ^θ on (0, ∞); needs θ > −1 for integrability at zero.
    PowerLaw { theta: f64 },
    /// h(λ) = α λ^{α−1} on (0, ∞) with α > 0, so that ∫_0^λ h = λ^α.
    PowerLawScaled { alpha: f64 },
    /// h(λ) = (1−λ)^α on (0, 1).
    ShiftedPower { alpha: f64 },
    /// h ≡ value > 0 on (0, ∞).
    Constant { value: f64 },
    /// h given by a strictly positive table, interpolated monotonically.
    /// No extrapolation: the domain is the tabulated range.
    Tabulated {
        #[serde(skip)]
        table: MonotoneCubic,
        /// Provenance of the table (file path), echoed in reports.
        source: String,
    },
}

/// A weight family together with the offset `C` of its antiderivative.
#[derive(Debug, Clone, Serialize)]
pub struct WeightSpec {
    #[serde(flatten)]
    pub family: WeightFamily,
    /// Offset in H_C(λ) = ∫_0^λ h − C. Note H_C(0) = −C, so H_C(0) ≥ 0
    /// is exactly C ≤ 0.
    #[serde(rename = "C")]
    pub c: f64,
    /// Upper endpoint of the weight domain (∞ for the unbounded families).
    #[serde(rename = "B")]
    pub b: f64,
}

impl WeightSpec {
    pub fn new(family: WeightFamily, c: f64) -> Result<Self> {
        let b = match &family {
            WeightFamily::PowerLaw { theta } => {
                if !theta.is_finite() {
                    return Err(Error::Domain("power-law exponent must be finite".into()));
                }
                if *theta <= -1.0 {
                    return Err(Error::Integrability(format!(
                        "λ^θ with θ = {theta} is not integrable near 0 (needs θ > −1)"
                    )));
                }
                f64::INFINITY
            }
            WeightFamily::PowerLawScaled { alpha } => {
                if !(alpha.is_finite() && *alpha > 0.0) {
                    return Err(Error::Domain(format!(
                        "scaled power law needs α > 0, got {alpha}"
                    )));
                }
                f64::INFINITY
            }
            WeightFamily::ShiftedPower { alpha } => {
                if !alpha.is_finite() {
                    return Err(Error::Domain("shifted-power exponent must be finite".into()));
                }
                1.0
            }
            WeightFamily::Constant { value } => {
                if !(value.is_finite() && *value > 0.0) {
                    return Err(Error::Domain(format!(
                        "constant weight must be positive, got {value}"
                    )));
                }
                f64::INFINITY
            }
            WeightFamily::Tabulated { table, .. } => {
                let (a, b) = table.domain();
                if a < 0.0 {
                    return Err(Error::Domain(
                        "tabulated weight abscissae must be non-negative".into(),
                    ));
                }
                // positivity on a dense probe grid (the interpolant is
                // monotone between nodes, but the data itself must be > 0)
                for k in 0..=512 {
                    let q = a + (b - a) * f64::from(k) / 512.0;
                    let v = table.eval(q)?;
                    if !(v > 0.0) {
                        return Err(Error::Domain(format!(
                            "tabulated weight is not strictly positive at λ = {q} (h = {v})"
                        )));
                    }
                }
                b
            }
        };
        if !c.is_finite() {
            return Err(Error::Domain("offset C must be finite".into()));
        }
        Ok(WeightSpec { family, c, b })
    }

    /// Load a two-column CSV (`lambda,h`) into a tabulated weight.
    pub fn tabulated_from_csv(path: &Path, c: f64) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(true)
            .from_path(path)?;
        let mut xs = Vec::new();
        let mut ys = Vec::new();
        for rec in rdr.records() {
            let rec = rec?;
            if rec.len() < 2 {
                return Err(Error::Domain(
                    "tabulated weight CSV needs two columns: lambda,h".into(),
                ));
            }
            let x: f64 = rec[0].trim().parse().map_err(|e| {
                Error::Domain(format!("bad lambda value {:?}: {e}", &rec[0]))
            })?;
            let y: f64 = rec[1].trim().parse().map_err(|e| {
                Error::Domain(format!("bad h value {:?}: {e}", &rec[1]))
            })?;
            xs.push(x);
            ys.push(y);
        }
        let table = MonotoneCubic::new(xs, ys)?;
        WeightSpec::new(
            WeightFamily::Tabulated {
                table,
                source: path.display().to_string(),
            },
            c,
        )
    }

    /// Upper endpoint of the domain of h.
    pub fn upper_bound(&self) -> f64 {
        self.b
    }

    /// Whether H_C(0) = −C is non-negative, as the boundary-term arguments
    /// require.
    pub fn hc0_nonneg(&self) -> bool {
        self.c <= 0.0
    }

    fn check_open_domain(&self, lambda: f64) -> Result<()> {
        let lo = match &self.family {
            WeightFamily::Tabulated { table, .. } => table.domain().0,
            _ => 0.0,
        };
        if !(lambda > lo && lambda < self.b) {
            return Err(Error::Domain(format!(
                "λ = {lambda} outside the open weight domain ({lo}, {})",
                self.b
            )));
        }
        Ok(())
    }

    /// h(λ) for λ in (0, B).
    pub fn eval_h(&self, lambda: f64) -> Result<f64> {
        self.check_open_domain(lambda)?;
        Ok(match &self.family {
            WeightFamily::PowerLaw { theta } => lambda.powf(*theta),
            WeightFamily::PowerLawScaled { alpha } => alpha * lambda.powf(alpha - 1.0),
            WeightFamily::ShiftedPower { alpha } => (1.0 - lambda).powf(*alpha),
            WeightFamily::Constant { value } => *value,
            WeightFamily::Tabulated { table, .. } => table.eval(lambda)?,
        })
    }

    /// h'(λ), used in the closed-form expression for |G'|/h^e.
    pub fn eval_h_prime(&self, lambda: f64) -> Result<f64> {
        self.check_open_domain(lambda)?;
        Ok(match &self.family {
            WeightFamily::PowerLaw { theta } => theta * lambda.powf(theta - 1.0),
            WeightFamily::PowerLawScaled { alpha } => {
                alpha * (alpha - 1.0) * lambda.powf(alpha - 2.0)
            }
            WeightFamily::ShiftedPower { alpha } => -alpha * (1.0 - lambda).powf(alpha - 1.0),
            WeightFamily::Constant { .. } => 0.0,
            WeightFamily::Tabulated { table, .. } => table.eval_deriv(lambda)?,
        })
    }

    /// H_C(λ) = ∫_0^λ h − C for λ in [0, B). At λ = 0 this is −C exactly.
    pub fn eval_big_h(&self, lambda: f64) -> Result<f64> {
        if lambda == 0.0 {
            return Ok(-self.c);
        }
        self.check_open_domain(lambda)?;
        let integral = match &self.family {
            WeightFamily::PowerLaw { theta } => {
                if *theta <= -1.0 {
                    return Err(Error::Integrability(format!(
                        "λ^θ with θ = {theta} has no finite antiderivative from 0"
                    )));
                }
                lambda.powf(theta + 1.0) / (theta + 1.0)
            }
            WeightFamily::PowerLawScaled { alpha } => lambda.powf(*alpha),
            WeightFamily::ShiftedPower { alpha } => {
                if (*alpha - (-1.0)).abs() < 1e-300 {
                    -(1.0 - lambda).ln()
                } else {
                    (1.0 - (1.0 - lambda).powf(alpha + 1.0)) / (alpha + 1.0)
                }
            }
            WeightFamily::Constant { value } => value * lambda,
            WeightFamily::Tabulated { table, .. } => {
                // the table starts at some x0 > 0; close the unsampled head
                // interval [0, x0] with the flat extension h ≡ h(x0)
                let (x0, _) = table.domain();
                table.integral_from_start(lambda)? + x0 * table.eval(x0)?
            }
        };
        Ok(integral - self.c)
    }

    /// T(λ) = H_C(λ)/h(λ) for λ in (0, B).
    pub fn eval_t(&self, lambda: f64) -> Result<f64> {
        Ok(self.eval_big_h(lambda)? / self.eval_h(lambda)?)
    }

    /// G(λ) = T(λ) h(λ)^e. `weight_exponent` must be 1/p or 2/p.
    pub fn eval_g(&self, p: f64, weight_exponent: f64, lambda: f64) -> Result<f64> {
        check_weight_exponent(p, weight_exponent)?;
        Ok(self.eval_t(lambda)? * self.eval_h(lambda)?.powf(weight_exponent))
    }

    /// G'(λ) via the product rule:
    /// G' = h^e · (1 − (1−e) T h'/h).
    pub fn eval_g_prime(&self, p: f64, weight_exponent: f64, lambda: f64) -> Result<f64> {
        check_weight_exponent(p, weight_exponent)?;
        let h = self.eval_h(lambda)?;
        let hp = self.eval_h_prime(lambda)?;
        let t = self.eval_t(lambda)?;
        Ok(h.powf(weight_exponent) * (1.0 - (1.0 - weight_exponent) * t * hp / h))
    }

    /// |G'(λ)| / h(λ)^e without forming either power of h — the h^e factors
    /// cancel analytically, which keeps the ratio finite where h itself
    /// under- or overflows.
    pub fn g_prime_over_he(&self, weight_exponent: f64, lambda: f64) -> Result<f64> {
        let h = self.eval_h(lambda)?;
        let hp = self.eval_h_prime(lambda)?;
        let t = self.eval_t(lambda)?;
        Ok((1.0 - (1.0 - weight_exponent) * t * hp / h).abs())
    }

    /// Human-readable one-line descriptor for report rows.
    pub fn descriptor(&self) -> String {
        match &self.family {
            WeightFamily::PowerLaw { theta } => {
                format!("power_law(theta={}, C={})", theta, self.c)
            }
            WeightFamily::PowerLawScaled { alpha } => {
                format!("power_law_scaled(alpha={}, C={})", alpha, self.c)
            }
            WeightFamily::ShiftedPower { alpha } => {
                format!("shifted_power(alpha={}, C={})", alpha, self.c)
            }
            WeightFamily::Constant { value } => {
                format!("constant(value={}, C={})", value, self.c)
            }
            WeightFamily::Tabulated { source, .. } => {
                format!("tabulated({}, C={})", source, self.c)
            }
        }
    }
}

fn check_weight_exponent(p: f64, e: f64) -> Result<()> {
    if !(p > 1.0) {
        return Err(Error::Domain(format!("exponent p = {p} must exceed 1")));
    }
    let ok = (e - 1.0 / p).abs() <= 1e-12 || (e - 2.0 / p).abs() <= 1e-12;
    if !ok {
        return Err(Error::Domain(format!(
            "weight exponent {e} must be 1/p = {} or 2/p = {}",
            1.0 / p,
            2.0 / p
        )));
    }
    Ok(())
}

/// Result of a grid-based sup estimate.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SupEstimate {
    /// The estimated supremum of the ratio.
    pub value: f64,
    /// Where it was attained on the final grid.
    pub argmax: f64,
    /// Change in the estimate produced by the last refinement pass;
    /// a rough uncertainty indicator.
    pub refinement_delta: f64,
}

/// Grid parameters for [`sup_ratio`].
#[derive(Debug, Clone, Copy)]
pub struct SupGridConfig {
    /// Number of nodes per pass (must be ≥ 1000).
    pub nodes: usize,
    /// Local refinement passes around the running maximum.
    pub refinements: usize,
}

impl Default for SupGridConfig {
    fn default() -> Self {
        SupGridConfig {
            nodes: tol::SUP_GRID_POINTS,
            refinements: tol::SUP_REFINEMENTS,
        }
    }
}

/// Estimate sup of `num(λ)/den(λ)` over the open interval `(0, upper)`.
///
/// The coarse pass is log-spaced (compactified through λ = u/(1−u) when
/// `upper` is infinite); each refinement pass re-grids around the running
/// maximum in the grid parameter. Any NaN or infinite evaluation is an
/// error.
pub fn sup_ratio(
    num: &dyn Fn(f64) -> Result<f64>,
    den: &dyn Fn(f64) -> Result<f64>,
    upper: f64,
    cfg: &SupGridConfig,
) -> Result<SupEstimate> {
    let lo = if upper.is_finite() {
        upper * 1e-12
    } else {
        1e-12
    };
    sup_ratio_on(num, den, lo, upper, cfg)
}

/// Same as [`sup_ratio`] with an explicit lower endpoint; used for weights
/// whose domain starts above zero (tabulated data).
pub(crate) fn sup_ratio_on(
    num: &dyn Fn(f64) -> Result<f64>,
    den: &dyn Fn(f64) -> Result<f64>,
    lower: f64,
    upper: f64,
    cfg: &SupGridConfig,
) -> Result<SupEstimate> {
    if cfg.nodes < 1000 {
        return Err(Error::Domain(format!(
            "sup grid needs at least 1000 nodes, got {}",
            cfg.nodes
        )));
    }
    if !(lower > 0.0) || !(upper > lower) {
        return Err(Error::Domain(format!(
            "sup domain ({lower}, {upper}) is malformed"
        )));
    }
    let nodes = cfg.nodes;

    // map a grid parameter t in [0,1] to a point of the open interval
    let to_lambda: Box<dyn Fn(f64) -> f64> = if upper.is_finite() {
        let m = tol::SUP_EDGE_MARGIN;
        let a = lower.ln();
        let b = (upper * (1.0 - m)).ln();
        Box::new(move |t: f64| (a + (b - a) * t).exp())
    } else {
        // compactified coordinate λ = u/(1−u); u sweeps (lower', 1−margin)
        let u_lo = lower / (1.0 + lower);
        let a = u_lo.ln();
        let b = (1.0 - tol::SUP_EDGE_MARGIN).ln();
        Box::new(move |t: f64| {
            let u = (a + (b - a) * t).exp();
            u / (1.0 - u)
        })
    };

    let ratio_at = |lambda: f64| -> Result<f64> {
        let nv = num(lambda)?;
        let dv = den(lambda)?;
        let r = nv / dv;
        if !r.is_finite() {
            return Err(Error::NonFinite(format!(
                "ratio {nv}/{dv} at λ = {lambda:e} is not finite"
            )));
        }
        Ok(r)
    };

    // coarse pass over t in [0,1]
    let mut best_val = f64::NEG_INFINITY;
    let mut best_t = 0.0;
    for i in 0..nodes {
        let t = i as f64 / (nodes - 1) as f64;
        let r = ratio_at(to_lambda(t))?;
        if r > best_val {
            best_val = r;
            best_t = t;
        }
    }

    // refinement passes: shrink the t-window around the running max
    let mut delta = 0.0;
    let mut half_width = 2.0 / (nodes - 1) as f64;
    for _ in 0..cfg.refinements {
        let t_lo = (best_t - half_width).max(0.0);
        let t_hi = (best_t + half_width).min(1.0);
        let before = best_val;
        for i in 0..nodes {
            let t = t_lo + (t_hi - t_lo) * i as f64 / (nodes - 1) as f64;
            let r = ratio_at(to_lambda(t))?;
            if r > best_val {
                best_val = r;
                best_t = t;
            }
        }
        delta = best_val - before;
        half_width = 2.0 * (t_hi - t_lo) / (nodes - 1) as f64;
    }

    Ok(SupEstimate {
        value: best_val,
        argmax: to_lambda(best_t),
        refinement_delta: delta,
    })
}

/// The control map appearing in the two-sided comparison
/// `c1 G ≤ |T| h^{2/p} ≤ c2 G`.
#[derive(Debug, Clone, Copy, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GControl {
    /// Use |T| h^{2/p} itself as the control (c1 = c2 = 1).
    SelfMap,
    /// The control is a constant map.
    Constant { value: f64 },
}

impl GControl {
    fn eval(&self, spec: &WeightSpec, p: f64, lambda: f64) -> Result<f64> {
        match self {
            GControl::SelfMap => Ok(spec
                .eval_t(lambda)?
                .abs()
                * spec.eval_h(lambda)?.powf(2.0 / p)),
            GControl::Constant { value } => Ok(*value),
        }
    }
}

/// Every constant an inequality checker needs, derived from one weight and
/// one (p, n) pair.
#[derive(Debug, Clone, Serialize)]
pub struct ConstantsLedger {
    pub p: f64,
    pub n: u32,
    /// C(n,p) = (p − 1 + √(n−1))^{p/2}.
    pub c_np: f64,
    /// sup |G'|/h^{1/p} over (0,B).
    pub c_hcp: Option<f64>,
    /// D = (p−2)·(n−1)p/(n−p)·c_hcp; needs p < n.
    pub d_goal5: Option<f64>,
    /// A = (2(p−1)/(1−D²))^{p/2}; needs D < 1.
    pub a_goal5: Option<f64>,
    /// E = sup |G'|/h^{2/p} for the control map.
    pub e_goal6: Option<f64>,
    /// Two-sided control constants c1 G ≤ |T| h^{2/p} ≤ c2 G.
    pub c1: Option<f64>,
    pub c2: Option<f64>,
    /// Operator-comparison constant for the spade operator, user-supplied
    /// or estimated empirically.
    pub dtilde: Option<f64>,
    /// κ = (p−2)·c2·dtilde·E.
    pub kappa: Option<f64>,
    /// A_Ω = ((p−2)·c2/c1·dtilde·E + (p−1)) / (1−κ); needs κ < 1.
    pub a_omega: Option<f64>,
    pub admissible_goal5: bool,
    pub admissible_goal6: bool,
    /// Whether G(λ) → 0 as λ → 0⁺ (checked on a probe sequence).
    pub g_vanishes_at_zero: Option<bool>,
}

/// C(n,p) = (p − 1 + √(n−1))^{p/2}.
pub fn c_np(n: u32, p: f64) -> f64 {
    (p - 1.0 + f64::from(n - 1).sqrt()).powf(p / 2.0)
}

/// sup |G'|/h^e with closed forms where the family admits one, otherwise a
/// grid estimate of the ratio identity |1 − (1−e) T h'/h|.
fn sup_gprime_over_he(spec: &WeightSpec, e: f64) -> Result<f64> {
    // Families where T h'/h is a constant admit an exact sup.
    let th_ratio: Option<f64> = match &spec.family {
        WeightFamily::Constant { .. } => Some(0.0),
        WeightFamily::PowerLaw { theta } => {
            if *theta == 0.0 {
                Some(0.0) // h constant: offset irrelevant
            } else if spec.c == 0.0 {
                Some(theta / (1.0 + theta))
            } else {
                None
            }
        }
        WeightFamily::PowerLawScaled { alpha } => {
            if spec.c == 0.0 {
                Some((alpha - 1.0) / alpha)
            } else {
                None
            }
        }
        WeightFamily::ShiftedPower { alpha } => {
            if *alpha != -1.0 && (spec.c - 1.0 / (1.0 + alpha)).abs() <= 1e-14 {
                Some(alpha / (1.0 + alpha))
            } else {
                None
            }
        }
        WeightFamily::Tabulated { .. } => None,
    };
    if let Some(r) = th_ratio {
        return Ok((1.0 - (1.0 - e) * r).abs());
    }
    let lower = match &spec.family {
        // a table may start at exactly 0; keep the probe strictly interior
        WeightFamily::Tabulated { table, .. } => {
            (table.domain().0 * (1.0 + 1e-9)).max(spec.upper_bound() * 1e-12)
        }
        _ => {
            if spec.upper_bound().is_finite() {
                spec.upper_bound() * 1e-12
            } else {
                1e-12
            }
        }
    };
    let est = sup_ratio_on(
        &|l| spec.g_prime_over_he(e, l),
        &|_| Ok(1.0),
        lower,
        spec.upper_bound(),
        &SupGridConfig::default(),
    )?;
    Ok(est.value)
}

/// Probe whether G(λ) = T h^{1/p} tends to zero at the left endpoint.
fn g_vanishes(spec: &WeightSpec, p: f64) -> bool {
    let probes = [1e-4, 1e-6, 1e-8];
    let mut vals = Vec::new();
    for &t in &probes {
        let lam = if spec.upper_bound().is_finite() {
            spec.upper_bound() * t
        } else {
            t
        };
        match spec.eval_g(p, 1.0 / p, lam) {
            Ok(v) => vals.push(v.abs()),
            Err(_) => return false,
        }
    }
    // decreasing toward zero and already small at the last probe
    vals[2] < 1e-2 && vals[2] <= vals[1] * 1.01 && vals[1] <= vals[0] * 1.01
}

/// Assemble the constants ledger for a weight at given (p, n).
///
/// `p` must exceed 2 and `C ≤ 0` (so that H_C(0) ≥ 0); these are structural
/// for every inequality the ledger serves. Constants whose own hypotheses
/// fail (p ≥ n, D ≥ 1, missing control map) are left unset and the
/// admissibility booleans record why.
pub fn build_ledger(
    spec: &WeightSpec,
    p: f64,
    n: u32,
    dtilde: Option<f64>,
    g_control: Option<GControl>,
) -> Result<ConstantsLedger> {
    if !(p > 2.0) {
        return Err(Error::hypothesis(
            "p_greater_than_two",
            format!("the derived constants require p > 2, got p = {p}"),
        ));
    }
    if n < 2 {
        return Err(Error::hypothesis(
            "dimension_at_least_two",
            format!("n = {n}"),
        ));
    }
    if !spec.hc0_nonneg() {
        return Err(Error::hypothesis(
            "hc0_nonneg",
            format!("H_C(0) = −C must be ≥ 0, got C = {}", spec.c),
        ));
    }

    let c_np_v = c_np(n, p);

    // ---- single-constant route (needs p < n) ----
    let c_hcp = Some(sup_gprime_over_he(spec, 1.0 / p)?);
    let (d_goal5, a_goal5);
    if (f64::from(n)) > p {
        let d = (p - 2.0) * (f64::from(n) - 1.0) * p / (f64::from(n) - p) * c_hcp.unwrap();
        d_goal5 = Some(d);
        a_goal5 = if d < 1.0 {
            Some((2.0 * (p - 1.0) / (1.0 - d * d)).powf(p / 2.0))
        } else {
            None
        };
    } else {
        d_goal5 = None;
        a_goal5 = None;
    }
    let g_vanishes_at_zero = Some(g_vanishes(spec, p));
    let admissible_goal5 = matches!(d_goal5, Some(d) if d < 1.0)
        && g_vanishes_at_zero == Some(true)
        && c_hcp.map(f64::is_finite).unwrap_or(false);

    // ---- general-domain route (needs a control map and dtilde) ----
    let (mut e_goal6, mut c1, mut c2, mut kappa, mut a_omega) = (None, None, None, None, None);
    let mut admissible_goal6 = false;
    if let (Some(ctrl), Some(dt)) = (g_control, dtilde) {
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(Error::hypothesis(
                "dtilde_positive",
                format!("operator-comparison constant must be positive, got {dt}"),
            ));
        }
        let e = match ctrl {
            GControl::Constant { .. } => 0.0,
            GControl::SelfMap => sup_gprime_over_he(spec, 2.0 / p)?,
        };
        // two-sided control constants on a probe grid
        let (lo, hi) = control_bounds(spec, p, &ctrl)?;
        e_goal6 = Some(e);
        c1 = Some(lo);
        c2 = Some(hi);
        let k = (p - 2.0) * hi * dt * e;
        kappa = Some(k);
        if k < 1.0 && lo > 0.0 {
            a_omega = Some(((p - 2.0) * hi / lo * dt * e + (p - 1.0)) / (1.0 - k));
        }
        admissible_goal6 = k < 1.0 && lo > 0.0 && hi.is_finite();
    }

    Ok(ConstantsLedger {
        p,
        n,
        c_np: c_np_v,
        c_hcp,
        d_goal5,
        a_goal5,
        e_goal6,
        c1,
        c2,
        dtilde,
        kappa,
        a_omega,
        admissible_goal5,
        admissible_goal6,
        g_vanishes_at_zero,
    })
}

/// inf and sup of |T| h^{2/p} / G over the probe grid.
fn control_bounds(spec: &WeightSpec, p: f64, ctrl: &GControl) -> Result<(f64, f64)> {
    if matches!(ctrl, GControl::SelfMap) {
        return Ok((1.0, 1.0));
    }
    let upper = spec.upper_bound();
    let lower = match &spec.family {
        // a table may start at exactly 0; keep the probe strictly interior
        WeightFamily::Tabulated { table, .. } => {
            (table.domain().0 * (1.0 + 1e-9)).max(upper * 1e-9)
        }
        _ => {
            if upper.is_finite() {
                upper * 1e-9
            } else {
                1e-9
            }
        }
    };
    let n_probe = 2048;
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n_probe {
        let t = (i as f64 + 0.5) / n_probe as f64;
        let lam = if upper.is_finite() {
            // log-spaced over (lower, upper*(1-1e-9))
            let a = lower.ln();
            let b = (upper * (1.0 - 1e-9)).ln();
            (a + (b - a) * t).exp()
        } else {
            let u = 1e-9 + (1.0 - 2e-9) * t;
            u / (1.0 - u)
        };
        let th = spec.eval_t(lam)?.abs() * spec.eval_h(lam)?.powf(2.0 / p);
        let g = ctrl.eval(spec, p, lam)?;
        if !(g > 0.0) {
            return Err(Error::Degenerate(format!(
                "control map must be positive, got {g} at λ = {lam}"
            )));
        }
        let r = th / g;
        if !r.is_finite() {
            return Err(Error::NonFinite(format!(
                "control ratio not finite at λ = {lam:e}"
            )));
        }
        lo = lo.min(r);
        hi = hi.max(r);
    }
    Ok((lo, hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn power_law(theta: f64, c: f64) -> WeightSpec {
        WeightSpec::new(WeightFamily::PowerLaw { theta }, c).unwrap()
    }

    #[test]
    fn constant_weight_transform_is_affine() {
        let w = WeightSpec::new(WeightFamily::Constant { value: 1.0 }, 0.0).unwrap();
        assert_eq!(w.eval_t(5.0).unwrap(), 5.0);
        assert_eq!(w.eval_big_h(0.0).unwrap(), 0.0);
    }

    #[test]
    fn offset_enters_h_exactly() {
        let w0 = power_law(1.0, 0.0);
        let w1 = power_law(1.0, -2.5);
        for &l in &[0.1, 1.0, 7.3] {
            let a = w0.eval_big_h(l).unwrap();
            let b = w1.eval_big_h(l).unwrap();
            assert_eq!(b - a, 2.5);
        }
        assert_eq!(w1.eval_big_h(0.0).unwrap(), 2.5);
    }

    #[test]
    fn non_integrable_power_rejected() {
        let r = WeightSpec::new(WeightFamily::PowerLaw { theta: -1.0 }, 0.0);
        assert!(matches!(r, Err(Error::Integrability(_))));
    }

    #[test]
    fn domain_is_open() {
        let w = WeightSpec::new(WeightFamily::ShiftedPower { alpha: 2.0 }, 0.0).unwrap();
        assert!(w.eval_h(0.0).is_err());
        assert!(w.eval_h(1.0).is_err());
        assert!(w.eval_h(0.5).is_ok());
    }

    #[test]
    fn sup_ratio_is_one_for_equal_maps() {
        let est = sup_ratio(
            &|l| Ok(l * l + 1.0),
            &|l| Ok(l * l + 1.0),
            1.0,
            &SupGridConfig::default(),
        )
        .unwrap();
        assert!((est.value - 1.0).abs() < 1e-14);
    }

    #[test]
    fn sup_ratio_monotone_edge() {
        let est = sup_ratio(
            &|l| Ok(l),
            &|l| Ok(1.0 - l),
            0.9,
            &SupGridConfig::default(),
        )
        .unwrap();
        assert!((est.value - 9.0).abs() < 1e-5, "got {}", est.value);
    }
}
