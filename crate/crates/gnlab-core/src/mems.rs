//! Radial solver for the membrane deflection (MEMS) problem
//! Δu = r f(s)/(1−u)² on a ball with u = 0 on the boundary, plus the
//! verification pipeline that feeds the computed solution back into the
//! general-domain gradient bound and the chain-rule composition identity.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::calculus::RadialField;
use crate::error::{Error, Result};
use crate::profiles::{CompositionMap, Profile, SolutionProfile};
use crate::quadrature::{
    integrate_radial, weighted_seminorm, IntegrandKind, QuadConfig, RadialMeasure,
};
use crate::report::{to_power_scale, InequalityReport};
use crate::spline::solve_tridiagonal;
use crate::tol;
use crate::weights::{build_ledger, ConstantsLedger, GControl, WeightFamily, WeightSpec};

/// Radial source term f(s) for the right-hand side r·f(s)/(1−u)².
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SourceTerm {
    Constant { value: f64 },
    Polynomial { coeffs: Vec<f64> },
}

impl Default for SourceTerm {
    fn default() -> Self {
        SourceTerm::Constant { value: -1.0 }
    }
}

impl SourceTerm {
    pub fn eval(&self, s: f64) -> f64 {
        match self {
            SourceTerm::Constant { value } => *value,
            SourceTerm::Polynomial { coeffs } => {
                coeffs.iter().rev().fold(0.0, |acc, c| acc * s + c)
            }
        }
    }
}

fn default_ball_radius() -> f64 {
    1.0
}
fn default_grid_size() -> usize {
    256
}
fn default_newton_tol() -> f64 {
    tol::NEWTON_TOL
}
fn default_continuation_steps() -> usize {
    20
}

/// Problem statement for the radial solver.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MemsConfig {
    /// Space dimension (≥ 2).
    pub n: u32,
    /// Ball radius.
    #[serde(default = "default_ball_radius")]
    pub ball_radius: f64,
    /// Load parameter r ≥ 0; the equation reads Δu = r f/(1−u)².
    pub r_param: f64,
    /// Source profile f (default ≡ −1, which makes the deflection positive).
    #[serde(default)]
    pub f_profile: SourceTerm,
    /// Half the integrability exponent: p = 2q, q > 1.
    pub q: f64,
    /// Number of uniform grid intervals on [0, ball_radius] (≥ 64).
    #[serde(default = "default_grid_size")]
    pub grid_size: usize,
    /// Max-norm residual target for Newton.
    #[serde(default = "default_newton_tol")]
    pub newton_tol: f64,
    /// Number of load increments from 0 to r_param.
    #[serde(default = "default_continuation_steps")]
    pub continuation_steps: usize,
}

impl MemsConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::Domain(format!("dimension n = {} must be ≥ 2", self.n)));
        }
        if !(self.ball_radius > 0.0 && self.ball_radius.is_finite()) {
            return Err(Error::Domain(format!(
                "ball radius must be positive and finite, got {}",
                self.ball_radius
            )));
        }
        if !(self.r_param >= 0.0 && self.r_param.is_finite()) {
            return Err(Error::Domain(format!(
                "load parameter must be nonnegative, got {}",
                self.r_param
            )));
        }
        if !(self.q > 1.0) {
            return Err(Error::Domain(format!("exponent q = {} must exceed 1", self.q)));
        }
        if self.grid_size < 64 {
            return Err(Error::Domain(format!(
                "grid size {} is too coarse; need at least 64 intervals",
                self.grid_size
            )));
        }
        if !(self.newton_tol > 0.0) {
            return Err(Error::Domain("newton tolerance must be positive".into()));
        }
        if self.continuation_steps == 0 {
            return Err(Error::Domain("need at least one continuation step".into()));
        }
        Ok(())
    }

    /// The integrability exponent p = 2q of the verification stage.
    pub fn p(&self) -> f64 {
        2.0 * self.q
    }
}

/// Converged (or best-effort) discrete solution.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MemsSolution {
    /// Uniform radii 0 = s_0 < … < s_N = ball_radius.
    pub grid: Vec<f64>,
    /// Deflection values at the grid radii; w[N] = 0 exactly.
    pub w: Vec<f64>,
    /// Max-norm of the discrete residual at the returned iterate.
    pub residual_norm: f64,
    /// Whether the final load level converged to `newton_tol`.
    pub converged: bool,
    /// Maximum deflection.
    pub max_u: f64,
}

/// Discrete residual of w″ + (n−1)w′/s − r f/(1−w)² at the N unknowns
/// (interior nodes plus the symmetry node at s = 0; w[N] = 0 is imposed).
fn residual(w: &[f64], n: u32, delta: f64, r: f64, f_vals: &[f64]) -> Vec<f64> {
    let n_unknown = w.len() - 1;
    let nf = f64::from(n);
    let mut out = Vec::with_capacity(n_unknown);
    // symmetry node: w′(0) = 0, so Δu(0) = n·w″(0) ≈ 2n (w_1 − w_0)/δ²
    out.push(2.0 * nf * (w[1] - w[0]) / (delta * delta) - r * f_vals[0] / ((1.0 - w[0]) * (1.0 - w[0])));
    for i in 1..n_unknown {
        let s = delta * i as f64;
        let second = (w[i + 1] - 2.0 * w[i] + w[i - 1]) / (delta * delta);
        let first = (w[i + 1] - w[i - 1]) / (2.0 * delta);
        out.push(second + (nf - 1.0) / s * first - r * f_vals[i] / ((1.0 - w[i]) * (1.0 - w[i])));
    }
    out
}

fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0_f64, |m, x| m.max(x.abs()))
}

/// One damped Newton solve at fixed load. Returns the converged residual
/// norm, or `None` when the line search stalls (no damping factor reduces
/// the residual), or `Some(Err(..))` for hard errors.
enum NewtonOutcome {
    Converged(f64),
    MaxIter,
    Stalled,
}

fn newton_at_load(
    w: &mut [f64],
    n: u32,
    delta: f64,
    r: f64,
    f_vals: &[f64],
    tol_res: f64,
) -> Result<NewtonOutcome> {
    let n_unknown = w.len() - 1;
    let nf = f64::from(n);
    for _ in 0..tol::NEWTON_MAX_ITER {
        let res = residual(w, n, delta, r, f_vals);
        let rn = max_abs(&res);
        if !rn.is_finite() {
            return Err(Error::NonFinite("residual is not finite".into()));
        }
        if rn <= tol_res {
            return Ok(NewtonOutcome::Converged(rn));
        }
        // tridiagonal Jacobian
        let mut lower = vec![0.0; n_unknown];
        let mut diag = vec![0.0; n_unknown];
        let mut upper = vec![0.0; n_unknown];
        let dd = delta * delta;
        diag[0] = -2.0 * nf / dd - 2.0 * r * f_vals[0] / (1.0 - w[0]).powi(3);
        if n_unknown > 1 {
            upper[0] = 2.0 * nf / dd;
        }
        for i in 1..n_unknown {
            let s = delta * i as f64;
            lower[i] = 1.0 / dd - (nf - 1.0) / (2.0 * delta * s);
            diag[i] = -2.0 / dd - 2.0 * r * f_vals[i] / (1.0 - w[i]).powi(3);
            if i + 1 < n_unknown {
                upper[i] = 1.0 / dd + (nf - 1.0) / (2.0 * delta * s);
            }
            // the coupling to w[N] = 0 contributes nothing to the residual's
            // derivative, so the last row simply drops its upper entry
        }
        let neg_res: Vec<f64> = res.iter().map(|x| -x).collect();
        let step = solve_tridiagonal(&lower, &diag, &upper, &neg_res)
            .ok_or_else(|| Error::Degenerate("singular Jacobian in the deflection solver".into()))?;

        // damped update, clamped strictly below the contact value w = 1
        let mut tau = 1.0_f64;
        let mut accepted = false;
        while tau >= 2.0_f64.powi(-30) {
            let trial: Vec<f64> = (0..n_unknown).map(|i| w[i] + tau * step[i]).collect();
            let mut full = trial.clone();
            full.push(0.0);
            let trial_max = max_abs(&full);
            if trial_max < 1.0 - 1e-12 {
                let trial_rn = max_abs(&residual(&full, n, delta, r, f_vals));
                if trial_rn.is_finite() && trial_rn < rn * (1.0 - 1e-4 * tau) {
                    w[..n_unknown].copy_from_slice(&trial);
                    accepted = true;
                    break;
                }
            }
            tau *= 0.5;
        }
        if !accepted {
            return Ok(NewtonOutcome::Stalled);
        }
        if w.iter().any(|x| *x >= 1.0) {
            return Err(Error::Range(
                "an accepted iterate reached the contact value w = 1".into(),
            ));
        }
    }
    Ok(NewtonOutcome::MaxIter)
}

/// Damped Newton with load continuation from r = 0.
///
/// Returns the converged solution at the target load, or — when Newton at
/// some intermediate load exhausts its iteration budget without stalling —
/// the last fully converged continuation point with `converged = false`.
/// A stalled line search is reported as [`Error::PullIn`] carrying the last
/// load level that did converge (an empirical lower bound for the pull-in
/// threshold).
pub fn solve_mems(cfg: &MemsConfig) -> Result<MemsSolution> {
    cfg.validate()?;
    let n_int = cfg.grid_size;
    let delta = cfg.ball_radius / n_int as f64;
    let grid: Vec<f64> = (0..=n_int).map(|i| delta * i as f64).collect();
    let f_vals: Vec<f64> = grid.iter().map(|s| cfg.f_profile.eval(*s)).collect();
    for (i, fv) in f_vals.iter().enumerate() {
        if !fv.is_finite() {
            return Err(Error::NonFinite(format!(
                "source profile is not finite at s = {}",
                grid[i]
            )));
        }
    }

    let mut w = vec![0.0_f64; n_int + 1];
    let mut last_good_r = 0.0_f64;
    let mut last_good_w = w.clone();
    let mut last_good_res = 0.0_f64;

    let steps = cfg.continuation_steps;
    for k in 0..=steps {
        let r_k = cfg.r_param * k as f64 / steps as f64;
        match newton_at_load(&mut w, cfg.n, delta, r_k, &f_vals, cfg.newton_tol)? {
            NewtonOutcome::Converged(rn) => {
                last_good_r = r_k;
                last_good_w.copy_from_slice(&w);
                last_good_res = rn;
            }
            NewtonOutcome::Stalled => {
                return Err(Error::PullIn { last_good_r });
            }
            NewtonOutcome::MaxIter => {
                let max_u = last_good_w.iter().fold(0.0_f64, |m, x| m.max(*x));
                return Ok(MemsSolution {
                    grid,
                    w: last_good_w,
                    residual_norm: last_good_res,
                    converged: false,
                    max_u,
                });
            }
        }
    }
    let max_u = w.iter().fold(0.0_f64, |m, x| m.max(*x));
    Ok(MemsSolution {
        grid,
        w,
        residual_norm: last_good_res,
        converged: true,
        max_u,
    })
}

/// Bridge a computed solution to a radial field (cubic interpolation with
/// jets from the spline's exact derivatives). The field construction
/// re-validates 0 < w < 1 on the interior and the boundary condition, so a
/// solution violating the positivity hypothesis is rejected here, not
/// silently verified.
pub fn solution_field(sol: &MemsSolution, cfg: &MemsConfig) -> Result<RadialField> {
    if !sol.converged {
        return Err(Error::hypothesis(
            "solution_converged",
            "verification requires a converged solution",
        ));
    }
    let profile = SolutionProfile::from_samples(&sol.grid, &sol.w, "mems-solver")?;
    RadialField::new(
        Profile::Solution(profile),
        cfg.n,
        0.0,
        cfg.ball_radius,
        1.0,
        true,
    )
}

/// The weight ansatz the regularity recipe selects for the deflection
/// nonlinearity: h(λ) = (1−λ)^{−q} with offset C = 1/(1−q).
pub fn mems_weight(q: f64) -> Result<WeightSpec> {
    WeightSpec::new(WeightFamily::ShiftedPower { alpha: -q }, 1.0 / (1.0 - q))
}

/// The constant control map |T| h^{1/q} ≡ 1/(q−1) associated with the
/// ansatz; it makes the slope constant E vanish and the comparison constant
/// collapse to p − 1.
pub fn mems_control(q: f64) -> GControl {
    GControl::Constant { value: 1.0 / (q - 1.0) }
}

/// Verify the regularity bound on a computed solution:
/// (∫|∇u|^{2q}(1−u)^{−q} dx)^{1/q} ≤ (p−1) r (∫|f|^q dx)^{1/q}.
///
/// Internally this instantiates the general-domain gradient bound with the
/// recipe weight (for which A_Ω = p−1 exactly); the returned report carries
/// the displayed 1/q-power comparison, with the raw internal comparison
/// recorded in the notes.
pub fn verify_mems_bound(
    sol: &MemsSolution,
    cfg: &MemsConfig,
    quad: &QuadConfig,
) -> Result<InequalityReport> {
    cfg.validate()?;
    let p = cfg.p();
    let q = cfg.q;
    let weight = mems_weight(q)?;
    let control = mems_control(q);
    // any positive value works here: the control map is constant, so the
    // slope constant E is exactly zero and this number never enters κ or A_Ω
    let ledger = build_ledger(&weight, p, cfg.n, Some(1.0), Some(control))?;

    if sol.max_u == 0.0 {
        // the zero solution (r = 0): both sides vanish, nothing to integrate
        let mut rep = zero_solution_report(cfg, &weight, &ledger)?;
        rep.notes.push("zero solution: both sides vanish identically".into());
        return Ok(rep);
    }

    let field = solution_field(sol, cfg)?;
    let mut rep = crate::inequalities::check_goal6(&field, &ledger, &weight, &control, quad)?;

    // displayed comparison on the 1/q power scale
    let (l_disp, l_disp_sigma) = to_power_scale(rep.lhs.value, rep.lhs.abs_error_estimate, 1.0 / q);
    let measure = RadialMeasure::new(cfg.n, 0.0, cfg.ball_radius)?;
    let f_int = integrate_radial(|s| cfg.f_profile.eval(s).abs().powf(q), &measure, quad)?;
    let (f_norm, f_norm_sigma) = to_power_scale(f_int.value, f_int.abs_error_estimate, 1.0 / q);
    let mult = (p - 1.0) * cfg.r_param;
    let r_disp = mult * f_norm;
    let r_disp_sigma = mult * f_norm_sigma;

    let internal_verdict = rep.verdict;
    rep.notes.push(format!(
        "internal comparison (raw scale): lhs = {:.6e} vs A_Omega * lap term = {:.6e}, verdict {}",
        rep.lhs_compare,
        rep.rhs_compare,
        internal_verdict.name()
    ));
    rep.rhs_terms.push(crate::report::RhsTerm {
        label: "f_q_norm_pow".into(),
        integral: f_int,
        multiplier: mult,
    });
    rep.lhs_compare = l_disp;
    rep.rhs_compare = r_disp;
    rep.lhs_sigma = l_disp_sigma;
    rep.rhs_sigma = r_disp_sigma;
    rep.ratio = if r_disp != 0.0 { Some(l_disp / r_disp) } else { None };
    let display_verdict = crate::report::decide(l_disp, l_disp_sigma, r_disp, r_disp_sigma);
    if display_verdict != internal_verdict {
        rep.notes.push(format!(
            "displayed and internal comparisons disagree: {} vs {}",
            display_verdict.name(),
            internal_verdict.name()
        ));
    }
    rep.verdict = display_verdict;
    rep.config_echo = serde_json::json!({
        "theorem": "goal6",
        "mems": cfg,
        "weight": weight,
    });
    Ok(rep)
}

fn zero_solution_report(
    cfg: &MemsConfig,
    weight: &WeightSpec,
    ledger: &ConstantsLedger,
) -> Result<InequalityReport> {
    use crate::quadrature::QuadResult;
    use crate::report::{HypothesisRecord, RhsTerm, TheoremId, Verdict};
    let zero = QuadResult { value: 0.0, abs_error_estimate: 0.0, panels_used: 0, converged: true };
    Ok(InequalityReport {
        theorem_id: TheoremId::Goal6,
        p: cfg.p(),
        n: cfg.n,
        weight: weight.descriptor(),
        profile: "zero solution".into(),
        lhs: zero,
        rhs_terms: vec![RhsTerm { label: IntegrandKind::LapTH.name().into(), integral: zero, multiplier: 1.0 }],
        constant: ledger.a_omega.unwrap_or(cfg.p() - 1.0),
        lhs_compare: 0.0,
        rhs_compare: 0.0,
        lhs_sigma: 0.0,
        rhs_sigma: 0.0,
        ratio: None,
        hypotheses: vec![HypothesisRecord::new(
            "dirichlet_boundary",
            true,
            "u ≡ 0 satisfies the boundary condition trivially",
        )],
        verdict: Verdict::Holds,
        notes: vec![],
        config_echo: serde_json::json!({ "theorem": "goal6", "mems": cfg }),
    })
}

/// Outcome of the chain-rule composition check on a computed solution.
#[derive(Debug, Clone, Serialize)]
pub struct CompositionReport {
    /// 4 (∫ |∇((1−u)^{1/2})|^{2q} dx)^{1/q}.
    pub left: f64,
    /// (∫ |∇u|^{2q} (1−u)^{−q} dx)^{1/q}.
    pub right: f64,
    /// |left − right| relative to their magnitude.
    pub relative_difference: f64,
    /// The finite Sobolev seminorm ∫ |∇((1−u)^{1/2})|^{2q} dx itself —
    /// the regularity conclusion made quantitative.
    pub sobolev_seminorm_value: f64,
    pub converged: bool,
}

/// Verify the exact chain-rule identity
/// 4 (∫|∇((1−u)^{1/2})|^p dx)^{2/p} = (∫|∇u|^p (1−u)^{−p/2} dx)^{2/p}
/// on a computed solution. Any discrepancy measures quadrature and
/// interpolation error only.
pub fn verify_composition(
    sol: &MemsSolution,
    cfg: &MemsConfig,
    quad: &QuadConfig,
) -> Result<CompositionReport> {
    cfg.validate()?;
    let p = cfg.p();
    if sol.max_u == 0.0 {
        return Ok(CompositionReport {
            left: 0.0,
            right: 0.0,
            relative_difference: 0.0,
            sobolev_seminorm_value: 0.0,
            converged: true,
        });
    }
    let field = solution_field(sol, cfg)?;
    // the composed deflection 1 − (1−u)^{1/2} has the same gradient
    // magnitude as (1−u)^{1/2} and keeps the Dirichlet zero at the boundary
    let composed = field.compose(CompositionMap::OneMinusPower { beta: 0.5 })?;
    let measure = RadialMeasure::new(cfg.n, 0.0, cfg.ball_radius)?;
    let left_int = integrate_radial(|s| composed.jet(s).d1.abs().powf(p), &measure, quad)?;
    let weight = mems_weight(cfg.q)?;
    let right_int = weighted_seminorm(&field, &weight, IntegrandKind::GradPH, p, quad)?;

    let left = 4.0 * left_int.value.powf(2.0 / p);
    let right = right_int.value.powf(2.0 / p);
    let scale = left.abs().max(right.abs()).max(f64::MIN_POSITIVE);
    Ok(CompositionReport {
        left,
        right,
        relative_difference: (left - right).abs() / scale,
        sobolev_seminorm_value: left_int.value,
        converged: left_int.converged && right_int.converged,
    })
}

/// Weight recommendation produced by the regularity recipe.
#[derive(Debug, Clone, Serialize)]
pub struct WeightRecommendation {
    /// The selected weight h(λ) = (1−λ)^{−q} with offset C = 1/(1−q).
    pub weight: WeightSpec,
    /// The constant value of |H_C(λ)|^q h^{1−q}(λ) under the ansatz:
    /// (q−1)^{−q}.
    pub constancy_value: f64,
    /// Largest relative deviation from that constant over the probe grid.
    pub max_deviation: f64,
    /// Constants for the general-domain bound with this weight.
    pub ledger: ConstantsLedger,
    pub notes: Vec<String>,
}

/// Select the recipe weight for a power nonlinearity τ(λ) = (1−λ)^t and
/// verify its defining property on a probe grid.
///
/// The ansatz h = (1−λ)^{−q}, C = 1/(1−q) makes the combination
/// |H_C|^q h^{1−q} exactly constant — equal to (q−1)^{−q} — which is what
/// collapses the control-map slope constant to E = 0 and the comparison
/// constant to p − 1. The recipe's pointwise requirement
/// |τ(λ)|^{−q} ≥ c |H_C|^q h^{1−q} then holds on any range [0, m] with
/// m < 1, with c = (q−1)^q (1−m)^{−t q}; c cannot be chosen uniformly in m
/// because |τ|^{−q} vanishes at λ = 1 while the right side is constant.
///
/// `n` enters only through the dimensional constant recorded in the ledger.
pub fn recipe_check(tau_exponent: f64, q: f64, n: u32) -> Result<WeightRecommendation> {
    if !tau_exponent.is_finite() {
        return Err(Error::Unsupported(
            "nonlinearity exponent must be a finite power of (1−λ)".into(),
        ));
    }
    if tau_exponent >= 0.0 {
        return Err(Error::Unsupported(format!(
            "the recipe targets nonlinearities singular at the range top; (1−λ)^{tau_exponent} is bounded, no weight is needed"
        )));
    }
    if !(q > 1.0) {
        return Err(Error::Domain(format!("exponent q = {q} must exceed 1")));
    }
    let weight = mems_weight(q)?;
    let constancy_value = (q - 1.0).powf(-q);
    let mut max_dev = 0.0_f64;
    let m = 4096;
    for i in 1..m {
        let lambda = i as f64 / m as f64;
        let h = weight.eval_h(lambda)?;
        let big_h = weight.eval_big_h(lambda)?;
        let combo = big_h.abs().powf(q) * h.powf(1.0 - q);
        max_dev = max_dev.max((combo - constancy_value).abs() / constancy_value);
    }
    let control = mems_control(q);
    let ledger = build_ledger(&weight, 2.0 * q, n, Some(1.0), Some(control))?;
    let notes = vec![
        format!(
            "|H_C|^q h^(1-q) = (q-1)^(-q) = {constancy_value:.12e} exactly; max grid deviation {max_dev:.3e}"
        ),
        format!(
            "pointwise recipe constant for tau = (1-lambda)^{tau_exponent}: c(m) = (q-1)^q (1-m)^({})  on a solution range [0, m], m < 1; no m-uniform choice exists",
            -tau_exponent * q
        ),
    ];
    Ok(WeightRecommendation {
        weight,
        constancy_value,
        max_deviation: max_dev,
        ledger,
        notes,
    })
}

// ---------------------------------------------------------------------------
// persistence
// ---------------------------------------------------------------------------

/// Sidecar metadata stored next to the profile CSV.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SolutionSidecar {
    pub config: MemsConfig,
    pub residual_norm: f64,
    pub converged: bool,
    pub max_u: f64,
}

/// Write the solution profile (radius, value, first and second derivative
/// from the interpolating spline) to `csv_path` and the run metadata to
/// `json_path`.
pub fn save_solution(
    sol: &MemsSolution,
    cfg: &MemsConfig,
    csv_path: &Path,
    json_path: &Path,
) -> Result<()> {
    let derivs: Option<RadialField> = if sol.max_u > 0.0 && sol.converged {
        solution_field(sol, cfg).ok()
    } else {
        None
    };
    let mut writer = csv::Writer::from_path(csv_path)?;
    writer.write_record(["s", "w", "w_prime", "w_second"])?;
    for (i, s) in sol.grid.iter().enumerate() {
        let (d1, d2) = match &derivs {
            Some(field) => {
                let j = field.jet(*s);
                (j.d1, j.d2)
            }
            None => (0.0, 0.0),
        };
        writer.write_record([
            format!("{:.17e}", s),
            format!("{:.17e}", sol.w[i]),
            format!("{:.17e}", d1),
            format!("{:.17e}", d2),
        ])?;
    }
    writer.flush().map_err(std::io::Error::from)?;

    let sidecar = SolutionSidecar {
        config: cfg.clone(),
        residual_norm: sol.residual_norm,
        converged: sol.converged,
        max_u: sol.max_u,
    };
    let json = serde_json::to_string_pretty(&sidecar)?;
    std::fs::write(json_path, json)?;
    Ok(())
}

/// Load a persisted solution (profile CSV plus JSON sidecar).
pub fn load_solution(csv_path: &Path, json_path: &Path) -> Result<(MemsSolution, MemsConfig)> {
    let sidecar: SolutionSidecar = serde_json::from_str(&std::fs::read_to_string(json_path)?)?;
    let mut reader = csv::Reader::from_path(csv_path)?;
    let mut grid = Vec::new();
    let mut w = Vec::new();
    for record in reader.records() {
        let record = record?;
        let parse = |idx: usize| -> Result<f64> {
            record
                .get(idx)
                .ok_or_else(|| Error::Domain("missing column in solution file".into()))?
                .trim()
                .parse::<f64>()
                .map_err(|e| Error::Domain(format!("bad number in solution file: {e}")))
        };
        grid.push(parse(0)?);
        w.push(parse(1)?);
    }
    if grid.len() < 2 {
        return Err(Error::Domain("solution file holds fewer than two samples".into()));
    }
    let max_u = w.iter().fold(0.0_f64, |m, x| m.max(*x));
    if (max_u - sidecar.max_u).abs() > 1e-12 * (1.0 + max_u) {
        return Err(Error::Domain(format!(
            "solution file is inconsistent with its sidecar: max deflection {max_u} vs recorded {}",
            sidecar.max_u
        )));
    }
    Ok((
        MemsSolution {
            grid,
            w,
            residual_norm: sidecar.residual_norm,
            converged: sidecar.converged,
            max_u,
        },
        sidecar.config,
    ))
}
