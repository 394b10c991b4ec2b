//! Command execution: builds the requested work items from a parsed
//! configuration, runs them on a bounded worker pool, and collects the
//! results in configuration order, so repeated runs produce identical
//! outputs regardless of the pool width.

use gnlab_core::calculus::RadialField;
use gnlab_core::inequalities::{
    check_classical_gn, check_goal3, check_goal4, check_goal5, check_goal6, check_hardy,
    check_main2, run_counterexample, HardyProfile,
};
use gnlab_core::mems::{self, MemsConfig, MemsSolution};
use gnlab_core::profiles::Profile;
use gnlab_core::quadrature::QuadConfig;
use gnlab_core::report::InequalityReport;
use gnlab_core::weights::{build_ledger, ConstantsLedger, WeightSpec};
use gnlab_core::{Error, Result};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::config::{
    CheckSpec, CommandKind, CounterexampleSection, HardySection, MemsSection, RunConfig,
    SweepSection, TheoremKind, VerifySection, WeightsSection,
};
use crate::output::fmt_float;

/// Number of intervals used when sampling curves for plot files.
const PLOT_SAMPLES: usize = 256;

/// One CSV destined for the `plotdata/` directory. Cells arrive
/// pre-formatted so every writer applies identical number formatting.
#[derive(Debug)]
pub struct PlotFile {
    pub name: String,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

/// Derived-constants record for one (weight, p, n) combination.
#[derive(Debug, Serialize)]
pub struct LedgerRow {
    pub weight: String,
    pub ledger: ConstantsLedger,
}

/// A work item the run could not complete because a mathematical
/// hypothesis rejected it (as opposed to a configuration error, which
/// aborts the whole run before anything executes).
#[derive(Debug, Serialize)]
pub struct RejectedRow {
    pub index: usize,
    pub label: String,
    pub detail: String,
}

/// Everything a command produces, still in memory; the output module
/// serializes it.
#[derive(Debug, Default)]
pub struct CommandOutput {
    pub reports: Vec<InequalityReport>,
    pub rejected: Vec<RejectedRow>,
    pub ledgers: Vec<LedgerRow>,
    pub extras: serde_json::Map<String, serde_json::Value>,
    pub plots: Vec<PlotFile>,
    /// The counterexample command expects its checks to fail; every other
    /// command expects them to hold.
    pub expect_fails: bool,
    pub solution: Option<(MemsSolution, MemsConfig)>,
}

/// Exit status from verdicts: 0 only when every check returned exactly
/// the expected verdict and nothing was rejected.
pub fn verdict_exit(out: &CommandOutput) -> u8 {
    if !out.rejected.is_empty() {
        return 1;
    }
    let all_expected = out.reports.iter().all(|r| {
        let name = r.verdict.name();
        if out.expect_fails {
            name == "fails"
        } else {
            name == "holds"
        }
    });
    if all_expected {
        0
    } else {
        1
    }
}

/// Run the command selected by the (already validated) configuration.
pub fn execute(cfg: &RunConfig, jobs: usize) -> Result<CommandOutput> {
    match cfg.command {
        CommandKind::Verify => run_verify(cfg.verify.as_ref().expect("validated"), cfg, jobs),
        CommandKind::Weights => run_weights(cfg.weights.as_ref().expect("validated"), cfg),
        CommandKind::Sweep => run_sweep(cfg.sweep.as_ref().expect("validated"), cfg, jobs),
        CommandKind::Hardy => run_hardy(cfg.hardy.as_ref().expect("validated"), cfg),
        CommandKind::Counterexample => {
            run_counterexample_cmd(cfg.counterexample.as_ref().expect("validated"), cfg)
        }
        CommandKind::Mems => run_mems(cfg.mems.as_ref().expect("validated"), cfg),
    }
}

fn base_quad(cfg: &RunConfig, graded: bool) -> QuadConfig {
    let base = if graded {
        QuadConfig::graded()
    } else {
        QuadConfig::default()
    };
    match &cfg.quadrature {
        Some(q) => q.apply(base),
        None => base,
    }
}

fn build_pool(jobs: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::config("jobs", e.to_string()))
}

/// Whether an error is a per-item mathematical rejection (recorded and
/// reported) rather than a configuration problem (aborts the run).
fn rejection_detail(err: &Error) -> Option<String> {
    match err {
        Error::Hypothesis { .. }
        | Error::Integrability(_)
        | Error::NonFinite(_)
        | Error::Degenerate(_)
        | Error::PullIn { .. } => Some(err.to_string()),
        _ => None,
    }
}

fn run_verify(sec: &VerifySection, cfg: &RunConfig, jobs: usize) -> Result<CommandOutput> {
    let quad = base_quad(cfg, true);
    let pool = build_pool(jobs)?;
    let results: Vec<Result<(InequalityReport, PlotFile)>> = pool.install(|| {
        sec.checks
            .par_iter()
            .enumerate()
            .map(|(i, check)| run_check(i, check, &quad))
            .collect()
    });
    let mut out = CommandOutput::default();
    for (i, res) in results.into_iter().enumerate() {
        match res {
            Ok((report, plot)) => {
                out.reports.push(report);
                out.plots.push(plot);
            }
            Err(err) => match rejection_detail(&err) {
                Some(detail) => out.rejected.push(RejectedRow {
                    index: i,
                    label: sec.checks[i].theorem.name().to_string(),
                    detail,
                }),
                None => return Err(err),
            },
        }
    }
    Ok(out)
}

fn run_check(index: usize, spec: &CheckSpec, quad: &QuadConfig) -> Result<(InequalityReport, PlotFile)> {
    let path = format!("verify.checks[{index}]");
    let (field, weight) = spec.build_field(&path)?;
    let report = match spec.theorem {
        TheoremKind::Main2 => check_main2(&field, &weight, spec.p, quad)?,
        TheoremKind::Goal3 => check_goal3(&field, &weight, spec.p, quad)?,
        TheoremKind::Goal4 => check_goal4(&field, &weight, spec.p, quad)?,
        TheoremKind::Goal5 => {
            let control = spec.control.map(|c| c.to_control());
            let ledger = build_ledger(&weight, spec.p, spec.n, spec.dtilde, control)?;
            check_goal5(&field, &ledger, &weight, quad)?
        }
        TheoremKind::Goal6 => {
            let control = spec.control.expect("validated").to_control();
            let ledger = build_ledger(&weight, spec.p, spec.n, spec.dtilde, Some(control))?;
            check_goal6(&field, &ledger, &weight, &control, quad)?
        }
        TheoremKind::ClassicalGn => check_classical_gn(
            &field,
            spec.p,
            spec.q.expect("validated"),
            spec.r.expect("validated"),
            quad,
        )?,
    };
    let plot = integrand_plot(index, spec, &field, &weight);
    Ok((report, plot))
}

/// Sample the profile and the leading integrands of one check on a
/// uniform radius grid.
fn integrand_plot(index: usize, spec: &CheckSpec, field: &RadialField, weight: &WeightSpec) -> PlotFile {
    let n = f64::from(field.n);
    let mut rows = Vec::with_capacity(PLOT_SAMPLES + 1);
    for i in 0..=PLOT_SAMPLES {
        let s = field.r_in + (field.r_out - field.r_in) * (i as f64) / (PLOT_SAMPLES as f64);
        let jet = field.jet(s);
        let radial = if s == 0.0 { jet.d2 } else { jet.d1 / s };
        let lap = jet.d2 + (n - 1.0) * radial;
        let hess = (jet.d2 * jet.d2 + (n - 1.0) * radial * radial).sqrt();
        // At the domain edges the profile touches 0, where the weighted
        // quantities carry no mass; record them as 0 there.
        let (h, t) = if jet.v > 0.0 && jet.v < field.range_bound {
            (
                weight.eval_h(jet.v).unwrap_or(f64::NAN),
                weight.eval_t(jet.v).unwrap_or(f64::NAN),
            )
        } else {
            (0.0, 0.0)
        };
        let lhs = jet.d1.abs().powf(spec.p) * h;
        let rhs = match spec.theorem {
            TheoremKind::Main2 => hess * t.abs() * h,
            TheoremKind::ClassicalGn => lap.abs().powf(spec.r.unwrap_or(spec.p)),
            _ => lap.abs() * t.abs() * h,
        };
        rows.push(vec![
            fmt_float(s),
            fmt_float(jet.v),
            fmt_float(jet.d1),
            fmt_float(jet.d2),
            fmt_float(lhs),
            fmt_float(rhs),
        ]);
    }
    PlotFile {
        name: format!("check_{index:03}.csv"),
        columns: vec!["s", "w", "w_prime", "w_second", "lhs_integrand", "rhs_integrand"],
        rows,
    }
}

fn run_weights(sec: &WeightsSection, _cfg: &RunConfig) -> Result<CommandOutput> {
    let weight = sec.weight.build("weights.weight")?;
    let control = sec.control.map(|c| c.to_control());
    // For this command a ledger that cannot be derived means the request
    // itself is inconsistent, so escalate rejections to config errors.
    let ledger = build_ledger(&weight, sec.p, sec.n, sec.dtilde, control)
        .map_err(|e| Error::config("weights", e.to_string()))?;

    let upper = weight.upper_bound();
    let hi = if upper.is_finite() { upper } else { 2.0 };
    let points = sec.curve_points;
    let mut rows = Vec::with_capacity(points);
    let e_grad = 1.0 / sec.p;
    let e_hess = 2.0 / sec.p;
    for i in 0..points {
        // midpoint sampling keeps clear of the λ = 0 and λ = B endpoints,
        // where several families are singular
        let lambda = (i as f64 + 0.5) * hi / (points as f64);
        let cells = vec![
            fmt_float(lambda),
            fmt_float(weight.eval_h(lambda)?),
            fmt_float(weight.eval_h_prime(lambda)?),
            fmt_float(weight.eval_big_h(lambda)?),
            fmt_float(weight.eval_t(lambda)?),
            fmt_float(weight.eval_g(sec.p, e_grad, lambda)?),
            fmt_float(weight.g_prime_over_he(e_grad, lambda)?),
            fmt_float(weight.eval_g(sec.p, e_hess, lambda)?),
            fmt_float(weight.g_prime_over_he(e_hess, lambda)?),
        ];
        rows.push(cells);
    }
    let mut out = CommandOutput::default();
    out.extras
        .insert("curve_points".into(), json!(sec.curve_points));
    out.plots.push(PlotFile {
        name: "weight_curves.csv".into(),
        columns: vec![
            "lambda",
            "h",
            "h_prime",
            "big_h",
            "t",
            "g_grad_scale",
            "g_slope_grad_scale",
            "g_hess_scale",
            "g_slope_hess_scale",
        ],
        rows,
    });
    out.ledgers.push(LedgerRow {
        weight: weight.descriptor(),
        ledger,
    });
    Ok(out)
}

fn run_sweep(sec: &SweepSection, _cfg: &RunConfig, jobs: usize) -> Result<CommandOutput> {
    // Build every weight up front: a malformed weight is a config error,
    // not a grid rejection.
    let mut specs = Vec::with_capacity(sec.weights.len());
    for (i, w) in sec.weights.iter().enumerate() {
        specs.push(w.build(&format!("sweep.weights[{i}]"))?);
    }
    let control = sec.control.map(|c| c.to_control());
    let grid: Vec<(usize, usize)> = (0..specs.len())
        .flat_map(|wi| (0..sec.p_values.len()).map(move |pi| (wi, pi)))
        .collect();
    let pool = build_pool(jobs)?;
    let results: Vec<Result<ConstantsLedger>> = pool.install(|| {
        grid.par_iter()
            .map(|&(wi, pi)| build_ledger(&specs[wi], sec.p_values[pi], sec.n, sec.dtilde, control))
            .collect()
    });

    let mut out = CommandOutput::default();
    let mut frontier = Vec::with_capacity(grid.len());
    for (flat, res) in results.into_iter().enumerate() {
        let (wi, pi) = grid[flat];
        let descriptor = specs[wi].descriptor();
        match res {
            Ok(ledger) => {
                frontier.push(vec![
                    descriptor.clone(),
                    fmt_float(ledger.p),
                    ledger.n.to_string(),
                    fmt_float(ledger.c_np),
                    fmt_opt(ledger.c_hcp),
                    fmt_opt(ledger.d_goal5),
                    fmt_opt(ledger.a_goal5),
                    ledger.admissible_goal5.to_string(),
                    fmt_opt(ledger.e_goal6),
                    fmt_opt(ledger.kappa),
                    fmt_opt(ledger.a_omega),
                    ledger.admissible_goal6.to_string(),
                ]);
                out.ledgers.push(LedgerRow {
                    weight: descriptor,
                    ledger,
                });
            }
            Err(err) => match rejection_detail(&err) {
                Some(detail) => out.rejected.push(RejectedRow {
                    index: flat,
                    label: format!("{} at p = {}", descriptor, sec.p_values[pi]),
                    detail,
                }),
                None => return Err(err),
            },
        }
    }
    out.plots.push(PlotFile {
        name: "frontier.csv".into(),
        columns: vec![
            "weight",
            "p",
            "n",
            "c_np",
            "c_hcp",
            "d_goal5",
            "a_goal5",
            "admissible_goal5",
            "e_goal6",
            "kappa",
            "a_omega",
            "admissible_goal6",
        ],
        rows: frontier,
    });
    Ok(out)
}

fn fmt_opt(x: Option<f64>) -> String {
    match x {
        Some(v) => fmt_float(v),
        None => String::new(),
    }
}

fn run_hardy(sec: &HardySection, cfg: &RunConfig) -> Result<CommandOutput> {
    let quad = base_quad(cfg, true);
    let mut out = CommandOutput::default();
    let mut ladder: Vec<(f64, Option<f64>)> = Vec::with_capacity(sec.epsilons.len());
    let mut last_profile: Option<HardyProfile> = None;
    for (i, eps) in sec.epsilons.iter().enumerate() {
        let profile = HardyProfile::near_extremal(sec.p, sec.alpha, *eps)
            .map_err(|e| Error::config(format!("hardy.epsilons[{i}]"), e.to_string()))?;
        match check_hardy(&profile, sec.p, sec.alpha, &quad) {
            Ok(report) => {
                ladder.push((*eps, report.ratio));
                out.reports.push(report);
                last_profile = Some(profile);
            }
            Err(err) => match rejection_detail(&err) {
                Some(detail) => out.rejected.push(RejectedRow {
                    index: i,
                    label: format!("hardy at epsilon = {eps}"),
                    detail,
                }),
                None => return Err(err),
            },
        }
    }
    let sharpness_rows = ladder
        .iter()
        .map(|(eps, ratio)| vec![fmt_float(*eps), fmt_opt(*ratio)])
        .collect();
    out.plots.push(PlotFile {
        name: "sharpness.csv".into(),
        columns: vec!["epsilon", "ratio"],
        rows: sharpness_rows,
    });
    if let Some(profile) = last_profile {
        let mut rows = Vec::with_capacity(PLOT_SAMPLES + 1);
        for i in 0..=PLOT_SAMPLES {
            let t = profile.t_end * (i as f64) / (PLOT_SAMPLES as f64);
            let (f, fp) = profile.eval(t);
            rows.push(vec![fmt_float(t), fmt_float(f), fmt_float(fp)]);
        }
        out.plots.push(PlotFile {
            name: "extremal_profile.csv".into(),
            columns: vec!["t", "f", "f_prime"],
            rows,
        });
    }
    let ladder_json: Vec<serde_json::Value> = ladder
        .iter()
        .map(|(eps, ratio)| json!({ "epsilon": eps, "ratio": ratio }))
        .collect();
    out.extras.insert("sharpness".into(), json!(ladder_json));
    if let Some(first) = out.reports.first() {
        out.extras
            .insert("hardy_constant".into(), json!(first.constant));
    }
    Ok(out)
}

fn run_counterexample_cmd(sec: &CounterexampleSection, cfg: &RunConfig) -> Result<CommandOutput> {
    let quad = base_quad(cfg, false);
    let mut out = CommandOutput::default();
    out.expect_fails = true;
    match run_counterexample(sec.n, sec.r_outer, sec.p, sec.alpha_tilde, &quad) {
        Ok(report) => out.reports.push(report),
        Err(err) => match rejection_detail(&err) {
            Some(detail) => out.rejected.push(RejectedRow {
                index: 0,
                label: "counterexample".into(),
                detail,
            }),
            None => return Err(err),
        },
    }
    let profile = if sec.n == 2 {
        Profile::LogShell
    } else {
        Profile::HarmonicShell { n: sec.n }
    };
    let n = f64::from(sec.n);
    let mut rows = Vec::with_capacity(PLOT_SAMPLES + 1);
    for i in 0..=PLOT_SAMPLES {
        let s = 1.0 + (sec.r_outer - 1.0) * (i as f64) / (PLOT_SAMPLES as f64);
        let jet = profile.jet(s);
        let lap = jet.d2 + (n - 1.0) * jet.d1 / s;
        rows.push(vec![
            fmt_float(s),
            fmt_float(jet.v),
            fmt_float(jet.d1),
            fmt_float(jet.d2),
            fmt_float(lap),
        ]);
    }
    out.plots.push(PlotFile {
        name: "shell_profile.csv".into(),
        columns: vec!["s", "w", "w_prime", "w_second", "laplacian"],
        rows,
    });
    Ok(out)
}

fn run_mems(sec: &MemsSection, cfg: &RunConfig) -> Result<CommandOutput> {
    let quad = base_quad(cfg, false);
    let mut out = CommandOutput::default();
    let sol = match mems::solve_mems(&sec.problem) {
        Ok(sol) => sol,
        Err(err) => match rejection_detail(&err) {
            Some(detail) => {
                out.rejected.push(RejectedRow {
                    index: 0,
                    label: "deflection solve".into(),
                    detail,
                });
                return Ok(out);
            }
            None => return Err(err),
        },
    };
    let report = mems::verify_mems_bound(&sol, &sec.problem, &quad)?;
    let comp = mems::verify_composition(&sol, &sec.problem, &quad)?;
    out.extras.insert(
        "deflection".into(),
        json!({
            "max_deflection": sol.max_u,
            "residual_norm": sol.residual_norm,
            "converged": sol.converged,
            "grid_size": sec.problem.grid_size,
            "load": sec.problem.r_param,
        }),
    );
    out.extras
        .insert("composition".into(), serde_json::to_value(&comp)?);
    let rows = sol
        .grid
        .iter()
        .zip(sol.w.iter())
        .map(|(s, w)| vec![fmt_float(*s), fmt_float(*w)])
        .collect();
    out.plots.push(PlotFile {
        name: "deflection.csv".into(),
        columns: vec!["s", "w"],
        rows,
    });
    out.reports.push(report);
    out.solution = Some((sol, sec.problem.clone()));
    Ok(out)
}
