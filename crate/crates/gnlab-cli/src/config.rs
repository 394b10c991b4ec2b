//! JSON run configurations: parsing, validation, and construction of the
//! core objects (weights, fields, controls) each command needs.
//!
//! A configuration file is a single JSON object carrying a `schema_version`
//! tag, a `command` name, and exactly one command section whose key matches
//! the command. Unknown keys anywhere in the file are rejected, as are
//! missing or extraneous sections: a run should never silently ignore part
//! of its configuration. Validation failures name the offending field.

use std::fs;
use std::path::{Path, PathBuf};

use gnlab_core::calculus::RadialField;
use gnlab_core::mems::{self, MemsConfig};
use gnlab_core::profiles::Profile;
use gnlab_core::quadrature::QuadConfig;
use gnlab_core::weights::{GControl, WeightFamily, WeightSpec};
use gnlab_core::{Error, Result};
use serde::Deserialize;

/// Schema revision this binary understands.
pub const SCHEMA_VERSION: u32 = 1;

/// The six run modes, mirrored one-to-one by the CLI subcommands.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CommandKind {
    Weights,
    Verify,
    Sweep,
    Hardy,
    Counterexample,
    Mems,
}

impl CommandKind {
    pub fn name(self) -> &'static str {
        match self {
            CommandKind::Weights => "weights",
            CommandKind::Verify => "verify",
            CommandKind::Sweep => "sweep",
            CommandKind::Hardy => "hardy",
            CommandKind::Counterexample => "counterexample",
            CommandKind::Mems => "mems",
        }
    }
}

/// Top-level run configuration.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub schema_version: u32,
    pub command: CommandKind,
    /// Output directory; `--out` on the command line takes precedence.
    #[serde(default)]
    pub output: Option<PathBuf>,
    /// Optional quadrature overrides shared by every integral in the run.
    #[serde(default)]
    pub quadrature: Option<QuadratureSection>,
    #[serde(default)]
    pub verify: Option<VerifySection>,
    #[serde(default)]
    pub weights: Option<WeightsSection>,
    #[serde(default)]
    pub sweep: Option<SweepSection>,
    #[serde(default)]
    pub hardy: Option<HardySection>,
    #[serde(default)]
    pub counterexample: Option<CounterexampleSection>,
    #[serde(default)]
    pub mems: Option<MemsSection>,
}

impl RunConfig {
    /// Read and parse a configuration file. Unknown keys and malformed
    /// values surface as config errors carrying the serde message, which
    /// names the offending field and its location in the file.
    pub fn from_path(path: &Path) -> Result<RunConfig> {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::config("config", format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| Error::config("config", e.to_string()))
    }

    /// Structural validation: schema revision, command/section agreement,
    /// and per-section field constraints that do not require any numerics.
    pub fn validate(&self, invoked: CommandKind) -> Result<()> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::config(
                "schema_version",
                format!(
                    "unsupported revision {} (this binary understands {SCHEMA_VERSION})",
                    self.schema_version
                ),
            ));
        }
        if self.command != invoked {
            return Err(Error::config(
                "command",
                format!(
                    "config file names command `{}` but the `{}` subcommand was invoked",
                    self.command.name(),
                    invoked.name()
                ),
            ));
        }
        let sections = [
            ("weights", self.weights.is_some()),
            ("verify", self.verify.is_some()),
            ("sweep", self.sweep.is_some()),
            ("hardy", self.hardy.is_some()),
            ("counterexample", self.counterexample.is_some()),
            ("mems", self.mems.is_some()),
        ];
        for (name, present) in sections {
            let wanted = name == self.command.name();
            if wanted && !present {
                return Err(Error::config(
                    name,
                    format!("the `{name}` command needs a `{name}` section"),
                ));
            }
            if !wanted && present {
                return Err(Error::config(
                    name,
                    format!(
                        "section does not belong to the `{}` command",
                        self.command.name()
                    ),
                ));
            }
        }
        if let Some(q) = &self.quadrature {
            q.validate()?;
        }
        match self.command {
            CommandKind::Weights => self.weights.as_ref().unwrap().validate(),
            CommandKind::Verify => self.verify.as_ref().unwrap().validate(),
            CommandKind::Sweep => self.sweep.as_ref().unwrap().validate(),
            CommandKind::Hardy => self.hardy.as_ref().unwrap().validate(),
            CommandKind::Counterexample => self.counterexample.as_ref().unwrap().validate(),
            CommandKind::Mems => self.mems.as_ref().unwrap().validate(),
        }
    }
}

/// Overrides for the adaptive quadrature defaults.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadratureSection {
    #[serde(default)]
    pub rel_tol: Option<f64>,
    #[serde(default)]
    pub abs_tol: Option<f64>,
    #[serde(default)]
    pub budget: Option<usize>,
}

impl QuadratureSection {
    fn validate(&self) -> Result<()> {
        if let Some(r) = self.rel_tol {
            if !(r > 0.0 && r.is_finite()) {
                return Err(Error::config("quadrature.rel_tol", format!("must be a positive number, got {r}")));
            }
        }
        if let Some(a) = self.abs_tol {
            if !(a > 0.0 && a.is_finite()) {
                return Err(Error::config("quadrature.abs_tol", format!("must be a positive number, got {a}")));
            }
        }
        if let Some(b) = self.budget {
            if b < 100 {
                return Err(Error::config("quadrature.budget", format!("must allow at least 100 panels, got {b}")));
            }
        }
        Ok(())
    }

    pub fn apply(&self, mut base: QuadConfig) -> QuadConfig {
        if let Some(r) = self.rel_tol {
            base.rel_tol = r;
        }
        if let Some(a) = self.abs_tol {
            base.abs_tol = a;
        }
        if let Some(b) = self.budget {
            base.budget = b;
        }
        base
    }
}

/// Weight family selector, mirroring the closed-form families plus the
/// tabulated loader. `offset` is the antiderivative offset C (alias `c`).
#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum WeightConfig {
    PowerLaw {
        theta: f64,
        #[serde(default, alias = "c")]
        offset: f64,
    },
    PowerLawScaled {
        alpha: f64,
        #[serde(default, alias = "c")]
        offset: f64,
    },
    ShiftedPower {
        alpha: f64,
        #[serde(default, alias = "c")]
        offset: f64,
    },
    Constant {
        value: f64,
        #[serde(default, alias = "c")]
        offset: f64,
    },
    Tabulated {
        path: PathBuf,
        #[serde(default, alias = "c")]
        offset: f64,
    },
}

impl WeightConfig {
    pub fn build(&self, field_path: &str) -> Result<WeightSpec> {
        let built = match self {
            WeightConfig::PowerLaw { theta, offset } => {
                WeightSpec::new(WeightFamily::PowerLaw { theta: *theta }, *offset)
            }
            WeightConfig::PowerLawScaled { alpha, offset } => {
                WeightSpec::new(WeightFamily::PowerLawScaled { alpha: *alpha }, *offset)
            }
            WeightConfig::ShiftedPower { alpha, offset } => {
                WeightSpec::new(WeightFamily::ShiftedPower { alpha: *alpha }, *offset)
            }
            WeightConfig::Constant { value, offset } => {
                WeightSpec::new(WeightFamily::Constant { value: *value }, *offset)
            }
            WeightConfig::Tabulated { path, offset } => WeightSpec::tabulated_from_csv(path, *offset),
        };
        built.map_err(|e| Error::config(field_path, e.to_string()))
    }
}

/// Radial profile selector for verification rows.
#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ProfileConfig {
    Parabola { amplitude: f64 },
    ParabolaPower { amplitude: f64, k: u32 },
    CosineBump { amplitude: f64 },
    Polynomial { coeffs: Vec<f64> },
    /// Reload a previously saved deflection solution (CSV + JSON sidecar).
    SolutionFile { csv: PathBuf, json: PathBuf },
}

/// Control-map selector for the general-domain checker.
#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ControlConfig {
    /// Use |T| h^{2/p} itself as its own control (c1 = c2 = 1 exactly).
    SelfMap,
    /// Constant control map G ≡ value.
    Constant { value: f64 },
}

impl ControlConfig {
    pub fn to_control(self) -> GControl {
        match self {
            ControlConfig::SelfMap => GControl::SelfMap,
            ControlConfig::Constant { value } => GControl::Constant { value },
        }
    }
}

/// Checker selector for verification rows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TheoremKind {
    Main2,
    Goal3,
    Goal4,
    Goal5,
    Goal6,
    ClassicalGn,
}

impl TheoremKind {
    pub fn name(self) -> &'static str {
        match self {
            TheoremKind::Main2 => "main2",
            TheoremKind::Goal3 => "goal3",
            TheoremKind::Goal4 => "goal4",
            TheoremKind::Goal5 => "goal5",
            TheoremKind::Goal6 => "goal6",
            TheoremKind::ClassicalGn => "classical_gn",
        }
    }
}

fn default_r_out() -> f64 {
    1.0
}

/// One verification row: a checker plus everything it consumes.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckSpec {
    pub theorem: TheoremKind,
    pub p: f64,
    /// Interpolation exponents for the classical checker only.
    #[serde(default)]
    pub q: Option<f64>,
    #[serde(default)]
    pub r: Option<f64>,
    pub n: u32,
    pub weight: WeightConfig,
    pub profile: ProfileConfig,
    #[serde(default)]
    pub r_in: f64,
    #[serde(default = "default_r_out")]
    pub r_out: f64,
    /// Strict upper bound for the profile range; defaults to the weight's
    /// own domain bound B.
    #[serde(default)]
    pub range_bound: Option<f64>,
    /// Operator-comparison constant for the general-domain checker.
    #[serde(default)]
    pub dtilde: Option<f64>,
    /// Control map for the general-domain checker.
    #[serde(default)]
    pub control: Option<ControlConfig>,
}

impl CheckSpec {
    fn validate(&self, path: &str) -> Result<()> {
        if !(self.p.is_finite() && self.p > 1.0) {
            return Err(Error::config(format!("{path}.p"), format!("must be a finite number > 1, got {}", self.p)));
        }
        if self.n < 2 {
            return Err(Error::config(format!("{path}.n"), format!("dimension must be ≥ 2, got {}", self.n)));
        }
        if !(self.r_in >= 0.0 && self.r_out.is_finite() && self.r_out > self.r_in) {
            return Err(Error::config(
                format!("{path}.r_out"),
                format!("need 0 ≤ r_in < r_out < ∞, got r_in = {}, r_out = {}", self.r_in, self.r_out),
            ));
        }
        if let Some(b) = self.range_bound {
            if !(b > 0.0) {
                return Err(Error::config(format!("{path}.range_bound"), format!("must be positive, got {b}")));
            }
        }
        match self.theorem {
            TheoremKind::ClassicalGn => {
                let q = self.q.ok_or_else(|| {
                    Error::config(format!("{path}.q"), "the classical checker needs the exponent q")
                })?;
                let r = self.r.ok_or_else(|| {
                    Error::config(format!("{path}.r"), "the classical checker needs the exponent r")
                })?;
                if !(q > 1.0 && q.is_finite()) {
                    return Err(Error::config(format!("{path}.q"), format!("must be a finite number > 1, got {q}")));
                }
                if !(r > 1.0 && r.is_finite()) {
                    return Err(Error::config(format!("{path}.r"), format!("must be a finite number > 1, got {r}")));
                }
                let gap = (2.0 / q - (1.0 / r + 1.0 / self.p)).abs();
                if gap > 1e-12 {
                    return Err(Error::config(
                        format!("{path}.q"),
                        format!("exponents must satisfy 2/q = 1/r + 1/p; the mismatch is {gap:.3e}"),
                    ));
                }
            }
            other => {
                if self.q.is_some() || self.r.is_some() {
                    return Err(Error::config(
                        format!("{path}.q"),
                        format!("the `{}` checker takes no q/r exponents", other.name()),
                    ));
                }
            }
        }
        match self.theorem {
            TheoremKind::Goal4 | TheoremKind::Goal5 | TheoremKind::Goal6 => {
                if !(self.p > 2.0) {
                    return Err(Error::config(
                        format!("{path}.p"),
                        format!("the `{}` checker needs p > 2, got {}", self.theorem.name(), self.p),
                    ));
                }
            }
            _ => {}
        }
        if self.theorem == TheoremKind::Goal6 {
            match self.dtilde {
                Some(d) if d.is_finite() && d > 0.0 => {}
                Some(d) => {
                    return Err(Error::config(
                        format!("{path}.dtilde"),
                        format!("must be a positive finite number, got {d}"),
                    ))
                }
                None => {
                    return Err(Error::config(
                        format!("{path}.dtilde"),
                        "the general-domain checker needs the operator-comparison constant dtilde",
                    ))
                }
            }
            if self.control.is_none() {
                return Err(Error::config(
                    format!("{path}.control"),
                    "the general-domain checker needs a control map",
                ));
            }
        } else {
            if self.control.is_some() {
                return Err(Error::config(
                    format!("{path}.control"),
                    format!("only the `goal6` checker takes a control map (row uses `{}`)", self.theorem.name()),
                ));
            }
            if self.dtilde.is_some() && self.theorem != TheoremKind::Goal5 {
                return Err(Error::config(
                    format!("{path}.dtilde"),
                    format!("`{}` does not use dtilde", self.theorem.name()),
                ));
            }
        }
        Ok(())
    }

    /// Build the radial field and weight for this row. Construction
    /// failures are configuration errors labeled with the row's path.
    pub fn build_field(&self, path: &str) -> Result<(RadialField, WeightSpec)> {
        let weight = self.weight.build(&format!("{path}.weight"))?;
        match &self.profile {
            ProfileConfig::SolutionFile { csv, json } => {
                let (sol, mcfg) = mems::load_solution(csv, json)
                    .map_err(|e| Error::config(format!("{path}.profile"), e.to_string()))?;
                if mcfg.n != self.n {
                    return Err(Error::config(
                        format!("{path}.n"),
                        format!("row says n = {} but the solution file was computed with n = {}", self.n, mcfg.n),
                    ));
                }
                let field = mems::solution_field(&sol, &mcfg)
                    .map_err(|e| Error::config(format!("{path}.profile"), e.to_string()))?;
                Ok((field, weight))
            }
            other => {
                let profile = match other {
                    ProfileConfig::Parabola { amplitude } => Profile::Parabola { amplitude: *amplitude },
                    ProfileConfig::ParabolaPower { amplitude, k } => {
                        Profile::ParabolaPower { amplitude: *amplitude, k: *k }
                    }
                    ProfileConfig::CosineBump { amplitude } => Profile::CosineBump { amplitude: *amplitude },
                    ProfileConfig::Polynomial { coeffs } => Profile::Polynomial { coeffs: coeffs.clone() },
                    ProfileConfig::SolutionFile { .. } => unreachable!("handled above"),
                };
                let range_bound = self.range_bound.unwrap_or_else(|| weight.upper_bound());
                let field = RadialField::new(profile, self.n, self.r_in, self.r_out, range_bound, true)
                    .map_err(|e| Error::config(format!("{path}.profile"), e.to_string()))?;
                Ok((field, weight))
            }
        }
    }
}

/// Battery of verification rows.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifySection {
    pub checks: Vec<CheckSpec>,
}

impl VerifySection {
    fn validate(&self) -> Result<()> {
        if self.checks.is_empty() {
            return Err(Error::config("verify.checks", "the battery is empty"));
        }
        for (i, check) in self.checks.iter().enumerate() {
            check.validate(&format!("verify.checks[{i}]"))?;
        }
        Ok(())
    }
}

fn default_curve_points() -> usize {
    512
}

/// Constants ledger plus curve samples for a single weight.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightsSection {
    pub weight: WeightConfig,
    pub p: f64,
    pub n: u32,
    #[serde(default)]
    pub dtilde: Option<f64>,
    #[serde(default)]
    pub control: Option<ControlConfig>,
    #[serde(default = "default_curve_points")]
    pub curve_points: usize,
}

impl WeightsSection {
    fn validate(&self) -> Result<()> {
        if !(self.p.is_finite() && self.p > 2.0) {
            return Err(Error::config(
                "weights.p",
                format!("the constants ledger needs p > 2, got {}", self.p),
            ));
        }
        if self.n < 2 {
            return Err(Error::config("weights.n", format!("dimension must be ≥ 2, got {}", self.n)));
        }
        if let Some(d) = self.dtilde {
            if !(d.is_finite() && d > 0.0) {
                return Err(Error::config("weights.dtilde", format!("must be a positive finite number, got {d}")));
            }
        }
        if !(16..=1_000_000).contains(&self.curve_points) {
            return Err(Error::config(
                "weights.curve_points",
                format!("must lie in [16, 1000000], got {}", self.curve_points),
            ));
        }
        Ok(())
    }
}

/// Grid of (p, weight) pairs whose derived constants are tabulated.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSection {
    pub p_values: Vec<f64>,
    pub n: u32,
    pub weights: Vec<WeightConfig>,
    #[serde(default)]
    pub dtilde: Option<f64>,
    #[serde(default)]
    pub control: Option<ControlConfig>,
}

impl SweepSection {
    fn validate(&self) -> Result<()> {
        if self.p_values.is_empty() {
            return Err(Error::config("sweep.p_values", "the exponent grid is empty"));
        }
        for (i, p) in self.p_values.iter().enumerate() {
            if !(p.is_finite() && *p > 2.0) {
                return Err(Error::config(
                    format!("sweep.p_values[{i}]"),
                    format!("the constants ledger needs p > 2, got {p}"),
                ));
            }
        }
        if self.n < 2 {
            return Err(Error::config("sweep.n", format!("dimension must be ≥ 2, got {}", self.n)));
        }
        if self.weights.is_empty() {
            return Err(Error::config("sweep.weights", "the weight grid is empty"));
        }
        if let Some(d) = self.dtilde {
            if !(d.is_finite() && d > 0.0) {
                return Err(Error::config("sweep.dtilde", format!("must be a positive finite number, got {d}")));
            }
        }
        Ok(())
    }
}

/// One-dimensional weighted Hardy inequality with a sharpness ladder.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HardySection {
    pub p: f64,
    pub alpha: f64,
    /// Extremal-approach offsets; list them in decreasing order to obtain
    /// a monotone sharpness ladder.
    pub epsilons: Vec<f64>,
}

impl HardySection {
    fn validate(&self) -> Result<()> {
        if !(self.p.is_finite() && self.p > 1.0) {
            return Err(Error::config("hardy.p", format!("must be a finite number > 1, got {}", self.p)));
        }
        if !(self.alpha.is_finite() && self.alpha < self.p - 1.0) {
            return Err(Error::config(
                "hardy.alpha",
                format!("the vanishing-at-zero branch needs α < p − 1, got α = {}, p = {}", self.alpha, self.p),
            ));
        }
        if self.epsilons.is_empty() {
            return Err(Error::config("hardy.epsilons", "the offset ladder is empty"));
        }
        for (i, eps) in self.epsilons.iter().enumerate() {
            if !(eps.is_finite() && *eps > 0.0) {
                return Err(Error::config(
                    format!("hardy.epsilons[{i}]"),
                    format!("offsets must be positive, got {eps}"),
                ));
            }
        }
        Ok(())
    }
}

/// Harmonic shell on an annulus: the configuration the bound cannot survive.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CounterexampleSection {
    pub n: u32,
    pub r_outer: f64,
    pub p: f64,
    /// Weight power λ^α̃ (0 gives the unweighted closed forms).
    #[serde(default)]
    pub alpha_tilde: f64,
}

impl CounterexampleSection {
    fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::config("counterexample.n", format!("dimension must be ≥ 2, got {}", self.n)));
        }
        if !(self.r_outer.is_finite() && self.r_outer > 1.0) {
            return Err(Error::config(
                "counterexample.r_outer",
                format!("the annulus needs an outer radius > 1, got {}", self.r_outer),
            ));
        }
        if !(self.p.is_finite() && self.p > 1.0) {
            return Err(Error::config("counterexample.p", format!("must be a finite number > 1, got {}", self.p)));
        }
        if !self.alpha_tilde.is_finite() {
            return Err(Error::config(
                "counterexample.alpha_tilde",
                format!("must be finite, got {}", self.alpha_tilde),
            ));
        }
        Ok(())
    }
}

/// Deflection problem: solve, save, and verify the certified bound.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MemsSection {
    pub problem: MemsConfig,
}

impl MemsSection {
    fn validate(&self) -> Result<()> {
        self.problem
            .validate()
            .map_err(|e| Error::config("mems.problem", e.to_string()))
    }
}
