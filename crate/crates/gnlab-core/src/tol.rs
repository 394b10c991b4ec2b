//! Centralized numeric tolerances.
//!
//! Every tolerance used by the library lives here as a named constant with a
//! short justification, so that a change in one place is visible everywhere
//! and nothing is tuned ad hoc inside an algorithm.

/// Relative tolerance for adaptive quadrature (default).
pub const QUAD_REL: f64 = 1e-9;

/// Absolute tolerance for adaptive quadrature (default). Guards against
/// endless refinement when the true value is zero.
pub const QUAD_ABS: f64 = 1e-12;

/// Panel budget for adaptive quadrature. Large enough for integrable
/// endpoint singularities of strength up to ~x^(-0.97); a divergent integral
/// exhausts it and is reported as non-converged.
pub const QUAD_BUDGET: usize = 100_000;

/// Identities that hold exactly in exact arithmetic and are evaluated through
/// a handful of floating-point operations.
pub const EXACT_ARITHMETIC: f64 = 1e-12;

/// Identities evaluated through longer floating-point pipelines (quadrature,
/// splines) where a few hundred ulps accumulate.
pub const TIGHT_NUMERIC: f64 = 1e-10;

/// Agreement expected between an adaptive integral and a closed form.
pub const QUADRATURE_MATCH: f64 = 1e-8;

/// Agreement expected between analytic derivatives and central finite
/// differences with step 1e-5 (the scheme's own truncation error dominates).
pub const FD_MATCH: f64 = 1e-6;

/// Dirichlet boundary values are accepted as zero below this.
pub const DIRICHLET_ZERO: f64 = 1e-12;

/// A radial profile on a ball must be smooth at the origin: |w'(0)| below
/// this counts as a vanishing derivative.
pub const ORIGIN_SLOPE_ZERO: f64 = 1e-10;

/// Pointwise ceiling for "this field is harmonic": max |laplacian| over the
/// probe grid.
pub const HARMONIC_ZERO: f64 = 1e-10;

/// Number of interior points probed when validating a radial field
/// (positivity, range, harmonicity checks).
pub const FIELD_PROBE_POINTS: usize = 1000;

/// Multiple of the quadrature error estimate used as the uncertainty band
/// when deciding whether an inequality holds, fails, or is inconclusive.
pub const VERDICT_SIGMA: f64 = 3.0;

/// Width of the error-propagation floor: compared quantities closer than
/// this (relative) with overlapping bands are inconclusive, not ordered.
pub const RATIO_UNIT: f64 = 1e-6;

/// Grid points for the coarse pass of the sup-of-ratio scan. The contract
/// requires at least 1000.
pub const SUP_GRID_POINTS: usize = 4096;

/// Refinement passes around the running maximum in the sup-of-ratio scan.
pub const SUP_REFINEMENTS: usize = 2;

/// Relative offset keeping the sup-of-ratio grid strictly inside an open
/// interval endpoint.
pub const SUP_EDGE_MARGIN: f64 = 1e-9;

/// Default Newton residual tolerance (max norm) for the membrane solver.
pub const NEWTON_TOL: f64 = 1e-10;

/// Maximum damped-Newton iterations per continuation step.
pub const NEWTON_MAX_ITER: usize = 60;
