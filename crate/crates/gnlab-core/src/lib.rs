//! Numerical verification laboratory for weighted gradient interpolation
//! inequalities on radial fields.
//!
//! The crate is organized around one pipeline:
//!
//! 1. [`weights`] — one-dimensional weights h(λ), their antiderivative
//!    transform H_C, the induced transformation T = H_C/h, and the constants
//!    (C(n,p), D, A, E, κ, A_Ω) the inequalities quantify over.
//! 2. [`profiles`] / [`calculus`] — radial test fields with exact
//!    second-order jets and the radial forms of the differential operators
//!    (gradient, Hessian, Laplacian, ∞-Laplacian, their difference, boundary
//!    flux).
//! 3. [`quadrature`] — adaptive Gauss–Kronrod integration with endpoint
//!    grading, radial measures, and the weighted seminorm integrands.
//! 4. [`inequalities`] — one checker per inequality, producing
//!    [`report::InequalityReport`]s with a three-valued verdict derived
//!    from the quadrature error bands.
//! 5. [`mems`] — a damped-Newton continuation solver for the radial membrane
//!    deflection problem, feeding computed solutions back into the checkers.
//!
//! Everything is deterministic: no randomness, no time-dependent state, and
//! integration results do not depend on thread count.

pub mod calculus;
pub mod error;
pub mod inequalities;
pub mod jet;
pub mod mems;
pub mod profiles;
pub mod quadrature;
pub mod report;
pub mod spline;
pub mod tol;
pub mod weights;

pub use error::{Error, Result};
