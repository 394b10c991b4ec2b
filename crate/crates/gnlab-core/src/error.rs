//! Error types shared across the crate.
//!
//! Every fallible operation returns [`Error`]. The variants are deliberately
//! coarse: callers usually only need to distinguish "the input is outside the
//! mathematical domain" from "a hypothesis of the theorem is violated" from
//! "the numerics gave up". The payload strings carry the specifics.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// An evaluation point lies outside the domain of the function
    /// (e.g. a weight sampled at `lambda >= B`).
    #[error("domain error: {0}")]
    Domain(String),

    /// The weight is not integrable near `lambda = 0`, so its antiderivative
    /// does not exist as a finite number.
    #[error("weight not integrable near zero: {0}")]
    Integrability(String),

    /// A NaN or infinity appeared where a finite number was required.
    #[error("non-finite value: {0}")]
    NonFinite(String),

    /// A structural hypothesis of an inequality is violated. `name` identifies
    /// the first violated hypothesis; `detail` says how it failed.
    #[error("hypothesis `{name}` violated: {detail}")]
    Hypothesis { name: String, detail: String },

    /// A quantity that must be strictly positive (or strictly below a bound)
    /// degenerated to the boundary, e.g. a vanishing denominator family.
    #[error("degenerate input: {0}")]
    Degenerate(String),

    /// Exponents passed to a checker do not satisfy the required relation.
    #[error("exponent relation violated: {0}")]
    Exponent(String),

    /// The nonlinear solve lost its solution branch while ramping the load
    /// parameter: no solution exists past the reported value.
    #[error("pull-in detected: no solution found beyond r = {last_good_r}")]
    PullIn { last_good_r: f64 },

    /// A solver iterate left the admissible range (membrane deflection
    /// reaching the ceiling).
    #[error("iterate out of range: {0}")]
    Range(String),

    /// The requested combination of options is not supported.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// A configuration file is malformed or inconsistent. `field` names the
    /// offending entry.
    #[error("config error in field `{field}`: {detail}")]
    Config { field: String, detail: String },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Shorthand for a hypothesis violation.
    pub fn hypothesis(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::Hypothesis {
            name: name.into(),
            detail: detail.into(),
        }
    }

    /// Shorthand for a config error.
    pub fn config(field: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::Config {
            field: field.into(),
            detail: detail.into(),
        }
    }
}
