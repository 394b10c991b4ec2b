//! Command-line plumbing for the inequality laboratory: the JSON
//! configuration schema, the bounded-pool command runner, and the
//! deterministic output writers.

pub mod config;
pub mod output;
pub mod runner;
