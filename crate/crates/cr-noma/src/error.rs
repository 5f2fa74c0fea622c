//! Crate-wide error type.
//!
//! Everything fallible in the library funnels into [`enum@Error`]. Numerical
//! operations distinguish *domain* problems (inputs outside a formula's
//! validity) from *capability* problems (series cap exceeded, quadrature
//! budget exhausted, degenerate conditioning events) so that callers such as
//! the sweep driver can decide whether to record an error row or abort.

use thiserror::Error;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Scenario parameters rejected at construction time.
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    /// Inputs outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The requested (scheme, metric, source) combination has no implementation.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// Alternating binomial series are only evaluated up to a user-count cap;
    /// beyond it the quadrature oracle is the intended evaluation path.
    #[error("closed-form series capped at M = {cap} users (requested M = {m}); use the quadrature oracle")]
    SeriesCap { m: u32, cap: u32 },

    /// A conditional quantity whose conditioning event has (numerically) zero mass.
    #[error("degenerate: {0}")]
    Degenerate(String),

    /// Adaptive quadrature exhausted its panel budget before reaching tolerance.
    #[error("quadrature did not converge: requested {requested:.1e} absolute, achieved {achieved:.1e} after {panels} panels")]
    NoConvergence {
        requested: f64,
        achieved: f64,
        panels: usize,
    },

    /// An exact probability evaluated outside `[0, 1]` by more than round-off.
    #[error("probability {0:e} lies outside [0,1] beyond round-off tolerance")]
    OutOfRange(f64),

    /// Monte Carlo estimators need at least one trial.
    #[error("trial count must be at least 1")]
    NoTrials,

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("JSON: {0}")]
    Json(#[from] serde_json::Error),
}
