//! Crate-wide error type.

use std::path::PathBuf;
use thiserror::Error;

/// Unified error for numerics, model construction, and the experiment harness.
#[derive(Debug, Error)]
pub enum FracError {
    /// Fractional order outside the supported interval (0, 1].
    #[error("fractional order must lie in (0, 1], got {0}")]
    InvalidOrder(f64),
    /// Gamma function evaluated at a pole (zero or a negative integer).
    #[error("gamma function pole at x = {0}")]
    GammaPole(f64),
    /// Argument outside a documented domain guard.
    #[error("domain error: {0}")]
    Domain(String),
    /// A saturation denominator vanished (1 + phi*x = 0 style pole).
    #[error("singular denominator: {0}")]
    Singularity(String),
    /// Invalid parameter or state value at construction time.
    #[error("invalid {name}: {value}")]
    InvalidParam { name: &'static str, value: f64 },
    /// Sample series does not match the time grid.
    #[error("grid mismatch: expected {expected} samples, got {got}")]
    GridMismatch { expected: usize, got: usize },
    /// The integrator produced a non-finite state component.
    #[error("non-finite state at step {step} (t = {time})")]
    NonFiniteState { step: usize, time: f64 },
    /// Unknown sweep axis name.
    #[error("unknown sweep axis: {0}")]
    UnknownAxis(String),
    /// Scenario configuration rejected.
    #[error("config error: {0}")]
    Config(String),
    /// Filesystem failure, with the offending path.
    #[error("i/o failure on {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, FracError>;
