//! Fractional-calculus numerics: gamma function, Mittag-Leffler function,
//! Caputo quadrature, and the fractional Adams–Bashforth–Moulton solver.

pub mod caputo;
pub mod gamma;
pub mod mittag_leffler;
pub mod solver;

pub use caputo::caputo_derivative_of_samples;
pub use gamma::{gamma_fn, ln_gamma};
pub use mittag_leffler::{ml_e_alpha, mittag_leffler, MLArgs};
pub use solver::{solve_caputo_ivp, SolverOptions, TimeGrid, Trajectory};

use crate::error::{FracError, Result};
use serde::{Deserialize, Serialize};

/// A validated Caputo derivative order α ∈ (0, 1].
///
/// The solver, the quadrature, and every stability criterion in this crate
/// assume this range; constructing the type is the single checkpoint.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct FracOrder(f64);

impl FracOrder {
    /// Validates `0 < alpha <= 1`.
    ///
    /// # Errors
    /// [`FracError::InvalidOrder`] outside the half-open unit interval.
    pub fn new(alpha: f64) -> Result<Self> {
        if alpha.is_finite() && alpha > 0.0 && alpha <= 1.0 {
            Ok(Self(alpha))
        } else {
            Err(FracError::InvalidOrder(alpha))
        }
    }

    /// The raw order value.
    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for FracOrder {
    type Error = FracError;

    fn try_from(v: f64) -> Result<Self> {
        Self::new(v)
    }
}

impl From<FracOrder> for f64 {
    fn from(o: FracOrder) -> f64 {
        o.0
    }
}
