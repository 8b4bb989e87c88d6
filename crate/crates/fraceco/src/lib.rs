//! Fractional-order predator–prey dynamics.
//!
//! Building blocks for simulating and analyzing Caputo-fractional
//! population models with harvesting: special functions, a fractional
//! Adams–Bashforth–Moulton solver, dimensionless model right-hand sides,
//! equilibria, fractional-order stability tests, and an experiment harness
//! with CLI-facing config, metrics, and file emission.

pub mod equilibria;
pub mod error;
pub mod fraccalc;
pub mod harness;
pub mod models;
pub mod stability;

pub use error::{FracError, Result};
pub use fraccalc::FracOrder;
pub use models::{Params2, Params3};
