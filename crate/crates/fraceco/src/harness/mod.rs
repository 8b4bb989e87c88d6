//! Scenario harness: JSON configs in, simulations and artifacts out.
//!
//! The harness glues the numerical layers together behind a small
//! file-based workflow. [`scenario`] parses and validates configs and
//! drives runs and sweeps, [`metrics`] condenses a trajectory into
//! settling/amplitude/extinction summaries, [`emit`] renders CSV, SVG,
//! JSON, and markdown artifacts deterministically, and [`validate`]
//! packages the built-in self-checks behind the `validate` subcommand.

pub mod emit;
pub mod metrics;
pub mod scenario;
pub mod validate;

pub use emit::{emit_run, emit_sweep, format_g17, resolve_out_dir, DEFAULT_OUT_DIR, OUT_DIR_ENV};
pub use metrics::{run_metrics, RunMetrics};
pub use scenario::{run, sweep, ModelKind, ModelParams, OutputKind, RunOutput, ScenarioConfig, SweepRow};
pub use validate::run_validation;
