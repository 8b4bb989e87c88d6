//! Scenario configuration, single runs, and one-axis parameter sweeps.
//!
//! A scenario is a JSON document selecting a model, its parameters, the
//! fractional order, the initial densities, the time grid, and which
//! artifacts to produce:
//!
//! ```json
//! {
//!   "model": "two_species",
//!   "params": { "rho": 1.0, "psi": 19.0, "phi": 2.0, "eps1": 0.4, "eps2": 1.0 },
//!   "alpha": 0.85,
//!   "initial_state": [0.2, 0.25],
//!   "grid": { "t0": 0.0, "h": 0.01, "n_steps": 10000 },
//!   "outputs": ["timeseries", "phase_portrait", "stability_report", "metrics"]
//! }
//! ```
//!
//! `outputs` may be omitted (all artifacts) and `params` must carry the
//! exact field set of the selected model.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::metrics::{run_metrics, RunMetrics};
use crate::equilibria::{equilibria2, equilibria3, EquilibriumPoint};
use crate::error::{FracError, Result};
use crate::fraccalc::solver::{solve_caputo_ivp, SolverOptions, TimeGrid, Trajectory};
use crate::fraccalc::FracOrder;
use crate::models::{rhs2_into, rhs3_into, Params2, Params3};
use crate::stability::{stability_report2, stability_report3, StabilityReport};

/// Which model family a scenario runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelKind {
    TwoSpecies,
    ThreeSpecies,
}

impl ModelKind {
    /// State-space dimension.
    pub fn dim(self) -> usize {
        match self {
            ModelKind::TwoSpecies => 2,
            ModelKind::ThreeSpecies => 3,
        }
    }
}

/// Artifact selector for `emit`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputKind {
    Timeseries,
    PhasePortrait,
    StabilityReport,
    Metrics,
}

/// All four artifacts, the default when a config omits `outputs`.
pub const ALL_OUTPUTS: [OutputKind; 4] = [
    OutputKind::Timeseries,
    OutputKind::PhasePortrait,
    OutputKind::StabilityReport,
    OutputKind::Metrics,
];

/// Parameters of whichever model the scenario selects.
#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum ModelParams {
    Two(Params2),
    Three(Params3),
}

/// A fully validated simulation scenario.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "RawConfig")]
pub struct ScenarioConfig {
    pub model: ModelKind,
    pub params: ModelParams,
    pub alpha: FracOrder,
    pub initial_state: Vec<f64>,
    #[serde(serialize_with = "serialize_grid")]
    pub grid: TimeGrid,
    pub outputs: Vec<OutputKind>,
}

fn serialize_grid<S: serde::Serializer>(grid: &TimeGrid, s: S) -> std::result::Result<S::Ok, S::Error> {
    RawGrid {
        t0: grid.t0,
        h: grid.h,
        n_steps: grid.n_steps,
    }
    .serialize(s)
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGrid {
    t0: f64,
    h: f64,
    n_steps: usize,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    model: ModelKind,
    params: serde_json::Value,
    alpha: FracOrder,
    initial_state: Vec<f64>,
    grid: RawGrid,
    outputs: Option<Vec<OutputKind>>,
}

impl TryFrom<RawConfig> for ScenarioConfig {
    type Error = FracError;

    fn try_from(raw: RawConfig) -> Result<Self> {
        let params = match raw.model {
            ModelKind::TwoSpecies => ModelParams::Two(
                serde_json::from_value(raw.params)
                    .map_err(|e| FracError::Config(format!("two-species params: {e}")))?,
            ),
            ModelKind::ThreeSpecies => ModelParams::Three(
                serde_json::from_value(raw.params)
                    .map_err(|e| FracError::Config(format!("three-species params: {e}")))?,
            ),
        };
        if raw.initial_state.len() != raw.model.dim() {
            return Err(FracError::Config(format!(
                "initial_state has {} components, model needs {}",
                raw.initial_state.len(),
                raw.model.dim()
            )));
        }
        if raw.initial_state.iter().any(|v| !v.is_finite() || *v < 0.0) {
            return Err(FracError::Config(
                "initial densities must be finite and non-negative".into(),
            ));
        }
        Ok(ScenarioConfig {
            model: raw.model,
            params,
            alpha: raw.alpha,
            initial_state: raw.initial_state,
            grid: TimeGrid::new(raw.grid.t0, raw.grid.h, raw.grid.n_steps)?,
            outputs: raw.outputs.unwrap_or_else(|| ALL_OUTPUTS.to_vec()),
        })
    }
}

impl ScenarioConfig {
    /// Parses and validates a config from JSON text.
    ///
    /// # Errors
    /// `Config` on malformed JSON or any failed invariant.
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| FracError::Config(e.to_string()))
    }

    /// Reads and validates a config file.
    ///
    /// # Errors
    /// `Io` with the path on read failure; `Config` on invalid content.
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|source| FracError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_json(&text)
    }

    /// All equilibria of the configured model, in label order.
    pub fn equilibria(&self) -> Vec<EquilibriumPoint> {
        match &self.params {
            ModelParams::Two(p) => equilibria2(p),
            ModelParams::Three(p) => equilibria3(p),
        }
    }

    /// Stability report for one equilibrium at the configured order.
    ///
    /// # Errors
    /// Propagates degenerate-point and singular-Jacobian errors.
    pub fn report_for(&self, eq: &EquilibriumPoint) -> Result<StabilityReport> {
        match &self.params {
            ModelParams::Two(p) => stability_report2(p, eq, self.alpha),
            ModelParams::Three(p) => stability_report3(p, eq, self.alpha),
        }
    }
}

/// Everything a single run produces.
#[derive(Debug, Clone)]
pub struct RunOutput {
    pub trajectory: Trajectory,
    pub metrics: RunMetrics,
    /// Stability reports for every feasible equilibrium, in label order.
    pub reports: Vec<StabilityReport>,
    /// The feasible equilibrium nearest the final state (Euclidean),
    /// which the metrics are measured against.
    pub target: EquilibriumPoint,
}

/// Integrates the scenario and summarizes it.
///
/// The metrics target is the feasible equilibrium nearest the final
/// state; stability reports are attached for every feasible equilibrium
/// at the scenario's order.
///
/// # Errors
/// Propagates solver blow-ups (`NonFiniteState`) and report failures.
pub fn run(cfg: &ScenarioConfig) -> Result<RunOutput> {
    let trajectory = match &cfg.params {
        ModelParams::Two(p) => solve_caputo_ivp(
            |_t, s, out| rhs2_into(p, s, out),
            &cfg.initial_state,
            &cfg.grid,
            cfg.alpha,
            &SolverOptions::default(),
        )?,
        ModelParams::Three(p) => solve_caputo_ivp(
            |_t, s, out| rhs3_into(p, s, out),
            &cfg.initial_state,
            &cfg.grid,
            cfg.alpha,
            &SolverOptions::default(),
        )?,
    };

    let feasible: Vec<EquilibriumPoint> = cfg
        .equilibria()
        .into_iter()
        .filter(|e| e.feasible)
        .collect();
    let last = trajectory.row(trajectory.n_points() - 1);
    let target = feasible
        .iter()
        .min_by(|a, b| {
            dist2(&a.coords, last)
                .partial_cmp(&dist2(&b.coords, last))
                .expect("feasible coordinates are finite")
        })
        .expect("the extinction point is always feasible")
        .clone();

    let metrics = run_metrics(&trajectory, &target.coords)?;
    let reports = feasible
        .iter()
        .map(|e| cfg.report_for(e))
        .collect::<Result<Vec<_>>>()?;

    Ok(RunOutput {
        trajectory,
        metrics,
        reports,
        target,
    })
}

fn dist2(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// One row of a sweep: the axis value and the metrics of its run.
#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub value: f64,
    pub metrics: RunMetrics,
}

/// Re-runs the scenario once per value of the named axis.
///
/// Axes: `alpha` and the parameter names of the configured model
/// (`rho`, `psi`, `phi`, `eps1`, `eps2` for two species; additionally
/// `beta`, `eta`, `phi1`, `eps3` for three). Each run is independent;
/// an empty value list yields an empty table.
///
/// # Errors
/// `UnknownAxis` when the name matches no parameter of the model;
/// invalid values and run failures propagate.
pub fn sweep(base: &ScenarioConfig, axis: &str, values: &[f64]) -> Result<Vec<SweepRow>> {
    values
        .iter()
        .map(|v| {
            let cfg = with_axis(base, axis, *v)?;
            let out = run(&cfg)?;
            Ok(SweepRow {
                value: *v,
                metrics: out.metrics,
            })
        })
        .collect()
}

/// Clone of `base` with one axis replaced, re-validated from scratch.
fn with_axis(base: &ScenarioConfig, axis: &str, v: f64) -> Result<ScenarioConfig> {
    let mut cfg = base.clone();
    if axis == "alpha" {
        cfg.alpha = FracOrder::new(v)?;
        return Ok(cfg);
    }
    cfg.params = match &base.params {
        ModelParams::Two(p) => {
            let (mut rho, mut psi, mut phi, mut eps1, mut eps2) =
                (p.rho, p.psi, p.phi, p.eps1, p.eps2);
            *match axis {
                "rho" => &mut rho,
                "psi" => &mut psi,
                "phi" => &mut phi,
                "eps1" => &mut eps1,
                "eps2" => &mut eps2,
                _ => return Err(FracError::UnknownAxis(axis.to_string())),
            } = v;
            ModelParams::Two(Params2::new(rho, psi, phi, eps1, eps2)?)
        }
        ModelParams::Three(p) => {
            let (mut rho, mut psi, mut beta, mut eta) = (p.rho, p.psi, p.beta, p.eta);
            let (mut phi, mut phi1) = (p.phi, p.phi1);
            let (mut eps1, mut eps2, mut eps3) = (p.eps1, p.eps2, p.eps3);
            *match axis {
                "rho" => &mut rho,
                "psi" => &mut psi,
                "beta" => &mut beta,
                "eta" => &mut eta,
                "phi" => &mut phi,
                "phi1" => &mut phi1,
                "eps1" => &mut eps1,
                "eps2" => &mut eps2,
                "eps3" => &mut eps3,
                _ => return Err(FracError::UnknownAxis(axis.to_string())),
            } = v;
            ModelParams::Three(Params3::new(rho, psi, beta, eta, phi, phi1, eps1, eps2, eps3)?)
        }
    };
    Ok(cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn fig2_json(alpha: f64, h: f64, n_steps: usize) -> String {
        format!(
            r#"{{
              "model": "two_species",
              "params": {{ "rho": 1.0, "psi": 19.0, "phi": 2.0, "eps1": 0.4, "eps2": 1.0 }},
              "alpha": {alpha},
              "initial_state": [0.2, 0.25],
              "grid": {{ "t0": 0.0, "h": {h}, "n_steps": {n_steps} }}
            }}"#
        )
    }

    #[test]
    fn config_round_trip_and_defaults() {
        let cfg = ScenarioConfig::from_json(&fig2_json(0.85, 0.01, 1000)).unwrap();
        assert_eq!(cfg.model, ModelKind::TwoSpecies);
        assert_eq!(cfg.outputs, ALL_OUTPUTS.to_vec());
        assert_eq!(cfg.initial_state, vec![0.2, 0.25]);
        assert_eq!(cfg.alpha.value(), 0.85);
        match &cfg.params {
            ModelParams::Two(p) => assert_eq!(p.psi, 19.0),
            ModelParams::Three(_) => panic!("wrong params branch"),
        }
    }

    #[test]
    fn config_rejections() {
        // Wrong state dimension.
        let bad = fig2_json(0.85, 0.01, 100).replace("[0.2, 0.25]", "[0.2, 0.25, 0.1]");
        assert!(matches!(
            ScenarioConfig::from_json(&bad),
            Err(FracError::Config(_))
        ));
        // Negative density.
        let bad = fig2_json(0.85, 0.01, 100).replace("[0.2, 0.25]", "[-0.2, 0.25]");
        assert!(ScenarioConfig::from_json(&bad).is_err());
        // Order out of range.
        assert!(ScenarioConfig::from_json(&fig2_json(1.5, 0.01, 100)).is_err());
        // Unknown top-level field.
        let bad = fig2_json(0.85, 0.01, 100).replace("\"model\"", "\"extra\": 1, \"model\"");
        assert!(ScenarioConfig::from_json(&bad).is_err());
        // Params field mismatch for the selected model.
        let bad = fig2_json(0.85, 0.01, 100).replace("\"eps2\": 1.0", "\"eps3\": 1.0");
        assert!(ScenarioConfig::from_json(&bad).is_err());
    }

    #[test]
    fn run_converges_to_the_coexistence_point() {
        let cfg = ScenarioConfig::from_json(&fig2_json(0.85, 0.01, 4000)).unwrap();
        let out = run(&cfg).unwrap();
        assert_eq!(out.trajectory.n_points(), 4001);
        assert_eq!(out.target.label, crate::equilibria::EqLabel::E3);
        let last = out.trajectory.row(4000);
        assert!((last[0] - 2.0 / 15.0).abs() < 5e-3);
        assert!((last[1] - 7.0 / 15.0).abs() < 5e-3);
        assert!(out.metrics.settling_time.is_some());
        assert!(!out.metrics.extinction_flag);
        // Feasible equilibria at this set: E1, E2, E3 — three reports.
        assert_eq!(out.reports.len(), 3);
    }

    #[test]
    fn sweep_axes() {
        let cfg = ScenarioConfig::from_json(&fig2_json(1.0, 0.05, 100)).unwrap();
        let rows = sweep(&cfg, "eps1", &[0.0, 0.4]).unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[0].value, 0.0);

        assert!(sweep(&cfg, "alpha", &[0.9]).is_ok());
        assert!(sweep(&cfg, "eps1", &[]).unwrap().is_empty());
        assert!(matches!(
            sweep(&cfg, "eps3", &[0.1]),
            Err(FracError::UnknownAxis(_))
        ));
        assert!(matches!(
            sweep(&cfg, "carrying", &[1.0]),
            Err(FracError::UnknownAxis(_))
        ));
        // Axis values still go through parameter validation.
        assert!(sweep(&cfg, "rho", &[-1.0]).is_err());
    }
}
