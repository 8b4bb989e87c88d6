//! Trajectory summary metrics: settling time, late-window oscillation
//! amplitude, and the extinction flag.

use serde::Serialize;

use crate::error::{FracError, Result};
use crate::fraccalc::solver::Trajectory;

/// Relative half-width of the settling band around the target.
pub const SETTLING_BAND_REL: f64 = 0.02;
/// Absolute floor of the settling band, so targets near zero still have
/// a finite band.
pub const SETTLING_BAND_FLOOR: f64 = 1e-4;
/// Density below which a population counts as extinct.
pub const EXTINCTION_FLOOR: f64 = 1e-6;

/// Summary metrics of one run against a target equilibrium.
#[derive(Debug, Clone, Serialize)]
pub struct RunMetrics {
    /// First time after which every component stays inside the band
    /// around the target for the rest of the horizon; `None` when the
    /// trajectory is still outside at the final point.
    pub settling_time: Option<f64>,
    /// Per-component max − min over the late window t ∈ [(t₀+T)/2, T].
    pub late_amplitude: Vec<f64>,
    /// Whether any component ever falls below the extinction floor.
    pub extinction_flag: bool,
}

/// Computes the run metrics of a trajectory against a target point.
///
/// The settling band for component c is max(0.02·|target_c|, 1e−4).
/// Settling time is a grid time: the first grid point from which the
/// trajectory never leaves the band again (t₀ when it never leaves it at
/// all).
///
/// # Errors
/// `GridMismatch` when the target dimension differs from the
/// trajectory's.
pub fn run_metrics(traj: &Trajectory, target: &[f64]) -> Result<RunMetrics> {
    if target.len() != traj.dim {
        return Err(FracError::GridMismatch {
            expected: traj.dim,
            got: target.len(),
        });
    }
    let band: Vec<f64> = target
        .iter()
        .map(|t| (SETTLING_BAND_REL * t.abs()).max(SETTLING_BAND_FLOOR))
        .collect();
    let in_band = |row: &[f64]| {
        row.iter()
            .zip(target)
            .zip(&band)
            .all(|((v, t), b)| (v - t).abs() <= *b)
    };

    let n = traj.n_points();
    let last_out = (0..n).rev().find(|i| !in_band(traj.row(*i)));
    let settling_time = match last_out {
        None => Some(traj.grid.time(0)),
        Some(m) if m + 1 == n => None,
        Some(m) => Some(traj.grid.time(m + 1)),
    };

    let t_mid = (traj.grid.time(0) + traj.grid.time(n - 1)) / 2.0;
    let mut lo = vec![f64::INFINITY; traj.dim];
    let mut hi = vec![f64::NEG_INFINITY; traj.dim];
    for i in 0..n {
        if traj.grid.time(i) >= t_mid {
            for (c, v) in traj.row(i).iter().enumerate() {
                lo[c] = lo[c].min(*v);
                hi[c] = hi[c].max(*v);
            }
        }
    }
    let late_amplitude: Vec<f64> = hi.iter().zip(&lo).map(|(h, l)| h - l).collect();

    let extinction_flag = (0..n).any(|i| traj.row(i).iter().any(|v| *v < EXTINCTION_FLOOR));

    Ok(RunMetrics {
        settling_time,
        late_amplitude,
        extinction_flag,
    })
}
