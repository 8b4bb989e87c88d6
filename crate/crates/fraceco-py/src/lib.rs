//! Python extension module exposing the fraceco toolkit.
//!
//! Scalar special functions come back as floats, trajectories as
//! `(times, states)` lists, and structured results (equilibria,
//! stability reports) as JSON strings ready for `json.loads`.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use fraceco::equilibria::{equilibria2, equilibria3};
use fraceco::fraccalc::{
    caputo_derivative_of_samples, gamma_fn, ml_e_alpha, solve_caputo_ivp, SolverOptions, TimeGrid,
    Trajectory,
};
use fraceco::models::{rhs2_into, rhs3_into};
use fraceco::stability::{stability_report2, stability_report3};
use fraceco::{FracOrder, Params2, Params3};

fn err(e: fraceco::FracError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn json<T: serde::Serialize>(value: &T) -> PyResult<String> {
    serde_json::to_string_pretty(value).map_err(|e| PyValueError::new_err(e.to_string()))
}

fn unpack(traj: Trajectory) -> (Vec<f64>, Vec<Vec<f64>>) {
    let times = (0..traj.n_points()).map(|i| traj.grid.time(i)).collect();
    let states = (0..traj.n_points()).map(|i| traj.row(i).to_vec()).collect();
    (times, states)
}

/// Gamma function on the real line (poles rejected).
#[pyfunction]
fn gamma(x: f64) -> PyResult<f64> {
    gamma_fn(x).map_err(err)
}

/// One-parameter Mittag-Leffler function E_alpha(x).
#[pyfunction]
fn mittag_leffler(alpha: f64, x: f64) -> PyResult<f64> {
    ml_e_alpha(alpha, x).map_err(err)
}

/// Caputo derivative of order `alpha` of uniformly sampled data.
///
/// `samples[i]` is the value at `t0 + i*h`; the result has the same
/// length and `result[0] == 0`.
#[pyfunction]
fn caputo_derivative(samples: Vec<f64>, t0: f64, h: f64, alpha: f64) -> PyResult<Vec<f64>> {
    if samples.len() < 2 {
        return Err(PyValueError::new_err("need at least two samples"));
    }
    let grid = TimeGrid::new(t0, h, samples.len() - 1).map_err(err)?;
    let order = FracOrder::new(alpha).map_err(err)?;
    caputo_derivative_of_samples(&samples, &grid, order).map_err(err)
}

/// Integrate the two-species model; returns `(times, states)` where
/// `states[i] == [x, y]` at `times[i]`.
#[pyfunction]
#[pyo3(signature = (rho, psi, phi, eps1, eps2, alpha, init, t0=0.0, h=0.01, n_steps=1000, memory_window=None))]
#[allow(clippy::too_many_arguments)]
fn simulate_two(
    rho: f64,
    psi: f64,
    phi: f64,
    eps1: f64,
    eps2: f64,
    alpha: f64,
    init: [f64; 2],
    t0: f64,
    h: f64,
    n_steps: usize,
    memory_window: Option<usize>,
) -> PyResult<(Vec<f64>, Vec<Vec<f64>>)> {
    let p = Params2::new(rho, psi, phi, eps1, eps2).map_err(err)?;
    let grid = TimeGrid::new(t0, h, n_steps).map_err(err)?;
    let order = FracOrder::new(alpha).map_err(err)?;
    let options = SolverOptions { memory_window };
    let traj = solve_caputo_ivp(
        |_t, state, out| rhs2_into(&p, state, out),
        &init,
        &grid,
        order,
        &options,
    )
    .map_err(err)?;
    Ok(unpack(traj))
}

/// Integrate the three-species model; returns `(times, states)` where
/// `states[i] == [x, y, z]` at `times[i]`.
#[pyfunction]
#[pyo3(signature = (rho, psi, beta, eta, phi, phi1, eps1, eps2, eps3, alpha, init, t0=0.0, h=0.01, n_steps=1000, memory_window=None))]
#[allow(clippy::too_many_arguments)]
fn simulate_three(
    rho: f64,
    psi: f64,
    beta: f64,
    eta: f64,
    phi: f64,
    phi1: f64,
    eps1: f64,
    eps2: f64,
    eps3: f64,
    alpha: f64,
    init: [f64; 3],
    t0: f64,
    h: f64,
    n_steps: usize,
    memory_window: Option<usize>,
) -> PyResult<(Vec<f64>, Vec<Vec<f64>>)> {
    let p = Params3::new(rho, psi, beta, eta, phi, phi1, eps1, eps2, eps3).map_err(err)?;
    let grid = TimeGrid::new(t0, h, n_steps).map_err(err)?;
    let order = FracOrder::new(alpha).map_err(err)?;
    let options = SolverOptions { memory_window };
    let traj = solve_caputo_ivp(
        |_t, state, out| rhs3_into(&p, state, out),
        &init,
        &grid,
        order,
        &options,
    )
    .map_err(err)?;
    Ok(unpack(traj))
}

/// All stationary points of the two-species model, as a JSON array.
#[pyfunction]
fn equilibria_two(rho: f64, psi: f64, phi: f64, eps1: f64, eps2: f64) -> PyResult<String> {
    let p = Params2::new(rho, psi, phi, eps1, eps2).map_err(err)?;
    json(&equilibria2(&p))
}

/// All stationary points of the three-species model, as a JSON array.
#[pyfunction]
#[allow(clippy::too_many_arguments)]
fn equilibria_three(
    rho: f64,
    psi: f64,
    beta: f64,
    eta: f64,
    phi: f64,
    phi1: f64,
    eps1: f64,
    eps2: f64,
    eps3: f64,
) -> PyResult<String> {
    let p = Params3::new(rho, psi, beta, eta, phi, phi1, eps1, eps2, eps3).map_err(err)?;
    json(&equilibria3(&p))
}

/// Stability reports for every feasible two-species equilibrium at
/// fractional order `alpha`, as a JSON array.
#[pyfunction]
fn stability_two(
    rho: f64,
    psi: f64,
    phi: f64,
    eps1: f64,
    eps2: f64,
    alpha: f64,
) -> PyResult<String> {
    let p = Params2::new(rho, psi, phi, eps1, eps2).map_err(err)?;
    let order = FracOrder::new(alpha).map_err(err)?;
    let reports = equilibria2(&p)
        .iter()
        .filter(|e| e.feasible)
        .map(|e| stability_report2(&p, e, order))
        .collect::<fraceco::Result<Vec<_>>>()
        .map_err(err)?;
    json(&reports)
}

/// Stability reports for every feasible three-species equilibrium at
/// fractional order `alpha`, as a JSON array.
#[pyfunction]
#[allow(clippy::too_many_arguments)]
fn stability_three(
    rho: f64,
    psi: f64,
    beta: f64,
    eta: f64,
    phi: f64,
    phi1: f64,
    eps1: f64,
    eps2: f64,
    eps3: f64,
    alpha: f64,
) -> PyResult<String> {
    let p = Params3::new(rho, psi, beta, eta, phi, phi1, eps1, eps2, eps3).map_err(err)?;
    let order = FracOrder::new(alpha).map_err(err)?;
    let reports = equilibria3(&p)
        .iter()
        .filter(|e| e.feasible)
        .map(|e| stability_report3(&p, e, order))
        .collect::<fraceco::Result<Vec<_>>>()
        .map_err(err)?;
    json(&reports)
}

#[pymodule]
fn fraceco_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(gamma, m)?)?;
    m.add_function(wrap_pyfunction!(mittag_leffler, m)?)?;
    m.add_function(wrap_pyfunction!(caputo_derivative, m)?)?;
    m.add_function(wrap_pyfunction!(simulate_two, m)?)?;
    m.add_function(wrap_pyfunction!(simulate_three, m)?)?;
    m.add_function(wrap_pyfunction!(equilibria_two, m)?)?;
    m.add_function(wrap_pyfunction!(equilibria_three, m)?)?;
    m.add_function(wrap_pyfunction!(stability_two, m)?)?;
    m.add_function(wrap_pyfunction!(stability_three, m)?)?;
    Ok(())
}
