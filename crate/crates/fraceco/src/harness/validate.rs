//! Built-in self-checks: a handful of closed-form identities and known
//! fixtures that exercise every layer of the crate, printed one line per
//! check so a packaging problem is obvious at a glance.

use super::emit::format_g17;
use super::scenario::{run, ScenarioConfig};
use crate::equilibria::{equilibria2, equilibria3, e5_fixed_point_residual, EqLabel};
use crate::fraccalc::{
    caputo_derivative_of_samples, gamma_fn, ml_e_alpha,
    solver::{solve_caputo_ivp, SolverOptions, TimeGrid},
    FracOrder,
};
use crate::models::{Params2, Params3};
use crate::stability::{stability_report2, Verdict};

/// erf(1), for the half-order Mittag-Leffler identity
/// E_{1/2}(x) = exp(x^2) * (1 + erf(x)).
const ERF_ONE: f64 = 0.842_700_792_949_714_9;

struct Checker<W> {
    sink: W,
    all_pass: bool,
}

impl<W: std::io::Write> Checker<W> {
    fn check(&mut self, name: &str, pass: bool, detail: String) {
        self.all_pass &= pass;
        let tag = if pass { "PASS" } else { "FAIL" };
        let _ = writeln!(self.sink, "{tag}  {name}: {detail}");
    }

    fn rel(&mut self, name: &str, got: f64, want: f64, tol: f64) {
        let err = (got - want).abs() / want.abs().max(1e-300);
        self.check(
            name,
            err <= tol,
            format!(
                "got {}, want {} (rel err {:.2e}, tol {:.0e})",
                format_g17(got),
                format_g17(want),
                err,
                tol
            ),
        );
    }
}

/// Runs every self-check, writing one `PASS`/`FAIL` line per check to
/// `sink`; returns `true` when all pass.
pub fn run_validation<W: std::io::Write>(sink: W) -> bool {
    let mut c = Checker {
        sink,
        all_pass: true,
    };

    // Gamma endpoints of the special-function stack.
    c.rel("gamma(5) = 4!", gamma_fn(5.0).unwrap(), 24.0, 1e-12);
    c.rel(
        "gamma(1/2) = sqrt(pi)",
        gamma_fn(0.5).unwrap(),
        std::f64::consts::PI.sqrt(),
        1e-12,
    );

    // Mittag-Leffler against its two classical reductions.
    c.rel(
        "E_1(1) = e",
        ml_e_alpha(1.0, 1.0).unwrap(),
        std::f64::consts::E,
        1e-10,
    );
    c.rel(
        "E_1/2(1) = e*(1+erf(1))",
        ml_e_alpha(0.5, 1.0).unwrap(),
        std::f64::consts::E * (1.0 + ERF_ONE),
        1e-6,
    );

    // Predictor-corrector on the linear decay whose exact solution is
    // the one-parameter Mittag-Leffler function.
    let alpha = FracOrder::new(0.8).unwrap();
    let grid = TimeGrid::new(0.0, 1e-3, 2000).unwrap();
    let traj = solve_caputo_ivp(
        |_t, s, out| out[0] = -s[0],
        &[1.0],
        &grid,
        alpha,
        &SolverOptions::default(),
    )
    .unwrap();
    let mut worst = 0.0f64;
    for i in (0..=traj.grid.n_steps).step_by(100) {
        let t = traj.grid.time(i);
        let exact = ml_e_alpha(0.8, -t.powf(0.8)).unwrap();
        worst = worst.max((traj.row(i)[0] - exact).abs() / exact.abs());
    }
    c.check(
        "solver vs E_0.8(-t^0.8) on [0,2]",
        worst <= 1e-3,
        format!("worst rel err {worst:.2e}, tol 1e-03"),
    );

    // Direct quadrature of a known half-order derivative:
    // the 1/2-derivative of t^2 at t=1 is Gamma(3)/Gamma(5/2).
    let grid = TimeGrid::new(0.0, 1e-3, 1000).unwrap();
    let samples: Vec<f64> = (0..=1000).map(|i| grid.time(i).powi(2)).collect();
    let deriv =
        caputo_derivative_of_samples(&samples, &grid, FracOrder::new(0.5).unwrap()).unwrap();
    let exact = 2.0 / gamma_fn(2.5).unwrap();
    c.rel(
        "half-derivative of t^2 at t=1",
        deriv[1000],
        exact,
        1e-2,
    );

    // Closed-form coexistence point of the planar model.
    let p2 = Params2::new(1.0, 19.0, 2.0, 0.4, 1.0).unwrap();
    let eqs = equilibria2(&p2);
    let e3 = eqs.iter().find(|e| e.label == EqLabel::E3).unwrap();
    c.rel("planar coexistence prey density", e3.coords[0], 2.0 / 15.0, 1e-12);
    c.rel("planar coexistence predator density", e3.coords[1], 7.0 / 15.0, 1e-12);

    // Cubic fixed-point residuals of the three-species interior points.
    let p3 = Params3::new(0.61, 1.0, 7.0, 0.01, 1.4, 0.02, 0.12, 0.43, 0.06).unwrap();
    let mut worst_res = 0.0f64;
    let mut n_e5 = 0;
    for eq in equilibria3(&p3) {
        if eq.label == EqLabel::E5 && !eq.coords.is_empty() {
            n_e5 += 1;
            worst_res = worst_res.max(e5_fixed_point_residual(&p3, eq.coords[0]).abs());
        }
    }
    c.check(
        "interior fixed-point residuals",
        n_e5 == 2 && worst_res <= 1e-10,
        format!("{n_e5} points, worst residual {worst_res:.2e}, tol 1e-10"),
    );

    // Fractional stability verdict and the oscillatory order window.
    let report = stability_report2(&p2, e3, FracOrder::new(0.85).unwrap()).unwrap();
    let window = report
        .conditions
        .iter()
        .find(|cond| cond.name == "alpha_below_critical")
        .map(|cond| cond.rhs);
    let window_ok = window.is_some_and(|w| (1.17..=1.21).contains(&w));
    c.check(
        "coexistence verdict at alpha 0.85",
        report.verdict == Verdict::Stable && window_ok,
        format!(
            "verdict {:?}, order window {}",
            report.verdict,
            window.map_or("none".into(), format_g17)
        ),
    );

    // Determinism: the same scenario rendered twice gives identical bytes.
    let cfg = ScenarioConfig::from_json(
        r#"{
            "model": "two_species",
            "params": { "rho": 1.0, "psi": 19.0, "phi": 2.0, "eps1": 0.4, "eps2": 1.0 },
            "alpha": 0.85,
            "initial_state": [0.2, 0.25],
            "grid": { "t0": 0.0, "h": 0.05, "n_steps": 200 }
        }"#,
    )
    .unwrap();
    let a = run(&cfg).map(|o| super::emit::timeseries_csv(&o.trajectory));
    let b = run(&cfg).map(|o| super::emit::timeseries_csv(&o.trajectory));
    let same = matches!((&a, &b), (Ok(x), Ok(y)) if x == y);
    c.check(
        "repeated runs are byte-identical",
        same,
        format!("{} bytes each", a.as_ref().map(|v| v.len()).unwrap_or(0)),
    );

    c.all_pass
}
