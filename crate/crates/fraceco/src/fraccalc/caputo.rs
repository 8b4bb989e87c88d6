//! Direct Caputo-derivative quadrature on sampled data (the L1 scheme).
//!
//! Serves as an independent validation oracle for the time-stepper: the
//! Caputo derivative of a sampled trajectory can be compared against the
//! right-hand side that generated it. Not used in the integration hot path.
//!
//! For order α ∈ (0, 1) on a uniform grid with step h,
//!
//! D^α f(t_n) ≈ h^{−α}/Γ(2−α) · Σ_{j=0}^{n−1} (f_{j+1} − f_j)
//!              · [(n−j)^{1−α} − (n−j−1)^{1−α}],
//!
//! which is first differences of f convolved with the integrated power-law
//! kernel (product-rectangle quadrature). Convergence is O(h^{2−α}) for
//! smooth f. The α = 1 limit degenerates in the formula (the kernel weights
//! collapse onto the newest difference, but 0^0 handling becomes
//! ill-defined), so it is special-cased to the exact backward difference.

use super::solver::TimeGrid;
use crate::error::{FracError, Result};
use crate::fraccalc::gamma::gamma_fn;
use crate::fraccalc::FracOrder;

/// Discretized Caputo derivative of a sampled function on a uniform grid.
///
/// Returns one value per grid point; the value at index 0 is defined as 0
/// (no history yet — the Caputo integral over an empty interval).
///
/// # Errors
/// [`FracError::GridMismatch`] when `samples` does not have `n_steps + 1`
/// entries, and a domain error for fewer than 2 samples.
pub fn caputo_derivative_of_samples(
    samples: &[f64],
    grid: &TimeGrid,
    order: FracOrder,
) -> Result<Vec<f64>> {
    if samples.len() != grid.n_points() {
        return Err(FracError::GridMismatch {
            expected: grid.n_points(),
            got: samples.len(),
        });
    }
    if samples.len() < 2 {
        return Err(FracError::Domain(
            "Caputo quadrature needs at least 2 samples".into(),
        ));
    }

    let n = samples.len() - 1;
    let h = grid.h;
    let alpha = order.value();
    let mut out = vec![0.0; n + 1];

    if alpha == 1.0 {
        for i in 1..=n {
            out[i] = (samples[i] - samples[i - 1]) / h;
        }
        return Ok(out);
    }

    // kernel[m] = (m+1)^{1−α} − m^{1−α}; the difference f_{j+1} − f_j at lag
    // m = n−1−j is weighted by kernel[m].
    let e = 1.0 - alpha;
    let kernel: Vec<f64> = (0..n)
        .map(|m| ((m + 1) as f64).powf(e) - (m as f64).powf(e))
        .collect();
    let scale = h.powf(-alpha) / gamma_fn(2.0 - alpha)?;

    for i in 1..=n {
        let mut acc = 0.0;
        for j in 0..i {
            acc += (samples[j + 1] - samples[j]) * kernel[i - 1 - j];
        }
        out[i] = scale * acc;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(h: f64, n: usize) -> TimeGrid {
        TimeGrid::new(0.0, h, n).unwrap()
    }

    fn sample(g: &TimeGrid, f: impl Fn(f64) -> f64) -> Vec<f64> {
        (0..g.n_points()).map(|i| f(g.time(i))).collect()
    }

    #[test]
    fn constant_has_zero_derivative() {
        let g = grid(0.01, 100);
        let s = sample(&g, |_| 3.25);
        let d =
            caputo_derivative_of_samples(&s, &g, FracOrder::new(0.5).unwrap()).unwrap();
        assert!(d.iter().all(|&v| v.abs() < 1e-12));
    }

    #[test]
    fn linear_function_at_order_one_is_unit_slope() {
        let g = grid(0.01, 100);
        let s = sample(&g, |t| t);
        let d =
            caputo_derivative_of_samples(&s, &g, FracOrder::new(1.0).unwrap()).unwrap();
        assert_eq!(d[0], 0.0);
        assert!(d[1..].iter().all(|&v| (v - 1.0).abs() < 1e-12));
    }

    #[test]
    fn linear_function_at_half_order() {
        // D^{1/2} t = t^{1/2} / Γ(1.5) = 2√(t/π).
        let g = grid(1e-3, 1000);
        let s = sample(&g, |t| t);
        let d =
            caputo_derivative_of_samples(&s, &g, FracOrder::new(0.5).unwrap()).unwrap();
        let want = 2.0 / std::f64::consts::PI.sqrt(); // at t = 1
        assert!((d[1000] - want).abs() / want < 1e-3, "{} vs {want}", d[1000]);
    }

    #[test]
    fn quadratic_matches_power_rule_within_one_percent() {
        // D^{1/2} t² at t = 1 equals Γ(3)/Γ(2.5) ≈ 1.5045.
        let g = grid(1e-3, 1000);
        let s = sample(&g, |t| t * t);
        let d =
            caputo_derivative_of_samples(&s, &g, FracOrder::new(0.5).unwrap()).unwrap();
        let want = 2.0 / gamma_fn(2.5).unwrap();
        assert!((want - 1.5045).abs() < 5e-4);
        assert!((d[1000] - want).abs() / want < 0.01);
    }

    #[test]
    fn halving_h_raises_accuracy_at_order_point_nine_rate() {
        let order = FracOrder::new(0.5).unwrap();
        let want = 2.0 / gamma_fn(2.5).unwrap();
        let mut errs = Vec::new();
        for n in [500usize, 1000, 2000] {
            let g = grid(1.0 / n as f64, n);
            let s = sample(&g, |t| t * t);
            let d = caputo_derivative_of_samples(&s, &g, order).unwrap();
            errs.push((d[n] - want).abs());
        }
        for w in errs.windows(2) {
            let rate = (w[0] / w[1]).log2();
            assert!(rate >= 0.9, "observed convergence rate {rate}");
        }
    }

    #[test]
    fn mismatched_grid_is_rejected() {
        let g = grid(0.1, 10);
        let s = vec![0.0; 5];
        assert!(matches!(
            caputo_derivative_of_samples(&s, &g, FracOrder::new(0.5).unwrap()),
            Err(FracError::GridMismatch { .. })
        ));
    }
}
