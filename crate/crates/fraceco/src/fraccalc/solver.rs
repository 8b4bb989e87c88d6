//! Fractional Adams–Bashforth–Moulton time-stepping for Caputo IVPs.
//!
//! Solves D^α y = f(t, y), y(t₀) = y₀, 0 < α ≤ 1, on a uniform grid.
//! The scheme is predict–evaluate–correct–evaluate with one corrector pass:
//!
//! predictor:  yᴾ_{n+1} = y₀ + h^α/Γ(α+1) · Σ_{j=0}^{n} b_{n−j} f_j,
//!             b_m = (m+1)^α − m^α;
//!
//! corrector:  y_{n+1} = y₀ + h^α/Γ(α+2) · [ f(t_{n+1}, yᴾ_{n+1})
//!             + a₀(n) f_0 + Σ_{j=1}^{n} c_{n−j} f_j ],
//!             c_m = (m+2)^{α+1} + m^{α+1} − 2(m+1)^{α+1},
//!             a₀(n) = n^{α+1} − (n−α)(n+1)^α.
//!
//! The corrected state is evaluated once more and stored as f_{n+1} for
//! future steps. At α = 1 the weights collapse to b_m = 1, c_m = 2,
//! a₀ = 1, and the corrector is the global trapezoid rule, so the solver
//! degrades gracefully into a classical second-order one-step method.
//!
//! Memory cost is the full history (O(N) state, O(N²) work) because the
//! Caputo operator is nonlocal; an optional truncation window trades
//! accuracy for speed by dropping the oldest history terms.

use crate::error::{FracError, Result};
use crate::fraccalc::gamma::gamma_fn;
use crate::fraccalc::FracOrder;

/// Uniform time grid `t_i = t0 + i·h`, `i = 0..=n_steps`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    /// Start time.
    pub t0: f64,
    /// Step size, strictly positive.
    pub h: f64,
    /// Number of steps; the grid has `n_steps + 1` points.
    pub n_steps: usize,
}

impl TimeGrid {
    /// Builds a grid after validating the step.
    ///
    /// # Errors
    /// Domain errors for non-finite `t0`, non-positive or non-finite `h`,
    /// or a zero-step grid.
    pub fn new(t0: f64, h: f64, n_steps: usize) -> Result<Self> {
        if !t0.is_finite() {
            return Err(FracError::Domain(format!("grid start {t0} is not finite")));
        }
        if !h.is_finite() || h <= 0.0 {
            return Err(FracError::Domain(format!(
                "grid step must be positive and finite, got {h}"
            )));
        }
        if n_steps == 0 {
            return Err(FracError::Domain("grid needs at least one step".into()));
        }
        Ok(Self { t0, h, n_steps })
    }

    /// Time at grid index `i`.
    #[inline]
    pub fn time(&self, i: usize) -> f64 {
        self.t0 + i as f64 * self.h
    }

    /// Number of grid points (`n_steps + 1`).
    #[inline]
    pub fn n_points(&self) -> usize {
        self.n_steps + 1
    }
}

/// A solution sampled on a [`TimeGrid`], stored row-major: the state at
/// grid index `i` occupies `states[i*dim .. (i+1)*dim]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    /// The grid the rows are sampled on.
    pub grid: TimeGrid,
    /// State dimension.
    pub dim: usize,
    /// Row-major state storage, `n_points × dim` entries.
    pub states: Vec<f64>,
}

impl Trajectory {
    /// Assembles a trajectory from per-point rows.
    ///
    /// # Errors
    /// [`FracError::GridMismatch`] when the number of rows disagrees with
    /// the grid, and a domain error for empty or ragged rows.
    pub fn from_rows(grid: TimeGrid, rows: &[Vec<f64>]) -> Result<Self> {
        if rows.len() != grid.n_points() {
            return Err(FracError::GridMismatch {
                expected: grid.n_points(),
                got: rows.len(),
            });
        }
        let dim = rows[0].len();
        if dim == 0 {
            return Err(FracError::Domain("state rows must be non-empty".into()));
        }
        let mut states = Vec::with_capacity(rows.len() * dim);
        for row in rows {
            if row.len() != dim {
                return Err(FracError::Domain(format!(
                    "ragged rows: expected width {dim}, got {}",
                    row.len()
                )));
            }
            states.extend_from_slice(row);
        }
        Ok(Self { grid, dim, states })
    }

    /// State row at grid index `i`.
    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.states[i * self.dim..(i + 1) * self.dim]
    }

    /// Number of sampled points.
    #[inline]
    pub fn n_points(&self) -> usize {
        self.grid.n_points()
    }

    /// Iterator over one state component across all points.
    pub fn component(&self, c: usize) -> impl Iterator<Item = f64> + '_ {
        debug_assert!(c < self.dim);
        self.states.iter().skip(c).step_by(self.dim).copied()
    }
}

/// Knobs for [`solve_caputo_ivp`].
#[derive(Debug, Clone, Copy, Default)]
pub struct SolverOptions {
    /// When `Some(w)`, each step keeps only the `w` most recent history
    /// terms in the memory sums. `None` (the default) keeps the exact,
    /// full-memory scheme. Truncation is an accuracy/speed trade and is
    /// only sensible for α < 1, where the kernel weights decay.
    pub memory_window: Option<usize>,
}

/// Integrates D^α y = f(t, y), y(t₀) = y₀ over `grid`.
///
/// # Arguments
/// * `rhs` — writes f(t, y) into its output slice; must not assume the
///   output is zeroed.
/// * `y0` — initial state, finite, at least one component.
/// * `grid` — uniform grid to sample the solution on.
/// * `order` — Caputo order α ∈ (0, 1].
/// * `options` — memory-window control.
///
/// # Returns
/// The trajectory including the initial row.
///
/// # Errors
/// Domain errors for invalid inputs, and
/// [`FracError::NonFiniteState`] when the iteration produces a NaN or
/// infinite component (typically a finite-time blow-up of the model).
pub fn solve_caputo_ivp<F>(
    mut rhs: F,
    y0: &[f64],
    grid: &TimeGrid,
    order: FracOrder,
    options: &SolverOptions,
) -> Result<Trajectory>
where
    F: FnMut(f64, &[f64], &mut [f64]),
{
    let dim = y0.len();
    if dim == 0 {
        return Err(FracError::Domain("initial state must be non-empty".into()));
    }
    if y0.iter().any(|v| !v.is_finite()) {
        return Err(FracError::Domain("initial state must be finite".into()));
    }
    if options.memory_window == Some(0) {
        return Err(FracError::Domain("memory window must be at least 1".into()));
    }

    let alpha = order.value();
    let n_steps = grid.n_steps;
    let h = grid.h;
    let pred_c = h.powf(alpha) / gamma_fn(alpha + 1.0)?;
    let corr_c = h.powf(alpha) / gamma_fn(alpha + 2.0)?;

    // Weight tables by lag m = n − j; lag ranges over 0..n_steps.
    let ap1 = alpha + 1.0;
    let bw: Vec<f64> = (0..n_steps)
        .map(|m| ((m + 1) as f64).powf(alpha) - (m as f64).powf(alpha))
        .collect();
    let cw: Vec<f64> = (0..n_steps)
        .map(|m| {
            ((m + 2) as f64).powf(ap1) + (m as f64).powf(ap1)
                - 2.0 * ((m + 1) as f64).powf(ap1)
        })
        .collect();

    let n_points = grid.n_points();
    let mut states = Vec::with_capacity(n_points * dim);
    states.extend_from_slice(y0);
    // f history, same layout as states.
    let mut hist = vec![0.0; n_points * dim];
    rhs(grid.time(0), y0, &mut hist[0..dim]);

    let mut y_pred = vec![0.0; dim];
    let mut f_pred = vec![0.0; dim];
    let mut y_next = vec![0.0; dim];

    for n in 0..n_steps {
        let t_next = grid.time(n + 1);
        let j0 = match options.memory_window {
            Some(w) => (n + 1).saturating_sub(w),
            None => 0,
        };

        for d in 0..dim {
            let mut acc = 0.0;
            for j in j0..=n {
                acc += bw[n - j] * hist[j * dim + d];
            }
            y_pred[d] = y0[d] + pred_c * acc;
        }
        rhs(t_next, &y_pred, &mut f_pred);

        let nf = n as f64;
        let a0 = nf.powf(ap1) - (nf - alpha) * (nf + 1.0).powf(alpha);
        for d in 0..dim {
            let mut acc = f_pred[d];
            if j0 == 0 {
                acc += a0 * hist[d];
            }
            for j in j0.max(1)..=n {
                acc += cw[n - j] * hist[j * dim + d];
            }
            y_next[d] = y0[d] + corr_c * acc;
        }

        if y_next.iter().any(|v| !v.is_finite()) {
            return Err(FracError::NonFiniteState {
                step: n + 1,
                time: t_next,
            });
        }
        states.extend_from_slice(&y_next);
        let f_slot = (n + 1) * dim;
        let (done, rest) = hist.split_at_mut(f_slot);
        let _ = done;
        rhs(t_next, &y_next, &mut rest[0..dim]);
    }

    Ok(Trajectory {
        grid: *grid,
        dim,
        states,
    })
}
