//! Linear stability machinery for fractional-order equilibria.
//!
//! For a Caputo system D^α u = F(u) linearized at a stationary point, the
//! fractional stability cone replaces the left half-plane: the point is
//! asymptotically stable iff every Jacobian eigenvalue λ satisfies
//! |arg λ| > απ/2. This module provides the Jacobians of both models,
//! characteristic polynomials and closed-form eigenvalues (degree ≤ 3),
//! the cone test with its stability margin, the critical order
//! α₁ = (2/π)·min|arg λ|, the classical planar trace/determinant
//! classification, the fractional Routh–Hurwitz-style clause set for
//! degrees 1–3, and per-equilibrium condition checklists in the model
//! parameters (each row reported as lhs ⋈ rhs with a pass flag).
//!
//! Verdicts always come from the eigenvalues of the exact Jacobian at the
//! point; the checklists restate the same thresholds as closed forms in
//! (ρ, ψ, φ, …) so that reports stay legible in the original parameters.

pub mod roots;

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;
use serde::Serialize;

use crate::equilibria::{EqLabel, EquilibriumPoint};
use crate::error::{FracError, Result};
use crate::fraccalc::FracOrder;
use crate::models::{Params2, Params3};
pub use roots::{eigen, CharPoly};

/// Half-width of the band around |arg λ| = απ/2 treated as marginal
/// rather than strictly stable/unstable.
pub const MARGIN_TOL: f64 = 1e-12;

/// Jacobian of the two-species right-hand side at a state point.
///
/// Entries: J₁₁ = ρ(1−2x) − y − ε₁, J₁₂ = −x, J₂₁ = ψy/(1+φx)²,
/// J₂₂ = ((ψ−φ)x − 1)/(1+φx) − ε₂.
///
/// # Errors
/// `Singularity` when 1 + φx = 0; `Domain` on non-finite coordinates.
pub fn jacobian2(p: &Params2, state: [f64; 2]) -> Result<[[f64; 2]; 2]> {
    let [x, y] = state;
    if !(x.is_finite() && y.is_finite()) {
        return Err(FracError::Domain(format!(
            "non-finite state ({x}, {y}) for Jacobian"
        )));
    }
    let den = 1.0 + p.phi * x;
    if den == 0.0 {
        return Err(FracError::Singularity(format!(
            "1 + phi*x vanishes at x = {x}"
        )));
    }
    Ok([
        [p.rho * (1.0 - 2.0 * x) - y - p.eps1, -x],
        [
            p.psi * y / (den * den),
            ((p.psi - p.phi) * x - 1.0) / den - p.eps2,
        ],
    ])
}

/// Jacobian of the three-species right-hand side at a state point.
///
/// # Errors
/// `Singularity` when 1 + φx = 0 or 1 + φ₁x = 0; `Domain` on non-finite
/// coordinates.
pub fn jacobian3(p: &Params3, state: [f64; 3]) -> Result<[[f64; 3]; 3]> {
    let [x, y, z] = state;
    if !(x.is_finite() && y.is_finite() && z.is_finite()) {
        return Err(FracError::Domain(format!(
            "non-finite state ({x}, {y}, {z}) for Jacobian"
        )));
    }
    let den1 = 1.0 + p.phi * x;
    let den2 = 1.0 + p.phi1 * x;
    if den1 == 0.0 || den2 == 0.0 {
        return Err(FracError::Singularity(format!(
            "saturation denominator vanishes at x = {x}"
        )));
    }
    Ok([
        [
            p.rho * (1.0 - 2.0 * x) - (y + p.eta * z + y * z) - p.eps1,
            -x * (1.0 + z),
            -x * (p.eta + y),
        ],
        [
            p.psi * y * (1.0 + z) / (den1 * den1),
            p.psi * x * (1.0 + z) / den1 - p.eps2,
            p.psi * x * y / den1,
        ],
        [
            p.beta * z * (p.eta + y) / (den2 * den2),
            p.beta * x * z / den2,
            p.beta * x * (p.eta + y) / den2 - p.eps3,
        ],
    ])
}

/// Stability classification at a queried fractional order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Stable,
    Unstable,
    Marginal,
}

/// The fractional stability-cone test.
///
/// Returns the verdict together with the margin min|arg λ| − απ/2
/// (radians, over nonzero eigenvalues). A zero eigenvalue is classified
/// marginal on its own: it never makes the verdict stable, and the
/// verdict is marginal whenever one is present unless another eigenvalue
/// already violates the cone.
pub fn matignon(eigs: &[Complex64], order: FracOrder) -> (Verdict, f64) {
    let mut has_zero = false;
    let mut min_arg = f64::INFINITY;
    for l in eigs {
        if l.re == 0.0 && l.im == 0.0 {
            has_zero = true;
        } else {
            min_arg = min_arg.min(l.arg().abs());
        }
    }
    if !min_arg.is_finite() {
        // Empty list or all-zero spectrum: nothing decays, nothing grows.
        return (Verdict::Marginal, 0.0);
    }
    let margin = min_arg - order.value() * FRAC_PI_2;
    let verdict = if margin < -MARGIN_TOL {
        Verdict::Unstable
    } else if margin > MARGIN_TOL && !has_zero {
        Verdict::Stable
    } else {
        Verdict::Marginal
    };
    (verdict, margin)
}

/// Largest order at which the eigenvalue set passes the cone test,
/// before clipping to the admissible interval: (2/π)·min|arg λ|.
///
/// `None` when some eigenvalue lies on the positive real axis (including
/// zero) — no order stabilizes it.
pub fn critical_order_unclipped(eigs: &[Complex64]) -> Option<f64> {
    let mut min_arg = f64::INFINITY;
    for l in eigs {
        let a = l.arg().abs();
        if a == 0.0 {
            return None;
        }
        min_arg = min_arg.min(a);
    }
    min_arg.is_finite().then_some(min_arg / FRAC_PI_2)
}

/// Critical order α₁ = min{1, (2/π)·min|arg λ|}, or `None` when no
/// stabilizing order exists.
pub fn critical_order(eigs: &[Complex64]) -> Option<f64> {
    critical_order_unclipped(eigs).map(|a| a.min(1.0))
}

/// Critical order of the conjugate pair of λ² + bλ + c (requires
/// b² < 4c), without clipping: (2/π)·|arg(−b/2 ± i√(4c−b²)/2)|.
///
/// `None` when the pair is real (4c ≤ b²) or the inputs are non-finite.
pub fn planar_critical_unclipped(b: f64, c: f64) -> Option<f64> {
    let disc = 4.0 * c - b * b;
    if !disc.is_finite() || disc <= 0.0 {
        return None;
    }
    let root = Complex64::new(-b / 2.0, disc.sqrt() / 2.0);
    Some(root.arg().abs() / FRAC_PI_2)
}

/// Classical planar (integer-order) classification by trace and
/// determinant of a 2×2 Jacobian.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PlanarClass {
    Saddle,
    Stable,
    Unstable,
    Degenerate,
}

/// Standard planar criterion: det < 0 is a saddle; det > 0 is stable or
/// unstable by the sign of the trace; boundary cases (either quantity
/// zero) are degenerate.
pub fn routh_hurwitz2(trace: f64, det: f64) -> PlanarClass {
    if det < 0.0 {
        PlanarClass::Saddle
    } else if det > 0.0 && trace < 0.0 {
        PlanarClass::Stable
    } else if det > 0.0 && trace > 0.0 {
        PlanarClass::Unstable
    } else {
        PlanarClass::Degenerate
    }
}

/// One row of a condition checklist: `lhs relation rhs` with the
/// evaluated outcome.
#[derive(Debug, Clone, Serialize)]
pub struct ConditionCheck {
    pub name: String,
    pub lhs: f64,
    pub relation: String,
    pub rhs: f64,
    pub pass: bool,
}

impl ConditionCheck {
    fn less(name: &str, lhs: f64, rhs: f64) -> Self {
        Self {
            name: name.to_string(),
            lhs,
            relation: "<".to_string(),
            rhs,
            pass: lhs < rhs,
        }
    }

    fn greater(name: &str, lhs: f64, rhs: f64) -> Self {
        Self {
            name: name.to_string(),
            lhs,
            relation: ">".to_string(),
            rhs,
            pass: lhs > rhs,
        }
    }

    /// A row whose threshold does not exist (e.g. no oscillatory window);
    /// recorded as failing with a zero right-hand side.
    fn vacuous(name: &str, lhs: f64, relation: &str) -> Self {
        Self {
            name: name.to_string(),
            lhs,
            relation: relation.to_string(),
            rhs: 0.0,
            pass: false,
        }
    }
}

/// Outcome of the degree-keyed fractional stability clauses for a monic
/// characteristic polynomial λⁿ + a₁λⁿ⁻¹ + … + aₙ, n ≤ 3.
#[derive(Debug, Clone, Serialize)]
pub struct Lemma32Report {
    /// Polynomial degree n.
    pub degree: usize,
    /// Every sub-condition evaluated, including the necessary gate.
    pub clauses: Vec<ConditionCheck>,
    /// Open order-interval (lo, hi) granted by the satisfied clause, if any.
    pub alpha_range: Option<(f64, f64)>,
    /// Whether the queried order lies in the granted interval (the right
    /// endpoint is treated as closed when it reaches 1, where the
    /// classical criterion already applies).
    pub satisfied_at_order: bool,
    /// The necessary condition aₙ > 0.
    pub necessary_holds: bool,
}

/// Evaluates the degree-keyed sufficient clauses for the cone condition:
/// (i) n = 1: a₁ > 0 grants (0, 1);
/// (ii) n = 2: a₁ > 0 ∧ a₂ > 0 grants (0, 1), else a₁ < 0 ∧ 4a₂ > a₁²
/// grants (0, (2/π)|atan(√(4a₂−a₁²)/a₁)|);
/// (iii) n = 3: D < 0 ∧ a₁ < 0 ∧ a₂ < 0 ∧ a₃ > 0 grants (2/3, 1);
/// (iv) n = 3: D > 0 ∧ a₁ < 0 ∧ a₂ < 0 ∧ a₃ > 0 grants (0, 1);
/// (v) aₙ > 0 is necessary and gates every other clause.
pub fn lemma32_check(char_poly: &CharPoly, order: FracOrder) -> Lemma32Report {
    let a = &char_poly.coeffs;
    let n = char_poly.degree();
    let necessary =
        ConditionCheck::greater("necessary_constant_positive", *a.last().unwrap(), 0.0);
    let necessary_holds = necessary.pass;
    let mut clauses = vec![necessary];
    let mut alpha_range: Option<(f64, f64)> = None;

    match n {
        1 => {
            let c = ConditionCheck::greater("clause_i_a1_positive", a[0], 0.0);
            if c.pass {
                alpha_range = Some((0.0, 1.0));
            }
            clauses.push(c);
        }
        2 => {
            let rh1 = ConditionCheck::greater("clause_ii_rh_a1_positive", a[0], 0.0);
            let rh2 = ConditionCheck::greater("clause_ii_rh_a2_positive", a[1], 0.0);
            let rh_ok = rh1.pass && rh2.pass;
            clauses.push(rh1);
            clauses.push(rh2);
            if rh_ok {
                alpha_range = Some((0.0, 1.0));
            } else if a[0] < 0.0 {
                let disc =
                    ConditionCheck::less("clause_ii_arc_discriminant", a[0] * a[0], 4.0 * a[1]);
                if disc.pass {
                    let theta = ((4.0 * a[1] - a[0] * a[0]).sqrt() / a[0]).atan().abs();
                    let top = theta / FRAC_PI_2;
                    clauses.push(disc);
                    clauses.push(ConditionCheck::less(
                        "clause_ii_arc_window",
                        order.value(),
                        top,
                    ));
                    alpha_range = Some((0.0, top));
                } else {
                    clauses.push(disc);
                }
            }
        }
        _ => {
            let d = char_poly
                .discriminant
                .expect("cubic characteristic polynomial carries its discriminant");
            let dneg = ConditionCheck::less("clause_iii_discriminant_negative", d, 0.0);
            let dpos = ConditionCheck::greater("clause_iv_discriminant_positive", d, 0.0);
            let s1 = ConditionCheck::less("cubic_a1_negative", a[0], 0.0);
            let s2 = ConditionCheck::less("cubic_a2_negative", a[1], 0.0);
            let s3 = ConditionCheck::greater("cubic_a3_positive", a[2], 0.0);
            let signs = s1.pass && s2.pass && s3.pass;
            if signs && dneg.pass {
                alpha_range = Some((2.0 / 3.0, 1.0));
            } else if signs && dpos.pass {
                alpha_range = Some((0.0, 1.0));
            }
            clauses.extend([dneg, dpos, s1, s2, s3]);
        }
    }

    if !necessary_holds {
        alpha_range = None;
    }
    let al = order.value();
    let satisfied_at_order = match alpha_range {
        Some((lo, hi)) => al > lo && (al < hi || (al == 1.0 && hi >= 1.0)),
        None => false,
    };
    Lemma32Report {
        degree: n,
        clauses,
        alpha_range,
        satisfied_at_order,
        necessary_holds,
    }
}

/// Serializable complex number (JSON has no native complex type).
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ComplexRepr {
    pub re: f64,
    pub im: f64,
}

impl From<&Complex64> for ComplexRepr {
    fn from(z: &Complex64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

/// Full linear-stability record for one equilibrium at one order.
#[derive(Debug, Clone, Serialize)]
pub struct StabilityReport {
    /// The point under analysis.
    pub equilibrium: EquilibriumPoint,
    /// Queried fractional order α.
    pub order: f64,
    /// Exact Jacobian at the point, row-major.
    pub jacobian: Vec<Vec<f64>>,
    pub trace: f64,
    pub det: f64,
    /// Monic characteristic polynomial of the Jacobian.
    pub char_poly: CharPoly,
    /// Its roots, sorted by descending real part.
    pub eigenvalues: Vec<ComplexRepr>,
    /// min|arg λ| − απ/2 over nonzero eigenvalues (radians).
    pub matignon_margin: f64,
    /// Cone-test outcome at α; stable ⇔ margin > 0 (and no zero eigenvalue).
    pub verdict: Verdict,
    /// min{1, (2/π)·min|arg λ|}, or `None` when no order stabilizes.
    pub critical_alpha: Option<f64>,
    /// Named parameter-space checklist for this equilibrium's family.
    pub conditions: Vec<ConditionCheck>,
    /// Free-form diagnostics (threshold variants, missing windows, …).
    pub notes: Vec<String>,
}

fn point_coords<const D: usize>(eq: &EquilibriumPoint) -> Result<[f64; D]> {
    <[f64; D]>::try_from(eq.coords.as_slice()).map_err(|_| {
        FracError::Domain(format!(
            "{} has {} coordinates, expected {D} (degenerate points carry none)",
            eq.label,
            eq.coords.len()
        ))
    })
}

/// Pushes the α-window row for a conjugate pair of λ² + bλ + c: the
/// queried order must sit below the pair's critical order. Records a
/// failing row (and a note) when the pair is real and no window exists.
fn push_alpha_window(
    conditions: &mut Vec<ConditionCheck>,
    notes: &mut Vec<String>,
    order: FracOrder,
    b: f64,
    c: f64,
) {
    match planar_critical_unclipped(b, c) {
        Some(a1) => conditions.push(ConditionCheck::less(
            "alpha_below_critical",
            order.value(),
            a1,
        )),
        None => {
            conditions.push(ConditionCheck::vacuous(
                "alpha_below_critical",
                order.value(),
                "<",
            ));
            notes.push(
                "characteristic pair at this point is real: no oscillatory stabilization window"
                    .to_string(),
            );
        }
    }
}

/// Assembles the stability report for a two-species equilibrium.
///
/// # Errors
/// `Domain` when the point carries no coordinates (degenerate closed
/// form); propagates Jacobian singularities.
pub fn stability_report2(
    p: &Params2,
    eq: &EquilibriumPoint,
    order: FracOrder,
) -> Result<StabilityReport> {
    let state = point_coords::<2>(eq)?;
    let jac = jacobian2(p, state)?;
    let trace = jac[0][0] + jac[1][1];
    let det = jac[0][0] * jac[1][1] - jac[0][1] * jac[1][0];
    let char_poly = CharPoly::from_matrix2(&jac);
    let eigs = eigen(&char_poly);
    let (verdict, matignon_margin) = matignon(&eigs, order);
    let critical_alpha = critical_order(&eigs);

    let mut conditions = Vec::new();
    let mut notes = Vec::new();
    match eq.label {
        EqLabel::E1 => {
            conditions.push(ConditionCheck::less(
                "prey_growth_below_harvest",
                p.rho,
                p.eps1,
            ));
        }
        EqLabel::E2 => {
            let xbar = state[0];
            conditions.push(ConditionCheck::less("eps1_below_rho", p.eps1, p.rho));
            conditions.push(ConditionCheck::less(
                "predation_gain_below_mortality",
                p.psi * xbar / (1.0 + p.phi * xbar),
                1.0 + p.eps2,
            ));
        }
        EqLabel::E3 => {
            let (omega, ystar) = (state[0], state[1]);
            let den = 1.0 + p.phi * omega;
            let b = p.rho * omega + p.eps1;
            let c = p.psi * omega * ystar / (den * den);
            conditions.push(ConditionCheck::less(
                "omega_below_prey_cap",
                omega,
                1.0 - p.eps1 / p.rho,
            ));
            conditions.push(ConditionCheck::less("complex_pair_condition", b * b, 4.0 * c));
            push_alpha_window(&mut conditions, &mut notes, order, b, c);
            notes.push(format!(
                "alternative complex-pair threshold with unsquared response denominator: 4c = {:.4}",
                4.0 * p.psi * omega * ystar / den
            ));
        }
        EqLabel::E4 | EqLabel::E5 => {}
    }

    Ok(StabilityReport {
        equilibrium: eq.clone(),
        order: order.value(),
        jacobian: jac.iter().map(|r| r.to_vec()).collect(),
        trace,
        det,
        char_poly,
        eigenvalues: eigs.iter().map(ComplexRepr::from).collect(),
        matignon_margin,
        verdict,
        critical_alpha,
        conditions,
        notes,
    })
}

/// Assembles the stability report for a three-species equilibrium.
///
/// # Errors
/// `Domain` when the point carries no coordinates; propagates Jacobian
/// singularities.
pub fn stability_report3(
    p: &Params3,
    eq: &EquilibriumPoint,
    order: FracOrder,
) -> Result<StabilityReport> {
    let state = point_coords::<3>(eq)?;
    let jac = jacobian3(p, state)?;
    let trace = jac[0][0] + jac[1][1] + jac[2][2];
    let char_poly = CharPoly::from_matrix3(&jac);
    // det(J) = −a₃ of the monic cubic λ³ + a₁λ² + a₂λ + a₃.
    let det = -char_poly.coeffs[2];
    let eigs = eigen(&char_poly);
    let (verdict, matignon_margin) = matignon(&eigs, order);
    let critical_alpha = critical_order(&eigs);

    let mut conditions = Vec::new();
    let mut notes = Vec::new();
    match eq.label {
        EqLabel::E1 => {
            conditions.push(ConditionCheck::less(
                "prey_growth_below_harvest",
                p.rho,
                p.eps1,
            ));
        }
        EqLabel::E2 => {
            let xbar = state[0];
            conditions.push(ConditionCheck::less("eps1_below_rho", p.eps1, p.rho));
            conditions.push(ConditionCheck::greater(
                "eps2_above_y_gain",
                p.eps2,
                p.psi * xbar / (1.0 + p.phi * xbar),
            ));
            conditions.push(ConditionCheck::greater(
                "eps3_above_z_gain",
                p.eps3,
                p.beta * p.eta * xbar / (1.0 + p.phi1 * xbar),
            ));
        }
        EqLabel::E3 => {
            // Survivor-block thresholds in terms of ω and the survivor
            // density g = ρ(1−ω) − ε₁.
            let omega = state[0];
            let g = p.rho * (1.0 - omega) - p.eps1;
            let den = 1.0 + p.phi * omega;
            conditions.push(ConditionCheck::less(
                "eps1_below_prey_margin",
                p.eps1,
                p.rho * (1.0 - omega),
            ));
            conditions.push(ConditionCheck::less(
                "eps2_below_psi_over_phi",
                p.eps2,
                p.psi / p.phi,
            ));
            conditions.push(ConditionCheck::greater(
                "eps3_above_z_invasion",
                p.eps3,
                p.beta * omega * (p.eta + g) / (1.0 + p.phi1 * omega),
            ));
            conditions.push(ConditionCheck::less(
                "rho_below_oscillation_bound",
                p.rho,
                2.0 * (p.psi * g / omega).sqrt() / den,
            ));
            push_alpha_window(
                &mut conditions,
                &mut notes,
                order,
                p.rho * omega,
                p.psi * omega * g / (den * den),
            );
        }
        EqLabel::E4 => {
            let omega = state[0];
            let g = p.rho * (1.0 - omega) - p.eps1;
            let den1 = 1.0 + p.phi * omega;
            let den2 = 1.0 + p.phi1 * omega;
            conditions.push(ConditionCheck::less(
                "eps1_below_prey_margin",
                p.eps1,
                p.rho * (1.0 - omega),
            ));
            conditions.push(ConditionCheck::greater(
                "eps2_above_y_invasion",
                p.eps2,
                p.psi * omega * (p.eta + g) / (p.eta * den1),
            ));
            conditions.push(ConditionCheck::less(
                "eps3_below_eta_beta_over_phi1",
                p.eps3,
                p.eta * p.beta / p.phi1,
            ));
            conditions.push(ConditionCheck::less(
                "rho_below_oscillation_bound",
                p.rho,
                2.0 * (p.eta * p.beta * g / omega).sqrt() / den2,
            ));
            push_alpha_window(
                &mut conditions,
                &mut notes,
                order,
                p.rho * omega,
                p.eta * p.beta * omega * g / (den2 * den2),
            );
        }
        EqLabel::E5 => {
            let omega = state[0];
            let gamma = p.eta + state[1];
            let gamma1 = 1.0 + state[2];
            let gg = gamma * gamma1;
            let omega1 = 1.0 - (gg + p.eps1 - p.eta) / p.rho;
            conditions.push(ConditionCheck::less(
                "eps1_below_coexistence_cap",
                p.eps1,
                p.rho + p.eta - gg,
            ));
            conditions.push(ConditionCheck::greater(
                "eps2_above_y_threshold",
                p.eps2,
                p.psi * omega1 / (1.0 + p.phi * omega1),
            ));
            conditions.push(ConditionCheck::greater(
                "eps3_above_z_threshold",
                p.eps3,
                p.eta * p.beta * omega1 / (1.0 + p.phi1 * omega1),
            ));
            conditions.push(ConditionCheck::greater(
                "mutualism_balance_inequality",
                p.psi * p.eps3 * p.eps3 + p.eta * p.beta * p.eps2 * p.eps2,
                p.psi * p.eps3 * p.eps3 * gamma1 + p.beta * p.eps2 * p.eps2 * gamma
                    - (p.psi * omega / gg) * p.beta * p.eps1 * p.eps2,
            ));
            conditions.push(ConditionCheck::less(
                "alpha_in_unit_interval",
                order.value(),
                1.0,
            ));
        }
    }

    Ok(StabilityReport {
        equilibrium: eq.clone(),
        order: order.value(),
        jacobian: jac.iter().map(|r| r.to_vec()).collect(),
        trace,
        det,
        char_poly,
        eigenvalues: eigs.iter().map(ComplexRepr::from).collect(),
        matignon_margin,
        verdict,
        critical_alpha,
        conditions,
        notes,
    })
}
