//! Closed-form stationary points of the two models, with feasibility flags.
//!
//! Two-species system: E1 = (0,0); E2 = (1 − ε₁/ρ, 0);
//! E3 = (ω, ρ(1−ω) − ε₁) with ω = (1+ε₂)/(ψ − φ(1+ε₂)).
//!
//! Three-species system: E1 = (0,0,0); E2 = (1 − ε₁/ρ, 0, 0);
//! E3 = (x*, ρ(1−x*) − ε₁, 0) with x* = ε₂/(ψ − ε₂φ);
//! E4 = (x*, 0, (ρ(1−x*) − ε₁)/η) with x* = ε₃/(ηβ − φ₁ε₃);
//! and the coexistence family E5 = (ω, γ − η, γ₁ − 1) with
//! γ = ε₃(1+φ₁ω)/(βω), γ₁ = ε₂(1+φω)/(ψω), where ω > 0 solves the
//! self-consistency condition
//!
//! ω = 1 − (1/ρ)[ε₂ε₃(1+φω)(1+φ₁ω)/(βψω²) + ε₁ − η],
//!
//! cleared to the cubic ρω³ − (ρ − ε₁ + η)ω² +
//! (ε₂ε₃/(βψ))(φφ₁ω² + (φ+φ₁)ω + 1) = 0. All positive real roots are
//! returned (there is no principled selection rule among them); the
//! stability module classifies each. A point is feasible when every
//! coordinate is finite and ≥ 0; degenerate denominators yield
//! infeasible-flagged points with a diagnostic note rather than errors, so
//! parameter sweeps can cross those manifolds.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::models::{Params2, Params3};
use crate::stability::roots::real_roots_of_cubic;

/// Conventional equilibrium labels, in the fixed order the model lists
/// them: E1 total extinction, E2 prey only, E3/E4 partial survival,
/// E5 full coexistence (three-species only).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum EqLabel {
    E1,
    E2,
    E3,
    E4,
    E5,
}

impl fmt::Display for EqLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// One stationary point with its feasibility classification and any
/// derived scalars (ω, γ, γ₁, ω₁) that its closed form involves.
#[derive(Debug, Clone, Serialize)]
pub struct EquilibriumPoint {
    /// Which member of the family this is.
    pub label: EqLabel,
    /// State coordinates; empty when a degenerate denominator leaves the
    /// point undefined.
    pub coords: Vec<f64>,
    /// True iff every coordinate is finite and ≥ 0.
    pub feasible: bool,
    /// Named derived scalars used by the closed form.
    pub aux: BTreeMap<String, f64>,
    /// Diagnostic for degenerate or structurally infeasible branches.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl EquilibriumPoint {
    fn new(label: EqLabel, coords: Vec<f64>) -> Self {
        let feasible = !coords.is_empty()
            && coords.iter().all(|v| v.is_finite() && *v >= 0.0);
        Self {
            label,
            coords,
            feasible,
            aux: BTreeMap::new(),
            note: None,
        }
    }

    fn with_aux(mut self, name: &str, value: f64) -> Self {
        self.aux.insert(name.to_string(), value);
        self
    }

    fn with_note(mut self, note: String) -> Self {
        self.note = Some(note);
        self
    }
}

/// All stationary points of the two-species system, in label order.
pub fn equilibria2(p: &Params2) -> Vec<EquilibriumPoint> {
    let mut out = Vec::with_capacity(3);
    out.push(EquilibriumPoint::new(EqLabel::E1, vec![0.0, 0.0]));
    out.push(EquilibriumPoint::new(
        EqLabel::E2,
        vec![1.0 - p.eps1 / p.rho, 0.0],
    ));

    let den = p.psi - p.phi * (1.0 + p.eps2);
    if den == 0.0 {
        out.push(
            EquilibriumPoint::new(EqLabel::E3, vec![])
                .with_aux("denominator", den)
                .with_note(
                    "degenerate: psi = phi(1+eps2), coexistence prey density undefined"
                        .into(),
                ),
        );
    } else {
        let omega = (1.0 + p.eps2) / den;
        let ystar = p.rho * (1.0 - omega) - p.eps1;
        let mut pt = EquilibriumPoint::new(EqLabel::E3, vec![omega, ystar])
            .with_aux("omega", omega);
        if den < 0.0 {
            pt = pt.with_note(
                "psi - phi(1+eps2) < 0: no positive coexistence prey density".into(),
            );
        }
        out.push(pt);
    }
    out
}

/// All stationary points of the three-species system, in label order;
/// the E5 family contributes one entry per positive real cubic root.
pub fn equilibria3(p: &Params3) -> Vec<EquilibriumPoint> {
    let mut out = Vec::with_capacity(5);
    out.push(EquilibriumPoint::new(EqLabel::E1, vec![0.0, 0.0, 0.0]));
    out.push(EquilibriumPoint::new(
        EqLabel::E2,
        vec![1.0 - p.eps1 / p.rho, 0.0, 0.0],
    ));

    let den3 = p.psi - p.eps2 * p.phi;
    if den3 == 0.0 {
        out.push(
            EquilibriumPoint::new(EqLabel::E3, vec![])
                .with_aux("denominator", den3)
                .with_note("degenerate: psi = eps2*phi, y-survival prey density undefined".into()),
        );
    } else {
        let xs = p.eps2 / den3;
        let ys = p.rho * (1.0 - xs) - p.eps1;
        let mut pt = EquilibriumPoint::new(EqLabel::E3, vec![xs, ys, 0.0])
            .with_aux("omega", xs);
        if den3 < 0.0 {
            pt = pt.with_note("psi - eps2*phi < 0: no positive prey density".into());
        }
        out.push(pt);
    }

    let den4 = p.eta * p.beta - p.phi1 * p.eps3;
    if den4 == 0.0 {
        out.push(
            EquilibriumPoint::new(EqLabel::E4, vec![])
                .with_aux("denominator", den4)
                .with_note(
                    "degenerate: eta*beta = phi1*eps3, z-survival prey density undefined"
                        .into(),
                ),
        );
    } else {
        let xs = p.eps3 / den4;
        let zs = (p.rho * (1.0 - xs) - p.eps1) / p.eta;
        let mut pt = EquilibriumPoint::new(EqLabel::E4, vec![xs, 0.0, zs])
            .with_aux("omega", xs);
        if den4 < 0.0 {
            pt = pt.with_note("eta*beta - phi1*eps3 < 0: no positive prey density".into());
        }
        out.push(pt);
    }

    for omega in solve_e5(p) {
        let gamma = p.eps3 * (1.0 + p.phi1 * omega) / (p.beta * omega);
        let gamma1 = p.eps2 * (1.0 + p.phi * omega) / (p.psi * omega);
        let omega1 = 1.0 - (gamma * gamma1 + p.eps1 - p.eta) / p.rho;
        out.push(
            EquilibriumPoint::new(
                EqLabel::E5,
                vec![omega, gamma - p.eta, gamma1 - 1.0],
            )
            .with_aux("omega", omega)
            .with_aux("gamma", gamma)
            .with_aux("gamma1", gamma1)
            .with_aux("omega1", omega1),
        );
    }
    out
}

/// Positive real prey densities ω of the coexistence family E5, found by
/// clearing the self-consistency condition to a cubic and solving in
/// closed form; ascending order, empty when no positive real root exists.
pub fn solve_e5(p: &Params3) -> Vec<f64> {
    let q = p.eps2 * p.eps3 / (p.beta * p.psi);
    // Monic form: ω³ + Aω² + Bω + C.
    let a = (q * p.phi * p.phi1 - (p.rho - p.eps1 + p.eta)) / p.rho;
    let b = q * (p.phi + p.phi1) / p.rho;
    let c = q / p.rho;
    real_roots_of_cubic(a, b, c)
        .into_iter()
        .filter(|w| *w > 0.0)
        .collect()
}

/// Deviation |ω − (1 − (1/ρ)[ε₂ε₃(1+φω)(1+φ₁ω)/(βψω²) + ε₁ − η])| of a
/// candidate prey density from the coexistence self-consistency condition;
/// a genuine E5 root drives this to rounding level.
pub fn e5_fixed_point_residual(p: &Params3, omega: f64) -> f64 {
    let load = p.eps2 * p.eps3 * (1.0 + p.phi * omega) * (1.0 + p.phi1 * omega)
        / (p.beta * p.psi * omega * omega);
    (omega - (1.0 - (load + p.eps1 - p.eta) / p.rho)).abs()
}
