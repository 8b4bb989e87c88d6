//! Predator–prey model definitions with constant-effort harvesting.
//!
//! Two families are covered, both in dimensional and dimensionless form:
//!
//! * **Two species** — logistic prey x, one predator y with a Holling
//!   type-II functional response:
//!   dx/dt = ρx(1−x) − xy − ε₁x,
//!   dy/dt = ψxy/(1+φx) − y − ε₂y.
//! * **Three species** — prey x with two mutualistic predators y, z whose
//!   capture rates enhance each other:
//!   dx/dt = ρx(1−x) − x(y + ηz + yz) − ε₁x,
//!   dy/dt = ψxy(1+z)/(1+φx) − ε₂y,
//!   dz/dt = βxz(η+y)/(1+φ₁x) − ε₃z.
//!
//! The ε's are dimensionless removal rates (harvesting, and for the
//! three-species predators harvesting plus natural mortality folded
//! together). Alongside the right-hand sides this module provides the
//! nondimensionalization maps with their state/time scale factors, and the
//! per-equation Lipschitz constants used by the existence/uniqueness
//! argument on the box Ω = {max(|x|,|y|[,|z|]) ≤ M}.

use crate::error::{FracError, Result};
use serde::{Deserialize, Serialize};

/// Checks one named value for finiteness and a lower bound.
fn check(name: &'static str, value: f64, min: f64, strict: bool) -> Result<f64> {
    let ok = value.is_finite() && if strict { value > min } else { value >= min };
    if ok {
        Ok(value)
    } else {
        Err(FracError::InvalidParam { name, value })
    }
}

/// Dimensional parameters of the two-species model.
///
/// Units: densities carry an arbitrary density unit D, time an arbitrary
/// unit T; rates are 1/T except `attack` (1/(D·T)) and `saturation` (1/D).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DimParams2 {
    /// Prey intrinsic growth rate r.
    pub r: f64,
    /// Prey carrying capacity K.
    pub carrying: f64,
    /// Predator feeding (attack) rate a.
    pub attack: f64,
    /// Functional-response saturation factor σ.
    pub saturation: f64,
    /// Predator natural death rate k.
    pub predator_death: f64,
    /// Prey harvesting effort h₁ ≥ 0.
    pub h1: f64,
    /// Predator harvesting effort h₂ ≥ 0.
    pub h2: f64,
}

impl DimParams2 {
    /// Validates all rates: strictly positive except the harvesting
    /// efforts, which may be zero.
    ///
    /// # Errors
    /// [`FracError::InvalidParam`] naming the offending field.
    pub fn new(
        r: f64,
        carrying: f64,
        attack: f64,
        saturation: f64,
        predator_death: f64,
        h1: f64,
        h2: f64,
    ) -> Result<Self> {
        Ok(Self {
            r: check("r", r, 0.0, true)?,
            carrying: check("carrying", carrying, 0.0, true)?,
            attack: check("attack", attack, 0.0, true)?,
            saturation: check("saturation", saturation, 0.0, true)?,
            predator_death: check("predator_death", predator_death, 0.0, true)?,
            h1: check("h1", h1, 0.0, false)?,
            h2: check("h2", h2, 0.0, false)?,
        })
    }
}

/// Dimensional parameters of the three-species model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DimParams3 {
    /// Prey intrinsic growth rate r.
    pub r: f64,
    /// Prey carrying capacity K.
    pub carrying: f64,
    /// Feeding rate a of predator y.
    pub attack_y: f64,
    /// Feeding rate b of predator z.
    pub attack_z: f64,
    /// Mutualistic enhancement rate ξ between the predators.
    pub mutual: f64,
    /// Saturation factor σ₁ for predator y's response.
    pub saturation_y: f64,
    /// Saturation factor σ₂ for predator z's response.
    pub saturation_z: f64,
    /// Natural death rate k₁ of predator y.
    pub death_y: f64,
    /// Natural death rate k₂ of predator z.
    pub death_z: f64,
    /// Prey harvesting effort h₁ ≥ 0.
    pub h1: f64,
    /// Predator-y harvesting effort h₂ ≥ 0.
    pub h2: f64,
    /// Predator-z harvesting effort h₃ ≥ 0.
    pub h3: f64,
}

impl DimParams3 {
    /// Validates all rates: strictly positive except harvesting efforts.
    ///
    /// # Errors
    /// [`FracError::InvalidParam`] naming the offending field.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        r: f64,
        carrying: f64,
        attack_y: f64,
        attack_z: f64,
        mutual: f64,
        saturation_y: f64,
        saturation_z: f64,
        death_y: f64,
        death_z: f64,
        h1: f64,
        h2: f64,
        h3: f64,
    ) -> Result<Self> {
        Ok(Self {
            r: check("r", r, 0.0, true)?,
            carrying: check("carrying", carrying, 0.0, true)?,
            attack_y: check("attack_y", attack_y, 0.0, true)?,
            attack_z: check("attack_z", attack_z, 0.0, true)?,
            mutual: check("mutual", mutual, 0.0, true)?,
            saturation_y: check("saturation_y", saturation_y, 0.0, true)?,
            saturation_z: check("saturation_z", saturation_z, 0.0, true)?,
            death_y: check("death_y", death_y, 0.0, true)?,
            death_z: check("death_z", death_z, 0.0, true)?,
            h1: check("h1", h1, 0.0, false)?,
            h2: check("h2", h2, 0.0, false)?,
            h3: check("h3", h3, 0.0, false)?,
        })
    }
}

/// Shadow type so deserialized values pass through [`Params2::new`].
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Params2Fields {
    rho: f64,
    psi: f64,
    phi: f64,
    eps1: f64,
    eps2: f64,
}

/// Dimensionless parameters of the two-species system.
///
/// ρ = r/k, ψ = aK/k, φ = Kσ, ε₁ = h₁/k, ε₂ = h₂/k.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Params2Fields")]
pub struct Params2 {
    /// Prey growth-to-predator-death ratio ρ > 0.
    pub rho: f64,
    /// Predation gain ψ > 0.
    pub psi: f64,
    /// Saturation strength φ > 0.
    pub phi: f64,
    /// Prey harvesting rate ε₁ ≥ 0.
    pub eps1: f64,
    /// Predator harvesting rate ε₂ ≥ 0.
    pub eps2: f64,
}

impl Params2 {
    /// Validates ρ, ψ, φ > 0 and ε₁, ε₂ ≥ 0.
    ///
    /// # Errors
    /// [`FracError::InvalidParam`] naming the offending field.
    pub fn new(rho: f64, psi: f64, phi: f64, eps1: f64, eps2: f64) -> Result<Self> {
        Ok(Self {
            rho: check("rho", rho, 0.0, true)?,
            psi: check("psi", psi, 0.0, true)?,
            phi: check("phi", phi, 0.0, true)?,
            eps1: check("eps1", eps1, 0.0, false)?,
            eps2: check("eps2", eps2, 0.0, false)?,
        })
    }
}

impl TryFrom<Params2Fields> for Params2 {
    type Error = FracError;

    fn try_from(f: Params2Fields) -> Result<Self> {
        Params2::new(f.rho, f.psi, f.phi, f.eps1, f.eps2)
    }
}

/// Shadow type so deserialized values pass through [`Params3::new`].
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Params3Fields {
    rho: f64,
    psi: f64,
    beta: f64,
    eta: f64,
    phi: f64,
    phi1: f64,
    eps1: f64,
    eps2: f64,
    eps3: f64,
}

/// Dimensionless parameters of the three-species system.
///
/// ρ = r/k₁, ψ = aK/k₁, β = bK/k₁, η = ab/(ξk₁), φ = σ₁K, φ₁ = σ₂K,
/// ε₁ = h₁/k₁, ε₂ = 1 + h₂/k₁, ε₃ = (k₂ + h₃)/k₁.
///
/// Two construction paths exist on purpose. [`nondim3`] derives the set
/// from dimensional rates and therefore always yields ε₂ ≥ 1 (it folds in
/// the unit natural mortality). [`Params3::new`] accepts any ε₂ ≥ 0 so
/// that externally chosen dimensionless sets — which need not respect the
/// folding identity — remain constructible.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Params3Fields")]
pub struct Params3 {
    /// Prey growth ratio ρ > 0.
    pub rho: f64,
    /// Predation gain ψ > 0 of predator y.
    pub psi: f64,
    /// Predation gain β > 0 of predator z.
    pub beta: f64,
    /// Mutualism coupling η > 0.
    pub eta: f64,
    /// Saturation strength φ > 0 for predator y.
    pub phi: f64,
    /// Saturation strength φ₁ > 0 for predator z.
    pub phi1: f64,
    /// Prey removal rate ε₁ ≥ 0.
    pub eps1: f64,
    /// Predator-y removal rate ε₂ ≥ 0.
    pub eps2: f64,
    /// Predator-z removal rate ε₃ > 0.
    pub eps3: f64,
}

impl Params3 {
    /// Direct dimensionless construction: ρ, ψ, β, η, φ, φ₁ > 0,
    /// ε₁, ε₂ ≥ 0, ε₃ > 0.
    ///
    /// # Errors
    /// [`FracError::InvalidParam`] naming the offending field.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        rho: f64,
        psi: f64,
        beta: f64,
        eta: f64,
        phi: f64,
        phi1: f64,
        eps1: f64,
        eps2: f64,
        eps3: f64,
    ) -> Result<Self> {
        Ok(Self {
            rho: check("rho", rho, 0.0, true)?,
            psi: check("psi", psi, 0.0, true)?,
            beta: check("beta", beta, 0.0, true)?,
            eta: check("eta", eta, 0.0, true)?,
            phi: check("phi", phi, 0.0, true)?,
            phi1: check("phi1", phi1, 0.0, true)?,
            eps1: check("eps1", eps1, 0.0, false)?,
            eps2: check("eps2", eps2, 0.0, false)?,
            eps3: check("eps3", eps3, 0.0, true)?,
        })
    }
}

impl TryFrom<Params3Fields> for Params3 {
    type Error = FracError;

    fn try_from(f: Params3Fields) -> Result<Self> {
        Params3::new(
            f.rho, f.psi, f.beta, f.eta, f.phi, f.phi1, f.eps1, f.eps2, f.eps3,
        )
    }
}

/// Scale factors linking the two-species dimensionless state back to
/// dimensional quantities: X = x_scale·x, Y = y_scale·y, T = t_scale·t.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Scales2 {
    /// Prey density scale K.
    pub x_scale: f64,
    /// Predator density scale k/a.
    pub y_scale: f64,
    /// Time scale 1/k.
    pub t_scale: f64,
}

impl Scales2 {
    /// Dimensional state from a dimensionless one.
    pub fn to_dimensional(&self, state: [f64; 2]) -> [f64; 2] {
        [self.x_scale * state[0], self.y_scale * state[1]]
    }

    /// Dimensionless state from a dimensional one.
    pub fn to_dimensionless(&self, state: [f64; 2]) -> [f64; 2] {
        [state[0] / self.x_scale, state[1] / self.y_scale]
    }
}

/// Scale factors for the three-species state:
/// X = x_scale·x, Y = y_scale·y, Z = z_scale·z, T = t_scale·t.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Scales3 {
    /// Prey density scale K.
    pub x_scale: f64,
    /// Predator-y density scale k₁/a.
    pub y_scale: f64,
    /// Predator-z density scale a/ξ.
    pub z_scale: f64,
    /// Time scale 1/k₁.
    pub t_scale: f64,
}

impl Scales3 {
    /// Dimensional state from a dimensionless one.
    pub fn to_dimensional(&self, state: [f64; 3]) -> [f64; 3] {
        [
            self.x_scale * state[0],
            self.y_scale * state[1],
            self.z_scale * state[2],
        ]
    }

    /// Dimensionless state from a dimensional one.
    pub fn to_dimensionless(&self, state: [f64; 3]) -> [f64; 3] {
        [
            state[0] / self.x_scale,
            state[1] / self.y_scale,
            state[2] / self.z_scale,
        ]
    }
}

/// Nondimensionalizes the two-species model.
///
/// # Returns
/// The dimensionless parameter set (ρ, ψ, φ, ε₁, ε₂) =
/// (r/k, aK/k, Kσ, h₁/k, h₂/k) together with the scale factors
/// X = Kx, Y = (k/a)y, T = t/k.
///
/// # Errors
/// Only for pathological magnitudes that overflow the composites.
pub fn nondim2(p: &DimParams2) -> Result<(Params2, Scales2)> {
    let k = p.predator_death;
    let params = Params2::new(
        p.r / k,
        p.attack * p.carrying / k,
        p.carrying * p.saturation,
        p.h1 / k,
        p.h2 / k,
    )?;
    let scales = Scales2 {
        x_scale: p.carrying,
        y_scale: k / p.attack,
        t_scale: 1.0 / k,
    };
    Ok((params, scales))
}

/// Nondimensionalizes the three-species model.
///
/// # Returns
/// The nine composites (including ε₂ = 1 + h₂/k₁ and ε₃ = (k₂+h₃)/k₁,
/// which fold natural mortality into the removal rates) and the scale
/// factors X = Kx, Y = (k₁/a)y, Z = (a/ξ)z, T = t/k₁.
///
/// # Errors
/// Only for pathological magnitudes that overflow the composites.
pub fn nondim3(p: &DimParams3) -> Result<(Params3, Scales3)> {
    let k1 = p.death_y;
    let params = Params3::new(
        p.r / k1,
        p.attack_y * p.carrying / k1,
        p.attack_z * p.carrying / k1,
        p.attack_y * p.attack_z / (p.mutual * k1),
        p.saturation_y * p.carrying,
        p.saturation_z * p.carrying,
        p.h1 / k1,
        1.0 + p.h2 / k1,
        (p.death_z + p.h3) / k1,
    )?;
    let scales = Scales3 {
        x_scale: p.carrying,
        y_scale: k1 / p.attack_y,
        z_scale: p.attack_y / p.mutual,
        t_scale: 1.0 / k1,
    };
    Ok((params, scales))
}

/// Two-species right-hand side written into `out`; no validation, so a
/// vanishing denominator produces non-finite values for the caller (the
/// solver's non-finite detection) to flag.
#[inline]
pub fn rhs2_into(p: &Params2, state: &[f64], out: &mut [f64]) {
    let (x, y) = (state[0], state[1]);
    out[0] = p.rho * x * (1.0 - x) - x * y - p.eps1 * x;
    out[1] = p.psi * x * y / (1.0 + p.phi * x) - y - p.eps2 * y;
}

/// Three-species right-hand side written into `out`; unvalidated, like
/// [`rhs2_into`].
#[inline]
pub fn rhs3_into(p: &Params3, state: &[f64], out: &mut [f64]) {
    let (x, y, z) = (state[0], state[1], state[2]);
    out[0] = p.rho * x * (1.0 - x) - x * (y + p.eta * z + y * z) - p.eps1 * x;
    out[1] = p.psi * x * y * (1.0 + z) / (1.0 + p.phi * x) - p.eps2 * y;
    out[2] = p.beta * x * z * (p.eta + y) / (1.0 + p.phi1 * x) - p.eps3 * z;
}

/// Two-species vector field (dx/dt, dy/dt) at `state`.
///
/// # Errors
/// Domain error for a non-finite state; singularity when 1 + φx = 0
/// (reachable only at negative prey density).
pub fn rhs2(p: &Params2, state: [f64; 2]) -> Result<[f64; 2]> {
    if !state.iter().all(|v| v.is_finite()) {
        return Err(FracError::Domain("state must be finite".into()));
    }
    if 1.0 + p.phi * state[0] == 0.0 {
        return Err(FracError::Singularity(format!(
            "functional response undefined: 1 + phi*x = 0 at x = {}",
            state[0]
        )));
    }
    let mut out = [0.0; 2];
    rhs2_into(p, &state, &mut out);
    Ok(out)
}

/// Three-species vector field (dx/dt, dy/dt, dz/dt) at `state`.
///
/// # Errors
/// Domain error for a non-finite state; singularity when 1 + φx = 0 or
/// 1 + φ₁x = 0.
pub fn rhs3(p: &Params3, state: [f64; 3]) -> Result<[f64; 3]> {
    if !state.iter().all(|v| v.is_finite()) {
        return Err(FracError::Domain("state must be finite".into()));
    }
    for (name, phi) in [("phi", p.phi), ("phi1", p.phi1)] {
        if 1.0 + phi * state[0] == 0.0 {
            return Err(FracError::Singularity(format!(
                "functional response undefined: 1 + {name}*x = 0 at x = {}",
                state[0]
            )));
        }
    }
    let mut out = [0.0; 3];
    rhs3_into(p, &state, &mut out);
    Ok(out)
}

/// Per-equation Lipschitz constants of a vector field on the box
/// Ω = {max(|x|,|y|[,|z|]) ≤ M}, with L = max of the components, valid for
/// the 1-norm ‖(u₁,…)‖ = Σ|uᵢ|.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LipschitzBound {
    /// Box radius M.
    pub m: f64,
    /// Per-equation constants L₁, L₂[, L₃].
    pub components: Vec<f64>,
    /// Overall constant, max of `components`.
    pub l: f64,
}

/// Lipschitz constant of the two-species field on Ω:
/// L₁ = ρ + ε₁ + (ρ+1)M, L₂ = 1 + ε₂ + ψ(1+φM)M.
///
/// # Errors
/// [`FracError::InvalidParam`] unless M > 0.
pub fn lipschitz_bound2(p: &Params2, m: f64) -> Result<LipschitzBound> {
    check("M", m, 0.0, true)?;
    let l1 = p.rho + p.eps1 + (p.rho + 1.0) * m;
    let l2 = 1.0 + p.eps2 + p.psi * (1.0 + p.phi * m) * m;
    Ok(LipschitzBound {
        m,
        components: vec![l1, l2],
        l: l1.max(l2),
    })
}

/// Lipschitz constant of the three-species field on Ω:
/// L₁ = ρ + ε₁ + (ρ+η)M + M², L₂ = 1 + ε₂ + ψ[1 + (1+φ)M + φM²]M,
/// L₃ = ε₃ + β[1 + η + ηφ₁M + φ₁M²]M.
///
/// The bound is additive in the coupling terms; see
/// [`lipschitz_bound2`] for the norm convention.
///
/// # Errors
/// [`FracError::InvalidParam`] unless M > 0.
pub fn lipschitz_bound3(p: &Params3, m: f64) -> Result<LipschitzBound> {
    check("M", m, 0.0, true)?;
    let l1 = p.rho + p.eps1 + (p.rho + p.eta) * m + m * m;
    let l2 = 1.0 + p.eps2 + p.psi * (1.0 + (1.0 + p.phi) * m + p.phi * m * m) * m;
    let l3 = p.eps3 + p.beta * (1.0 + p.eta + p.eta * p.phi1 * m + p.phi1 * m * m) * m;
    Ok(LipschitzBound {
        m,
        components: vec![l1, l2, l3],
        l: l1.max(l2).max(l3),
    })
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use approx::assert_relative_eq;

    /// The dimensionless set used throughout the two-species tests.
    pub(crate) fn demo2() -> Params2 {
        Params2::new(1.0, 19.0, 2.0, 0.4, 1.0).unwrap()
    }

    /// The dimensionless set used throughout the three-species tests.
    pub(crate) fn demo3() -> Params3 {
        Params3::new(0.61, 1.0, 7.0, 0.01, 1.4, 0.02, 0.12, 0.43, 0.06).unwrap()
    }

    #[test]
    fn nondim2_reads_off_composites() {
        let (p, s) = nondim2(&DimParams2::new(2.0, 1.0, 1.0, 1.0, 1.0, 0.0, 0.0).unwrap())
            .unwrap();
        assert_eq!(
            (p.rho, p.psi, p.phi, p.eps1, p.eps2),
            (2.0, 1.0, 1.0, 0.0, 0.0)
        );
        assert_eq!((s.x_scale, s.y_scale, s.t_scale), (1.0, 1.0, 1.0));

        // A preimage of the demo2 dimensionless set.
        let (p, _) = nondim2(&DimParams2::new(1.0, 1.0, 19.0, 2.0, 1.0, 0.4, 1.0).unwrap())
            .unwrap();
        assert_eq!(p, demo2());

        let (p, s) = nondim2(&DimParams2::new(1.0, 2.0, 1.0, 1.0, 0.5, 0.0, 0.0).unwrap())
            .unwrap();
        assert_eq!(
            (p.rho, p.psi, p.phi, p.eps1, p.eps2),
            (2.0, 4.0, 2.0, 0.0, 0.0)
        );
        assert_eq!((s.x_scale, s.y_scale, s.t_scale), (2.0, 0.5, 2.0));
    }

    #[test]
    fn nondim3_folds_mortality_into_removal_rates() {
        let unit = DimParams3::new(
            1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 0.0, 0.0, 0.0,
        )
        .unwrap();
        let (p, _) = nondim3(&unit).unwrap();
        assert_eq!((p.eps2, p.eps3), (1.0, 1.0));

        // η = ab/(ξ k₁) = 2·4/(8·1) = 1.
        let d = DimParams3::new(1.0, 1.0, 2.0, 4.0, 8.0, 1.0, 1.0, 1.0, 1.0, 0.0, 0.0, 0.0)
            .unwrap();
        let (p, s) = nondim3(&d).unwrap();
        assert_eq!(p.eta, 1.0);
        assert_eq!((s.y_scale, s.z_scale), (0.5, 0.25));
    }

    #[test]
    fn dimensionless_round_trip() {
        let d = DimParams2::new(1.3, 2.4, 0.7, 0.9, 0.55, 0.1, 0.2).unwrap();
        let (_, s) = nondim2(&d).unwrap();
        for state in [[0.3, 0.8], [1.7, 0.01]] {
            let back = s.to_dimensionless(s.to_dimensional(state));
            assert_relative_eq!(back[0], state[0], max_relative = 1e-12);
            assert_relative_eq!(back[1], state[1], max_relative = 1e-12);
        }
    }

    #[test]
    fn rhs2_known_values() {
        let p = demo2();
        assert_eq!(rhs2(&p, [0.0, 0.0]).unwrap(), [0.0, 0.0]);
        let d = rhs2(&p, [1.0, 0.0]).unwrap();
        assert_relative_eq!(d[0], -0.4, max_relative = 1e-14);
        assert_eq!(d[1], 0.0);
        // Coexistence point (2/15, 7/15) annihilates the field.
        let d = rhs2(&p, [2.0 / 15.0, 7.0 / 15.0]).unwrap();
        assert!(d[0].abs() < 1e-12 && d[1].abs() < 1e-12);
    }

    #[test]
    fn rhs3_known_values() {
        let p = demo3();
        assert_eq!(rhs3(&p, [0.0, 0.0, 0.0]).unwrap(), [0.0, 0.0, 0.0]);
        let d = rhs3(&p, [1.0, 0.0, 0.0]).unwrap();
        assert_relative_eq!(d[0], -0.12, max_relative = 1e-12);
        assert_eq!(d[1], 0.0);
        assert_eq!(d[2], 0.0);
    }

    #[test]
    fn rhs_rejects_singular_and_nonfinite_states() {
        let p = demo2();
        assert!(matches!(
            rhs2(&p, [-0.5, 1.0]),
            Err(FracError::Singularity(_))
        ));
        assert!(rhs2(&p, [f64::NAN, 0.0]).is_err());
        let q = demo3();
        // 1 + phi1·x = 1 + 0.02·(−50) vanishes exactly.
        assert!(matches!(
            rhs3(&q, [-50.0, 0.0, 0.0]),
            Err(FracError::Singularity(_))
        ));
    }

    #[test]
    fn lipschitz2_formulas() {
        let p = Params2::new(1.0, 1.0, 1.0, 0.4, 0.0).unwrap();
        let b = lipschitz_bound2(&p, 1.0).unwrap();
        assert_relative_eq!(b.components[0], 3.4, max_relative = 1e-14);
        assert_relative_eq!(b.components[1], 3.0, max_relative = 1e-14);
        assert_eq!(b.l, 3.4);

        // M → 0⁺ limit: (L1, L2) → (ρ, 1 + ε2).
        let tiny = lipschitz_bound2(&demo2(), 1e-12).unwrap();
        assert_relative_eq!(tiny.components[0], demo2().rho + 0.4, max_relative = 1e-9);
        assert_relative_eq!(tiny.components[1], 2.0, max_relative = 1e-9);
    }

    #[test]
    fn lipschitz3_formulas() {
        let b = lipschitz_bound3(&demo3(), 1.0).unwrap();
        assert_relative_eq!(b.components[0], 2.35, max_relative = 1e-12);
        assert_relative_eq!(b.components[2], 7.2714, max_relative = 1e-12);
        assert_eq!(b.l, b.components[2]);
        assert!(lipschitz_bound3(&demo3(), 0.0).is_err());
    }

    #[test]
    fn serde_uses_exact_field_names_and_validates() {
        let p: Params2 =
            serde_json::from_str(r#"{"rho":1,"psi":19,"phi":2,"eps1":0.4,"eps2":1}"#).unwrap();
        assert_eq!(p, demo2());
        // Unknown and missing fields are rejected.
        assert!(serde_json::from_str::<Params2>(
            r#"{"rho":1,"psi":19,"phi":2,"eps1":0.4,"eps2":1,"beta":3}"#
        )
        .is_err());
        assert!(serde_json::from_str::<Params2>(r#"{"rho":1}"#).is_err());
        // Invariants hold through deserialization.
        assert!(serde_json::from_str::<Params2>(
            r#"{"rho":-1,"psi":19,"phi":2,"eps1":0.4,"eps2":1}"#
        )
        .is_err());

        let q: Params3 = serde_json::from_str(
            r#"{"rho":0.61,"psi":1,"beta":7,"eta":0.01,"phi":1.4,"phi1":0.02,
                "eps1":0.12,"eps2":0.43,"eps3":0.06}"#,
        )
        .unwrap();
        assert_eq!(q, demo3());
        let round: Params3 =
            serde_json::from_str(&serde_json::to_string(&q).unwrap()).unwrap();
        assert_eq!(round, q);
    }

    #[test]
    fn direct_params3_accepts_small_eps2_but_rejects_negatives() {
        assert!(Params3::new(1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 0.0, 0.43, 0.1).is_ok());
        assert!(Params3::new(1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 0.0, -0.1, 0.1).is_err());
        assert!(Params3::new(1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 0.0, 1.0, 0.0).is_err());
    }
}
