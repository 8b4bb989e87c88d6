//! Oracle tests for the stationary-point layer. The coexistence prey
//! densities, computed in closed form by clearing the self-consistency
//! condition to a cubic, are checked against a sign-scan plus bisection
//! of the *uncleared* condition — a different algorithm with different
//! rounding behavior — over a seeded population of parameter draws.
//! Closed-form monotonicity in the harvest rates and exact degenerate
//! denominators are locked alongside.

use fraceco::equilibria::{e5_fixed_point_residual, equilibria2, equilibria3, solve_e5, EqLabel};
use fraceco::models::{Params2, Params3};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Signed deviation of ω from the coexistence self-consistency condition
/// ω = 1 − (1/ρ)[ε₂ε₃(1+φω)(1+φ₁ω)/(βψω²) + ε₁ − η].
fn self_consistency_gap(p: &Params3, w: f64) -> f64 {
    let load =
        p.eps2 * p.eps3 * (1.0 + p.phi * w) * (1.0 + p.phi1 * w) / (p.beta * p.psi * w * w);
    w - (1.0 - (load + p.eps1 - p.eta) / p.rho)
}

/// All roots of the uncleared condition on (0, 2], located by a sign scan
/// at step 1e-4 followed by 60 bisection halvings per bracket.
fn bisection_roots(p: &Params3) -> Vec<f64> {
    let step = 1e-4;
    let mut roots = Vec::new();
    let mut prev_w = step;
    let mut prev_f = self_consistency_gap(p, prev_w);
    for i in 2..=20_000u32 {
        let w = step * f64::from(i);
        let f = self_consistency_gap(p, w);
        if f == 0.0 {
            roots.push(w);
        } else if prev_f != 0.0 && (f < 0.0) != (prev_f < 0.0) {
            let (mut a, mut b) = (prev_w, w);
            let mut fa = prev_f;
            for _ in 0..60 {
                let m = 0.5 * (a + b);
                let fm = self_consistency_gap(p, m);
                if (fm < 0.0) == (fa < 0.0) {
                    a = m;
                    fa = fm;
                } else {
                    b = m;
                }
            }
            roots.push(0.5 * (a + b));
        }
        prev_w = w;
        prev_f = f;
    }
    roots
}

/// The closed-form cubic route and the bisection route find the same
/// coexistence prey densities across 100 seeded parameter draws, gated
/// to well-conditioned simple roots so both methods are defined.
#[test]
fn cubic_roots_match_a_bisection_of_the_uncleared_condition() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let mut accepted = 0u32;
    let mut attempts = 0u32;
    while accepted < 100 {
        attempts += 1;
        assert!(
            attempts <= 2000,
            "rejection sampling exhausted: only {accepted} well-conditioned draws"
        );
        let p = Params3::new(
            rng.gen_range(0.3..2.0),
            rng.gen_range(0.5..3.0),
            rng.gen_range(2.0..10.0),
            rng.gen_range(0.005..0.05),
            rng.gen_range(0.5..3.0),
            rng.gen_range(0.01..0.2),
            rng.gen_range(0.0..0.3),
            rng.gen_range(0.1..1.0),
            rng.gen_range(0.02..0.2),
        )
        .unwrap();

        let solved = solve_e5(&p);
        let h = 1e-7;
        let well_conditioned = solved.windows(2).all(|w| w[1] - w[0] > 1e-2)
            && solved.iter().all(|w| {
                let d = (self_consistency_gap(&p, w + h) - self_consistency_gap(&p, w - h))
                    / (2.0 * h);
                d.abs() > 1e-3
            });
        if !well_conditioned {
            continue;
        }
        accepted += 1;

        // For these parameter ranges every positive root sits well below
        // the scan ceiling: the gap exceeds ω − 1 − η/ρ > 0 past ω ≈ 1.2.
        for w in &solved {
            assert!(*w > 0.0 && *w < 1.5, "root {w} outside the expected band");
            assert!(
                e5_fixed_point_residual(&p, *w) <= 1e-9,
                "closed-form root {w} leaves residual {}",
                e5_fixed_point_residual(&p, *w)
            );
        }

        let scanned = bisection_roots(&p);
        assert_eq!(
            scanned.len(),
            solved.len(),
            "bisection found {scanned:?}, closed form {solved:?}"
        );
        for (s, c) in scanned.iter().zip(&solved) {
            assert!(
                (s - c).abs() <= 1e-8,
                "bisection {s} vs closed form {c} (draw {attempts})"
            );
        }
    }
}

/// Reference parameter set: both coexistence prey densities frozen from
/// a 50-digit bisection of the uncleared condition.
#[test]
fn frozen_coexistence_roots_for_the_reference_set() {
    let p = Params3::new(0.61, 1.0, 7.0, 0.01, 1.4, 0.02, 0.12, 0.43, 0.06).unwrap();
    let roots = solve_e5(&p);
    assert_eq!(roots.len(), 2);
    assert!(
        (roots[0] - 0.097_623_404_567_902_06).abs() <= 1e-12,
        "small root {}",
        roots[0]
    );
    assert!(
        (roots[1] - 0.799_311_760_520_629_5).abs() <= 1e-12,
        "big root {}",
        roots[1]
    );

    let eqs = equilibria3(&p);
    let e5: Vec<_> = eqs.iter().filter(|e| e.label == EqLabel::E5).collect();
    assert_eq!(e5.len(), 2);
    for pt in e5 {
        assert!(pt.feasible);
        assert!(pt.coords[1] > 0.0 && pt.coords[2] > 0.0);
        assert!(self_consistency_gap(&p, pt.coords[0]).abs() <= 1e-12);
        assert_eq!(pt.aux["omega"], pt.coords[0]);
    }
}

/// Exact degenerate denominators produce flagged, coordinate-free points
/// instead of infinities, for both partial-survival families.
#[test]
fn degenerate_denominators_yield_flagged_empty_points() {
    // ψ = ε₂φ exactly (0.5 = 0.25·2) and ηβ = φ₁ε₃ exactly (0.05·2 = 1·0.1).
    let p = Params3::new(1.0, 0.5, 2.0, 0.05, 2.0, 1.0, 0.1, 0.25, 0.1).unwrap();
    let eqs = equilibria3(&p);

    let e3 = eqs.iter().find(|e| e.label == EqLabel::E3).unwrap();
    assert!(e3.coords.is_empty());
    assert!(!e3.feasible);
    assert!(e3.note.as_ref().unwrap().contains("degenerate"));

    let e4 = eqs.iter().find(|e| e.label == EqLabel::E4).unwrap();
    assert!(e4.coords.is_empty());
    assert!(!e4.feasible);
    assert!(e4.note.as_ref().unwrap().contains("degenerate"));
}

proptest! {
    /// Prey harvesting does not move the coexistence prey share, and
    /// lowers the predator density by exactly the added rate.
    #[test]
    fn prey_harvest_lowers_predator_density_linearly(
        rho in 0.5..2.5f64,
        psi in 8.0..25.0f64,
        phi in 0.2..2.0f64,
        e1 in 0.0..0.4f64,
        e2 in 0.0..1.5f64,
        delta in 0.01..0.3f64,
    ) {
        let base = equilibria2(&Params2::new(rho, psi, phi, e1, e2).unwrap());
        let more = equilibria2(&Params2::new(rho, psi, phi, e1 + delta, e2).unwrap());
        let (a, b) = (&base[2], &more[2]);
        prop_assert_eq!(a.label, EqLabel::E3);
        // ω = (1+ε₂)/(ψ − φ(1+ε₂)) never involves ε₁.
        prop_assert_eq!(a.coords[0], b.coords[0]);
        prop_assert!((b.coords[1] - (a.coords[1] - delta)).abs() <= 1e-12);
    }

    /// Predator harvesting shifts the coexistence point toward more prey
    /// and fewer predators while the closed form stays non-degenerate.
    #[test]
    fn predator_harvest_raises_coexistence_prey_share(
        rho in 0.5..2.5f64,
        psi in 8.0..25.0f64,
        phi in 0.2..2.0f64,
        e1 in 0.0..0.4f64,
        e2 in 0.0..1.0f64,
        delta in 0.05..0.5f64,
    ) {
        let base = equilibria2(&Params2::new(rho, psi, phi, e1, e2).unwrap());
        let more = equilibria2(&Params2::new(rho, psi, phi, e1, e2 + delta).unwrap());
        let (a, b) = (&base[2], &more[2]);
        prop_assert!(b.coords[0] > a.coords[0]);
        prop_assert!(b.coords[1] < a.coords[1]);
    }

    /// In the three-species system the y-survival prey density grows with
    /// the y harvest rate (dω/dε₂ = ψ/den² > 0 on the feasible side).
    #[test]
    fn y_survival_prey_density_rises_with_its_harvest(
        rho in 0.5..2.0f64,
        psi in 1.5..3.0f64,
        phi in 0.5..1.5f64,
        e2 in 0.1..0.6f64,
        delta in 0.05..0.3f64,
    ) {
        let p0 = Params3::new(rho, psi, 5.0, 0.02, phi, 0.1, 0.1, e2, 0.1).unwrap();
        let p1 = Params3::new(rho, psi, 5.0, 0.02, phi, 0.1, 0.1, e2 + delta, 0.1).unwrap();
        let x0 = equilibria3(&p0)[2].coords[0];
        let x1 = equilibria3(&p1)[2].coords[0];
        prop_assert!(x1 > x0, "{x1} vs {x0}");
    }
}
