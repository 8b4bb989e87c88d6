//! Closed-form roots of characteristic polynomials up to degree 3.
//!
//! Polynomials are kept monic, λⁿ + a₁λ^{n−1} + … + a_n. Quadratics use
//! the numerically stable quadratic formula; cubics use the trigonometric
//! method when all roots are real and Cardano's formula otherwise, both
//! followed by a complex Newton polish so every returned root carries a
//! residual at rounding level. The cubic discriminant
//!
//! D = 18a₁a₂a₃ + (a₁a₂)² − 4a₃a₁³ − 4a₂³ − 27a₃²
//!
//! is attached to every degree-3 polynomial: D > 0 means three distinct
//! real roots, D < 0 one real root plus a complex-conjugate pair.

use crate::error::{FracError, Result};
use num_complex::Complex64;
use serde::Serialize;

/// Monic characteristic polynomial with coefficients `[a1, …, an]`,
/// degree n ∈ {1, 2, 3}.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CharPoly {
    /// Coefficients a₁..a_n of λⁿ + a₁λ^{n−1} + … + a_n.
    pub coeffs: Vec<f64>,
    /// Cubic discriminant; `None` below degree 3.
    pub discriminant: Option<f64>,
}

impl CharPoly {
    /// Builds a polynomial from its non-leading coefficients.
    ///
    /// # Errors
    /// Domain error unless 1 ≤ n ≤ 3 with finite coefficients.
    pub fn new(coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.is_empty() || coeffs.len() > 3 {
            return Err(FracError::Domain(format!(
                "characteristic polynomial degree must be 1..=3, got {}",
                coeffs.len()
            )));
        }
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(FracError::Domain(
                "polynomial coefficients must be finite".into(),
            ));
        }
        let discriminant = (coeffs.len() == 3)
            .then(|| discriminant3(coeffs[0], coeffs[1], coeffs[2]));
        Ok(Self {
            coeffs,
            discriminant,
        })
    }

    /// Characteristic polynomial of a 2×2 matrix: λ² − Tr·λ + det.
    pub fn from_matrix2(j: &[[f64; 2]; 2]) -> Self {
        let tr = j[0][0] + j[1][1];
        let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
        Self::new(vec![-tr, det]).expect("finite 2x2 entries")
    }

    /// Characteristic polynomial of a 3×3 matrix:
    /// λ³ − Tr·λ² + (sum of principal 2×2 minors)·λ − det.
    pub fn from_matrix3(j: &[[f64; 3]; 3]) -> Self {
        let tr = j[0][0] + j[1][1] + j[2][2];
        let minors = j[0][0] * j[1][1] - j[0][1] * j[1][0]
            + j[0][0] * j[2][2]
            - j[0][2] * j[2][0]
            + j[1][1] * j[2][2]
            - j[1][2] * j[2][1];
        let det = j[0][0] * (j[1][1] * j[2][2] - j[1][2] * j[2][1])
            - j[0][1] * (j[1][0] * j[2][2] - j[1][2] * j[2][0])
            + j[0][2] * (j[1][0] * j[2][1] - j[1][1] * j[2][0]);
        Self::new(vec![-tr, minors, -det]).expect("finite 3x3 entries")
    }

    /// Polynomial degree.
    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    /// Evaluates the monic polynomial at a complex point (Horner).
    pub fn eval(&self, lambda: Complex64) -> Complex64 {
        let mut acc = Complex64::new(1.0, 0.0);
        for &c in &self.coeffs {
            acc = acc * lambda + c;
        }
        acc
    }

    /// Evaluates the derivative at a complex point.
    fn eval_derivative(&self, lambda: Complex64) -> Complex64 {
        let n = self.coeffs.len();
        let mut acc = Complex64::new(n as f64, 0.0);
        for (i, &c) in self.coeffs.iter().take(n - 1).enumerate() {
            acc = acc * lambda + (n - 1 - i) as f64 * c;
        }
        acc
    }

    /// Largest coefficient magnitude (including the leading 1).
    pub fn coeff_scale(&self) -> f64 {
        self.coeffs.iter().fold(1.0_f64, |m, c| m.max(c.abs()))
    }
}

/// Discriminant of λ³ + a₁λ² + a₂λ + a₃ per the classical expansion.
pub fn discriminant3(a1: f64, a2: f64, a3: f64) -> f64 {
    18.0 * a1 * a2 * a3 + (a1 * a2).powi(2)
        - 4.0 * a3 * a1.powi(3)
        - 4.0 * a2.powi(3)
        - 27.0 * a3 * a3
}

/// Roots of the monic quadratic λ² + a₁λ + a₂, without cancellation in the
/// real branch (the smaller root comes from a₂ / q).
fn solve_quadratic(a1: f64, a2: f64) -> [Complex64; 2] {
    let disc = a1 * a1 - 4.0 * a2;
    if disc >= 0.0 {
        let sq = disc.sqrt();
        let q = -0.5 * (a1 + a1.signum() * sq);
        if q == 0.0 {
            // a1 = 0 and a2 = 0 (disc = 0): double root at the origin.
            return [Complex64::new(0.0, 0.0); 2];
        }
        [Complex64::new(q, 0.0), Complex64::new(a2 / q, 0.0)]
    } else {
        let re = -0.5 * a1;
        let im = 0.5 * (-disc).sqrt();
        [Complex64::new(re, im), Complex64::new(re, -im)]
    }
}

/// Roots of the monic cubic λ³ + a₁λ² + a₂λ + a₃.
fn solve_cubic(a1: f64, a2: f64, a3: f64) -> [Complex64; 3] {
    // Depressed form t³ + pt + q with λ = t − a1/3.
    let shift = a1 / 3.0;
    let p = a2 - a1 * a1 / 3.0;
    let q = 2.0 * a1.powi(3) / 27.0 - a1 * a2 / 3.0 + a3;

    let ts: [Complex64; 3] = if p == 0.0 && q == 0.0 {
        [Complex64::new(0.0, 0.0); 3]
    } else if -4.0 * p.powi(3) - 27.0 * q * q >= 0.0 {
        // Three real roots (p < 0 here): trigonometric method.
        let m = 2.0 * (-p / 3.0).sqrt();
        let cos3t = (1.5 * q / p) * (-3.0 / p).sqrt();
        let theta = cos3t.clamp(-1.0, 1.0).acos() / 3.0;
        [0usize, 1, 2].map(|k| {
            let t = m * (theta - 2.0 * std::f64::consts::PI * k as f64 / 3.0).cos();
            Complex64::new(t, 0.0)
        })
    } else {
        // One real root: Cardano, picking the branch that avoids
        // cancellation in u, with v recovered from uv = −p/3.
        let half_disc = (q * q / 4.0 + p.powi(3) / 27.0).sqrt();
        let u = if q >= 0.0 {
            (-q / 2.0 - half_disc).cbrt()
        } else {
            (-q / 2.0 + half_disc).cbrt()
        };
        let v = if u == 0.0 { 0.0 } else { -p / (3.0 * u) };
        let re = -0.5 * (u + v);
        let im = 0.5 * 3f64.sqrt() * (u - v);
        [
            Complex64::new(u + v, 0.0),
            Complex64::new(re, im),
            Complex64::new(re, -im),
        ]
    };
    ts.map(|t| t - shift)
}

/// Newton-polishes a root until the residual reaches rounding level.
fn polish(cp: &CharPoly, start: Complex64) -> Complex64 {
    let mut best = start;
    let mut best_res = cp.eval(best).norm();
    let mut lambda = start;
    for _ in 0..30 {
        let f = cp.eval(lambda);
        let fp = cp.eval_derivative(lambda);
        if fp.norm() < 1e-300 {
            break;
        }
        lambda -= f / fp;
        let res = cp.eval(lambda).norm();
        if res < best_res {
            best = lambda;
            best_res = res;
        } else {
            break;
        }
    }
    best
}

/// All roots of a characteristic polynomial, polished to residual
/// ≤ ~1e−12·(1 + max|coeff|) and sorted by descending real part, then
/// descending imaginary part.
pub fn eigen(cp: &CharPoly) -> Vec<Complex64> {
    let raw: Vec<Complex64> = match cp.coeffs.len() {
        1 => vec![Complex64::new(-cp.coeffs[0], 0.0)],
        2 => solve_quadratic(cp.coeffs[0], cp.coeffs[1]).to_vec(),
        _ => solve_cubic(cp.coeffs[0], cp.coeffs[1], cp.coeffs[2]).to_vec(),
    };
    let mut out: Vec<Complex64> = raw.into_iter().map(|r| polish(cp, r)).collect();
    out.sort_by(|a, b| {
        b.re.partial_cmp(&a.re)
            .unwrap()
            .then(b.im.partial_cmp(&a.im).unwrap())
    });
    out
}

/// Real roots of the monic cubic λ³ + a₁λ² + a₂λ + a₃, polished in real
/// arithmetic and deduplicated; ascending order.
pub fn real_roots_of_cubic(a1: f64, a2: f64, a3: f64) -> Vec<f64> {
    let cp = CharPoly::new(vec![a1, a2, a3]).expect("degree 3");
    let scale = cp.coeff_scale();
    let mut reals: Vec<f64> = eigen(&cp)
        .into_iter()
        .filter(|l| l.im.abs() <= 1e-8 * (1.0 + l.norm()))
        .map(|l| l.re)
        .collect();
    // Real-axis Newton pass: the complex polish may leave a stray
    // imaginary part; re-center on the real line.
    for r in &mut reals {
        let mut x = *r;
        for _ in 0..30 {
            let f = ((x + a1) * x + a2) * x + a3;
            let fp = (3.0 * x + 2.0 * a1) * x + a2;
            if fp.abs() < 1e-300 || !x.is_finite() {
                break;
            }
            let step = f / fp;
            x -= step;
            if step.abs() <= 1e-16 * (1.0 + x.abs()) {
                break;
            }
        }
        let res_new = (((x + a1) * x + a2) * x + a3).abs();
        let res_old = (((*r + a1) * *r + a2) * *r + a3).abs();
        if x.is_finite() && res_new <= res_old {
            *r = x;
        }
    }
    reals.sort_by(|a, b| a.partial_cmp(b).unwrap());
    reals.dedup_by(|a, b| (*a - *b).abs() <= 1e-8 * (1.0 + scale));
    reals
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_close(a: Complex64, re: f64, im: f64, tol: f64) {
        assert!(
            (a.re - re).abs() < tol && (a.im - im).abs() < tol,
            "{a} vs {re}+{im}i"
        );
    }

    #[test]
    fn perfect_square_quadratic() {
        let cp = CharPoly::new(vec![2.0, 1.0]).unwrap();
        let r = eigen(&cp);
        assert_close(r[0], -1.0, 0.0, 1e-12);
        assert_close(r[1], -1.0, 0.0, 1e-12);
    }

    #[test]
    fn roots_of_unity_cubic() {
        // λ³ − 1 = 0.
        let cp = CharPoly::new(vec![0.0, 0.0, -1.0]).unwrap();
        let r = eigen(&cp);
        assert_close(r[0], 1.0, 0.0, 1e-12);
        assert_close(r[1], -0.5, 3f64.sqrt() / 2.0, 1e-12);
        assert_close(r[2], -0.5, -3f64.sqrt() / 2.0, 1e-12);
    }

    #[test]
    fn three_distinct_real_roots() {
        // (λ−1)(λ−2)(λ−3) = λ³ − 6λ² + 11λ − 6.
        let cp = CharPoly::new(vec![-6.0, 11.0, -6.0]).unwrap();
        let r = eigen(&cp);
        assert_close(r[0], 3.0, 0.0, 1e-10);
        assert_close(r[1], 2.0, 0.0, 1e-10);
        assert_close(r[2], 1.0, 0.0, 1e-10);
        assert!(cp.discriminant.unwrap() > 0.0);
        let real = real_roots_of_cubic(-6.0, 11.0, -6.0);
        assert_eq!(real.len(), 3);
        for (got, want) in real.iter().zip([1.0, 2.0, 3.0]) {
            assert!((got - want).abs() <= 1e-12 * want, "{got} vs {want}");
        }
    }

    #[test]
    fn matrix_characteristic_polynomials() {
        let cp = CharPoly::from_matrix2(&[[1.0, 2.0], [3.0, 4.0]]);
        assert_eq!(cp.coeffs, vec![-5.0, -2.0]);

        // Upper-triangular: eigenvalues are the diagonal.
        let cp =
            CharPoly::from_matrix3(&[[1.0, 5.0, -2.0], [0.0, 2.0, 7.0], [0.0, 0.0, 3.0]]);
        let r = eigen(&cp);
        assert_close(r[0], 3.0, 0.0, 1e-9);
        assert_close(r[1], 2.0, 0.0, 1e-9);
        assert_close(r[2], 1.0, 0.0, 1e-9);
    }

    #[test]
    fn residuals_stay_at_rounding_level() {
        let polys = [
            vec![0.5333333333333333, 0.7368421052631579],
            vec![-0.1, 0.25, 0.9],
            vec![3.0, 3.0, 1.0], // (λ+1)³
            vec![0.0, 1.0],     // λ² + 1
        ];
        for coeffs in polys {
            let cp = CharPoly::new(coeffs).unwrap();
            let tol = 1e-12 * (1.0 + cp.coeff_scale());
            for r in eigen(&cp) {
                assert!(cp.eval(r).norm() <= tol, "{:?} at {r}", cp.coeffs);
            }
        }
    }

    #[test]
    fn discriminant_dichotomy_simple_cases() {
        // One real + pair: λ³ + λ + 1.
        assert!(discriminant3(0.0, 1.0, 1.0) < 0.0);
        // Three distinct real: (λ+1)λ(λ−1) = λ³ − λ.
        assert!(discriminant3(0.0, -1.0, 0.0) > 0.0);
        // Repeated root: (λ−1)²(λ−2) → D = 0.
        let d = discriminant3(-4.0, 5.0, -2.0);
        assert!(d.abs() < 1e-12);
    }

    #[test]
    fn double_zero_root_cubic() {
        // ω³ − cω² = 0 (the harvest-free coexistence reduction).
        let roots = real_roots_of_cubic(-0.75, 0.0, 0.0);
        assert_eq!(roots.len(), 2);
        assert!(roots[0].abs() < 1e-12);
        assert!((roots[1] - 0.75).abs() < 1e-12);
    }

    #[test]
    fn degree_validation() {
        assert!(CharPoly::new(vec![]).is_err());
        assert!(CharPoly::new(vec![1.0; 4]).is_err());
        assert!(CharPoly::new(vec![f64::NAN]).is_err());
        assert!(CharPoly::new(vec![1.0]).unwrap().discriminant.is_none());
    }
}
