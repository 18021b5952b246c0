//! Orthonormal polynomials on `[0, 1]` for the weight `x^alpha (1-x)^beta`,
//! their three-term recurrence, and Gauss rules built from it.
//!
//! The polynomials `p_m` are normalized so that
//! `∫₀¹ p_m p_l x^alpha (1-x)^beta dx = δ_{ml}` and satisfy
//!
//! ```text
//! p_0 = sqrt(1/γ₀)
//! sqrt(b_1) p_1 = (x - a_0) p_0
//! sqrt(b_{m+1}) p_{m+1} = (x - a_m) p_m - sqrt(b_m) p_{m-1}
//! ```
//!
//! They are always evaluated through the recurrence; no monomial expansion is
//! ever formed.

mod tridiag;

pub use tridiag::{eigen_first_components, DEFLATION_TOL, MAX_SWEEPS};

use crate::error::{KimuraError, Result};
use crate::scalar::Scalar;

/// Jacobi weight `x^alpha (1-x)^beta` on `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiWeight {
    pub alpha: f64,
    pub beta: f64,
}

impl JacobiWeight {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha.is_finite() && alpha > -1.0) {
            return Err(KimuraError::domain(format!(
                "Jacobi exponent alpha = {alpha} must exceed -1"
            )));
        }
        if !(beta.is_finite() && beta > -1.0) {
            return Err(KimuraError::domain(format!(
                "Jacobi exponent beta = {beta} must exceed -1"
            )));
        }
        Ok(JacobiWeight { alpha, beta })
    }

    /// Total mass `Γ(α+1)Γ(β+1)/Γ(α+β+2)`.
    pub fn mass(&self) -> f64 {
        beta_function(self.alpha + 1.0, self.beta + 1.0)
    }
}

/// `B(p, q) = Γ(p)Γ(q)/Γ(p+q)`, exact in floating point for small integer
/// arguments and through log-gamma otherwise.
pub fn beta_function(p: f64, q: f64) -> f64 {
    let small_int = |v: f64| v.fract() == 0.0 && v >= 1.0 && v <= 60.0;
    if small_int(p) && small_int(q) {
        // B(p, q) = (p-1)!(q-1)!/(p+q-1)! = 1 / ((p+q-1) C(p+q-2, p-1))
        let (a, b) = ((p - 1.0) as u64, (q - 1.0) as u64);
        let (lo, hi) = (a.min(b), a.max(b));
        let mut binom = 1.0f64;
        for i in 1..=lo {
            binom = binom * (hi + i) as f64 / i as f64;
        }
        return 1.0 / ((p + q - 1.0) * binom);
    }
    (libm::lgamma(p) + libm::lgamma(q) - libm::lgamma(p + q)).exp()
}

/// Recurrence data for the orthonormal polynomials of a [`JacobiWeight`].
///
/// `a[m]` holds `a_m` for `m = 0..=M`; `b[m]` holds `b_m` for `m = 1..=M` and
/// `b[0]` stores the total mass `γ₀`.
#[derive(Debug, Clone, PartialEq)]
pub struct OrthonormalRecurrence {
    pub weight: JacobiWeight,
    pub gamma0: f64,
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    sqrt_b: Vec<f64>,
}

impl OrthonormalRecurrence {
    /// Highest degree whose polynomial the stored coefficients determine.
    pub fn max_degree(&self) -> usize {
        self.a.len() - 1
    }

    /// `p_0..=p_degree` at `x`, written into `out[..=degree]`.
    pub fn evaluate_into(&self, x: f64, degree: usize, out: &mut [f64]) {
        out[0] = self.sqrt_b[0].recip();
        if degree == 0 {
            return;
        }
        out[1] = (x - self.a[0]) * out[0] / self.sqrt_b[1];
        for m in 1..degree {
            out[m + 1] = ((x - self.a[m]) * out[m] - self.sqrt_b[m] * out[m - 1]) / self.sqrt_b[m + 1];
        }
    }

    /// Homogenized values `P_m(x, r) = r^m p_m(x / r)` for `m = 0..=degree`.
    ///
    /// The recurrence is multiplied through by powers of `r`, so no division
    /// by `r` occurs and the result is a polynomial in `(x, r)` that stays
    /// well defined at `r = 0`.
    pub fn evaluate_homogeneous<T: Scalar>(&self, x: T, r: T, degree: usize, out: &mut [T]) {
        let p0 = self.sqrt_b[0].recip();
        out[0] = T::cst(p0);
        if degree == 0 {
            return;
        }
        out[1] = (x - r * self.a[0]) * (p0 / self.sqrt_b[1]);
        let r2 = r * r;
        for m in 1..degree {
            out[m + 1] =
                ((x - r * self.a[m]) * out[m] - r2 * out[m - 1] * self.sqrt_b[m]) * self.sqrt_b[m + 1].recip();
        }
    }
}

/// Closed-form recurrence coefficients `a_0..a_M`, `b_1..b_M` and `γ₀`.
pub fn recurrence_coefficients(weight: JacobiWeight, max_degree: usize) -> Result<OrthonormalRecurrence> {
    let weight = JacobiWeight::new(weight.alpha, weight.beta)?;
    let (al, be) = (weight.alpha, weight.beta);
    let s = al + be;
    let gamma0 = weight.mass();

    let mut a = Vec::with_capacity(max_degree + 1);
    let mut b = Vec::with_capacity(max_degree + 1);
    b.push(gamma0);
    for m in 0..=max_degree {
        let mf = m as f64;
        let am = if m == 0 {
            (al + 1.0) / (s + 2.0)
        } else {
            0.5 * (1.0 + s * (al - be) / ((s + 2.0 * mf + 2.0) * (s + 2.0 * mf)))
        };
        a.push(am);
        if m >= 1 {
            let bm = if m == 1 {
                (al + 1.0) * (be + 1.0) / ((s + 2.0) * (s + 2.0) * (s + 3.0))
            } else {
                let t = s + 2.0 * mf;
                mf * (al + mf) * (be + mf) * (s + mf) / (t * t * (t * t - 1.0))
            };
            b.push(bm);
        }
    }
    let sqrt_b = b.iter().map(|v| v.sqrt()).collect();
    Ok(OrthonormalRecurrence {
        weight,
        gamma0,
        a,
        b,
        sqrt_b,
    })
}

/// Values `p_0(x)..p_M(x)`.
pub fn evaluate_polynomials(rec: &OrthonormalRecurrence, x: f64, max_degree: usize) -> Result<Vec<f64>> {
    if max_degree > rec.max_degree() {
        return Err(KimuraError::Range {
            requested: max_degree,
            available: rec.max_degree(),
        });
    }
    let mut out = vec![0.0; max_degree + 1];
    rec.evaluate_into(x, max_degree, &mut out);
    Ok(out)
}

/// Gauss rule for `∫₀¹ f(x) x^alpha (1-x)^beta dx`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    pub weight: JacobiWeight,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }
}

/// N-point Gauss rule via the Golub–Welsch eigenvalue problem.
pub fn gauss_quadrature(weight: JacobiWeight, order: usize) -> Result<QuadratureRule> {
    if order == 0 {
        return Err(KimuraError::domain("quadrature order must be at least 1"));
    }
    let rec = recurrence_coefficients(weight, order)?;
    let diag = &rec.a[..order];
    let off = &rec.sqrt_b[1..order];
    let (vals, comps) = eigen_first_components(diag, off)?;

    let mut pairs: Vec<(f64, f64)> = vals
        .into_iter()
        .zip(comps)
        .map(|(x, z)| (x, rec.gamma0 * z * z))
        .collect();
    pairs.sort_by(|p, q| p.0.total_cmp(&q.0));

    if pairs.first().is_some_and(|p| p.0 <= 0.0) || pairs.last().is_some_and(|p| p.0 >= 1.0) {
        return Err(KimuraError::Numeric(format!(
            "Gauss nodes left (0, 1) for alpha = {}, beta = {}, N = {order}",
            weight.alpha, weight.beta
        )));
    }
    let (nodes, weights) = pairs.into_iter().unzip();
    Ok(QuadratureRule {
        weight: rec.weight,
        nodes,
        weights,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(a: f64, b: f64) -> JacobiWeight {
        JacobiWeight::new(a, b).unwrap()
    }

    #[test]
    fn symmetric_weight_coefficients() {
        let rec = recurrence_coefficients(w(1.0, 1.0), 2).unwrap();
        assert!(rec.a.iter().all(|&a| (a - 0.5).abs() < 1e-16));
        assert!((rec.b[1] - 1.0 / 20.0).abs() < 1e-16);
        assert!((rec.b[2] - 2.0 / 35.0).abs() < 1e-16);
        assert!((rec.gamma0 - 1.0 / 6.0).abs() < 1e-16);
    }

    #[test]
    fn uniform_weight_has_unit_mass() {
        let rec = recurrence_coefficients(w(0.0, 0.0), 0).unwrap();
        assert_eq!(rec.gamma0, 1.0);
    }

    #[test]
    fn asymmetric_first_mean() {
        let rec = recurrence_coefficients(w(1.0, 3.0), 1).unwrap();
        assert!((rec.a[0] - 1.0 / 3.0).abs() < 1e-16);
    }

    #[test]
    fn general_formula_agrees_with_first_special_case() {
        // a_m at m = 0 from the general expression (when it is defined)
        for &(al, be) in &[(0.5, 2.0), (3.0, 1.0), (2.5, 7.0)] {
            let s: f64 = al + be;
            let general = 0.5 * (1.0 + s * (al - be) / ((s + 2.0) * s));
            let rec = recurrence_coefficients(w(al, be), 0).unwrap();
            assert!((rec.a[0] - general).abs() < 1e-15);
        }
    }

    #[test]
    fn rejects_invalid_exponents() {
        assert!(JacobiWeight::new(-1.0, 0.0).is_err());
        assert!(JacobiWeight::new(0.0, -2.5).is_err());
        assert!(recurrence_coefficients(JacobiWeight { alpha: -1.0, beta: 0.0 }, 3).is_err());
    }

    #[test]
    fn p0_and_odd_symmetry() {
        let rec = recurrence_coefficients(w(1.0, 1.0), 5).unwrap();
        let p = evaluate_polynomials(&rec, 0.123, 0).unwrap();
        assert!((p[0] - 6f64.sqrt()).abs() < 1e-15);
        let p = evaluate_polynomials(&rec, 0.5, 1).unwrap();
        assert_eq!(p[1], 0.0);
        assert!(matches!(
            evaluate_polynomials(&rec, 0.5, 6),
            Err(KimuraError::Range { requested: 6, available: 5 })
        ));
    }

    #[test]
    fn gram_matrix_is_identity() {
        let rec = recurrence_coefficients(w(1.0, 1.0), 5).unwrap();
        let rule = gauss_quadrature(w(1.0, 1.0), 8).unwrap();
        let vals: Vec<Vec<f64>> = rule
            .nodes
            .iter()
            .map(|&x| evaluate_polynomials(&rec, x, 5).unwrap())
            .collect();
        for i in 0..=5 {
            for j in 0..=5 {
                let g: f64 = vals.iter().zip(&rule.weights).map(|(v, wt)| wt * v[i] * v[j]).sum();
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((g - expect).abs() < 1e-12, "G[{i}][{j}] = {g}");
            }
        }
    }

    #[test]
    fn one_point_rule() {
        let rule = gauss_quadrature(w(1.0, 1.0), 1).unwrap();
        assert!((rule.nodes[0] - 0.5).abs() < 1e-16);
        assert!((rule.weights[0] - 1.0 / 6.0).abs() < 1e-16);
    }

    #[test]
    fn two_point_legendre() {
        let rule = gauss_quadrature(w(0.0, 0.0), 2).unwrap();
        let h = 0.5 / 3f64.sqrt();
        assert!((rule.nodes[0] - (0.5 - h)).abs() < 1e-15);
        assert!((rule.nodes[1] - (0.5 + h)).abs() < 1e-15);
        assert!((rule.weights[0] - 0.5).abs() < 1e-15);
        assert!((rule.weights[1] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn four_point_rule_moment() {
        let rule = gauss_quadrature(w(1.0, 1.0), 4).unwrap();
        // ∫ x^7 x(1-x) dx = 1/9 - 1/10
        let got = rule.integrate(|x| x.powi(7));
        assert!((got - 1.0 / 90.0).abs() < 1e-15, "{got}");
    }

    #[test]
    fn homogeneous_matches_dehomogenized() {
        let rec = recurrence_coefficients(w(1.0, 4.0), 7).unwrap();
        let (x, r) = (0.13, 0.4);
        let mut hom = vec![0.0; 8];
        rec.evaluate_homogeneous(x, r, 7, &mut hom);
        let plain = evaluate_polynomials(&rec, x / r, 7).unwrap();
        for m in 0..=7 {
            let expect = r.powi(m as i32) * plain[m];
            assert!((hom[m] - expect).abs() < 1e-12 * (1.0 + expect.abs()));
        }
    }

    #[test]
    fn beta_function_integer_and_general_paths_agree() {
        for p in 1..8 {
            for q in 1..8 {
                let (pf, qf) = (p as f64, q as f64);
                let lg = (libm::lgamma(pf) + libm::lgamma(qf) - libm::lgamma(pf + qf)).exp();
                assert!((beta_function(pf, qf) - lg).abs() < 1e-14 * lg);
            }
        }
    }
}
