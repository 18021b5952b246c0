use rayon::prelude::*;

use crate::error::{KimuraError, Result};

use super::basis::SimplexBasis;
use super::quadrature::{simplex_quadrature, SimplexRule};

/// Fraction of coefficient energy in the top degree shell above which an
/// expansion is flagged as under-resolved.
pub const TAIL_TOLERANCE: f64 = 1e-6;

const CHUNK: usize = 64;

/// Coefficients `c_m = ∫ f ψ_m dy` (unweighted) of one face, in basis order.
#[derive(Debug, Clone)]
pub struct FaceExpansion {
    pub coefficients: Vec<f64>,
    /// Energy of the top degree shell divided by the total energy.
    pub tail_fraction: f64,
    pub under_resolved: bool,
}

/// Unweighted tensor rule on the k-simplex.
pub fn lebesgue_rule(k: usize, order: usize) -> Result<SimplexRule> {
    simplex_quadrature(&vec![0.0; k + 1], order)
}

/// Expands `f`, given on chart coordinates of a k-face, in `basis`.
///
/// The integrals are taken against Lebesgue measure on the face. When `f`
/// vanishes on the boundary of the face, `f = w Σ c_m ψ_m` with `w` the
/// product of the face's barycentric coordinates.
pub fn expand_on_face<F>(f: F, basis: &SimplexBasis, order: usize) -> Result<FaceExpansion>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    let rule = lebesgue_rule(basis.k(), order)?;
    expand_with_rule(f, basis, &rule)
}

pub fn expand_with_rule<F>(f: F, basis: &SimplexBasis, rule: &SimplexRule) -> Result<FaceExpansion>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    if rule.k() != basis.k() {
        return Err(KimuraError::DimensionMismatch {
            expected: basis.k(),
            got: rule.k(),
        });
    }
    let len = basis.len();
    let k = basis.k();
    let partial: Vec<Vec<f64>> = (0..rule.len())
        .collect::<Vec<_>>()
        .par_chunks(CHUNK)
        .map(|chunk| {
            let mut acc = vec![0.0; len];
            let mut vals = vec![0.0; len];
            for &q in chunk {
                let y = rule.point(q);
                let fw = f(y) * rule.weights()[q];
                if fw == 0.0 {
                    continue;
                }
                basis.evaluate_all_into(&y[..k], &mut vals);
                for (a, v) in acc.iter_mut().zip(&vals) {
                    *a += fw * v;
                }
            }
            acc
        })
        .collect();

    let mut coefficients = vec![0.0; len];
    for p in &partial {
        for (c, v) in coefficients.iter_mut().zip(p) {
            *c += v;
        }
    }
    if coefficients.iter().any(|c| !c.is_finite()) {
        return Err(KimuraError::Numeric(
            "non-finite expansion coefficient; the integrand is not finite at some quadrature node".into(),
        ));
    }
    let tail_fraction = tail_fraction(basis, &coefficients);
    Ok(FaceExpansion {
        coefficients,
        tail_fraction,
        under_resolved: tail_fraction > TAIL_TOLERANCE,
    })
}

/// Energy of the top degree shell relative to the total energy.
pub fn tail_fraction(basis: &SimplexBasis, coefficients: &[f64]) -> f64 {
    let total: f64 = coefficients.iter().map(|c| c * c).sum();
    if total == 0.0 || basis.dmax() == 0 {
        return 0.0;
    }
    let top: f64 = coefficients[basis.shell(basis.dmax())].iter().map(|c| c * c).sum();
    top / total
}

/// Degree-`d` reproducing kernel `G_d(x, y) = Σ_{|m|=d} ψ_m(x) ψ_m(y)`.
pub fn reproducing_kernel(basis: &SimplexBasis, d: usize, x: &[f64], y: &[f64]) -> Result<f64> {
    if d > basis.dmax() {
        return Err(KimuraError::Range {
            requested: d,
            available: basis.dmax(),
        });
    }
    for p in [x, y] {
        if p.len() != basis.k() {
            return Err(KimuraError::DimensionMismatch {
                expected: basis.k(),
                got: p.len(),
            });
        }
    }
    let px = basis.evaluate_all(x);
    let py = basis.evaluate_all(y);
    Ok(basis.shell(d).map(|i| px[i] * py[i]).sum())
}
