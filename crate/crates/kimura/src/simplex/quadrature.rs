use crate::error::{KimuraError, Result};
use crate::jacobi1d::{gauss_quadrature, JacobiWeight};

/// Collapsed-coordinate map from the unit k-cube onto the k-simplex.
///
/// Returns the projective coordinates `x_1..x_k` (the last affine coordinate
/// is `Π (1 - X_i)`) and the Jacobian `Π_j (1 - X_j)^{k-j}`.
pub fn cube_to_simplex(cube: &[f64]) -> (Vec<f64>, f64) {
    let k = cube.len();
    let mut x = Vec::with_capacity(k);
    let mut rest = 1.0;
    let mut jac = 1.0;
    for (j, &xj) in cube.iter().enumerate() {
        x.push(rest * xj);
        let one_minus = 1.0 - xj;
        rest *= one_minus;
        jac *= one_minus.powi((k - 1 - j) as i32);
    }
    (x, jac)
}

/// Tensor Gauss rule on the k-simplex for `∫ f(x) Π_{i=1}^{k+1} x_i^{α_i} dx`.
///
/// Position `j` (1-based) of the cube uses the 1-d Jacobi weight with
/// parameters `(α_j, (k - j) + Σ_{i>j} α_i)`, so the Jacobian and the weight
/// factors of later coordinates are absorbed into the 1-d rules.
#[derive(Debug, Clone)]
pub struct SimplexRule {
    k: usize,
    points: Vec<f64>,
    weights: Vec<f64>,
}

impl SimplexRule {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn point(&self, q: usize) -> &[f64] {
        &self.points[q * self.k..(q + 1) * self.k]
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[f64], f64)> + '_ {
        self.points.chunks_exact(self.k).zip(self.weights.iter().copied())
    }

    pub fn integrate(&self, f: impl Fn(&[f64]) -> f64) -> f64 {
        self.iter().map(|(x, w)| w * f(x)).sum()
    }
}

pub fn simplex_quadrature(alphas: &[f64], order: usize) -> Result<SimplexRule> {
    if alphas.len() < 2 {
        return Err(KimuraError::domain("simplex quadrature needs at least two weight exponents"));
    }
    let k = alphas.len() - 1;
    let mut rules = Vec::with_capacity(k);
    for j in 0..k {
        let beta = (k - 1 - j) as f64 + alphas[j + 1..].iter().sum::<f64>();
        rules.push(gauss_quadrature(JacobiWeight::new(alphas[j], beta)?, order)?);
    }

    let total = order.pow(k as u32);
    let mut points = Vec::with_capacity(total * k);
    let mut weights = Vec::with_capacity(total);
    let mut digits = vec![0usize; k];
    let mut cube = vec![0.0; k];
    for _ in 0..total {
        let mut w = 1.0;
        for j in 0..k {
            cube[j] = rules[j].nodes[digits[j]];
            w *= rules[j].weights[digits[j]];
        }
        let (x, _) = cube_to_simplex(&cube);
        points.extend_from_slice(&x);
        weights.push(w);
        // last position varies fastest
        for j in (0..k).rev() {
            digits[j] += 1;
            if digits[j] < order {
                break;
            }
            digits[j] = 0;
        }
    }
    Ok(SimplexRule { k, points, weights })
}
