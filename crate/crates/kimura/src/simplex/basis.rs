use std::ops::Range;

use crate::error::{KimuraError, Result};
use crate::jacobi1d::{recurrence_coefficients, JacobiWeight, OrthonormalRecurrence};
use crate::scalar::Scalar;

use super::multi_index::{binomial, indices_up_to, MultiIndex};

/// Orthonormal polynomial basis `ψ_m`, `|m| ≤ dmax`, on the k-simplex for the
/// weight `Π_{i=1}^{k+1} x_i^{α_i}` (with `x_{k+1} = 1 - Σ x_i`).
///
/// In collapsed coordinates `x = T(X)` each basis member factors as
/// `Π_j Q_{m_j}(X_j) (1 - X_j)^{S_j}` with `S_j = Σ_{i>j} m_i`, where `Q` is
/// orthonormal for the 1-d weight `X^{α_j} (1-X)^{α_{j,m}}`. The recurrence
/// for position `j` only depends on `S_j`, so one recurrence per `(j, S_j)`
/// is stored.
#[derive(Debug, Clone)]
pub struct SimplexBasis {
    k: usize,
    alphas: Vec<f64>,
    dmax: usize,
    recs: Vec<Vec<OrthonormalRecurrence>>,
    indices: Vec<MultiIndex>,
    // flat layout of the per-(j, s) value tables used by `evaluate_all`
    offsets: Vec<Vec<usize>>,
    table_len: usize,
    positions: Vec<Vec<usize>>,
}

pub fn build_basis(k: usize, alphas: &[f64], dmax: usize) -> Result<SimplexBasis> {
    SimplexBasis::new(k, alphas, dmax)
}

impl SimplexBasis {
    pub fn new(k: usize, alphas: &[f64], dmax: usize) -> Result<Self> {
        if k == 0 {
            return Err(KimuraError::domain("simplex basis needs k >= 1"));
        }
        if alphas.len() != k + 1 {
            return Err(KimuraError::DimensionMismatch {
                expected: k + 1,
                got: alphas.len(),
            });
        }
        if let Some(bad) = alphas.iter().find(|a| !(a.is_finite() && **a > -1.0)) {
            return Err(KimuraError::domain(format!("weight exponent {bad} must exceed -1")));
        }

        let mut recs = Vec::with_capacity(k);
        let mut offsets = Vec::with_capacity(k);
        let mut table_len = 0;
        for j in 0..k {
            let smax = if j + 1 == k { 0 } else { dmax };
            let mut per_s = Vec::with_capacity(smax + 1);
            let mut offs = Vec::with_capacity(smax + 1);
            for s in 0..=smax {
                let beta = aux_exponent_from_suffix(alphas, j, s);
                per_s.push(recurrence_coefficients(JacobiWeight::new(alphas[j], beta)?, dmax - s)?);
                offs.push(table_len);
                table_len += dmax - s + 1;
            }
            recs.push(per_s);
            offsets.push(offs);
        }

        let indices = indices_up_to(k, dmax);
        let positions = indices
            .iter()
            .map(|m| {
                let s = m.suffix_sums();
                (0..k).map(|j| offsets[j][s[j]] + m.0[j]).collect()
            })
            .collect();

        Ok(SimplexBasis {
            k,
            alphas: alphas.to_vec(),
            dmax,
            recs,
            indices,
            offsets,
            table_len,
            positions,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn alphas(&self) -> &[f64] {
        &self.alphas
    }

    pub fn dmax(&self) -> usize {
        self.dmax
    }

    /// Multi-indices of the basis, in the canonical order.
    pub fn indices(&self) -> &[MultiIndex] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    /// Position of `m` in [`Self::indices`].
    pub fn position(&self, m: &MultiIndex) -> Option<usize> {
        if m.dim() != self.k || m.degree() > self.dmax {
            return None;
        }
        self.indices.binary_search(m).ok()
    }

    /// Positions of the members of degree exactly `d`.
    pub fn shell(&self, d: usize) -> Range<usize> {
        let start = if d == 0 { 0 } else { binomial(d - 1 + self.k, self.k) };
        start..binomial(d + self.k, self.k)
    }

    /// `α_{j,m}` for the 0-based position `j`.
    pub fn aux_exponent(&self, j: usize, m: &MultiIndex) -> f64 {
        aux_exponent_from_suffix(&self.alphas, j, m.suffix_sums()[j])
    }

    /// The 1-d recurrence used at position `j` when `S_j = s`.
    pub fn recurrence(&self, j: usize, s: usize) -> &OrthonormalRecurrence {
        &self.recs[j][s]
    }

    /// `ψ_m(x)` through the inverse collapsed-coordinate map.
    ///
    /// `X_j = x_j / (1 - x_1 - .. - x_{j-1})`, with `X_j = 0` where the
    /// denominator vanishes, clamped into `[0, 1]`.
    pub fn evaluate(&self, m: &MultiIndex, x: &[f64]) -> Result<f64> {
        if x.len() != self.k {
            return Err(KimuraError::DimensionMismatch {
                expected: self.k,
                got: x.len(),
            });
        }
        if m.dim() != self.k {
            return Err(KimuraError::DimensionMismatch {
                expected: self.k,
                got: m.dim(),
            });
        }
        if m.degree() > self.dmax {
            return Err(KimuraError::Range {
                requested: m.degree(),
                available: self.dmax,
            });
        }
        let s = m.suffix_sums();
        let mut buf = vec![0.0; self.dmax + 1];
        let mut partial = 0.0;
        let mut value = 1.0;
        for j in 0..self.k {
            let denom = 1.0 - partial;
            let xj = if denom > 0.0 { (x[j] / denom).clamp(0.0, 1.0) } else { 0.0 };
            partial += x[j];
            self.recs[j][s[j]].evaluate_into(xj, m.0[j], &mut buf);
            value *= buf[m.0[j]] * (1.0 - xj).powi(s[j] as i32);
        }
        Ok(value)
    }

    /// All basis values at the chart point `y`, in the order of
    /// [`Self::indices`].
    ///
    /// Uses the homogenized recurrences `P_m(y_j, r_j) = r_j^m p_m(y_j/r_j)`
    /// with `r_j = 1 - y_1 - .. - y_{j-1}`; the product of these over `j` is
    /// `ψ_m(y)` as a polynomial, so the evaluation has no division and works
    /// for jets as well as for plain values.
    pub fn evaluate_all<T: Scalar>(&self, y: &[T]) -> Vec<T> {
        let mut out = vec![T::cst(0.0); self.indices.len()];
        self.evaluate_all_into(y, &mut out);
        out
    }

    pub fn evaluate_all_into<T: Scalar>(&self, y: &[T], out: &mut [T]) {
        debug_assert_eq!(y.len(), self.k);
        let mut table = vec![T::cst(0.0); self.table_len];
        let mut r = T::cst(1.0);
        for j in 0..self.k {
            for (s, rec) in self.recs[j].iter().enumerate() {
                let off = self.offsets[j][s];
                let deg = self.dmax - s;
                rec.evaluate_homogeneous(y[j], r, deg, &mut table[off..off + deg + 1]);
            }
            r = r - y[j];
        }
        for (o, pos) in out.iter_mut().zip(&self.positions) {
            let mut v = table[pos[0]];
            for &p in &pos[1..] {
                v = v * table[p];
            }
            *o = v;
        }
    }
}

fn aux_exponent_from_suffix(alphas: &[f64], j: usize, s: usize) -> f64 {
    let k = alphas.len() - 1;
    let tail: f64 = alphas[j + 1..k].iter().map(|a| a + 1.0).sum();
    alphas[k] + tail + 2.0 * s as f64
}

/// `ψ_m(x)` for a projective point `x` of the k-simplex.
pub fn evaluate_basis(basis: &SimplexBasis, m: &MultiIndex, x: &[f64]) -> Result<f64> {
    basis.evaluate(m, x)
}
