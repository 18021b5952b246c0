use std::collections::HashMap;

use num_traits::{ToPrimitive, Zero};

use crate::error::{KimuraError, Result};
use crate::simplex::{face_eigenvalue, FaceSet, MultiIndex};

use super::gram::orthogonalize_monomials;
use super::moments::{integrate_over_simplex, MomentTable};
use super::operator::{affine_to_projective, face_weight, kimura_affine, lift_from_face, restrict_to_face};
use super::poly::{int, Rational, RationalPoly};

/// One face term `c w_I q̂_m` of an exact regular solution, where `q_m` is
/// the monic orthogonal polynomial of the face.
#[derive(Debug, Clone)]
pub struct ExactTerm {
    pub face: FaceSet,
    pub m: MultiIndex,
    /// Coefficient of `w_I q̂_m` in `u`.
    pub coefficient: Rational,
    /// `⟨q_m, q_m⟩` under the face weight `Π y_i (1 - Σ y)`.
    pub norm_sq: Rational,
}

impl ExactTerm {
    /// The coefficient with respect to the normalized basis member
    /// `ψ_m = q_m / ‖q_m‖`.
    pub fn normalized_coefficient(&self) -> f64 {
        self.coefficient.to_f64().unwrap_or(f64::NAN) * self.norm_sq.to_f64().unwrap_or(f64::NAN).sqrt()
    }
}

#[derive(Debug, Clone)]
pub struct ExactRegularSolution {
    /// Solution in the affine variables.
    pub u: RationalPoly,
    pub terms: Vec<ExactTerm>,
    /// `L_K u - f` on the simplex, in projective variables.
    pub residual: RationalPoly,
}

/// Solves `L_K u = f` exactly for an affine polynomial `f` that vanishes at
/// every vertex, one boundary stratum at a time, with `u` vanishing at the
/// vertices.
pub fn regular_solve_exact(f: &RationalPoly) -> Result<ExactRegularSolution> {
    let nv = f.nvars();
    if nv < 2 {
        return Err(KimuraError::domain("need at least two affine variables"));
    }
    let n = nv - 1;
    for j in 0..nv {
        let mut e = vec![Rational::zero(); nv];
        e[j] = int(1);
        let v = f.eval(&e);
        if !v.is_zero() {
            return Err(KimuraError::contract(format!(
                "right-hand side takes the value {v} at vertex {}; a regular solution needs it to vanish there",
                j + 1
            )));
        }
    }

    let deg = f.degree() as usize;
    let mut bases: HashMap<usize, Vec<(MultiIndex, RationalPoly, Rational)>> = HashMap::new();
    let mut u = RationalPoly::zero(nv);
    let mut terms = Vec::new();
    for k in 1..=n {
        if deg < k + 1 {
            break;
        }
        let dmax = deg - (k + 1);
        let basis = bases.entry(k).or_insert_with(|| {
            let mut table = MomentTable::new(k, &vec![1; k + 1]).expect("lengths agree");
            orthogonalize_monomials(k, &vec![1; k + 1], dmax)
                .expect("lengths agree")
                .into_iter()
                .map(|(m, q)| {
                    let norm = table.inner(&q, &q);
                    (m, q, norm)
                })
                .collect()
        });
        let residual = f - &kimura_affine(&u);
        for face in FaceSet::all_of_dim(n, k) {
            let r = restrict_to_face(&residual, &face)?;
            if r.is_zero() {
                continue;
            }
            let w = face_weight(&face);
            for (m, q, norm) in basis.iter() {
                let c = integrate_over_simplex(&(&r * q)) / norm;
                if c.is_zero() {
                    continue;
                }
                let lambda = face_eigenvalue(k, m.degree());
                let coefficient = c / int(lambda as i64);
                let term = &w * &lift_from_face(q, &face)?;
                u = &u + &term.scale(&coefficient);
                terms.push(ExactTerm {
                    face: face.clone(),
                    m: m.clone(),
                    coefficient,
                    norm_sq: norm.clone(),
                });
            }
        }
    }
    let residual = affine_to_projective(&(&kimura_affine(&u) - f));
    Ok(ExactRegularSolution { u, terms, residual })
}
