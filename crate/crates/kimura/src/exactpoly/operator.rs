use num_traits::Zero;

use crate::error::{KimuraError, Result};
use crate::simplex::FaceSet;

use super::poly::{int, Rational, RationalPoly};

/// Boundary weights `b_1..b_{n+1}` of the drift `Σ (b_j - B x_j) ∂_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightVector {
    pub b: Vec<Rational>,
}

impl WeightVector {
    pub fn zero(n: usize) -> Self {
        WeightVector {
            b: vec![Rational::zero(); n + 1],
        }
    }

    pub fn uniform(n: usize, v: i64) -> Self {
        WeightVector {
            b: vec![int(v); n + 1],
        }
    }

    pub fn from_ints(b: &[i64]) -> Self {
        WeightVector {
            b: b.iter().map(|&v| int(v)).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.b.len() - 1
    }

    /// `B = Σ b_j`.
    pub fn total(&self) -> Rational {
        self.b.iter().fold(Rational::zero(), |a, b| a + b)
    }
}

/// Coordinates in which a polynomial is written.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Model {
    /// All `n + 1` barycentric coordinates as independent symbols.
    Affine,
    /// The first `n` coordinates; `x_{n+1} = 1 - Σ x_i` is implicit.
    Projective,
}

/// Exact `L_b p = Σ x_i (δ_ij - x_j) ∂_i ∂_j p + Σ_j (b_j - B x_j) ∂_j p`,
/// the sums running over the variables of `p`.
pub fn apply_kimura(p: &RationalPoly, b: &WeightVector, model: Model) -> Result<RationalPoly> {
    let n = b.n();
    let nv = match model {
        Model::Affine => n + 1,
        Model::Projective => n,
    };
    if p.nvars() != nv {
        return Err(KimuraError::DimensionMismatch {
            expected: nv,
            got: p.nvars(),
        });
    }
    let big_b = b.total();
    let mut out = RationalPoly::zero(nv);
    for i in 0..nv {
        let di = p.derivative(i);
        if di.is_zero() {
            continue;
        }
        let mut ei = vec![0u32; nv];
        ei[i] = 1;
        for j in 0..nv {
            let dij = di.derivative(j);
            if dij.is_zero() {
                continue;
            }
            if i == j {
                out = &out + &dij.shift(&ei);
            }
            let mut eij = ei.clone();
            eij[j] += 1;
            out = &out - &dij.shift(&eij);
        }
        out = &out + &di.scale(&b.b[i]);
        out = &out - &di.shift(&ei).scale(&big_b);
    }
    Ok(out)
}

/// `L_K` (all weights zero) in the affine model.
pub fn kimura_affine(p: &RationalPoly) -> RationalPoly {
    apply_kimura(p, &WeightVector::zero(p.nvars() - 1), Model::Affine).expect("dimensions agree by construction")
}

/// Rewrites an affine polynomial in `n + 1` variables on the plane
/// `Σ x = 1` by substituting `x_{n+1} = 1 - Σ_{i≤n} x_i`.
pub fn affine_to_projective(p: &RationalPoly) -> RationalPoly {
    let n = p.nvars() - 1;
    let mut images: Vec<RationalPoly> = (0..n).map(|i| RationalPoly::var(n, i)).collect();
    let mut last = RationalPoly::one(n);
    for i in 0..n {
        last = &last - &RationalPoly::var(n, i);
    }
    images.push(last);
    p.compose(&images).expect("image count matches")
}

/// Restriction of an affine polynomial to the face `K_I`, written in the
/// face chart `y_a = x_{i_a}`, `a = 1..k`.
pub fn restrict_to_face(p: &RationalPoly, face: &FaceSet) -> Result<RationalPoly> {
    if p.nvars() != face.n() + 1 {
        return Err(KimuraError::DimensionMismatch {
            expected: face.n() + 1,
            got: p.nvars(),
        });
    }
    let k = face.dim();
    let idx = face.indices();
    let mut images = vec![RationalPoly::zero(k); face.n() + 1];
    let mut last = RationalPoly::one(k);
    for a in 0..k {
        images[idx[a]] = RationalPoly::var(k, a);
        last = &last - &RationalPoly::var(k, a);
    }
    images[idx[k]] = last;
    p.compose(&images)
}

/// Lifts a polynomial in face-chart variables to the affine variables,
/// `y_a -> x_{i_a}` (constant in all other coordinates).
pub fn lift_from_face(q: &RationalPoly, face: &FaceSet) -> Result<RationalPoly> {
    if q.nvars() != face.dim() {
        return Err(KimuraError::DimensionMismatch {
            expected: face.dim(),
            got: q.nvars(),
        });
    }
    let nv = face.n() + 1;
    let images: Vec<RationalPoly> = face.indices()[..face.dim()]
        .iter()
        .map(|&i| RationalPoly::var(nv, i))
        .collect();
    if images.is_empty() {
        return Ok(RationalPoly::constant(nv, q.coefficient(&[])));
    }
    q.compose(&images)
}

/// `w_I = Π_{i∈I} x_i` in the affine variables.
pub fn face_weight(face: &FaceSet) -> RationalPoly {
    let nv = face.n() + 1;
    let mut e = vec![0u32; nv];
    for &i in face.indices() {
        e[i] = 1;
    }
    RationalPoly::monomial(e, int(1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::poly::rat;

    #[test]
    fn coordinates_are_harmonic() {
        for i in 0..3 {
            assert!(kimura_affine(&RationalPoly::var(3, i)).is_zero());
        }
    }

    #[test]
    fn square_in_one_dimension() {
        let p = RationalPoly::monomial(vec![2], int(1));
        let lp = apply_kimura(&p, &WeightVector::zero(1), Model::Projective).unwrap();
        assert_eq!(lp.coefficient(&[1]), int(2));
        assert_eq!(lp.coefficient(&[2]), int(-2));
        assert_eq!(lp.len(), 2);
    }

    #[test]
    fn weighted_leading_coefficient() {
        for d in 0..8u32 {
            let p = RationalPoly::monomial(vec![d], int(1));
            let lp = apply_kimura(&p, &WeightVector::uniform(1, 2), Model::Projective).unwrap();
            assert_eq!(lp.coefficient(&[d]), int(-((d * d + 3 * d) as i64)));
        }
    }

    #[test]
    fn monomial_action_formula() {
        // L_b x^e = Σ_j e_j (e_j - 1 + b_j) x^{e - 1_j} - d (d - 1 + B) x^e
        let b = WeightVector {
            b: vec![rat(1, 2), int(3), int(0), rat(-1, 3)],
        };
        let e = vec![2u32, 1, 3, 1];
        let p = RationalPoly::monomial(e.clone(), int(1));
        let lp = apply_kimura(&p, &b, Model::Affine).unwrap();
        let d: u32 = e.iter().sum();
        let mut expect = RationalPoly::monomial(e.clone(), -(int(d as i64) * (int(d as i64 - 1) + b.total())));
        for j in 0..4 {
            if e[j] > 0 {
                let mut f = e.clone();
                f[j] -= 1;
                let c = int(e[j] as i64) * (int(e[j] as i64 - 1) + b.b[j].clone());
                expect.add_term(f, c);
            }
        }
        assert_eq!(lp, expect);
    }

    #[test]
    fn dimension_mismatch() {
        let p = RationalPoly::var(2, 0);
        assert!(apply_kimura(&p, &WeightVector::zero(2), Model::Affine).is_err());
        assert!(apply_kimura(&p, &WeightVector::zero(2), Model::Projective).is_ok());
    }

    #[test]
    fn restriction_and_lift() {
        let face = FaceSet::new(3, vec![0, 2, 3]).unwrap();
        // x1 x3 x4 restricted: y1 y2 (1 - y1 - y2)
        let w = face_weight(&face);
        let r = restrict_to_face(&w, &face).unwrap();
        assert_eq!(r.coefficient(&[1, 1]), int(1));
        assert_eq!(r.coefficient(&[2, 1]), int(-1));
        let q = RationalPoly::monomial(vec![1, 2], int(5));
        let lifted = lift_from_face(&q, &face).unwrap();
        assert_eq!(lifted.coefficient(&[1, 0, 2, 0]), int(5));
    }
}
