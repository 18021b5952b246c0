use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{KimuraError, Result};
use crate::simplex::FaceSet;

use super::operator::{apply_kimura, kimura_affine, lift_from_face, restrict_to_face, Model, WeightVector};
use super::poly::{int, Rational, RationalPoly};

/// Exponent `1 - b_i` of `w_I` as a nonnegative integer, if it is one.
fn weight_exponent(b: &Rational) -> Option<u32> {
    let e = Rational::one() - b;
    if e.is_integer() && !e.is_negative() {
        e.to_integer().to_u32()
    } else {
        None
    }
}

/// `κ_I = (Σ_{i∈I} (1 - b_i)) (k + Σ_{j∉I} b_j)`.
pub fn kappa(face: &FaceSet, b: &WeightVector) -> Rational {
    let k = face.dim() as i64;
    let mut s_in = Rational::zero();
    let mut s_out = int(k);
    for i in 0..=face.n() {
        if face.contains(i) {
            s_in += Rational::one() - &b.b[i];
        } else {
            s_out += &b.b[i];
        }
    }
    s_in * s_out
}

/// `L_b (w_I ψ) - w_I (L_{b'} - κ_I) ψ` in the affine model, with
/// `w_I = Π_{i∈I} x_i^{1-b_i}` and `b'_i = 2 - b_i` on `I`.
pub fn shimakura_residual(psi: &RationalPoly, face: &FaceSet, b: &WeightVector) -> Result<RationalPoly> {
    shimakura_residual_with(psi, face, b, |p, w| apply_kimura(p, w, Model::Affine))
}

/// [`shimakura_residual`] with the operator `p, b ↦ L_b p` supplied by the
/// caller. Used to check that the suite detects a wrong operator.
pub fn shimakura_residual_with<Op>(psi: &RationalPoly, face: &FaceSet, b: &WeightVector, op: Op) -> Result<RationalPoly>
where
    Op: Fn(&RationalPoly, &WeightVector) -> Result<RationalPoly>,
{
    let n = face.n();
    if b.n() != n {
        return Err(KimuraError::DimensionMismatch {
            expected: n + 1,
            got: b.b.len(),
        });
    }
    if psi.nvars() != n + 1 {
        return Err(KimuraError::DimensionMismatch {
            expected: n + 1,
            got: psi.nvars(),
        });
    }
    let mut e = vec![0u32; n + 1];
    let mut b_prime = b.clone();
    for &i in face.indices() {
        e[i] = weight_exponent(&b.b[i]).ok_or_else(|| {
            KimuraError::domain(format!(
                "w_I is not a polynomial: 1 - b_{} = {} is not a nonnegative integer",
                i + 1,
                Rational::one() - &b.b[i]
            ))
        })?;
        b_prime.b[i] = int(2) - &b.b[i];
    }
    let w = RationalPoly::monomial(e, Rational::one());
    let lhs = op(&(&w * psi), b)?;
    let inner = &op(psi, &b_prime)? - &psi.scale(&kappa(face, b));
    Ok(&lhs - &(&w * &inner))
}

/// How a face polynomial is extended to the ambient affine variables.
#[derive(Debug, Clone)]
pub enum Extension {
    /// Constant in the coordinates off the face.
    Constant,
    /// Constant extension plus `(Σ_{j∉I} x_j) q`.
    VanishingOnFace(RationalPoly),
    /// Constant extension plus `(Σ_i x_i - 1) q`.
    VanishingOnSimplex(RationalPoly),
}

/// Residual of the restriction property: `(L_K p̂)|_{K_I} - L_{K,I} p` for a
/// polynomial `p` in the face chart variables and an extension `p̂`.
pub fn sato_check(p: &RationalPoly, face: &FaceSet, extension: &Extension) -> Result<RationalPoly> {
    let nv = face.n() + 1;
    let k = face.dim();
    if p.nvars() != k {
        return Err(KimuraError::DimensionMismatch {
            expected: k,
            got: p.nvars(),
        });
    }
    let mut ext = lift_from_face(p, face)?;
    match extension {
        Extension::Constant => {}
        Extension::VanishingOnFace(q) | Extension::VanishingOnSimplex(q) => {
            if q.nvars() != nv {
                return Err(KimuraError::DimensionMismatch {
                    expected: nv,
                    got: q.nvars(),
                });
            }
            let mut factor = RationalPoly::zero(nv);
            match extension {
                Extension::VanishingOnFace(_) => {
                    for j in face.complement() {
                        factor = &factor + &RationalPoly::var(nv, j);
                    }
                }
                _ => {
                    for j in 0..nv {
                        factor = &factor + &RationalPoly::var(nv, j);
                    }
                    factor = &factor - &RationalPoly::one(nv);
                }
            }
            ext = &ext + &(&factor * q);
        }
    }
    let ambient = restrict_to_face(&kimura_affine(&ext), face)?;
    let intrinsic = apply_kimura(p, &WeightVector::zero(k), Model::Projective)?;
    Ok(&ambient - &intrinsic)
}

/// Random polynomial in `nvars` variables of total degree at most `deg`
/// with integer coefficients in `[-9, 9]`, about half the monomials present.
pub fn random_poly(rng: &mut impl Rng, nvars: usize, deg: u32) -> RationalPoly {
    let mut p = RationalPoly::zero(nvars);
    let mut e = vec![0u32; nvars];
    fill_random(rng, &mut p, &mut e, 0, deg);
    p
}

fn fill_random(rng: &mut impl Rng, p: &mut RationalPoly, e: &mut Vec<u32>, pos: usize, left: u32) {
    if pos == e.len() {
        if rng.gen_bool(0.5) {
            p.add_term(e.clone(), int(rng.gen_range(-9..=9)));
        }
        return;
    }
    for v in 0..=left {
        e[pos] = v;
        fill_random(rng, p, e, pos + 1, left - v);
    }
    e[pos] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn shimakura_examples() {
        let one = RationalPoly::one(2);
        let face = FaceSet::full(1);
        let b = WeightVector::zero(1);
        assert!(shimakura_residual(&one, &face, &b).unwrap().is_zero());
        assert_eq!(kappa(&face, &b), int(2));
        let w = RationalPoly::monomial(vec![1, 1], int(1));
        assert_eq!(kimura_affine(&w), w.scale(&int(-2)));

        let n = 3;
        let psi = RationalPoly::var(n + 1, 0);
        assert!(shimakura_residual(&psi, &FaceSet::full(n), &WeightVector::zero(n)).unwrap().is_zero());
    }

    #[test]
    fn shimakura_with_integer_weights() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let face = FaceSet::new(3, vec![0, 2]).unwrap();
        // b = 1 on I (exponent 0) and b = -1 (exponent 2) are both polynomial
        let b = WeightVector::from_ints(&[-1, 3, 1, 2]);
        let psi = random_poly(&mut rng, 4, 3);
        assert!(shimakura_residual(&psi, &face, &b).unwrap().is_zero());
        let bad = WeightVector {
            b: vec![Rational::new(1.into(), 2.into()), int(0), int(0), int(0)],
        };
        assert!(shimakura_residual(&psi, &face, &bad).is_err());
    }

    #[test]
    fn sato_examples() {
        let face = FaceSet::new(3, vec![0, 1, 3]).unwrap();
        let c = RationalPoly::constant(2, int(7));
        assert!(sato_check(&c, &face, &Extension::Constant).unwrap().is_zero());
        let p = RationalPoly::monomial(vec![1, 1], int(1));
        assert!(sato_check(&p, &face, &Extension::Constant).unwrap().is_zero());
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let q = random_poly(&mut rng, 4, 2);
        let p = random_poly(&mut rng, 2, 4);
        assert!(sato_check(&p, &face, &Extension::VanishingOnFace(q.clone())).unwrap().is_zero());
        assert!(sato_check(&p, &face, &Extension::VanishingOnSimplex(q)).unwrap().is_zero());
    }
}
