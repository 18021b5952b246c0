use num_traits::Zero;

use crate::error::Result;
use crate::simplex::{indices_up_to, MultiIndex};

use super::moments::MomentTable;
use super::poly::{Rational, RationalPoly};

/// Gram–Schmidt on the monomials `x^m`, `|m| ≤ dmax`, in multi-index order,
/// under the exact weighted inner product with integer exponents `alphas`.
///
/// Each returned `q_m` is `x^m` plus a combination of earlier monomials, so
/// its coefficient on `x^m` is 1.
pub fn orthogonalize_monomials(k: usize, alphas: &[u32], dmax: usize) -> Result<Vec<(MultiIndex, RationalPoly)>> {
    let mut table = MomentTable::new(k, alphas)?;
    let indices = indices_up_to(k, dmax);
    let mut basis: Vec<(MultiIndex, RationalPoly, Rational)> = Vec::with_capacity(indices.len());
    for m in indices {
        let e: Vec<u32> = m.0.iter().map(|&v| v as u32).collect();
        let mono = RationalPoly::monomial(e, Rational::from_integer(1.into()));
        let mut q = mono.clone();
        for (_, prev, norm) in &basis {
            let proj = table.inner(&mono, prev);
            if !proj.is_zero() {
                q = &q - &prev.scale(&(proj / norm));
            }
        }
        // q - x^m is orthogonal to q, so ⟨q, q⟩ = ⟨x^m, q⟩
        let norm = table.inner(&mono, &q);
        basis.push((m, q, norm));
    }
    Ok(basis.into_iter().map(|(m, q, _)| (m, q)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::poly::int;

    #[test]
    fn one_dimensional_degree_one() {
        let b = orthogonalize_monomials(1, &[1, 1], 1).unwrap();
        // x - 1/2
        assert_eq!(b[1].1.coefficient(&[1]), int(1));
        assert_eq!(b[1].1.coefficient(&[0]), Rational::new((-1).into(), 2.into()));
    }

    #[test]
    fn tetrahedron_first_member() {
        let b = orthogonalize_monomials(3, &[1, 1, 1, 1], 1).unwrap();
        let (m, q) = &b[1];
        assert_eq!(m.0, vec![1, 0, 0]);
        // proportional to 4x - 1
        assert_eq!(q.len(), 2);
        assert_eq!(q.coefficient(&[0, 0, 0]) * int(4), -q.coefficient(&[1, 0, 0]));
    }

    #[test]
    fn pairwise_orthogonal_exactly() {
        let b = orthogonalize_monomials(2, &[1, 1, 1], 3).unwrap();
        let mut t = MomentTable::new(2, &[1, 1, 1]).unwrap();
        for i in 0..b.len() {
            for j in 0..i {
                assert!(t.inner(&b[i].1, &b[j].1).is_zero());
            }
        }
    }
}
