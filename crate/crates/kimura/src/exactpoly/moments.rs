use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{KimuraError, Result};

use super::poly::{Rational, RationalPoly};

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// `∫_{Σ_k} Π x_i^{a_i} dx = Π a_i! / (Σ a_i + k)!` over the projective
/// k-simplex. `a` lists exponents of the `k + 1` barycentric coordinates, or
/// of the first `k` (the last exponent then being 0).
pub fn exact_moment(a: &[u32], k: usize) -> Result<Rational> {
    if a.len() != k && a.len() != k + 1 {
        return Err(KimuraError::DimensionMismatch {
            expected: k + 1,
            got: a.len(),
        });
    }
    let num = a.iter().fold(BigInt::one(), |acc, &ai| acc * factorial(ai));
    let total: u32 = a.iter().sum::<u32>() + k as u32;
    Ok(Rational::new(num, factorial(total)))
}

/// Exact weighted inner products on the k-simplex for the weight
/// `Π_{i=1}^{k+1} x_i^{α_i}` (integer exponents), acting on polynomials in
/// the projective variables `x_1..x_k`. Moments are memoized.
#[derive(Debug, Clone)]
pub struct MomentTable {
    k: usize,
    alphas: Vec<u32>,
    cache: HashMap<Vec<u32>, Rational>,
}

impl MomentTable {
    pub fn new(k: usize, alphas: &[u32]) -> Result<Self> {
        if alphas.len() != k + 1 {
            return Err(KimuraError::DimensionMismatch {
                expected: k + 1,
                got: alphas.len(),
            });
        }
        Ok(MomentTable {
            k,
            alphas: alphas.to_vec(),
            cache: HashMap::new(),
        })
    }

    /// `∫ x^e Π x_i^{α_i} dx` for a projective exponent vector `e`.
    pub fn moment(&mut self, e: &[u32]) -> Rational {
        if let Some(v) = self.cache.get(e) {
            return v.clone();
        }
        let mut full: Vec<u32> = e.iter().zip(&self.alphas).map(|(a, b)| a + b).collect();
        full.push(self.alphas[self.k]);
        let v = exact_moment(&full, self.k).expect("length checked");
        self.cache.insert(e.to_vec(), v.clone());
        v
    }

    /// Weighted integral of a polynomial in the projective variables.
    pub fn integrate(&mut self, p: &RationalPoly) -> Rational {
        let mut acc = Rational::zero();
        for (e, c) in p.terms() {
            acc += c * self.moment(e);
        }
        acc
    }

    /// `⟨p, q⟩` without forming the product polynomial.
    pub fn inner(&mut self, p: &RationalPoly, q: &RationalPoly) -> Rational {
        let mut acc = Rational::zero();
        let mut e = vec![0u32; self.k];
        for (ep, cp) in p.terms() {
            for (eq, cq) in q.terms() {
                for i in 0..self.k {
                    e[i] = ep[i] + eq[i];
                }
                acc += cp * cq * self.moment(&e);
            }
        }
        acc
    }
}

/// Unweighted integral over the projective k-simplex.
pub fn integrate_over_simplex(p: &RationalPoly) -> Rational {
    let k = p.nvars();
    let mut acc = Rational::zero();
    for (e, c) in p.terms() {
        acc += c * exact_moment(e, k).expect("length matches");
    }
    acc
}
