//! Data functions on the simplex, written in affine coordinates
//! `x_1..x_{n+1}`.

use crate::error::{KimuraError, Result};
use crate::exactpoly::RationalPoly;
use crate::scalar::{Jet, Scalar};

/// A smooth function on the simplex that can be evaluated both as a value
/// and as a second-order jet.
pub trait Field: Send + Sync {
    fn value(&self, x: &[f64]) -> f64;
    fn jet(&self, x: &[Jet]) -> Jet;
}

/// Fields written once for any [`Scalar`]; they get [`Field`] for free.
pub trait GenericField: Send + Sync {
    fn eval<T: Scalar>(&self, x: &[T]) -> T;
}

impl<G: GenericField> Field for G {
    fn value(&self, x: &[f64]) -> f64 {
        self.eval(x)
    }
    fn jet(&self, x: &[Jet]) -> Jet {
        self.eval(x)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Constant(pub f64);

impl GenericField for Constant {
    fn eval<T: Scalar>(&self, _x: &[T]) -> T {
        T::cst(self.0)
    }
}

/// Polynomial with floating-point coefficients in the affine variables.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    pub terms: Vec<(Vec<u32>, f64)>,
}

impl Polynomial {
    pub fn new(nvars: usize, terms: Vec<(Vec<u32>, f64)>) -> Result<Self> {
        if let Some((e, _)) = terms.iter().find(|(e, _)| e.len() != nvars) {
            return Err(KimuraError::DimensionMismatch {
                expected: nvars,
                got: e.len(),
            });
        }
        Ok(Polynomial { terms })
    }

    pub fn from_exact(p: &RationalPoly) -> Self {
        Polynomial {
            terms: p.to_f64_terms(),
        }
    }

    pub fn degree(&self) -> u32 {
        self.terms.iter().map(|(e, _)| e.iter().sum()).max().unwrap_or(0)
    }
}

impl GenericField for Polynomial {
    fn eval<T: Scalar>(&self, x: &[T]) -> T {
        let mut acc = T::cst(0.0);
        for (e, c) in &self.terms {
            let mut t = T::cst(*c);
            for (xi, &p) in x.iter().zip(e) {
                if p > 0 {
                    t = t * xi.powi(p);
                }
            }
            acc = acc + t;
        }
        acc
    }
}

/// `exp(Σ a_i x_i)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Exponential {
    pub a: Vec<f64>,
}

impl GenericField for Exponential {
    fn eval<T: Scalar>(&self, x: &[T]) -> T {
        let mut s = T::cst(0.0);
        for (xi, &ai) in x.iter().zip(&self.a) {
            s = s + *xi * ai;
        }
        s.exp()
    }
}

/// `scale * (x_i - c)_+^3`: twice continuously differentiable with a jump in
/// the third derivative across `x_i = c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CubicKink {
    pub coordinate: usize,
    pub center: f64,
    pub scale: f64,
}

impl Field for CubicKink {
    fn value(&self, x: &[f64]) -> f64 {
        let t = x[self.coordinate] - self.center;
        if t > 0.0 {
            self.scale * t * t * t
        } else {
            0.0
        }
    }

    fn jet(&self, x: &[Jet]) -> Jet {
        let xi = x[self.coordinate];
        let t = xi.v - self.center;
        if t <= 0.0 {
            return Jet::constant(0.0);
        }
        let s = xi - self.center;
        s * s * s * self.scale
    }
}

/// Adapter giving a plain closure the [`Field`] interface for value-only
/// consumers; its jet carries no derivative information.
pub struct ValueOnly<F>(pub F);

impl<F: Fn(&[f64]) -> f64 + Send + Sync> Field for ValueOnly<F> {
    fn value(&self, x: &[f64]) -> f64 {
        (self.0)(x)
    }
    fn jet(&self, x: &[Jet]) -> Jet {
        let v: Vec<f64> = x.iter().map(|j| j.v).collect();
        Jet::constant((self.0)(&v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_value_and_jet() {
        let p = Polynomial::new(2, vec![(vec![2, 1], 3.0), (vec![0, 0], -1.0)]).unwrap();
        assert_eq!(p.value(&[0.5, 2.0]), 0.5);
        let j = p.jet(&Jet::seed(&[0.5, 2.0]));
        assert_eq!(j.g[0], 6.0);
        assert_eq!(j.h[0][1], 3.0);
        assert!(Polynomial::new(3, vec![(vec![1], 1.0)]).is_err());
    }

    #[test]
    fn kink_is_c2() {
        let k = CubicKink {
            coordinate: 0,
            center: 0.3,
            scale: 2.0,
        };
        assert_eq!(k.value(&[0.2, 0.8]), 0.0);
        let j = k.jet(&Jet::seed(&[0.5, 0.5]));
        assert!((j.v - 2.0 * 0.008).abs() < 1e-15);
        assert!((j.h[0][0] - 12.0 * 0.2).abs() < 1e-14);
    }
}
