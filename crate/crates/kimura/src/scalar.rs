//! Scalar abstraction used to evaluate fields either as plain values or as
//! second-order jets (value, gradient, Hessian).
//!
//! The Dirichlet solver needs `L_K` and the Euler field applied to smooth
//! data at projected points. Those derivatives come from evaluating the data
//! on [`Jet`]s, so every field that takes part in a Dirichlet solve is written
//! once, generically over [`Scalar`].

use std::ops::{Add, Div, Mul, Neg, Sub};

/// Largest number of independent variables a [`Jet`] can carry.
pub const MAX_JET_DIM: usize = 4;

pub trait Scalar:
    Copy
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Add<f64, Output = Self>
    + Sub<f64, Output = Self>
    + Mul<f64, Output = Self>
    + Send
    + Sync
{
    fn cst(c: f64) -> Self;
    fn value(&self) -> f64;
    fn exp(self) -> Self;
    fn ln(self) -> Self;
    fn sqrt(self) -> Self;
    fn sin(self) -> Self;
    fn cos(self) -> Self;

    fn powi(self, p: u32) -> Self {
        let mut acc = Self::cst(1.0);
        for _ in 0..p {
            acc = acc * self;
        }
        acc
    }
}

impl Scalar for f64 {
    #[inline]
    fn cst(c: f64) -> Self {
        c
    }
    #[inline]
    fn value(&self) -> f64 {
        *self
    }
    fn exp(self) -> Self {
        f64::exp(self)
    }
    fn ln(self) -> Self {
        f64::ln(self)
    }
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    fn sin(self) -> Self {
        f64::sin(self)
    }
    fn cos(self) -> Self {
        f64::cos(self)
    }
    fn powi(self, p: u32) -> Self {
        f64::powi(self, p as i32)
    }
}

/// Truncated second-order Taylor jet in up to [`MAX_JET_DIM`] variables.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet {
    pub v: f64,
    pub g: [f64; MAX_JET_DIM],
    pub h: [[f64; MAX_JET_DIM]; MAX_JET_DIM],
}

impl Jet {
    pub const fn constant(v: f64) -> Self {
        Jet {
            v,
            g: [0.0; MAX_JET_DIM],
            h: [[0.0; MAX_JET_DIM]; MAX_JET_DIM],
        }
    }

    /// The coordinate function `x_i` evaluated at `v`.
    pub fn variable(i: usize, v: f64) -> Self {
        assert!(i < MAX_JET_DIM, "jet variable index {i} out of range");
        let mut j = Jet::constant(v);
        j.g[i] = 1.0;
        j
    }

    /// Seeds one jet variable per coordinate of `point`.
    pub fn seed(point: &[f64]) -> Vec<Jet> {
        point
            .iter()
            .enumerate()
            .map(|(i, &v)| Jet::variable(i, v))
            .collect()
    }

    /// Applies a scalar function given its value and first two derivatives.
    #[inline]
    fn chain(self, f: f64, df: f64, d2f: f64) -> Jet {
        let mut out = Jet::constant(f);
        for a in 0..MAX_JET_DIM {
            out.g[a] = df * self.g[a];
            for b in 0..MAX_JET_DIM {
                out.h[a][b] = df * self.h[a][b] + d2f * self.g[a] * self.g[b];
            }
        }
        out
    }

    fn recip(self) -> Jet {
        let r = 1.0 / self.v;
        self.chain(r, -r * r, 2.0 * r * r * r)
    }
}

impl Add for Jet {
    type Output = Jet;
    #[inline]
    fn add(mut self, rhs: Jet) -> Jet {
        self.v += rhs.v;
        for a in 0..MAX_JET_DIM {
            self.g[a] += rhs.g[a];
            for b in 0..MAX_JET_DIM {
                self.h[a][b] += rhs.h[a][b];
            }
        }
        self
    }
}

impl Sub for Jet {
    type Output = Jet;
    #[inline]
    fn sub(self, rhs: Jet) -> Jet {
        self + (-rhs)
    }
}

impl Neg for Jet {
    type Output = Jet;
    #[inline]
    fn neg(mut self) -> Jet {
        self.v = -self.v;
        for a in 0..MAX_JET_DIM {
            self.g[a] = -self.g[a];
            for b in 0..MAX_JET_DIM {
                self.h[a][b] = -self.h[a][b];
            }
        }
        self
    }
}

impl Mul for Jet {
    type Output = Jet;
    #[inline]
    fn mul(self, rhs: Jet) -> Jet {
        let mut out = Jet::constant(self.v * rhs.v);
        for a in 0..MAX_JET_DIM {
            out.g[a] = self.v * rhs.g[a] + rhs.v * self.g[a];
            for b in 0..MAX_JET_DIM {
                out.h[a][b] = self.v * rhs.h[a][b]
                    + rhs.v * self.h[a][b]
                    + self.g[a] * rhs.g[b]
                    + rhs.g[a] * self.g[b];
            }
        }
        out
    }
}

impl Div for Jet {
    type Output = Jet;
    #[inline]
    fn div(self, rhs: Jet) -> Jet {
        self * rhs.recip()
    }
}

impl Add<f64> for Jet {
    type Output = Jet;
    #[inline]
    fn add(mut self, rhs: f64) -> Jet {
        self.v += rhs;
        self
    }
}

impl Sub<f64> for Jet {
    type Output = Jet;
    #[inline]
    fn sub(mut self, rhs: f64) -> Jet {
        self.v -= rhs;
        self
    }
}

impl Mul<f64> for Jet {
    type Output = Jet;
    #[inline]
    fn mul(mut self, rhs: f64) -> Jet {
        self.v *= rhs;
        for a in 0..MAX_JET_DIM {
            self.g[a] *= rhs;
            for b in 0..MAX_JET_DIM {
                self.h[a][b] *= rhs;
            }
        }
        self
    }
}

impl Scalar for Jet {
    fn cst(c: f64) -> Self {
        Jet::constant(c)
    }
    fn value(&self) -> f64 {
        self.v
    }
    fn exp(self) -> Self {
        let e = self.v.exp();
        self.chain(e, e, e)
    }
    fn ln(self) -> Self {
        let r = 1.0 / self.v;
        self.chain(self.v.ln(), r, -r * r)
    }
    fn sqrt(self) -> Self {
        let s = self.v.sqrt();
        self.chain(s, 0.5 / s, -0.25 / (s * self.v))
    }
    fn sin(self) -> Self {
        let (s, c) = self.v.sin_cos();
        self.chain(s, c, -s)
    }
    fn cos(self) -> Self {
        let (s, c) = self.v.sin_cos();
        self.chain(c, -s, -c)
    }
}
