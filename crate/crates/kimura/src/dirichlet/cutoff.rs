use serde::{Deserialize, Serialize};

use crate::error::{KimuraError, Result};
use crate::scalar::{Jet, Scalar};

/// `s(t) = e^{-1/t} / (e^{-1/t} + e^{-1/(1-t)})` on `(0, 1)`, 0 below and 1
/// above: a C^∞ step.
pub fn smooth_step<T: Scalar>(t: T) -> T {
    let v = t.value();
    if v <= 0.0 {
        return T::cst(0.0);
    }
    if v >= 1.0 {
        return T::cst(1.0);
    }
    let a = (T::cst(-1.0) / t).exp();
    let b = (T::cst(-1.0) / (T::cst(1.0) - t)).exp();
    a / (a + b)
}

/// Value, first and second derivative of a scalar function through a jet.
pub(crate) fn derivatives(f: impl Fn(Jet) -> Jet, t: f64) -> (f64, f64, f64) {
    let j = f(Jet::variable(0, t));
    (j.v, j.g[0], j.h[0][0])
}

/// Radial cutoff `ψ(τ)`: 1 for `τ ≤ 1 - ε`, 0 for `τ ≥ 1 - ε/2`, smooth
/// and non-increasing in between.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CutoffSpec {
    pub epsilon: f64,
}

impl CutoffSpec {
    pub fn new(epsilon: f64) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon < 0.5) {
            return Err(KimuraError::domain(format!("cutoff width {epsilon} must lie in (0, 1/2)")));
        }
        Ok(CutoffSpec { epsilon })
    }

    pub fn eval<T: Scalar>(&self, tau: T) -> T {
        let e = self.epsilon;
        T::cst(1.0) - smooth_step((tau - (1.0 - e)) * (2.0 / e))
    }

    /// `(ψ, ψ', ψ'')` at `τ`.
    pub fn derivatives(&self, tau: f64) -> (f64, f64, f64) {
        derivatives(|t| self.eval(t), tau)
    }

    /// Where the cutoff is identically zero.
    pub fn vanishes_at(&self, tau: f64) -> bool {
        tau >= 1.0 - 0.5 * self.epsilon
    }
}

/// `φ_j(x) = w(x_j) / Σ_k w(x_k)` with `w` a smooth step from 0 on
/// `[0, a]` to 1 on `[2a, 1]`, `a = 1/(2(n+1))`.
///
/// The denominator is at least 1 because some coordinate is `≥ 1/(n+1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PartitionOfUnity {
    n: usize,
    a: f64,
}

impl PartitionOfUnity {
    pub fn new(n: usize) -> Self {
        PartitionOfUnity {
            n,
            a: 0.5 / (n + 1) as f64,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `φ_j` vanishes where `x_j ≤ a`.
    pub fn inner_radius(&self) -> f64 {
        self.a
    }

    fn bump<T: Scalar>(&self, t: T) -> T {
        smooth_step((t - self.a) * (1.0 / self.a))
    }

    pub fn eval<T: Scalar>(&self, j: usize, x: &[T]) -> T {
        let mut total = T::cst(0.0);
        let mut mine = T::cst(0.0);
        for (k, &xk) in x.iter().enumerate() {
            let w = self.bump(xk);
            if k == j {
                mine = w;
            }
            total = total + w;
        }
        mine / total
    }

    pub fn all(&self, x: &[f64]) -> Vec<f64> {
        (0..=self.n).map(|j| self.eval(j, x)).collect()
    }
}

/// Evaluators `φ_1..φ_{n+1}` of the partition of unity.
pub fn partition_of_unity(n: usize) -> PartitionOfUnity {
    PartitionOfUnity::new(n)
}
