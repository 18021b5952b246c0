use crate::error::{KimuraError, Result};
use crate::simplex::PLANE_TOLERANCE;

/// `η(τ) = τ log τ`, with `η(0) = 0`.
pub fn eta(tau: f64) -> Result<f64> {
    if tau < 0.0 || tau.is_nan() {
        return Err(KimuraError::domain(format!("eta is defined for tau >= 0, got {tau}")));
    }
    Ok(eta_unchecked(tau))
}

#[inline]
pub(crate) fn eta_unchecked(tau: f64) -> f64 {
    if tau <= 0.0 {
        0.0
    } else {
        tau * tau.ln()
    }
}

/// `τ η'(τ) = τ (log τ + 1)`, with value 0 at `τ = 0`.
#[inline]
pub(crate) fn tau_eta_prime(tau: f64) -> f64 {
    if tau <= 0.0 {
        0.0
    } else {
        tau * (tau.ln() + 1.0)
    }
}

/// Expected exit time of the neutral Wright–Fisher diffusion started at `x`:
/// the solution of `L_K u = -1`, `u = 0` on the boundary, given by
/// `Σ_S (-1)^{|S|} η(Σ_{i∈S} x_i)` over nonempty proper subsets `S` of the
/// affine coordinates.
pub fn closed_form_mean_exit(x: &[f64], n: usize) -> Result<f64> {
    if x.len() != n + 1 {
        return Err(KimuraError::DimensionMismatch {
            expected: n + 1,
            got: x.len(),
        });
    }
    if x.iter().any(|&v| v < -PLANE_TOLERANCE) || (x.iter().sum::<f64>() - 1.0).abs() > 1e-9 {
        return Err(KimuraError::domain(format!("{x:?} is not on the closed simplex")));
    }
    let full = (1usize << (n + 1)) - 1;
    let mut total = 0.0;
    for mask in 1..full {
        let s: f64 = (0..=n).filter(|i| mask >> i & 1 == 1).map(|i| x[i].max(0.0)).sum();
        let sign = if mask.count_ones() % 2 == 0 { 1.0 } else { -1.0 };
        total += sign * eta_unchecked(s);
    }
    Ok(total)
}
