//! Implicit-shift QL iteration for symmetric tridiagonal matrices, tracking
//! only the first component of each eigenvector.

use crate::error::{KimuraError, Result};

/// Relative off-diagonal size below which a subdiagonal entry is deflated.
pub const DEFLATION_TOL: f64 = f64::EPSILON;
/// Maximum QL sweeps spent on a single eigenvalue.
pub const MAX_SWEEPS: usize = 50;

/// Eigenvalues of the symmetric tridiagonal matrix with the given diagonal and
/// off-diagonal, together with the first component of each normalized
/// eigenvector. Output is in the order the iteration deflates; callers sort.
pub fn eigen_first_components(diag: &[f64], offdiag: &[f64]) -> Result<(Vec<f64>, Vec<f64>)> {
    let n = diag.len();
    if n == 0 {
        return Ok((Vec::new(), Vec::new()));
    }
    if offdiag.len() + 1 != n {
        return Err(KimuraError::DimensionMismatch {
            expected: n - 1,
            got: offdiag.len(),
        });
    }
    let mut d = diag.to_vec();
    let mut e = offdiag.to_vec();
    e.push(0.0);
    let mut z = vec![0.0; n];
    z[0] = 1.0;

    for l in 0..n {
        let mut sweeps = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let scale = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= DEFLATION_TOL * scale || e[m] == 0.0 {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            sweeps += 1;
            if sweeps > MAX_SWEEPS {
                return Err(KimuraError::Numeric(format!(
                    "tridiagonal QL did not converge for eigenvalue {l} of {n} after {MAX_SWEEPS} \
                     sweeps (|e[l]| = {:.3e}, d[l] = {:.6e})",
                    e[l].abs(),
                    d[l]
                )));
            }

            // Wilkinson-type shift from the leading 2x2 block.
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut underflow = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;

                let zf = z[i + 1];
                z[i + 1] = s * z[i] + c * zf;
                z[i] = c * z[i] - s * zf;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok((d, z))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_by_two() {
        // [[2, 1], [1, 2]] has eigenvalues 1 and 3, eigenvectors (1,-1)/√2, (1,1)/√2.
        let (mut vals, comps) = eigen_first_components(&[2.0, 2.0], &[1.0]).unwrap();
        for c in &comps {
            assert!((c * c - 0.5).abs() < 1e-15);
        }
        vals.sort_by(f64::total_cmp);
        assert!((vals[0] - 1.0).abs() < 1e-15);
        assert!((vals[1] - 3.0).abs() < 1e-15);
    }

    #[test]
    fn first_components_are_a_unit_vector() {
        let n = 40;
        let diag: Vec<f64> = (0..n).map(|i| (i as f64).sin()).collect();
        let off: Vec<f64> = (1..n).map(|i| 0.5 + 0.1 * (i as f64).cos()).collect();
        let (vals, comps) = eigen_first_components(&diag, &off).unwrap();
        let norm: f64 = comps.iter().map(|c| c * c).sum();
        assert!((norm - 1.0).abs() < 1e-13);
        // trace is preserved
        let trace: f64 = diag.iter().sum();
        assert!((vals.iter().sum::<f64>() - trace).abs() < 1e-12);
    }

    #[test]
    fn decoupled_blocks() {
        let (mut vals, _) = eigen_first_components(&[1.0, 5.0, 3.0], &[0.0, 0.0]).unwrap();
        vals.sort_by(f64::total_cmp);
        assert_eq!(vals, vec![1.0, 3.0, 5.0]);
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(eigen_first_components(&[1.0, 2.0], &[]).is_err());
    }
}
