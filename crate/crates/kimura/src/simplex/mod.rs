//! Orthonormal eigenbasis of the Kimura operator on a k-simplex, tensor
//! quadrature in collapsed coordinates, face bookkeeping and spectral
//! expansions over the boundary strata of the n-simplex.

mod basis;
mod expansion;
mod face;
mod multi_index;
mod project;
mod quadrature;

pub use basis::{build_basis, evaluate_basis, SimplexBasis};
pub use expansion::{Coefficient, ExpansionDoc, ExpansionEvaluator, SpectralExpansion, TermDoc, PLANE_TOLERANCE};
pub use face::FaceSet;
pub use multi_index::{binomial, indices_of_degree, indices_up_to, MultiIndex};
pub use project::{
    expand_on_face, expand_with_rule, lebesgue_rule, reproducing_kernel, tail_fraction, FaceExpansion,
    TAIL_TOLERANCE,
};
pub use quadrature::{cube_to_simplex, simplex_quadrature, SimplexRule};

/// Eigenvalue of `w_I ψ_{I,m}` under `L_K` for a face of dimension `k` and
/// `|m| = d`: `-d² - (2k+1)d - k(k+1)`. Vertices (`k = 0`, `d = 0`) give 0.
pub fn face_eigenvalue(k: usize, d: usize) -> f64 {
    let (k, d) = (k as f64, d as f64);
    -d * d - (2.0 * k + 1.0) * d - k * (k + 1.0)
}

/// Eigenvalue of a degree-`d` orthogonal polynomial under the weighted
/// operator `L_b` with `B = Σ b_j`: `-(d² + (B-1)d)`.
pub fn polynomial_eigenvalue(d: usize, total_weight: f64) -> f64 {
    let d = d as f64;
    -(d * d + (total_weight - 1.0) * d)
}

/// Number of basis members of degree exactly `d` on a k-simplex.
pub fn eigenspace_multiplicity(k: usize, d: usize) -> usize {
    if k == 0 {
        return usize::from(d == 0);
    }
    binomial(d + k - 1, k - 1)
}
