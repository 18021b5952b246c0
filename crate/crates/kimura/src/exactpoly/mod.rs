//! Exact rational polynomial oracle: Kimura operators applied symbolically,
//! simplex moments, orthogonalized monomials, the conjugation and
//! restriction identities, and an exact stratum-by-stratum regular solve.

mod gram;
mod identities;
mod moments;
mod operator;
mod poly;
mod regular;

pub use gram::orthogonalize_monomials;
pub use identities::{kappa, random_poly, sato_check, shimakura_residual, shimakura_residual_with, Extension};
pub use moments::{exact_moment, integrate_over_simplex, MomentTable};
pub use operator::{
    affine_to_projective, apply_kimura, face_weight, kimura_affine, lift_from_face, restrict_to_face, Model,
    WeightVector,
};
pub use poly::{int, rat, Rational, RationalPoly};
pub use regular::{regular_solve_exact, ExactRegularSolution, ExactTerm};
