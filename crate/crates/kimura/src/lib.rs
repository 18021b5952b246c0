//! Spectral eigenbasis and solvers for the Kimura diffusion operator
//! `L_K = Σ x_i (δ_ij - x_j) ∂_i ∂_j` on the n-simplex.

pub mod dirichlet;
pub mod driver;
pub mod error;
pub mod exactpoly;
pub mod field;
pub mod regular;
pub mod jacobi1d;
pub mod scalar;
pub mod simplex;

pub use error::{KimuraError, Result};
