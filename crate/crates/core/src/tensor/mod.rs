//! Dense complex linear algebra: matrices, Kronecker products, the flip
//! operator and Lagrange spectral projectors.

mod matrix;
mod spectral;

pub use matrix::{
    c, kron, kron_capped, permutation, re, unit_matrix, ComplexMatrix, DEFAULT_MAX_DIM,
};
pub use spectral::{
    minimal_polynomial_residual, projector_algebra_residuals, recombine, spectral_projectors,
    DISTINCT_EIGENVALUE_GAP,
};

/// Default tolerance for residual comparisons.
pub const DEFAULT_TOL: f64 = 1e-10;
