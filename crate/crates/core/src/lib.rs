//! Spectral-parameter braid matrices built from projector bases.

// `!(x < tol)` rejects NaN along with large values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bases;
pub mod braid;
pub mod diag;
pub mod error;
pub mod family;
pub mod tensor;
pub mod transfer;
pub mod verify;

pub use bases::ProjectorBasis;
pub use braid::{make_braid, BraidOptions, Coefficient, FactorScheme, SpectralBraid};
pub use error::{Error, Result};
pub use family::{Family, FamilySpec, Variant, Vertex8Normalization};
pub use tensor::{ComplexMatrix, DEFAULT_TOL};
