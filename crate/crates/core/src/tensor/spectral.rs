use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};

/// Minimum separation for two eigenvalues to count as distinct.
pub const DISTINCT_EIGENVALUE_GAP: f64 = 1e-8;

/// Max-norm of `Π_i (R − k_i I)`.
pub fn minimal_polynomial_residual(rhat: &ComplexMatrix, roots: &[Complex64]) -> f64 {
    let id = ComplexMatrix::identity(rhat.dim());
    roots
        .iter()
        .fold(id.clone(), |acc, &k| &acc * &(rhat - &id.scale(k)))
        .max_norm()
}

/// Lagrange-interpolation projectors `P_i = Π_{j≠i} (R − k_j I)/(k_i − k_j)`.
///
/// The eigenvalues must be pairwise distinct and annihilate `rhat`; the residual
/// is compared against `tol` scaled by the size of the polynomial's leading term.
pub fn spectral_projectors(
    rhat: &ComplexMatrix,
    eigenvalues: &[Complex64],
    tol: f64,
) -> Result<Vec<ComplexMatrix>> {
    if eigenvalues.is_empty() {
        return Err(Error::InvalidParameters("no eigenvalues supplied".into()));
    }
    for (i, a) in eigenvalues.iter().enumerate() {
        for b in &eigenvalues[i + 1..] {
            if (a - b).norm() < DISTINCT_EIGENVALUE_GAP {
                return Err(Error::RepeatedEigenvalues(a.to_string(), b.to_string()));
            }
        }
    }
    let scale = rhat.max_norm().max(1.0).powi(eigenvalues.len() as i32);
    let residual = minimal_polynomial_residual(rhat, eigenvalues);
    if residual > tol * scale {
        return Err(Error::MinimalPolynomial { residual, tol });
    }
    let id = ComplexMatrix::identity(rhat.dim());
    Ok(eigenvalues
        .iter()
        .enumerate()
        .map(|(i, &ki)| {
            eigenvalues
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .fold(id.clone(), |acc, (_, &kj)| {
                    &acc * &(rhat - &id.scale(kj)).scale((ki - kj).inv())
                })
        })
        .collect())
}

/// Residuals of the projector algebra: `(max ‖P_i² − P_i‖, max_{i≠j} ‖P_i P_j‖, ‖Σ P_i − I‖)`.
pub fn projector_algebra_residuals(projectors: &[ComplexMatrix]) -> (f64, f64, f64) {
    let dim = projectors.first().map(|p| p.dim()).unwrap_or(0);
    let mut idem = 0.0f64;
    let mut orth = 0.0f64;
    let mut sum = ComplexMatrix::zeros(dim);
    for (i, p) in projectors.iter().enumerate() {
        idem = idem.max((&(p * p) - p).max_norm());
        for (j, q) in projectors.iter().enumerate() {
            if i != j {
                orth = orth.max((p * q).max_norm());
            }
        }
        sum = &sum + p;
    }
    let complete = (&sum - &ComplexMatrix::identity(dim)).max_norm();
    (idem, orth, complete)
}

/// `Σ k_i P_i`.
pub fn recombine(projectors: &[ComplexMatrix], coefficients: &[Complex64]) -> ComplexMatrix {
    let dim = projectors.first().map(|p| p.dim()).unwrap_or(0);
    projectors
        .iter()
        .zip(coefficients)
        .fold(ComplexMatrix::zeros(dim), |acc, (p, &k)| &acc + &p.scale(k))
}
