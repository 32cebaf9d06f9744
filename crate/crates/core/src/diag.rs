//! Diagonalizers `M` with `M P_i M⁻¹` a fixed 0/1 diagonal: the explicit
//! catalog, a generic solver, orthogonal-row inversion and θ-factored forms.

use num_complex::Complex64;

use crate::bases::{self, ProjectorBasis};
use crate::braid::{FactorScheme, SpectralBraid, CONDITION_LIMIT};
use crate::error::{Error, Result};
use crate::family::{Family, FamilySpec};
use crate::tensor::{c, permutation, re, ComplexMatrix};

/// Bilinear form under which the rows of `M` are mutually orthogonal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowForm {
    /// `Σ_k M_ik M_jk`.
    Transpose,
    /// `Σ_k M_ik conj(M_jk)`; used when `M` is unitary up to scale.
    Conjugate,
}

/// A θ-independent matrix diagonalizing every projector of a basis.
#[derive(Debug, Clone)]
pub struct Diagonalizer {
    m: ComplexMatrix,
    m_inv: ComplexMatrix,
    diag_labels: Vec<String>,
    row_form: RowForm,
    row_norms: Vec<f64>,
}

fn row_product(a: &[Complex64], b: &[Complex64], form: RowForm) -> Complex64 {
    match form {
        RowForm::Transpose => a.iter().zip(b).map(|(x, y)| x * y).sum(),
        RowForm::Conjugate => a.iter().zip(b).map(|(x, y)| x * y.conj()).sum(),
    }
}

/// `M⁻¹` from mutually orthogonal rows: `Mᵀ diag(1/Σ_k M_jk²)` (or the conjugate analogue).
pub fn invert_orthogonal_rows_with(
    m: &ComplexMatrix,
    form: RowForm,
    tol: f64,
) -> Result<ComplexMatrix> {
    let n = m.dim();
    let scale = m.max_norm().powi(2).max(f64::MIN_POSITIVE);
    let mut norms = Vec::with_capacity(n);
    for j in 0..n {
        let s = row_product(m.row(j), m.row(j), form);
        if s.norm() <= 1e-14 * scale {
            return Err(Error::VanishingRowNorm { row: j + 1 });
        }
        norms.push(s);
    }
    let base = match form {
        RowForm::Transpose => m.transpose(),
        RowForm::Conjugate => m.conj_transpose(),
    };
    let inv = ComplexMatrix::from_fn(n, |i, j| base.get(i, j) / norms[j]);
    let residual = m.matmul(&inv).distance(&ComplexMatrix::identity(n));
    if !(residual <= tol) {
        return Err(Error::Mismatch(format!(
            "rows are not mutually orthogonal: M·M⁻¹ deviates from I by {residual:.3e}"
        )));
    }
    Ok(inv)
}

/// Transpose-form [`invert_orthogonal_rows_with`] at the default tolerance.
pub fn invert_orthogonal_rows(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    invert_orthogonal_rows_with(m, RowForm::Transpose, 1e-12)
}

impl Diagonalizer {
    /// Wraps `m`, inverting it through its rows when they are orthogonal and
    /// by elimination otherwise, and labels each row with the projector whose
    /// image it carries.
    pub fn new(
        m: ComplexMatrix,
        basis: &ProjectorBasis,
        row_form: RowForm,
        tol: f64,
    ) -> Result<Self> {
        if m.dim() != basis.dim() {
            return Err(Error::DimensionMismatch {
                expected: basis.dim(),
                found: m.dim(),
            });
        }
        let m_inv = match invert_orthogonal_rows_with(&m, row_form, 1e-10) {
            Ok(inv) => inv,
            Err(_) => {
                let (inv, cond) = m.inverse_with_condition()?;
                if !(cond < CONDITION_LIMIT) {
                    return Err(Error::Singular { condition: cond });
                }
                inv
            }
        };
        let n = m.dim();
        let mut diag_labels: Vec<Option<String>> = vec![None; n];
        for (p, label) in basis.projectors().iter().zip(basis.labels()) {
            let d = m.matmul(p).matmul(&m_inv);
            let off = d.off_diagonal_max();
            if !(off < tol) {
                return Err(Error::NotDiagonal { residual: off, tol });
            }
            for (r, z) in d.diagonal().into_iter().enumerate() {
                if (z - 1.0).norm() < tol {
                    if diag_labels[r].is_some() {
                        return Err(Error::Mismatch(format!("row {} claimed twice", r + 1)));
                    }
                    diag_labels[r] = Some(label.clone());
                } else if z.norm() >= tol {
                    return Err(Error::Mismatch(format!(
                        "M P M⁻¹ for {label} has diagonal entry {z} at row {}",
                        r + 1
                    )));
                }
            }
        }
        let diag_labels = diag_labels
            .into_iter()
            .enumerate()
            .map(|(r, l)| {
                l.ok_or_else(|| Error::Mismatch(format!("row {} carries no projector", r + 1)))
            })
            .collect::<Result<Vec<_>>>()?;
        let row_norms = (0..n)
            .map(|r| row_product(m.row(r), m.row(r), row_form).norm())
            .collect();
        Ok(Self {
            m,
            m_inv,
            diag_labels,
            row_form,
            row_norms,
        })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.m
    }

    pub fn inverse(&self) -> &ComplexMatrix {
        &self.m_inv
    }

    /// Projector label of each row.
    pub fn diag_labels(&self) -> &[String] {
        &self.diag_labels
    }

    pub fn row_form(&self) -> RowForm {
        self.row_form
    }

    pub fn row_norms(&self) -> &[f64] {
        &self.row_norms
    }

    /// `M X M⁻¹`.
    pub fn conjugate(&self, x: &ComplexMatrix) -> ComplexMatrix {
        self.m.matmul(x).matmul(&self.m_inv)
    }

    /// Largest off-diagonal entry of the row Gram matrix.
    pub fn row_orthogonality_residual(&self) -> f64 {
        let n = self.m.dim();
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..i {
                worst = worst.max(row_product(self.m.row(i), self.m.row(j), self.row_form).norm());
            }
        }
        worst
    }

    /// Index into `basis` of each row's label.
    pub fn row_projector_indices(&self, basis: &ProjectorBasis) -> Result<Vec<usize>> {
        self.diag_labels
            .iter()
            .map(|l| {
                basis
                    .index_of(l)
                    .ok_or_else(|| Error::Mismatch(format!("unknown label {l}")))
            })
            .collect()
    }
}

fn terms(entries: &[(usize, usize, f64)]) -> Vec<(usize, usize, Complex64)> {
    entries.iter().map(|&(i, j, v)| (i, j, re(v))).collect()
}

fn gl_m(n: usize, q: f64) -> Result<ComplexMatrix> {
    let qi = 1.0 / q;
    match n {
        2 => ComplexMatrix::from_unit_terms(
            4,
            &terms(&[
                (1, 2, 1.),
                (1, 3, -qi),
                (2, 2, 1.),
                (2, 3, q),
                (3, 1, 1.),
                (4, 4, 1.),
            ]),
        ),
        3 => ComplexMatrix::from_unit_terms(
            9,
            &terms(&[
                (1, 2, 1.),
                (1, 4, -qi),
                (2, 3, 1.),
                (2, 7, -qi),
                (3, 6, 1.),
                (3, 8, -qi),
                (4, 2, 1.),
                (4, 4, q),
                (5, 3, 1.),
                (5, 7, q),
                (6, 6, 1.),
                (6, 8, q),
                (7, 1, 1.),
                (8, 5, 1.),
                (9, 9, 1.),
            ]),
        ),
        _ => Err(Error::Unsupported(format!(
            "no explicit diagonalizer for GL_q({n})"
        ))),
    }
}

/// Auxiliary constants `(s, t)` of the `SO_q(3)` diagonalizer.
pub fn so3_constants(q: f64) -> (f64, f64) {
    (-q.powf(-0.5) * (1.0 - q), -q.powf(-1.5) * (1.0 + q))
}

fn so3_m(q: f64) -> Result<ComplexMatrix> {
    let (s, t) = so3_constants(q);
    let qi = 1.0 / q;
    ComplexMatrix::from_unit_terms(
        9,
        &terms(&[
            (1, 3, 1.),
            (1, 5, q.sqrt()),
            (1, 7, q),
            (2, 2, 1.),
            (2, 4, -q),
            (3, 6, 1.),
            (3, 8, -q),
            (4, 3, 1.),
            (4, 5, s),
            (4, 7, -1.),
            (5, 1, 1.),
            (6, 2, 1.),
            (6, 4, qi),
            (7, 3, 1.),
            (7, 5, t),
            (7, 7, qi * qi),
            (8, 6, 1.),
            (8, 8, qi),
            (9, 9, 1.),
        ]),
    )
}

fn so4_m(q: f64) -> Result<ComplexMatrix> {
    let qi = 1.0 / q;
    ComplexMatrix::from_unit_terms(
        16,
        &terms(&[
            (1, 4, 1.),
            (1, 7, q),
            (1, 10, q),
            (1, 13, q * q),
            (2, 4, 1.),
            (2, 7, q),
            (2, 10, -qi),
            (2, 13, -1.),
            (3, 2, 1.),
            (3, 5, -q),
            (4, 3, 1.),
            (4, 9, -q),
            (5, 8, 1.),
            (5, 14, -q),
            (6, 12, 1.),
            (6, 15, -q),
            (7, 4, 1.),
            (7, 7, -qi),
            (7, 10, q),
            (7, 13, -1.),
            (8, 1, 1.),
            (9, 2, 1.),
            (9, 5, qi),
            (10, 3, 1.),
            (10, 9, qi),
            (11, 4, 1.),
            (11, 7, -qi),
            (11, 10, -qi),
            (11, 13, qi * qi),
            (12, 8, 1.),
            (12, 14, qi),
            (13, 12, 1.),
            (13, 15, qi),
            (14, 11, 1.),
            (15, 6, 1.),
            (16, 16, 1.),
        ]),
    )
}

fn sp4_m(q: f64) -> Result<ComplexMatrix> {
    let qi = 1.0 / q;
    ComplexMatrix::from_unit_terms(
        16,
        &terms(&[
            (1, 4, 1.),
            (1, 7, q),
            (1, 10, -q.powi(3)),
            (1, 13, -q.powi(4)),
            (2, 4, 1.),
            (2, 7, -qi),
            (2, 10, q),
            (2, 13, -1.),
            (3, 2, 1.),
            (3, 5, -q),
            (4, 3, 1.),
            (4, 9, -q),
            (5, 8, 1.),
            (5, 14, -q),
            (6, 12, 1.),
            (6, 15, -q),
            (7, 4, 1.),
            (7, 7, q),
            (7, 10, qi.powi(3)),
            (7, 13, qi * qi),
            (8, 4, 1.),
            (8, 7, -qi),
            (8, 10, -qi),
            (8, 13, qi * qi),
            (9, 2, q),
            (9, 5, 1.),
            (10, 3, q),
            (10, 9, 1.),
            (11, 8, q),
            (11, 14, 1.),
            (12, 12, q),
            (12, 15, 1.),
            (13, 1, 1.),
            (14, 6, 1.),
            (15, 11, 1.),
            (16, 16, 1.),
        ]),
    )
}

fn s03_m() -> ComplexMatrix {
    let o = re(0.0);
    let a = re(1.0);
    let i = c(0.0, 1.0);
    let s = 2f64.sqrt().recip();
    ComplexMatrix::from_vec(vec![a, o, o, i, o, a, -i, o, o, -i, a, o, i, o, o, a])
        .expect("16 entries")
        .scale(re(s))
}

fn affine_m(q: f64) -> Result<ComplexMatrix> {
    ComplexMatrix::from_real(
        4,
        &[
            1.,
            0.,
            0.,
            0.,
            0.,
            q,
            1.,
            0.,
            0.,
            -1. / q,
            1.,
            0.,
            0.,
            0.,
            0.,
            1.,
        ],
    )
}

/// `M = M⁻¹` of the nested basis on `n` states; for `n = 4` this is the 6/8-vertex diagonalizer.
pub fn nested_m(n: usize) -> Result<ComplexMatrix> {
    if n < 2 {
        return Err(Error::InvalidParameters(format!(
            "nested dimension must be >= 2, got {n}"
        )));
    }
    let l = n / 2;
    let mut t = Vec::new();
    for i in 1..=l {
        let j = n - i + 1;
        t.extend([
            (i, i, re(1.0)),
            (i, j, re(1.0)),
            (j, i, re(1.0)),
            (j, j, re(-1.0)),
        ]);
    }
    if n % 2 == 1 {
        t.push((l + 1, l + 1, re(2f64.sqrt())));
    }
    Ok(ComplexMatrix::from_unit_terms(n, &t)?.scale(re(2f64.sqrt().recip())))
}

/// The matrix `M` exactly as cataloged for `spec`, with its row form.
pub fn explicit_matrix(spec: &FamilySpec) -> Result<(ComplexMatrix, RowForm)> {
    spec.validate()?;
    let q = spec.q;
    let m = match (spec.family, spec.n) {
        (Family::GLq, n) => gl_m(n, q)?,
        (Family::SOq | Family::ExoticSO, 3) => so3_m(q)?,
        (Family::SOq | Family::ExoticSO, 4) => so4_m(q)?,
        (Family::Spq | Family::ExoticSp, 4) => sp4_m(q)?,
        (Family::S03, _) => return Ok((s03_m(), RowForm::Conjugate)),
        (Family::S14, _) => bases::s03_matrix(),
        (Family::AffineSl2, _) => affine_m(q)?,
        (Family::Vertex6 | Family::Vertex8, _) => nested_m(4)?,
        (Family::Nested, n) => nested_m(n)?,
        (f, n) => {
            return Err(Error::Unsupported(format!(
                "no explicit diagonalizer for {f} at N = {n}"
            )))
        }
    };
    Ok((m, RowForm::Transpose))
}

/// Cataloged diagonalizer for `spec`, validated against its projector basis.
pub fn explicit_m(spec: &FamilySpec) -> Result<Diagonalizer> {
    let (m, form) = explicit_matrix(spec)?;
    let basis = bases::basis_for(spec)?;
    Diagonalizer::new(m, &basis, form, 1e-10)
}

/// Build `M` from left eigenspaces: for each label in `order`, `Tr P` rows spanning
/// `{x : x P = x}`, orthogonalized within that eigenspace, first nonzero entry `+1`.
pub fn solve_diagonalizer(
    basis: &ProjectorBasis,
    order: &[&str],
    tol: f64,
) -> Result<Diagonalizer> {
    let mut seen = vec![false; basis.len()];
    for l in order {
        let i = basis
            .index_of(l)
            .ok_or_else(|| Error::InvalidParameters(format!("unknown label {l}")))?;
        if std::mem::replace(&mut seen[i], true) {
            return Err(Error::InvalidParameters(format!("label {l} repeated")));
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(Error::InvalidParameters(
            "order must list every projector once".into(),
        ));
    }
    let complex = basis.projectors().iter().any(|p| !p.is_real(1e-14));
    let form = if complex {
        RowForm::Conjugate
    } else {
        RowForm::Transpose
    };
    let n = basis.dim();
    let mut rows: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    for l in order {
        let i = basis.index_of(l).expect("checked above");
        let p = &basis.projectors()[i];
        let rank = basis.traces()[i];
        let mut candidates: Vec<Vec<Complex64>> = (0..n).map(|r| p.row(r).to_vec()).collect();
        let mut block: Vec<Vec<Complex64>> = Vec::new();
        // Pivoted modified Gram–Schmidt under the Hermitian norm for stability.
        while block.len() < rank {
            let (best, norm) = candidates
                .iter()
                .enumerate()
                .map(|(k, v)| (k, v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()))
                .fold(
                    (usize::MAX, 0.0),
                    |acc, x| if x.1 > acc.1 { x } else { acc },
                );
            if best == usize::MAX || norm < tol {
                return Err(Error::Mismatch(format!(
                    "projector {l} has rank below its trace {rank}"
                )));
            }
            let v: Vec<Complex64> = candidates
                .swap_remove(best)
                .iter()
                .map(|z| z / norm)
                .collect();
            for w in candidates.iter_mut() {
                let proj: Complex64 = w.iter().zip(&v).map(|(a, b)| a * b.conj()).sum();
                for (a, b) in w.iter_mut().zip(&v) {
                    *a -= proj * b;
                }
            }
            block.push(v);
        }
        let residual_rank = candidates
            .iter()
            .map(|v| v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt())
            .fold(0.0, f64::max);
        if residual_rank > tol.sqrt() {
            return Err(Error::Mismatch(format!(
                "projector {l} has rank above its trace {rank}"
            )));
        }
        // Re-orthogonalize under the row form actually used by M.
        let mut ortho: Vec<Vec<Complex64>> = Vec::new();
        for mut v in block {
            for w in &ortho {
                let num = row_product(&v, w, form);
                let den = row_product(w, w, form);
                if den.norm() < tol {
                    return Err(Error::VanishingRowNorm {
                        row: rows.len() + ortho.len() + 1,
                    });
                }
                let f = num / den;
                for (a, b) in v.iter_mut().zip(w) {
                    *a -= f * b;
                }
            }
            let lead = v
                .iter()
                .copied()
                .find(|z| z.norm() > tol)
                .ok_or(Error::Mismatch(format!(
                    "degenerate row while orthogonalizing {l}"
                )))?;
            for a in v.iter_mut() {
                *a /= lead;
                if a.norm() < 1e-15 {
                    *a = re(0.0);
                }
            }
            ortho.push(v);
        }
        rows.extend(ortho);
    }
    let m = ComplexMatrix::from_vec(rows.into_iter().flatten().collect())?;
    Diagonalizer::new(m, basis, form, tol.max(1e-10))
}

/// Diagonal of `M R̂(θ) M⁻¹`, failing if the off-diagonal part exceeds `tol`.
pub fn diagonal_form(
    braid: &SpectralBraid,
    diag: &Diagonalizer,
    theta: f64,
    tol: f64,
) -> Result<Vec<Complex64>> {
    let d = diag.conjugate(&braid.evaluate(theta)?);
    let off = d.off_diagonal_max();
    if !(off < tol) {
        return Err(Error::NotDiagonal { residual: off, tol });
    }
    Ok(d.diagonal())
}

/// `D(θ)` repeating each plain factor `f_i(θ)` on the rows carrying `P_i`.
pub fn factor_diagonal(
    braid: &SpectralBraid,
    diag: &Diagonalizer,
    theta: f64,
) -> Result<ComplexMatrix> {
    let f = braid.factor_values(theta, &FactorScheme::Plain)?;
    let idx = diag.row_projector_indices(braid.basis())?;
    Ok(ComplexMatrix::diag(
        &idx.iter().map(|&i| f[i]).collect::<Vec<_>>(),
    ))
}

/// `(M(−θ), M(θ))` with `M(θ) = D(θ) M`, so that `R̂(θ) = M(−θ)⁻¹ M(θ)`.
pub fn factored_diagonal(
    braid: &SpectralBraid,
    diag: &Diagonalizer,
    theta: f64,
) -> Result<(ComplexMatrix, ComplexMatrix)> {
    braid.check_pole(theta)?;
    braid.check_pole(-theta)?;
    let dp = factor_diagonal(braid, diag, theta)?;
    let dm = factor_diagonal(braid, diag, -theta)?;
    let mags: Vec<f64> = dm.diagonal().iter().map(|z| z.norm()).collect();
    let lo = mags.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = mags.iter().cloned().fold(0.0, f64::max);
    let condition = if lo == 0.0 { f64::INFINITY } else { hi / lo };
    if !(condition < CONDITION_LIMIT) {
        return Err(Error::Singular { condition });
    }
    Ok((dm.matmul(diag.matrix()), dp.matmul(diag.matrix())))
}

fn block_diag_middle(block: [[Complex64; 2]; 2]) -> ComplexMatrix {
    ComplexMatrix::from_fn(4, |i, j| match (i, j) {
        (1..=2, 1..=2) => block[i - 1][j - 1],
        _ if i == j => re(1.0),
        _ => re(0.0),
    })
}

/// Lower-triangular 6-vertex factor `(1, B, 1)` with
/// `B = [[1, 0], [sinh γ/sinh(γ+θ), sinh θ/sinh(γ+θ)]]`; satisfies `R̂(θ) = F(−θ)⁻¹ P F(θ)`.
pub fn triangular_factor_6v(gamma: f64, theta: f64) -> Result<ComplexMatrix> {
    let radius = crate::braid::POLE_RADIUS;
    if !(gamma.is_finite() && theta.is_finite()) {
        return Err(Error::NonFinite);
    }
    if (gamma + theta).abs() < radius {
        return Err(Error::PoleProximity {
            theta,
            pole: -gamma,
            radius,
        });
    }
    let s = (gamma + theta).sinh();
    Ok(block_diag_middle([
        [re(1.0), re(0.0)],
        [re(gamma.sinh() / s), re(theta.sinh() / s)],
    ]))
}

/// Symmetric 6-vertex factor `(1, C, 1)` with `C` built from `e^{±½(γ−θ)}`; `R̂(θ) = F(−θ)⁻¹F(θ)`.
pub fn c_block_factor_6v(gamma: f64, theta: f64) -> ComplexMatrix {
    let a = 0.5 * (gamma - theta);
    let (u, v) = (re(a.exp()), re((-a).exp()));
    block_diag_middle([[u, v], [v, u]])
}

/// `F(−θ)⁻¹ P F(θ)` for the triangular factor.
pub fn triangular_reconstruction(gamma: f64, theta: f64) -> Result<ComplexMatrix> {
    let fm = triangular_factor_6v(gamma, -theta)?;
    let fp = triangular_factor_6v(gamma, theta)?;
    Ok(fm.inverse()?.matmul(&permutation(2)).matmul(&fp))
}

/// `S14` braid matrix conjugated by the constant `S03` matrix; diagonal `(q, 1, 1, −q)`.
pub fn s14_by_s03(q: f64) -> Result<ComplexMatrix> {
    let m = bases::s03_matrix();
    Ok(m.matmul(&bases::s14_matrix(q)).matmul(&m.inverse()?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::{make_braid, BraidOptions};

    #[test]
    fn orthogonal_inverse_of_identity() {
        let id = ComplexMatrix::identity(5);
        assert!(invert_orthogonal_rows(&id).unwrap().is_close(&id, 0.0));
    }

    #[test]
    fn vanishing_row_norm_detected() {
        let m = ComplexMatrix::from_vec(vec![re(1.0), c(0.0, 1.0), re(0.0), re(1.0)]).unwrap();
        assert!(matches!(
            invert_orthogonal_rows(&m),
            Err(Error::VanishingRowNorm { row: 1 })
        ));
    }

    #[test]
    fn non_orthogonal_rows_rejected() {
        let m = ComplexMatrix::from_real(2, &[1., 1., 0., 1.]).unwrap();
        assert!(matches!(
            invert_orthogonal_rows(&m),
            Err(Error::Mismatch(_))
        ));
    }

    #[test]
    fn nested_m_is_self_inverse() {
        for n in [4, 9, 16, 25] {
            let m = nested_m(n).unwrap();
            assert!(m.matmul(&m).is_close(&ComplexMatrix::identity(n), 1e-14));
        }
    }

    #[test]
    fn gl2_form() {
        let spec = FamilySpec::gl(2, 1.3);
        let d = explicit_m(&spec).unwrap();
        assert_eq!(d.diag_labels(), &["P-", "P+", "P+", "P+"]);
        let b = make_braid(&spec, &BraidOptions::default()).unwrap();
        let diag = diagonal_form(&b, &d, 0.4, 1e-11).unwrap();
        let v = b.ratios(0.4).unwrap()[0];
        assert!((diag[0] - v).norm() < 1e-12);
        for z in &diag[1..] {
            assert!((z - 1.0).norm() < 1e-12);
        }
    }

    #[test]
    fn triangular_factor_entries_and_relation() {
        let (g, t) = (0.9f64, 0.4f64);
        let f = triangular_factor_6v(g, t).unwrap();
        assert!((f.get(2, 1) - (g.sinh() / (g + t).sinh())).norm() < 1e-15);
        assert!((f.get(2, 2) - (t.sinh() / (g + t).sinh())).norm() < 1e-15);
        assert_eq!(f.get(1, 2), re(0.0));
        let b = make_braid(&FamilySpec::vertex6(g), &BraidOptions::default()).unwrap();
        let rec = triangular_reconstruction(g, t).unwrap();
        assert!(rec.is_close(&b.evaluate(t).unwrap(), 1e-13));
        assert!(triangular_factor_6v(g, -g).is_err());
        let b0 = triangular_factor_6v(g, 0.0).unwrap();
        assert!(b0.inverse().is_err());
    }

    #[test]
    fn c_block_factor_reconstructs() {
        let (g, t) = (0.9f64, 0.4f64);
        let b = make_braid(&FamilySpec::vertex6(g), &BraidOptions::default()).unwrap();
        let rec = c_block_factor_6v(g, -t)
            .inverse()
            .unwrap()
            .matmul(&c_block_factor_6v(g, t));
        assert!(rec.is_close(&b.evaluate(t).unwrap(), 1e-13));
    }

    #[test]
    fn s14_diagonalized_by_s03() {
        let q = 0.8;
        let d = s14_by_s03(q).unwrap();
        let want = ComplexMatrix::diag(&[re(q), re(1.0), re(1.0), re(-q)]);
        assert!(d.is_close(&want, 1e-15));
    }

    #[test]
    fn solver_rejects_bad_order() {
        let b = bases::vertex_basis();
        assert!(solve_diagonalizer(&b, &["1(+)", "2(+)", "2(-)"], 1e-10).is_err());
        assert!(solve_diagonalizer(&b, &["1(+)", "1(+)", "2(+)", "2(-)"], 1e-10).is_err());
    }
}
