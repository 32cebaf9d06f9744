//! Projector bases for every supported family.
//!
//! Each constructor returns a [`ProjectorBasis`] that has already been checked
//! for idempotence, mutual orthogonality, completeness and integral traces.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::family::{Family, FamilySpec};
use crate::tensor::{
    c, kron, permutation, projector_algebra_residuals, re, spectral_projectors, ComplexMatrix,
    DEFAULT_TOL,
};

/// Largest allowed distance between a projector trace and the nearest integer.
pub const TRACE_GUARD: f64 = 1e-8;

/// Ordered, validated set of projectors with `P_i P_j = δ_ij P_i` and `Σ P_i = I`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectorBasis {
    dim: usize,
    base_dim: Option<usize>,
    projectors: Vec<ComplexMatrix>,
    labels: Vec<String>,
    traces: Vec<usize>,
}

impl ProjectorBasis {
    /// Validate and wrap a list of projectors.
    ///
    /// Residuals are compared against `tol` scaled by the largest projector entry.
    pub fn new(projectors: Vec<ComplexMatrix>, labels: Vec<String>, tol: f64) -> Result<Self> {
        if projectors.is_empty() {
            return Err(Error::InvalidBasis("empty projector list".into()));
        }
        if labels.len() != projectors.len() {
            return Err(Error::InvalidBasis(format!(
                "{} labels for {} projectors",
                labels.len(),
                projectors.len()
            )));
        }
        let dim = projectors[0].dim();
        for p in &projectors {
            if p.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: p.dim(),
                });
            }
            if !p.is_finite() {
                return Err(Error::NonFinite);
            }
        }
        let scale = projectors.iter().map(|p| p.max_norm()).fold(1.0, f64::max);
        let (idem, orth, complete) = projector_algebra_residuals(&projectors);
        let bound = tol * scale * scale;
        if idem > bound || orth > bound || complete > tol * scale {
            return Err(Error::InvalidBasis(format!(
                "projector algebra residuals idem {idem:.3e}, orth {orth:.3e}, complete {complete:.3e}"
            )));
        }
        let mut traces = Vec::with_capacity(projectors.len());
        for (p, label) in projectors.iter().zip(&labels) {
            let t = p.trace();
            let rounded = t.re.round();
            if (t.re - rounded).abs() > TRACE_GUARD || t.im.abs() > TRACE_GUARD || rounded < 1.0 {
                return Err(Error::NonIntegralTrace {
                    label: label.clone(),
                    trace: t.re,
                    guard: TRACE_GUARD,
                });
            }
            traces.push(rounded as usize);
        }
        let root = (dim as f64).sqrt().round() as usize;
        let base_dim = (root * root == dim).then_some(root);
        Ok(Self {
            dim,
            base_dim,
            projectors,
            labels,
            traces,
        })
    }

    /// Matrix dimension (`N²` for tensor-square families).
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `N` when the matrix dimension is a perfect square.
    pub fn base_dim(&self) -> Option<usize> {
        self.base_dim
    }

    pub fn len(&self) -> usize {
        self.projectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.projectors.is_empty()
    }

    pub fn projectors(&self) -> &[ComplexMatrix] {
        &self.projectors
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn traces(&self) -> &[usize] {
        &self.traces
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn projector(&self, label: &str) -> Option<&ComplexMatrix> {
        self.index_of(label).map(|i| &self.projectors[i])
    }

    /// `Σ k_i P_i`.
    pub fn combine(&self, coefficients: &[Complex64]) -> ComplexMatrix {
        crate::tensor::recombine(&self.projectors, coefficients)
    }

    /// Entrywise agreement of every projector, in order.
    pub fn same_as(&self, other: &Self, tol: f64) -> bool {
        self.dim == other.dim
            && self.len() == other.len()
            && self
                .projectors
                .iter()
                .zip(&other.projectors)
                .all(|(a, b)| a.is_close(b, tol))
    }

    /// Merge consecutive groups of projectors into single ones.
    ///
    /// `groups` lists, for each new projector, the indices it absorbs.
    pub fn merged(&self, groups: &[(&str, &[usize])]) -> Result<Self> {
        let mut projectors = Vec::with_capacity(groups.len());
        let mut labels = Vec::with_capacity(groups.len());
        for (label, members) in groups {
            let mut sum = ComplexMatrix::zeros(self.dim);
            for &m in *members {
                let p = self
                    .projectors
                    .get(m)
                    .ok_or_else(|| Error::InvalidBasis(format!("no projector at index {m}")))?;
                sum = &sum + p;
            }
            projectors.push(sum);
            labels.push((*label).to_string());
        }
        Self::new(projectors, labels, DEFAULT_TOL)
    }
}

fn labels(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

fn e(n: usize, i: usize, j: usize) -> ComplexMatrix {
    crate::tensor::unit_matrix(n, i, j).expect("indices are in range by construction")
}

/// `E_ij ⊗ E_kl` as an `N² × N²` matrix, 1-based.
fn ee(n: usize, i: usize, j: usize, k: usize, l: usize) -> ComplexMatrix {
    kron(&e(n, i, j), &e(n, k, l)).expect("small dimension")
}

/// Yang–Baxter matrix `R_q` of `GL_q(n)` in the normalization with unit `(11)` entry.
pub fn gl_r_matrix(n: usize, q: f64) -> ComplexMatrix {
    let mut r = ComplexMatrix::zeros(n * n);
    for i in 1..=n {
        for j in 1..=n {
            let term = if i == j {
                ee(n, i, i, i, i)
            } else {
                ee(n, i, i, j, j).scale(re(1.0 / q))
            };
            r = &r + &term;
            if j > i {
                r = &r + &ee(n, i, j, j, i).scale(re(1.0 - q.powi(-2)));
            }
        }
    }
    r
}

/// Standard `GL_q(n)` braid matrix `R̂ = P R_q` and its basis `[P-, P+]`.
pub fn gl_standard(n: usize, q: f64) -> Result<(ComplexMatrix, ProjectorBasis)> {
    FamilySpec::gl(n, q).validate()?;
    let rhat = &permutation(n) * &gl_r_matrix(n, q);
    let ps = spectral_projectors(&rhat, &[re(-q.powi(-2)), re(1.0)], DEFAULT_TOL)?;
    let basis = ProjectorBasis::new(ps, labels(&["P-", "P+"]), DEFAULT_TOL)?;
    Ok((rhat, basis))
}

/// `ρ_i` weights: `N/2 − i` (orthogonal) or `N/2 + 1 − i` (symplectic) on the first
/// half, zero in the middle for odd `N`, mirrored with a sign flip on the second half.
fn rho(n: usize, eps: i32) -> Vec<f64> {
    let half = n / 2;
    let nf = n as f64;
    let first: Vec<f64> = (1..=half)
        .map(|i| {
            if eps > 0 {
                nf / 2.0 - i as f64
            } else {
                nf / 2.0 + 1.0 - i as f64
            }
        })
        .collect();
    let mut out = first.clone();
    if n % 2 == 1 {
        out.push(0.0);
    }
    out.extend(first.iter().rev().map(|x| -x));
    out
}

/// `ε_i`: all `+1` for orthogonal, `+1` then `−1` halves for symplectic.
fn eps_signs(n: usize, eps: i32) -> Vec<f64> {
    (1..=n)
        .map(|i| if eps > 0 || i <= n / 2 { 1.0 } else { -1.0 })
        .collect()
}

/// Yang–Baxter matrix of the standard orthogonal (`eps = 1`) or symplectic
/// (`eps = −1`) series.
pub fn so_sp_r_matrix(n: usize, eps: i32, q: f64) -> ComplexMatrix {
    let r = rho(n, eps);
    let sg = eps_signs(n, eps);
    let lam = q - 1.0 / q;
    let prime = |i: usize| n + 1 - i;
    let mut m = ComplexMatrix::zeros(n * n);
    for i in 1..=n {
        for j in 1..=n {
            let w = if i == j {
                if i != prime(i) {
                    q
                } else {
                    1.0
                }
            } else if j != prime(i) {
                1.0
            } else {
                1.0 / q
            };
            m = &m + &ee(n, i, i, j, j).scale(re(w));
            if i > j {
                m = &m + &ee(n, i, j, j, i).scale(re(lam));
                let w2 = -lam * q.powf(r[i - 1] - r[j - 1]) * sg[i - 1] * sg[j - 1];
                m = &m + &ee(n, i, j, prime(i), prime(j)).scale(re(w2));
            }
        }
    }
    m
}

/// Standard three-projector basis `[P0, P-, P+]` for `SO_q(3)`, `SO_q(4)`, `Sp_q(4)`.
///
/// The braid matrix `R̂ = P·R/q` has eigenvalues `1`, `−q⁻²` and `q^{−N}` (orthogonal)
/// or `−q^{−N−2}` (symplectic).
pub fn so_sp_standard(n: usize, eps: i32, q: f64) -> Result<(ComplexMatrix, ProjectorBasis)> {
    let spec = if eps > 0 {
        FamilySpec::so(n, q, Default::default())
    } else {
        FamilySpec::sp(n, q, Default::default())
    };
    spec.validate()?;
    let rhat = (&permutation(n) * &so_sp_r_matrix(n, eps, q)).scale(re(1.0 / q));
    let nf = n as f64;
    let k0 = if eps > 0 {
        q.powf(-nf)
    } else {
        -q.powf(-nf - 2.0)
    };
    let ps = spectral_projectors(&rhat, &[re(k0), re(-q.powi(-2)), re(1.0)], DEFAULT_TOL)?;
    let basis = ProjectorBasis::new(ps, labels(&["P0", "P-", "P+"]), DEFAULT_TOL)?;
    Ok((rhat, basis))
}

/// q-number `[x] = (q^x − q^{−x})/(q − q⁻¹)`, equal to `x` at `q = 1`.
pub fn q_number(x: f64, q: f64) -> f64 {
    let h = q.ln();
    if h.abs() < 1e-12 {
        x
    } else {
        (x * h).sinh() / h.sinh()
    }
}

/// `d = (1 + ε[N − ε])⁻¹`.
pub fn exotic_d(n: usize, eps: i32, q: f64) -> f64 {
    let e = eps as f64;
    1.0 / (1.0 + e * q_number(n as f64 - e, q))
}

fn check_exotic(n: usize, eps: i32, q: f64) -> Result<()> {
    let spec = if eps > 0 {
        FamilySpec::exotic_so(n, q)
    } else {
        FamilySpec::exotic_sp(n, q)
    };
    if eps != 1 && eps != -1 {
        return Err(Error::InvalidParameters(format!(
            "epsilon must be ±1, got {eps}"
        )));
    }
    spec.validate()
}

/// Rank-one q-singlet projector `P0` of the exotic class, built directly.
///
/// `P0 = d Σ_{ij} c_i d_j E_ij ⊗ E_{i'j'}` with `i' = N + 1 − i`, where
/// `c_i = ε_i q^{−ρ_i}` and `d_j = ±ε_j q^{−ρ_j}` (`+` orthogonal, `−` symplectic).
pub fn exotic_singlet(n: usize, eps: i32, q: f64) -> Result<ComplexMatrix> {
    check_exotic(n, eps, q)?;
    let r = rho(n, eps);
    let sg = eps_signs(n, eps);
    let left: Vec<f64> = (0..n).map(|i| sg[i] * q.powf(-r[i])).collect();
    let right: Vec<f64> = (0..n)
        .map(|i| if eps > 0 { left[i] } else { -left[i] })
        .collect();
    let beta: f64 = left.iter().zip(&right).map(|(a, b)| a * b).sum();
    let mut terms = Vec::with_capacity(n * n);
    for i in 1..=n {
        for j in 1..=n {
            let row = (i - 1) * n + (n - i) + 1;
            let col = (j - 1) * n + (n - j) + 1;
            terms.push((row, col, re(left[i - 1] * right[j - 1] / beta)));
        }
    }
    ComplexMatrix::from_unit_terms(n * n, &terms)
}

/// Exotic two-projector basis `[P0, P1]` with `P1 = I − P0`.
pub fn exotic_p0(n: usize, eps: i32, q: f64) -> Result<ProjectorBasis> {
    let p0 = exotic_singlet(n, eps, q)?;
    let p1 = &ComplexMatrix::identity(n * n) - &p0;
    ProjectorBasis::new(vec![p0, p1], labels(&["P0", "P1"]), DEFAULT_TOL)
}

/// Constant `S03` braid matrix.
pub fn s03_matrix() -> ComplexMatrix {
    ComplexMatrix::from_real(
        4,
        &[
            1., 0., 0., 1., 0., 1., -1., 0., 0., 1., 1., 0., -1., 0., 0., 1.,
        ],
    )
    .expect("literal 4x4")
}

/// `S03` braid matrix with complex basis `[P(+), P(-)]`, eigenvalues `1 − i`, `1 + i`.
pub fn s03_basis() -> Result<(ComplexMatrix, ProjectorBasis)> {
    let rhat = s03_matrix();
    let ps = spectral_projectors(&rhat, &[c(1.0, -1.0), c(1.0, 1.0)], DEFAULT_TOL)?;
    let basis = ProjectorBasis::new(ps, labels(&["P(+)", "P(-)"]), DEFAULT_TOL)?;
    Ok((rhat, basis))
}

/// Constant `S14` braid matrix with parameter `q`.
pub fn s14_matrix(q: f64) -> ComplexMatrix {
    ComplexMatrix::from_real(
        4,
        &[0., 0., 0., q, 0., 1., 0., 0., 0., 0., 1., 0., q, 0., 0., 0.],
    )
    .expect("literal 4x4")
}

fn half_corner_pair(sign: f64) -> ComplexMatrix {
    ComplexMatrix::from_real(
        4,
        &[
            0.5,
            0.,
            0.,
            0.5 * sign,
            0.,
            0.,
            0.,
            0.,
            0.,
            0.,
            0.,
            0.,
            0.5 * sign,
            0.,
            0.,
            0.5,
        ],
    )
    .expect("literal 4x4")
}

fn half_middle_pair(sign: f64) -> ComplexMatrix {
    ComplexMatrix::from_real(
        4,
        &[
            0.,
            0.,
            0.,
            0.,
            0.,
            0.5,
            0.5 * sign,
            0.,
            0.,
            0.5 * sign,
            0.5,
            0.,
            0.,
            0.,
            0.,
            0.,
        ],
    )
    .expect("literal 4x4")
}

/// `S14` braid matrix and basis `[P(0), P(+), P(-)]`; `R̂ = P(0) + q(P(+) − P(-))`.
pub fn s14_basis(q: f64) -> Result<(ComplexMatrix, ProjectorBasis)> {
    if q == 0.0 || !q.is_finite() {
        return Err(Error::InvalidParameters(
            "S14 requires a finite q != 0".into(),
        ));
    }
    let p0 = ComplexMatrix::diag(&[re(0.0), re(1.0), re(1.0), re(0.0)]);
    let basis = ProjectorBasis::new(
        vec![p0, half_corner_pair(1.0), half_corner_pair(-1.0)],
        labels(&["P(0)", "P(+)", "P(-)"]),
        DEFAULT_TOL,
    )?;
    Ok((s14_matrix(q), basis))
}

/// q-dependent affine `sl_2` basis `[P(0), P(+), P(-)]`.
pub fn affine_basis(q: f64) -> Result<ProjectorBasis> {
    FamilySpec::affine(q).validate()?;
    let p0 = ComplexMatrix::diag(&[re(1.0), re(0.0), re(0.0), re(1.0)]);
    let norm = q + 1.0 / q;
    let pm = |s: f64| {
        ComplexMatrix::from_real(
            4,
            &[
                0.,
                0.,
                0.,
                0.,
                0.,
                q.powf(s) / norm,
                s / norm,
                0.,
                0.,
                s / norm,
                q.powf(-s) / norm,
                0.,
                0.,
                0.,
                0.,
                0.,
            ],
        )
        .expect("literal 4x4")
    };
    ProjectorBasis::new(
        vec![p0, pm(1.0), pm(-1.0)],
        labels(&["P(0)", "P(+)", "P(-)"]),
        DEFAULT_TOL,
    )
}

/// Four-projector 8-vertex basis `[1(+), 1(-), 2(+), 2(-)]`.
pub fn vertex_basis() -> ProjectorBasis {
    ProjectorBasis::new(
        vec![
            half_corner_pair(1.0),
            half_corner_pair(-1.0),
            half_middle_pair(1.0),
            half_middle_pair(-1.0),
        ],
        labels(&["1(+)", "1(-)", "2(+)", "2(-)"]),
        DEFAULT_TOL,
    )
    .expect("constant basis is valid")
}

/// 6-vertex subset `[P(0), P(+), P(-)]` with `P(0) = P_1(+) + P_1(−)`.
pub fn six_vertex_basis() -> ProjectorBasis {
    vertex_basis()
        .merged(&[("P(0)", &[0, 1]), ("P(+)", &[2]), ("P(-)", &[3])])
        .expect("constant basis is valid")
}

fn pair_projector(n: usize, a: usize, b: usize, sign: f64) -> Result<ComplexMatrix> {
    ComplexMatrix::from_unit_terms(
        n,
        &[
            (a, a, re(0.5)),
            (b, b, re(0.5)),
            (a, b, re(0.5 * sign)),
            (b, a, re(0.5 * sign)),
        ],
    )
}

fn paired_basis(n: usize, pairs: &[(usize, usize)], singles: &[usize]) -> Result<ProjectorBasis> {
    let mut projectors = Vec::new();
    let mut names = Vec::new();
    for (k, &(a, b)) in pairs.iter().enumerate() {
        for (sign, tag) in [(1.0, "+"), (-1.0, "-")] {
            projectors.push(pair_projector(n, a, b, sign)?);
            names.push(format!("{}({tag})", k + 1));
        }
    }
    for (k, &s) in singles.iter().enumerate() {
        projectors.push(ComplexMatrix::from_unit_terms(n, &[(s, s, re(1.0))])?);
        names.push(format!("{}", pairs.len() + k + 1));
    }
    ProjectorBasis::new(projectors, names, DEFAULT_TOL)
}

/// Nested basis on an `n`-dimensional space: pairs `(i, n − i + 1)` for `i ≤ n/2`,
/// plus the central singlet when `n` is odd.
pub fn nested_basis(n: usize) -> Result<ProjectorBasis> {
    FamilySpec::nested(n).validate()?;
    let l = n / 2;
    let pairs: Vec<(usize, usize)> = (1..=l).map(|i| (i, n - i + 1)).collect();
    let singles: Vec<usize> = if n % 2 == 1 { vec![l + 1] } else { vec![] };
    paired_basis(n, &pairs, &singles)
}

/// Alternative constant basis on `N² = n` states pairing `(i,i)` with `(i',i')`
/// and `(i,j)` with `(j,i)`; pairs ordered by their first flat index.
pub fn alternative_nested_basis(base: usize) -> Result<ProjectorBasis> {
    if base < 2 {
        return Err(Error::InvalidParameters(format!(
            "base dimension must be >= 2, got {base}"
        )));
    }
    let flat = |i: usize, j: usize| (i - 1) * base + j;
    let partner = |a: usize| {
        let (i, j) = ((a - 1) / base + 1, (a - 1) % base + 1);
        if i == j {
            flat(base + 1 - i, base + 1 - i)
        } else {
            flat(j, i)
        }
    };
    let n = base * base;
    let mut pairs = Vec::new();
    let mut singles = Vec::new();
    for a in 1..=n {
        let b = partner(a);
        if a < b {
            pairs.push((a, b));
        } else if a == b {
            singles.push(a);
        }
    }
    paired_basis(n, &pairs, &singles)
}

/// The projector basis belonging to a family specification.
pub fn basis_for(spec: &FamilySpec) -> Result<ProjectorBasis> {
    spec.validate()?;
    match spec.family {
        Family::GLq => gl_standard(spec.n, spec.q).map(|x| x.1),
        Family::SOq => so_sp_standard(spec.n, 1, spec.q).map(|x| x.1),
        Family::Spq => so_sp_standard(spec.n, -1, spec.q).map(|x| x.1),
        Family::ExoticSO => exotic_p0(spec.n, 1, spec.q),
        Family::ExoticSp => exotic_p0(spec.n, -1, spec.q),
        Family::S03 => s03_basis().map(|x| x.1),
        Family::S14 => s14_basis(spec.q).map(|x| x.1),
        Family::AffineSl2 => affine_basis(spec.q),
        Family::Vertex6 => Ok(six_vertex_basis()),
        Family::Vertex8 => Ok(vertex_basis()),
        Family::Nested => nested_basis(spec.n),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() < tol
    }

    #[test]
    fn gl_traces() {
        for n in 2..=5 {
            let (_, b) = gl_standard(n, 1.3).unwrap();
            assert_eq!(b.traces(), &[n * (n - 1) / 2, n * (n + 1) / 2]);
        }
    }

    #[test]
    fn gl_minimal_polynomial() {
        let q = 2.0;
        let (r, _) = gl_standard(2, q).unwrap();
        let res = crate::tensor::minimal_polynomial_residual(&r, &[re(1.0), re(-q.powi(-2))]);
        assert!(res < 1e-10);
    }

    #[test]
    fn standard_series_traces() {
        for (n, eps) in [(3, 1), (4, 1), (4, -1)] {
            let (_, b) = so_sp_standard(n, eps, 1.4).unwrap();
            let e = eps as i64;
            let n = n as i64;
            let plus = (n * (n + 1) - (e + 1)) / 2;
            let minus = (n * (n - 1) + (e - 1)) / 2;
            assert_eq!(b.traces(), &[1, minus as usize, plus as usize]);
        }
    }

    #[test]
    fn standard_series_other_dims_unsupported() {
        assert!(matches!(
            so_sp_standard(5, 1, 1.3),
            Err(Error::Unsupported(_))
        ));
        assert!(matches!(
            so_sp_standard(6, -1, 1.3),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn exotic_singlet_matches_frt_projector() {
        for (n, eps) in [(3, 1), (4, 1), (4, -1)] {
            let (_, std) = so_sp_standard(n, eps, 1.3).unwrap();
            let p0 = exotic_singlet(n, eps, 1.3).unwrap();
            assert!(p0.is_close(&std.projectors()[0], 1e-12));
        }
    }

    #[test]
    fn exotic_singlet_n3_entries() {
        let q: f64 = 1.5;
        let p = exotic_singlet(3, 1, q)
            .unwrap()
            .scale(re(q + 1.0 / q + 1.0));
        // E_ij ⊗ E_kl sits at flat row (i,k), column (j,l).
        let at = |i: usize, j: usize, k: usize, l: usize| {
            p.get((i - 1) * 3 + k - 1, (j - 1) * 3 + l - 1)
        };
        assert!(close(at(1, 1, 3, 3).re, 1.0 / q, 1e-12));
        assert!(close(at(1, 2, 3, 2).re, q.powf(-0.5), 1e-12));
        assert!(close(at(1, 3, 3, 1).re, 1.0, 1e-12));
        assert!(close(at(2, 1, 2, 3).re, q.powf(-0.5), 1e-12));
        assert!(close(at(2, 2, 2, 2).re, 1.0, 1e-12));
        assert!(close(at(2, 3, 2, 1).re, q.sqrt(), 1e-12));
        assert!(close(at(3, 1, 1, 3).re, 1.0, 1e-12));
        assert!(close(at(3, 2, 1, 2).re, q.sqrt(), 1e-12));
        assert!(close(at(3, 3, 1, 1).re, q, 1e-12));
        assert_eq!(p.count_nonzero(1e-14), 9);
    }

    #[test]
    fn exotic_traces_up_to_six() {
        for n in 3..=6 {
            let b = exotic_p0(n, 1, 1.7).unwrap();
            assert_eq!(b.traces(), &[1, n * n - 1]);
        }
        for n in [4, 6] {
            let b = exotic_p0(n, -1, 0.6).unwrap();
            assert_eq!(b.traces(), &[1, n * n - 1]);
        }
    }

    #[test]
    fn exotic_d_at_q_one() {
        for n in 3..=6 {
            assert!(close(exotic_d(n, 1, 1.0), 1.0 / n as f64, 1e-14));
        }
        assert!(close(exotic_d(4, -1, 1.0), -0.25, 1e-14));
    }

    #[test]
    fn s03_projectors_are_complex() {
        let (r, b) = s03_basis().unwrap();
        assert!(r.is_real(0.0));
        let id = ComplexMatrix::identity(4);
        let half_i = c(0.0, 0.5);
        let want_plus = &id.scale(re(0.5)) + &(&r - &id).scale(half_i);
        let want_minus = &id.scale(re(0.5)) - &(&r - &id).scale(half_i);
        assert!(b.projectors()[0].is_close(&want_plus, 1e-14));
        assert!(b.projectors()[1].is_close(&want_minus, 1e-14));
        assert!(!b.projectors()[0].is_real(1e-3));
        assert_eq!(b.traces(), &[2, 2]);
    }

    #[test]
    fn s14_reconstruction() {
        let q = 0.8;
        let (r, b) = s14_basis(q).unwrap();
        let back = b.combine(&[re(1.0), re(q), re(-q)]);
        assert!(back.is_close(&r, 1e-12));
        assert_eq!(b.traces(), &[2, 1, 1]);
        assert!(s14_basis(0.0).is_err());
    }

    #[test]
    fn affine_at_q_one_is_six_vertex() {
        let a = affine_basis(1.0).unwrap();
        let v = six_vertex_basis();
        assert!(a.same_as(&v, 1e-15));
        let a2 = affine_basis(2.0).unwrap();
        let scaled = a2.projectors()[1].scale(re(2.5));
        assert!(close(scaled.get(1, 1).re, 2.0, 1e-14));
        assert!(close(scaled.get(1, 2).re, 1.0, 1e-14));
        assert!(close(scaled.get(2, 2).re, 0.5, 1e-14));
    }

    #[test]
    fn nested_four_is_vertex_basis() {
        assert!(nested_basis(4).unwrap().same_as(&vertex_basis(), 0.0));
    }

    #[test]
    fn nested_nine() {
        let b = nested_basis(9).unwrap();
        assert_eq!(b.len(), 9);
        assert!(b.traces().iter().all(|&t| t == 1));
        let mid = ComplexMatrix::from_unit_terms(9, &[(5, 5, re(1.0))]).unwrap();
        assert!(b.projectors()[8].is_close(&mid, 0.0));
        assert!(nested_basis(16).is_ok());
        assert!(nested_basis(1).is_err());
    }

    #[test]
    fn alternative_basis_n3_pairs() {
        let b = alternative_nested_basis(3).unwrap();
        assert_eq!(b.len(), 9);
        let p = &b.projectors()[2].scale(re(2.0));
        // 2 P_2(+) = E22 + E44 + E24 + E42
        assert_eq!(p.get(1, 3), re(1.0));
        assert_eq!(p.get(3, 3), re(1.0));
        let last = &b.projectors()[8];
        assert_eq!(last.get(4, 4), re(1.0));
    }

    #[test]
    fn trace_guard_rejects_fractional_traces() {
        let p = ComplexMatrix::diag(&[re(0.5), re(0.5)]);
        let q = ComplexMatrix::diag(&[re(0.5), re(0.5)]);
        assert!(ProjectorBasis::new(vec![p, q], labels(&["a", "b"]), 1e-10).is_err());
    }
}
