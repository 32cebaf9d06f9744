use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest matrix dimension produced by [`kron`] and the constructors built on it.
pub const DEFAULT_MAX_DIM: usize = 4096;

/// Dense square matrix of double-precision complex scalars, stored row-major.
///
/// Values are immutable once built; every arithmetic operation returns a new matrix.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

#[inline]
pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[inline]
pub fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |r, c| if r == c { re(1.0) } else { re(0.0) })
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                data.push(f(r, c));
            }
        }
        Self { dim, data }
    }

    /// Builds a matrix from row-major complex entries; the length must be a perfect square.
    pub fn from_vec(data: Vec<Complex64>) -> Result<Self> {
        let dim = (data.len() as f64).sqrt().round() as usize;
        if dim * dim != data.len() {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                found: data.len(),
            });
        }
        let m = Self { dim, data };
        m.ensure_finite()?;
        Ok(m)
    }

    /// Builds a matrix from row-major real entries.
    pub fn from_real(dim: usize, entries: &[f64]) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                found: entries.len(),
            });
        }
        Self::from_vec(entries.iter().map(|&x| re(x)).collect())
    }

    /// Builds a matrix from a sparse list of 1-based `(row, col, value)` triples.
    ///
    /// Repeated positions accumulate, which mirrors sums of `E_ij` terms.
    pub fn from_unit_terms(dim: usize, terms: &[(usize, usize, Complex64)]) -> Result<Self> {
        let mut m = Self::zeros(dim);
        for &(r, col, v) in terms {
            if r == 0 || col == 0 || r > dim || col > dim {
                return Err(Error::IndexOutOfRange { dim, row: r, col });
            }
            m.data[(r - 1) * dim + (col - 1)] += v;
        }
        m.ensure_finite()?;
        Ok(m)
    }

    pub fn diag(entries: &[Complex64]) -> Self {
        let n = entries.len();
        Self::from_fn(n, |r, c| if r == c { entries[r] } else { re(0.0) })
    }

    fn ensure_finite(&self) -> Result<()> {
        if self
            .data
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
        {
            Ok(())
        } else {
            Err(Error::NonFinite)
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Zero-based entry access.
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.dim + col]
    }

    pub fn is_finite(&self) -> bool {
        self.ensure_finite().is_ok()
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[Complex64] {
        &self.data[r * self.dim..(r + 1) * self.dim]
    }

    pub fn diagonal(&self) -> Vec<Complex64> {
        (0..self.dim).map(|i| self.get(i, i)).collect()
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |r, c| self.get(c, r))
    }

    pub fn conj_transpose(&self) -> Self {
        Self::from_fn(self.dim, |r, c| self.get(c, r).conj())
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|&z| z * s).collect(),
        }
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|&z| f(z)).collect(),
        }
    }

    /// Entrywise max-modulus norm.
    pub fn max_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Induced infinity norm (maximum absolute row sum).
    pub fn inf_norm(&self) -> f64 {
        (0..self.dim)
            .map(|r| self.row(r).iter().map(|z| z.norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Largest modulus among off-diagonal entries.
    pub fn off_diagonal_max(&self) -> f64 {
        let mut m = 0.0f64;
        for r in 0..self.dim {
            for col in 0..self.dim {
                if r != col {
                    m = m.max(self.get(r, col).norm());
                }
            }
        }
        m
    }

    /// Max-norm distance to `other`; panics on dimension mismatch.
    pub fn distance(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn is_close(&self, other: &Self, tol: f64) -> bool {
        self.dim == other.dim && self.distance(other) <= tol
    }

    pub fn is_real(&self, tol: f64) -> bool {
        self.data.iter().all(|z| z.im.abs() <= tol)
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        self.distance(&self.transpose()) <= tol
    }

    pub fn count_nonzero(&self, tol: f64) -> usize {
        self.data.iter().filter(|z| z.norm() > tol).count()
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch in product");
        let n = self.dim;
        let mut out = vec![re(0.0); n * n];
        for i in 0..n {
            let out_row = &mut out[i * n..(i + 1) * n];
            for k in 0..n {
                let a = self.data[i * n + k];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                let b_row = &other.data[k * n..(k + 1) * n];
                for (o, &b) in out_row.iter_mut().zip(b_row) {
                    *o += a * b;
                }
            }
        }
        Self { dim: n, data: out }
    }

    /// Product of a sequence of matrices, left to right.
    pub fn product<'a>(mut factors: impl Iterator<Item = &'a ComplexMatrix>) -> Option<Self> {
        let first = factors.next()?.clone();
        Some(factors.fold(first, |acc, m| acc.matmul(m)))
    }

    /// Inverse by Gauss-Jordan elimination with partial pivoting.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.dim;
        let mut a = self.data.clone();
        let mut inv = Self::identity(n).data;
        let scale = self.max_norm().max(f64::MIN_POSITIVE);
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&x, &y| a[x * n + col].norm().total_cmp(&a[y * n + col].norm()))
                .unwrap_or(col);
            let pv = a[pivot * n + col];
            if pv.norm() <= 1e-14 * scale {
                return Err(Error::Singular {
                    condition: f64::INFINITY,
                });
            }
            if pivot != col {
                for k in 0..n {
                    a.swap(pivot * n + k, col * n + k);
                    inv.swap(pivot * n + k, col * n + k);
                }
            }
            let pinv = pv.inv();
            for k in 0..n {
                a[col * n + k] *= pinv;
                inv[col * n + k] *= pinv;
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a[r * n + col];
                if f.re == 0.0 && f.im == 0.0 {
                    continue;
                }
                for k in 0..n {
                    let ak = a[col * n + k];
                    let ik = inv[col * n + k];
                    a[r * n + k] -= f * ak;
                    inv[r * n + k] -= f * ik;
                }
            }
        }
        let out = Self { dim: n, data: inv };
        out.ensure_finite().map_err(|_| Error::Singular {
            condition: f64::INFINITY,
        })?;
        Ok(out)
    }

    /// Inverse together with the infinity-norm condition estimate `‖A‖·‖A⁻¹‖`.
    pub fn inverse_with_condition(&self) -> Result<(Self, f64)> {
        let inv = self.inverse()?;
        let cond = self.inf_norm() * inv.inf_norm();
        Ok((inv, cond))
    }

    /// Extracts the `size × size` block whose top-left corner is `(row, col)` (zero-based).
    pub fn block(&self, row: usize, col: usize, size: usize) -> Self {
        Self::from_fn(size, |r, c| self.get(row + r, col + c))
    }

    /// Assembles a `k × k` grid of equally sized square blocks, row-major.
    pub fn from_blocks(blocks: &[Vec<ComplexMatrix>]) -> Result<Self> {
        let k = blocks.len();
        let size = blocks
            .first()
            .and_then(|r| r.first())
            .map(|b| b.dim())
            .unwrap_or(0);
        for row in blocks {
            if row.len() != k {
                return Err(Error::DimensionMismatch {
                    expected: k,
                    found: row.len(),
                });
            }
            for b in row {
                if b.dim() != size {
                    return Err(Error::DimensionMismatch {
                        expected: size,
                        found: b.dim(),
                    });
                }
            }
        }
        let dim = k * size;
        Ok(Self::from_fn(dim, |r, c| {
            blocks[r / size][c / size].get(r % size, c % size)
        }))
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        &self.data[r * self.dim + c]
    }
}

impl<'a> Mul<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &'a ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs)
    }
}

impl<'a> Add<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &'a ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in sum");
        ComplexMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl<'a> Sub<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &'a ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in difference");
        ComplexMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn neg(self) -> ComplexMatrix {
        self.scale(re(-1.0))
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{})", self.dim, self.dim)?;
        for r in 0..self.dim {
            let row: Vec<String> = self
                .row(r)
                .iter()
                .map(|z| {
                    if z.im.abs() < 1e-14 {
                        format!("{:>9.4}", z.re)
                    } else {
                        format!("{:.4}{:+.4}i", z.re, z.im)
                    }
                })
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Unit matrix `E_ij` of dimension `n` with 1-based indices: a single 1 at `(i, j)`.
pub fn unit_matrix(n: usize, i: usize, j: usize) -> Result<ComplexMatrix> {
    if i == 0 || j == 0 || i > n || j > n {
        return Err(Error::IndexOutOfRange {
            dim: n,
            row: i,
            col: j,
        });
    }
    ComplexMatrix::from_unit_terms(n, &[(i, j, re(1.0))])
}

/// Kronecker product with the row-major index map `(a, b) ↦ a·dim(B) + b`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    kron_capped(a, b, DEFAULT_MAX_DIM)
}

pub fn kron_capped(a: &ComplexMatrix, b: &ComplexMatrix, max_dim: usize) -> Result<ComplexMatrix> {
    let (m, n) = (a.dim(), b.dim());
    let dim = m.checked_mul(n).ok_or(Error::DimensionCap {
        dim: usize::MAX,
        max: max_dim,
    })?;
    if dim > max_dim {
        return Err(Error::DimensionCap { dim, max: max_dim });
    }
    Ok(ComplexMatrix::from_fn(dim, |r, col| {
        a.get(r / n, col / n) * b.get(r % n, col % n)
    }))
}

/// Permutation matrix `P = Σ E_ij ⊗ E_ji` on `C^N ⊗ C^N`.
pub fn permutation(n: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(n * n, |r, col| {
        let (a, b) = (r / n, r % n);
        if col == b * n + a {
            re(1.0)
        } else {
            re(0.0)
        }
    })
}
