//! Row-to-row monodromy, the hatted operator `T̂ = P T₂`, its `K̂` conjugate and
//! the projected exchange constraints.

use num_complex::Complex64;

use crate::braid::{FactorScheme, SpectralBraid};
use crate::diag::Diagonalizer;
use crate::error::{Error, Result};
use crate::tensor::{kron, permutation, ComplexMatrix, DEFAULT_MAX_DIM};

/// `T^(L)(θ) = R_{a,L}(θ)···R_{a,1}(θ)` on auxiliary ⊗ `L` sites, auxiliary index slowest.
#[derive(Debug, Clone)]
pub struct TransferMonodromy {
    n: usize,
    l: usize,
    theta: Option<f64>,
    t: ComplexMatrix,
}

impl TransferMonodromy {
    pub fn local_dim(&self) -> usize {
        self.n
    }

    pub fn row_length(&self) -> usize {
        self.l
    }

    /// Spectral point, absent when built from a constant matrix.
    pub fn theta(&self) -> Option<f64> {
        self.theta
    }

    /// Dimension `N^L` of each block.
    pub fn block_dim(&self) -> usize {
        self.n.pow(self.l as u32)
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.t
    }

    /// Block `T_{ab}` acting on the quantum space (zero-based auxiliary indices).
    pub fn block(&self, a: usize, b: usize) -> ComplexMatrix {
        let d = self.block_dim();
        self.t.block(a * d, b * d, d)
    }

    pub fn blocks(&self) -> Vec<Vec<ComplexMatrix>> {
        (0..self.n)
            .map(|a| (0..self.n).map(|b| self.block(a, b)).collect())
            .collect()
    }
}

/// `R_{a,k}` embedded in auxiliary ⊗ `V^{⊗L}`.
fn site_operator(r: &ComplexMatrix, n: usize, l: usize, k: usize) -> ComplexMatrix {
    let dim = n.pow(l as u32 + 1);
    let stride = n.pow((l - k) as u32);
    let aux_stride = n.pow(l as u32);
    let mut data = vec![Complex64::new(0.0, 0.0); dim * dim];
    for row in 0..dim {
        let a = row / aux_stride;
        let s = (row / stride) % n;
        let rest = row - a * aux_stride - s * stride;
        for b in 0..n {
            for t in 0..n {
                let col = b * aux_stride + t * stride + rest;
                data[row * dim + col] = r.get(a * n + s, b * n + t);
            }
        }
    }
    ComplexMatrix::from_vec(data).expect("square")
}

fn build(rhat: &ComplexMatrix, l: usize, theta: Option<f64>) -> Result<TransferMonodromy> {
    if l == 0 {
        return Err(Error::InvalidParameters("row length must be >= 1".into()));
    }
    let n = (1..=rhat.dim())
        .find(|k| k * k == rhat.dim())
        .ok_or_else(|| Error::InvalidParameters("braid dimension is not a square".into()))?;
    let hat_dim = (n as u128).saturating_pow(l as u32 + 2);
    if hat_dim > DEFAULT_MAX_DIM as u128 {
        let dim = usize::try_from(hat_dim).unwrap_or(usize::MAX);
        return Err(Error::DimensionCap {
            dim,
            max: DEFAULT_MAX_DIM,
        });
    }
    let r = permutation(n).matmul(rhat);
    let mut t = ComplexMatrix::identity(n.pow(l as u32 + 1));
    for k in 1..=l {
        t = site_operator(&r, n, l, k).matmul(&t);
    }
    Ok(TransferMonodromy { n, l, theta, t })
}

/// Monodromy of `R(θ) = P R̂(θ)` over `l` sites.
pub fn monodromy(braid: &SpectralBraid, l: usize, theta: f64) -> Result<TransferMonodromy> {
    build(&braid.evaluate(theta)?, l, Some(theta))
}

/// Monodromy of `P R̂` for a constant braid matrix, such as a `θ → ±∞` limit.
pub fn monodromy_from_matrix(rhat: &ComplexMatrix, l: usize) -> Result<TransferMonodromy> {
    build(rhat, l, None)
}

/// `T̂ = P T₂ = T₁ P`, assembled blockwise and by explicit products; the two must agree.
pub fn hat_transform(t: &TransferMonodromy, tol: f64) -> Result<ComplexMatrix> {
    let n = t.n;
    let d = t.block_dim();
    let blocks = t.blocks();
    let zero = ComplexMatrix::zeros(d);
    let mut grid = Vec::with_capacity(n * n);
    for t_row in &blocks {
        for c in 0..n {
            let mut row = Vec::with_capacity(n * n);
            for b in 0..n {
                for block in t_row {
                    row.push(if c == b { block.clone() } else { zero.clone() });
                }
            }
            grid.push(row);
        }
    }
    let by_blocks = ComplexMatrix::from_blocks(&grid)?;
    let pd = kron(&permutation(n), &ComplexMatrix::identity(d))?;
    let t2 = kron(&ComplexMatrix::identity(n), &t.t)?;
    let by_product = pd.matmul(&t2);
    // T₁ = P T₂ P, so T₁ P is the second assembly.
    let t1 = pd.matmul(&t2).matmul(&pd);
    let other = t1.matmul(&pd);
    let gap = by_blocks
        .distance(&by_product)
        .max(by_blocks.distance(&other));
    if !(gap <= tol) {
        return Err(Error::Mismatch(format!(
            "hatted assemblies differ by {gap:.3e}"
        )));
    }
    Ok(by_blocks)
}

fn lift(m: &ComplexMatrix, total: usize) -> Result<ComplexMatrix> {
    if !total.is_multiple_of(m.dim()) {
        return Err(Error::DimensionMismatch {
            expected: m.dim(),
            found: total,
        });
    }
    kron(m, &ComplexMatrix::identity(total / m.dim()))
}

/// `K̂ = (M ⊗ I) T̂ (M⁻¹ ⊗ I)`.
pub fn k_transform(t_hat: &ComplexMatrix, diag: &Diagonalizer) -> Result<ComplexMatrix> {
    let m = lift(diag.matrix(), t_hat.dim())?;
    let mi = lift(diag.inverse(), t_hat.dim())?;
    Ok(m.matmul(t_hat).matmul(&mi))
}

/// `‖(R̂(θ−θ′) ⊗ I) X X′ − X′ X (R̂(θ−θ′) ⊗ I)‖`.
pub fn exchange_relation_residual(
    braid: &SpectralBraid,
    x: &ComplexMatrix,
    x2: &ComplexMatrix,
    theta: f64,
    theta2: f64,
) -> Result<f64> {
    let r = lift(&braid.evaluate(theta - theta2)?, x.dim())?;
    let lhs = r.matmul(&x.matmul(x2));
    let rhs = x2.matmul(x).matmul(&r);
    Ok(lhs.distance(&rhs))
}

/// Residuals of the `p²` projected constraints and their diagonalized form.
#[derive(Debug, Clone)]
pub struct ExchangeResiduals {
    pub labels: Vec<String>,
    /// `‖P_i(f_i(φ)f_j(−φ) X X′ − f_i(−φ)f_j(φ) X′ X)P_j‖`, `φ = θ − θ′`.
    pub projected: Vec<Vec<f64>>,
    /// The same weights on the `(i′, j′)` entries of `K̂ K̂′` and `K̂′ K̂`.
    pub diagonalized: Vec<Vec<f64>>,
    /// Largest gap between the conjugated projected matrices and the masked diagonal ones.
    pub agreement: f64,
    /// Gap between `Σ_ij` of the projected matrices (unweighted) and the full exchange residual.
    pub completeness: f64,
}

impl ExchangeResiduals {
    pub fn max_projected(&self) -> f64 {
        self.projected.iter().flatten().cloned().fold(0.0, f64::max)
    }

    pub fn max_diagonalized(&self) -> f64 {
        self.diagonalized
            .iter()
            .flatten()
            .cloned()
            .fold(0.0, f64::max)
    }

    pub fn get(&self, row: &str, col: &str) -> Option<(f64, f64)> {
        let i = self.labels.iter().position(|l| l == row)?;
        let j = self.labels.iter().position(|l| l == col)?;
        Some((self.projected[i][j], self.diagonalized[i][j]))
    }
}

/// A braid with its diagonalizer, checking candidate operators against the exchange relation.
#[derive(Debug, Clone, Copy)]
pub struct ConstraintSuite<'a> {
    braid: &'a SpectralBraid,
    diag: &'a Diagonalizer,
}

impl<'a> ConstraintSuite<'a> {
    pub fn new(braid: &'a SpectralBraid, diag: &'a Diagonalizer) -> Result<Self> {
        if braid.dim() != diag.matrix().dim() {
            return Err(Error::DimensionMismatch {
                expected: braid.dim(),
                found: diag.matrix().dim(),
            });
        }
        diag.row_projector_indices(braid.basis())?;
        Ok(Self { braid, diag })
    }

    pub fn braid(&self) -> &SpectralBraid {
        self.braid
    }

    pub fn diagonalizer(&self) -> &Diagonalizer {
        self.diag
    }

    /// Block sizes `Tr P_i × Tr P_j` per constraint.
    pub fn block_sizes(&self) -> Vec<Vec<(usize, usize)>> {
        let t = self.braid.basis().traces();
        t.iter()
            .map(|&a| t.iter().map(|&b| (a, b)).collect())
            .collect()
    }

    pub fn exchange_residuals(
        &self,
        x: &ComplexMatrix,
        x2: &ComplexMatrix,
        theta: f64,
        theta2: f64,
    ) -> Result<ExchangeResiduals> {
        let total = x.dim();
        if x2.dim() != total {
            return Err(Error::DimensionMismatch {
                expected: total,
                found: x2.dim(),
            });
        }
        let phi = theta - theta2;
        self.braid.check_pole(phi)?;
        self.braid.check_pole(-phi)?;
        let fp = self.braid.factor_values(phi, &FactorScheme::Plain)?;
        let fm = self.braid.factor_values(-phi, &FactorScheme::Plain)?;
        let basis = self.braid.basis();
        let p = basis.len();
        let lifted: Vec<ComplexMatrix> = basis
            .projectors()
            .iter()
            .map(|q| lift(q, total))
            .collect::<Result<_>>()?;
        let xx = x.matmul(x2);
        let xx_rev = x2.matmul(x);
        let m = lift(self.diag.matrix(), total)?;
        let mi = lift(self.diag.inverse(), total)?;
        let k = m.matmul(x).matmul(&mi);
        let k2 = m.matmul(x2).matmul(&mi);
        let kk = k.matmul(&k2);
        let kk_rev = k2.matmul(&k);
        let block = total / basis.dim();
        let row_idx = self.diag.row_projector_indices(basis)?;
        let owner = |r: usize| row_idx[r / block];

        let mut projected = vec![vec![0.0; p]; p];
        let mut diagonalized = vec![vec![0.0; p]; p];
        let mut agreement: f64 = 0.0;
        let mut sum = ComplexMatrix::zeros(total);
        for i in 0..p {
            for j in 0..p {
                let a: Complex64 = fp[i] * fm[j];
                let b: Complex64 = fm[i] * fp[j];
                let inner = &xx.scale(a) - &xx_rev.scale(b);
                let e = lifted[i].matmul(&inner).matmul(&lifted[j]);
                projected[i][j] = e.max_norm();
                let w = fm[i] * fm[j];
                sum = &sum + &e.scale(w.inv());
                let masked = ComplexMatrix::from_fn(total, |r, c| {
                    if owner(r) == i && owner(c) == j {
                        kk.get(r, c) * a - kk_rev.get(r, c) * b
                    } else {
                        Complex64::new(0.0, 0.0)
                    }
                });
                diagonalized[i][j] = masked.max_norm();
                agreement = agreement.max(m.matmul(&e).matmul(&mi).distance(&masked));
            }
        }
        let r = lift(&self.braid.evaluate(phi)?, total)?;
        let full = &r.matmul(&xx) - &xx_rev.matmul(&r);
        let completeness = sum.distance(&full);
        Ok(ExchangeResiduals {
            labels: basis.labels().to_vec(),
            projected,
            diagonalized,
            agreement,
            completeness,
        })
    }
}

/// `d_j/d_i` for `R̂_d = diag(1, u, v, 1)` of the 6-vertex model at `θ − θ′`.
pub fn vertex6_x_table(gamma: f64, phi: f64) -> [[f64; 4]; 4] {
    let u = (0.5 * (gamma - phi)).cosh() / (0.5 * (gamma + phi)).cosh();
    let v = (0.5 * (gamma - phi)).sinh() / (0.5 * (gamma + phi)).sinh();
    let d = [1.0, u, v, 1.0];
    let mut out = [[0.0; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] = d[j] / d[i];
        }
    }
    out
}

/// `‖(K̂ K̂′ − x_ij K̂′ K̂)_ij‖` per auxiliary entry `(i, j)`.
pub fn x_table_residuals(
    k: &ComplexMatrix,
    k2: &ComplexMatrix,
    x: &[[f64; 4]; 4],
) -> Result<[[f64; 4]; 4]> {
    if !k.dim().is_multiple_of(4) || k2.dim() != k.dim() {
        return Err(Error::DimensionMismatch {
            expected: 4,
            found: k.dim(),
        });
    }
    let d = k.dim() / 4;
    let kk = k.matmul(k2);
    let rev = k2.matmul(k);
    let mut out = [[0.0; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            let lhs = kk.block(i * d, j * d, d);
            let rhs = rev.block(i * d, j * d, d);
            out[i][j] = (&lhs - &rhs.scale(Complex64::new(x[i][j], 0.0))).max_norm();
        }
    }
    Ok(out)
}

/// `L̂(θ) = e^θ L̂₊ − e^{−θ} L̂₋`.
pub fn l_operator(
    l_plus: &ComplexMatrix,
    l_minus: &ComplexMatrix,
    theta: f64,
) -> Result<ComplexMatrix> {
    if l_plus.dim() != l_minus.dim() {
        return Err(Error::DimensionMismatch {
            expected: l_plus.dim(),
            found: l_minus.dim(),
        });
    }
    Ok(&l_plus.scale(Complex64::new(theta.exp(), 0.0))
        - &l_minus.scale(Complex64::new((-theta).exp(), 0.0)))
}

/// Projected and diagonalized constraints on `L̂(θ)`, `L̂(θ′)` for a two-projector braid.
pub fn l_operator_residuals(
    suite: &ConstraintSuite<'_>,
    l_plus: &ComplexMatrix,
    l_minus: &ComplexMatrix,
    theta: f64,
    theta2: f64,
) -> Result<ExchangeResiduals> {
    if suite.braid().basis().len() != 2 {
        return Err(Error::InvalidParameters(
            "L-operator constraints need a two-projector basis".into(),
        ));
    }
    let a = l_operator(l_plus, l_minus, theta)?;
    let b = l_operator(l_plus, l_minus, theta2)?;
    suite.exchange_residuals(&a, &b, theta, theta2)
}

/// Number of entries of `R̂(θ)` with modulus above `tol`.
pub fn nonzero_weights(braid: &SpectralBraid, theta: f64, tol: f64) -> Result<usize> {
    Ok(braid.evaluate(theta)?.count_nonzero(tol))
}
