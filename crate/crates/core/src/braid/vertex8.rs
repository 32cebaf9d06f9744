use num_complex::Complex64;

use super::coeff::{Coefficient, Sector};
use crate::error::{Error, Result};
use crate::family::Vertex8Normalization;
use crate::tensor::{re, ComplexMatrix};

/// The four 8-vertex weights at one spectral point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Vertex8Weights {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
}

impl Vertex8Weights {
    /// The symmetric `4 × 4` braid matrix with `a, d` on the corners and `c, b` in the middle.
    pub fn matrix(&self) -> ComplexMatrix {
        let z = re(0.0);
        let (a, b, c, d) = (self.a, self.b, self.c, self.d);
        ComplexMatrix::from_vec(vec![a, z, z, d, z, c, b, z, z, b, c, z, d, z, z, a])
            .expect("16 entries")
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            a: self.a * s,
            b: self.b * s,
            c: self.c * s,
            d: self.d * s,
        }
    }
}

/// Weights `(a, b, c, d)` at `z` from the truncated products, via `a ± d` and `c ± b`.
pub fn vertex8_coeffs(p: f64, q: f64, z: f64, truncation: usize) -> Result<Vertex8Weights> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::InvalidParameters(format!(
            "nome p must lie in (0, 1), got {p}"
        )));
    }
    if !(z > 0.0) || !z.is_finite() {
        return Err(Error::InvalidParameters(format!(
            "z must be positive, got {z}"
        )));
    }
    if truncation == 0 {
        return Err(Error::InvalidParameters(
            "truncation order must be >= 1".into(),
        ));
    }
    let theta = z.ln();
    let mut k = [re(0.0); 4];
    for (slot, sector) in [
        Sector::OnePlus,
        Sector::OneMinus,
        Sector::TwoPlus,
        Sector::TwoMinus,
    ]
    .into_iter()
    .enumerate()
    {
        let c = Coefficient::EightVertex {
            p,
            q,
            sector,
            truncation,
        };
        let den = c.factor(-theta);
        if den.norm() < 1e-300 {
            return Err(Error::InvalidParameters(format!(
                "truncated product vanishes for {sector:?} at z = {z}"
            )));
        }
        k[slot] = c.factor(theta) / den;
    }
    Ok(Vertex8Weights {
        a: (k[0] + k[1]) / 2.0,
        d: (k[0] - k[1]) / 2.0,
        c: (k[2] + k[3]) / 2.0,
        b: (k[2] - k[3]) / 2.0,
    })
}

/// Apply one of the overall normalizations to weights evaluated at `z`.
///
/// `ProductFactor` multiplies by `ρ(z)/ρ(z⁻¹)` with `ρ(z) = ((1 + q²z)/(1 + z))^k`.
pub fn normalize_vertex8(
    w: Vertex8Weights,
    mode: Vertex8Normalization,
    q: f64,
    z: f64,
    truncation: usize,
) -> Result<Vertex8Weights> {
    match mode {
        Vertex8Normalization::None => Ok(w),
        Vertex8Normalization::TopLeftUnit => {
            if w.a.norm() == 0.0 {
                return Err(Error::InvalidParameters("cannot normalize by a = 0".into()));
            }
            Ok(w.scale(w.a.inv()))
        }
        Vertex8Normalization::ProductFactor => {
            let rho = |x: f64| ((1.0 + q * q * x) / (1.0 + x)).powi(truncation as i32);
            Ok(w.scale(re(rho(z) / rho(1.0 / z))))
        }
    }
}
