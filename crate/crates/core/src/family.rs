//! Family descriptors shared by every constructor.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// Standard `GL_q(N)` two-projector series.
    GLq,
    /// Standard three-projector `SO_q(N)` series.
    SOq,
    /// Standard three-projector `Sp_q(N)` series.
    Spq,
    /// Two-projector exotic class for `SO_q(N)`.
    ExoticSO,
    /// Two-projector exotic class for `Sp_q(N)`.
    ExoticSp,
    S03,
    S14,
    AffineSl2,
    Vertex6,
    Vertex8,
    Nested,
}

impl Family {
    pub const ALL: [Family; 11] = [
        Family::GLq,
        Family::SOq,
        Family::Spq,
        Family::ExoticSO,
        Family::ExoticSp,
        Family::S03,
        Family::S14,
        Family::AffineSl2,
        Family::Vertex6,
        Family::Vertex8,
        Family::Nested,
    ];

    pub fn cli_name(self) -> &'static str {
        match self {
            Family::GLq => "glq",
            Family::SOq => "soq",
            Family::Spq => "spq",
            Family::ExoticSO => "exotic-so",
            Family::ExoticSp => "exotic-sp",
            Family::S03 => "s03",
            Family::S14 => "s14",
            Family::AffineSl2 => "affine",
            Family::Vertex6 => "vertex6",
            Family::Vertex8 => "vertex8",
            Family::Nested => "nested",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.cli_name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.cli_name() == s)
            .ok_or_else(|| Error::InvalidParameters(format!("unknown family '{s}'")))
    }
}

/// Selects between the two coefficient choices the standard SO/Sp series admit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Variant {
    /// `SO`: cosh-ratio on `P_0`; `Sp`: single sinh-ratio on `P_0`.
    #[default]
    A,
    /// `SO`: product of two sinh-ratios; `Sp`: cosh-ratio times sinh-ratio.
    B,
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "a" | "A" => Ok(Variant::A),
            "b" | "B" => Ok(Variant::B),
            _ => Err(Error::InvalidParameters(format!("unknown variant '{s}'"))),
        }
    }
}

/// Overall normalization applied to the 8-vertex weights.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Vertex8Normalization {
    /// Raw product formulas.
    #[default]
    None,
    /// Divide all four weights by `a(z)`.
    TopLeftUnit,
    /// Multiply by `ρ(z)/ρ(z⁻¹)` with `ρ(z) = ((1 + q²z)/(1 + z))^k`, `k` the truncation order.
    ProductFactor,
}

/// Parameters that pin down one braid-matrix family instance.
///
/// `n` is the base dimension `N` (matrices are `N² × N²`) except for
/// [`Family::Nested`], where it is the total matrix dimension.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FamilySpec {
    pub family: Family,
    pub n: usize,
    pub q: f64,
    pub gamma: f64,
    pub p: f64,
    pub truncation: usize,
    pub variant: Variant,
    pub normalization: Vertex8Normalization,
}

pub const DEFAULT_TRUNCATION: usize = 40;

impl FamilySpec {
    fn base(family: Family, n: usize) -> Self {
        Self {
            family,
            n,
            q: 1.0,
            gamma: 0.0,
            p: 0.0,
            truncation: DEFAULT_TRUNCATION,
            variant: Variant::A,
            normalization: Vertex8Normalization::None,
        }
    }

    pub fn gl(n: usize, q: f64) -> Self {
        Self {
            q,
            ..Self::base(Family::GLq, n)
        }
    }

    pub fn so(n: usize, q: f64, variant: Variant) -> Self {
        Self {
            q,
            variant,
            ..Self::base(Family::SOq, n)
        }
    }

    pub fn sp(n: usize, q: f64, variant: Variant) -> Self {
        Self {
            q,
            variant,
            ..Self::base(Family::Spq, n)
        }
    }

    pub fn exotic_so(n: usize, q: f64) -> Self {
        Self {
            q,
            ..Self::base(Family::ExoticSO, n)
        }
    }

    pub fn exotic_sp(n: usize, q: f64) -> Self {
        Self {
            q,
            ..Self::base(Family::ExoticSp, n)
        }
    }

    pub fn s03() -> Self {
        Self::base(Family::S03, 2)
    }

    pub fn s14(q: f64) -> Self {
        Self {
            q,
            ..Self::base(Family::S14, 2)
        }
    }

    pub fn affine(q: f64) -> Self {
        Self {
            q,
            ..Self::base(Family::AffineSl2, 2)
        }
    }

    pub fn vertex6(gamma: f64) -> Self {
        Self {
            gamma,
            ..Self::base(Family::Vertex6, 2)
        }
    }

    pub fn vertex8(p: f64, q: f64, truncation: usize) -> Self {
        Self {
            p,
            q,
            truncation,
            ..Self::base(Family::Vertex8, 2)
        }
    }

    pub fn nested(total_dim: usize) -> Self {
        Self::base(Family::Nested, total_dim)
    }

    pub fn with_normalization(self, normalization: Vertex8Normalization) -> Self {
        Self {
            normalization,
            ..self
        }
    }

    /// `+1` for orthogonal families, `−1` for symplectic ones, `0` otherwise.
    pub fn epsilon(&self) -> i32 {
        match self.family {
            Family::SOq | Family::ExoticSO => 1,
            Family::Spq | Family::ExoticSp => -1,
            _ => 0,
        }
    }

    /// `h = ln q`.
    pub fn h(&self) -> f64 {
        self.q.ln()
    }

    /// Side length of the `N² × N²` braid matrix's base space, when it has one.
    pub fn base_dim(&self) -> Option<usize> {
        match self.family {
            Family::Nested => {
                let r = (self.n as f64).sqrt().round() as usize;
                (r * r == self.n).then_some(r)
            }
            _ => Some(self.n),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameters(msg));
        let positive_q = |q: f64| q.is_finite() && q > 0.0;
        match self.family {
            Family::GLq => {
                if self.n < 2 {
                    return bad(format!("GL_q(n) needs n >= 2, got {}", self.n));
                }
                if !positive_q(self.q) {
                    return bad(format!("q must be positive, got {}", self.q));
                }
                if (self.q - 1.0).abs() < 1e-12 {
                    return Err(Error::RepeatedEigenvalues("1".into(), "-q^-2 = -1".into()));
                }
            }
            Family::SOq | Family::Spq => {
                if !positive_q(self.q) || (self.q - 1.0).abs() < 1e-12 {
                    return bad(format!(
                        "standard series needs q > 0, q != 1, got {}",
                        self.q
                    ));
                }
                let ok = matches!(
                    (self.family, self.n),
                    (Family::SOq, 3) | (Family::SOq, 4) | (Family::Spq, 4)
                );
                if !ok {
                    return Err(Error::Unsupported(format!(
                        "standard {} basis only for SO_q(3), SO_q(4), Sp_q(4); got N = {}",
                        self.family, self.n
                    )));
                }
            }
            Family::ExoticSO | Family::ExoticSp => {
                if !positive_q(self.q) {
                    return bad(format!("q must be positive, got {}", self.q));
                }
                let ok = match self.family {
                    Family::ExoticSO => self.n >= 3,
                    _ => self.n >= 4 && self.n.is_multiple_of(2),
                };
                if !ok {
                    return Err(Error::Unsupported(format!(
                        "{} requires {} but N = {}",
                        self.family,
                        if self.family == Family::ExoticSO {
                            "N >= 3"
                        } else {
                            "even N >= 4"
                        },
                        self.n
                    )));
                }
            }
            Family::S03 | Family::S14 | Family::AffineSl2 | Family::Vertex6 | Family::Vertex8 => {
                if self.n != 2 {
                    return bad(format!("{} requires N = 2, got {}", self.family, self.n));
                }
                match self.family {
                    Family::S14 if self.q == 0.0 || !self.q.is_finite() => {
                        return bad("S14 requires q != 0".into())
                    }
                    Family::AffineSl2 if !positive_q(self.q) => {
                        return bad(format!("q must be positive, got {}", self.q))
                    }
                    Family::Vertex6 if !(self.gamma.is_finite() && self.gamma > 0.0) => {
                        return bad(format!("gamma must be positive, got {}", self.gamma))
                    }
                    Family::Vertex8 => {
                        if !(self.p > 0.0 && self.p < 1.0) {
                            return bad(format!("nome p must lie in (0, 1), got {}", self.p));
                        }
                        if !positive_q(self.q) {
                            return bad(format!("q must be positive, got {}", self.q));
                        }
                        if self.truncation == 0 {
                            return bad("truncation order must be >= 1".into());
                        }
                    }
                    _ => {}
                }
            }
            Family::Nested => {
                if self.n < 2 {
                    return bad(format!("nested basis needs n >= 2, got {}", self.n));
                }
            }
        }
        Ok(())
    }
}
