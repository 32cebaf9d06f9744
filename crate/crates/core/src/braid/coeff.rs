use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::tensor::re;

/// Which of the four 8-vertex sectors a coefficient belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sector {
    /// `a + d`
    OnePlus,
    /// `a − d`
    OneMinus,
    /// `c + b`
    TwoPlus,
    /// `c − b`
    TwoMinus,
}

impl Sector {
    fn sign(self) -> f64 {
        match self {
            Sector::OnePlus | Sector::TwoPlus => 1.0,
            Sector::OneMinus | Sector::TwoMinus => -1.0,
        }
    }
}

/// Caller-supplied factor function `f(θ)` with its declared real poles of `f(θ)/f(−θ)`.
#[derive(Clone)]
pub struct FreeFunction {
    pub tag: String,
    pub f: Arc<dyn Fn(f64) -> Complex64 + Send + Sync>,
    pub poles: Vec<f64>,
}

impl FreeFunction {
    pub fn new(
        tag: impl Into<String>,
        poles: Vec<f64>,
        f: impl Fn(f64) -> Complex64 + Send + Sync + 'static,
    ) -> Self {
        Self {
            tag: tag.into(),
            f: Arc::new(f),
            poles,
        }
    }
}

impl fmt::Debug for FreeFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FreeFunction")
            .field("tag", &self.tag)
            .field("poles", &self.poles)
            .finish()
    }
}

/// Factor function `f_i(θ)` of one projector; its coefficient is `k_i(θ) = f_i(θ)/f_i(−θ)`.
#[derive(Debug, Clone)]
pub enum Coefficient {
    /// `f = 1`.
    One,
    /// `f(θ) = sinh(shift − scale·θ)`; pole at `θ = −shift/scale`.
    Sinh {
        shift: f64,
        scale: f64,
    },
    /// `f(θ) = cosh(shift − scale·θ)`.
    Cosh {
        shift: f64,
        scale: f64,
    },
    /// Product of factors.
    Product(Vec<Coefficient>),
    /// Truncated infinite-product factors of the 8-vertex weights.
    EightVertex {
        p: f64,
        q: f64,
        sector: Sector,
        truncation: usize,
    },
    /// `f(θ) = (g(e^{±θ}))^{1/2}` with `g(z) = (z + z⁻¹) + i(z − z⁻¹)`; `plus` selects `e^{+θ}`.
    S03 {
        plus: bool,
    },
    /// `f(θ) = sinh θ · g(θ)`: flips the sign of the inner ratio.
    OddSign(Box<Coefficient>),
    Free(FreeFunction),
}

/// `(x; p)_k = Π_{n<k} (1 − x pⁿ)`.
pub fn q_pochhammer(x: f64, p: f64, truncation: usize) -> f64 {
    let mut acc = 1.0;
    let mut pn = 1.0;
    for _ in 0..truncation {
        acc *= 1.0 - x * pn;
        pn *= p;
    }
    acc
}

fn s03_g(z: f64) -> Complex64 {
    Complex64::new(z + 1.0 / z, z - 1.0 / z)
}

impl Coefficient {
    /// The factor `f(θ)`.
    pub fn factor(&self, theta: f64) -> Complex64 {
        match self {
            Coefficient::One => re(1.0),
            Coefficient::Sinh { shift, scale } => re((shift - scale * theta).sinh()),
            Coefficient::Cosh { shift, scale } => re((shift - scale * theta).cosh()),
            Coefficient::Product(items) => items.iter().map(|c| c.factor(theta)).product(),
            Coefficient::EightVertex {
                p,
                q,
                sector,
                truncation,
            } => re(eight_vertex_factor(*p, *q, *sector, *truncation, theta)),
            Coefficient::S03 { plus } => {
                let z = if *plus { theta.exp() } else { (-theta).exp() };
                s03_g(z).sqrt()
            }
            Coefficient::OddSign(inner) => inner.factor(theta) * theta.sinh(),
            Coefficient::Free(ff) => (ff.f)(theta),
        }
    }

    /// `k(θ) = f(θ)/f(−θ)`, with removable singularities at `θ = 0` taken by continuity.
    pub fn ratio(&self, theta: f64) -> Complex64 {
        match self {
            Coefficient::One => re(1.0),
            Coefficient::Sinh { shift, scale } => {
                re((shift - scale * theta).sinh() / (shift + scale * theta).sinh())
            }
            Coefficient::Cosh { shift, scale } => {
                re((shift - scale * theta).cosh() / (shift + scale * theta).cosh())
            }
            Coefficient::Product(items) => items.iter().map(|c| c.ratio(theta)).product(),
            Coefficient::OddSign(inner) => -inner.ratio(theta),
            _ => self.factor(theta) / self.factor(-theta),
        }
    }

    /// Real poles of `k(θ)`.
    pub fn poles(&self) -> Vec<f64> {
        match self {
            Coefficient::Sinh { shift, scale } => vec![-shift / scale],
            Coefficient::Product(items) => items.iter().flat_map(|c| c.poles()).collect(),
            Coefficient::EightVertex {
                p,
                q,
                sector,
                truncation,
            } => eight_vertex_poles(*p, *q, *sector, *truncation),
            Coefficient::OddSign(inner) => inner.poles(),
            Coefficient::Free(ff) => ff.poles.clone(),
            _ => Vec::new(),
        }
    }

    /// Default regulator `y(θ)`: `cosh` with the arguments of each `sinh`/`cosh` factor.
    pub fn default_regulator(&self, theta: f64) -> f64 {
        match self {
            Coefficient::Sinh { shift, scale } | Coefficient::Cosh { shift, scale } => {
                (shift - scale * theta).cosh()
            }
            Coefficient::Product(items) => {
                items.iter().map(|c| c.default_regulator(theta)).product()
            }
            Coefficient::OddSign(inner) => inner.default_regulator(theta),
            _ => 1.0,
        }
    }

    /// Short human-readable form.
    pub fn describe(&self) -> String {
        match self {
            Coefficient::One => "1".into(),
            Coefficient::Sinh { shift, scale } => {
                format!("sinh({shift:.6}-{scale}t)/sinh({shift:.6}+{scale}t)")
            }
            Coefficient::Cosh { shift, scale } => {
                format!("cosh({shift:.6}-{scale}t)/cosh({shift:.6}+{scale}t)")
            }
            Coefficient::Product(items) => items
                .iter()
                .map(|c| c.describe())
                .collect::<Vec<_>>()
                .join(" * "),
            Coefficient::EightVertex {
                sector, truncation, ..
            } => {
                format!("8v[{sector:?}, k={truncation}]")
            }
            Coefficient::S03 { plus } => {
                if *plus {
                    "(f(z)/f(1/z))^1/2".into()
                } else {
                    "(f(1/z)/f(z))^1/2".into()
                }
            }
            Coefficient::OddSign(inner) => format!("-({})", inner.describe()),
            Coefficient::Free(ff) => ff.tag.clone(),
        }
    }
}

/// Half of the 8-vertex ratio: numerator of `(a ± d)` or `(c ± b)` at `z = e^θ`.
fn eight_vertex_factor(p: f64, q: f64, sector: Sector, k: usize, theta: f64) -> f64 {
    let z = theta.exp();
    let s = sector.sign();
    match sector {
        Sector::OnePlus | Sector::OneMinus => {
            let sp = p.sqrt();
            q_pochhammer(-s * sp * z / q, p, k) * q_pochhammer(-s * sp * q / z, p, k)
        }
        Sector::TwoPlus | Sector::TwoMinus => {
            let pre = (q / z).sqrt() + s * (z / q).sqrt();
            pre * q_pochhammer(-s * p * z / q, p, k) * q_pochhammer(-s * p * q / z, p, k)
        }
    }
}

/// Real zeros of `f(−θ)` for the 8-vertex factors.
fn eight_vertex_poles(p: f64, q: f64, sector: Sector, k: usize) -> Vec<f64> {
    if sector.sign() > 0.0 {
        return Vec::new();
    }
    let h = q.ln();
    let (base, mut out) = match sector {
        Sector::OneMinus => (p.sqrt(), Vec::new()),
        _ => (p, vec![-h]),
    };
    let mut pn = 1.0;
    for _ in 0..k {
        let x = base * pn;
        // f(−θ) contains (x e^{−θ}/q; p) and (x q e^{θ}; p) factors.
        out.push((x / q).ln());
        out.push(-(x * q).ln());
        pn *= p;
    }
    out
}
