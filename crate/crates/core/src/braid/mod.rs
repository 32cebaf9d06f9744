//! Spectral-parameter braid matrices `R̂(θ) = Σ f_i(θ)/f_i(−θ) P_i`, their
//! factorizations and closed-form `θ → ±∞` limits.

mod coeff;
mod limits;
mod vertex8;

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

pub use coeff::{q_pochhammer, Coefficient, FreeFunction, Sector};
pub use limits::{exotic_exp_2eta, limit};
pub use vertex8::{normalize_vertex8, vertex8_coeffs, Vertex8Weights};

use crate::bases::{self, exotic_d, ProjectorBasis};
use crate::error::{Error, Result};
use crate::family::{Family, FamilySpec, Variant, Vertex8Normalization};
use crate::tensor::{re, ComplexMatrix};

/// Default distance from a declared pole inside which evaluation fails.
pub const POLE_RADIUS: f64 = 1e-6;

/// Condition-number ceiling for the `F(−θ)` factor.
pub const CONDITION_LIMIT: f64 = 1e12;

/// Regulator `y(θ)` used by [`FactorScheme::Regularized`].
#[derive(Clone)]
pub enum Regulator {
    /// `cosh` with the arguments of each `sinh`/`cosh` factor, `1` for other kinds.
    Default,
    /// One function applied to every coefficient.
    Custom {
        tag: String,
        y: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    },
}

impl Regulator {
    pub fn custom(tag: impl Into<String>, y: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Regulator::Custom {
            tag: tag.into(),
            y: Arc::new(y),
        }
    }
}

impl fmt::Debug for Regulator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Regulator::Default => f.write_str("Default"),
            Regulator::Custom { tag, .. } => write!(f, "Custom({tag})"),
        }
    }
}

/// How the individual factors `f_i(θ)` are chosen for a given `k_i(θ)`.
#[derive(Debug, Clone)]
pub enum FactorScheme {
    /// `F(θ) = Σ f_i(θ) P_i`.
    Plain,
    /// `F′(θ) = Σ k_i(θ)^{1/2} P_i`; principal root for `θ ≥ 0` and
    /// `k_i(−θ)^{−1/2}` for `θ < 0`, so `F′(−θ) = F′(θ)⁻¹` holds exactly.
    SquareRoot,
    /// `f_i(θ)/(y(θ) y(−θ))^{1/2}`.
    Regularized(Regulator),
}

/// Overall scalar multiplying `R̂(θ)`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum Normalizer {
    #[default]
    None,
    /// Divide by the `(1,1)` entry of the matrix.
    TopLeftUnit,
    /// Multiply by `ρ(z)/ρ(z⁻¹)`, `ρ(z) = ((1 + q²z)/(1 + z))^k`.
    ProductFactor { q: f64, k: usize },
}

impl Normalizer {
    fn rho(&self, theta: f64) -> Complex64 {
        match *self {
            Normalizer::ProductFactor { q, k } => {
                let z = theta.exp();
                re(((1.0 + q * q * z) / (1.0 + z)).powi(k as i32))
            }
            _ => re(1.0),
        }
    }
}

/// A projector basis paired with one factor function per projector.
#[derive(Debug, Clone)]
pub struct SpectralBraid {
    basis: ProjectorBasis,
    coeffs: Vec<Coefficient>,
    family: Option<FamilySpec>,
    normalizer: Normalizer,
    pole_radius: f64,
}

impl SpectralBraid {
    pub fn new(basis: ProjectorBasis, coeffs: Vec<Coefficient>) -> Result<Self> {
        if basis.len() != coeffs.len() {
            return Err(Error::InvalidParameters(format!(
                "{} coefficients for {} projectors",
                coeffs.len(),
                basis.len()
            )));
        }
        Ok(Self {
            basis,
            coeffs,
            family: None,
            normalizer: Normalizer::None,
            pole_radius: POLE_RADIUS,
        })
    }

    pub fn with_family(mut self, spec: FamilySpec) -> Self {
        self.family = Some(spec);
        self
    }

    pub fn with_normalizer(mut self, normalizer: Normalizer) -> Self {
        self.normalizer = normalizer;
        self
    }

    pub fn with_pole_radius(mut self, radius: f64) -> Self {
        self.pole_radius = radius;
        self
    }

    /// Same basis and family with a different coefficient list.
    pub fn with_coefficients(&self, coeffs: Vec<Coefficient>) -> Result<Self> {
        let mut out = Self::new(self.basis.clone(), coeffs)?;
        out.family = self.family;
        out.normalizer = self.normalizer;
        out.pole_radius = self.pole_radius;
        Ok(out)
    }

    pub fn basis(&self) -> &ProjectorBasis {
        &self.basis
    }

    pub fn coefficients(&self) -> &[Coefficient] {
        &self.coeffs
    }

    pub fn family(&self) -> Option<&FamilySpec> {
        self.family.as_ref()
    }

    pub fn normalizer(&self) -> Normalizer {
        self.normalizer
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    /// All declared real poles.
    pub fn poles(&self) -> Vec<f64> {
        self.coeffs.iter().flat_map(|c| c.poles()).collect()
    }

    /// Distance from `theta` to the nearest declared pole.
    pub fn pole_distance(&self, theta: f64) -> f64 {
        self.poles()
            .iter()
            .map(|p| (theta - p).abs())
            .fold(f64::INFINITY, f64::min)
    }

    pub fn check_pole(&self, theta: f64) -> Result<()> {
        if !theta.is_finite() {
            return Err(Error::NonFinite);
        }
        for pole in self.poles() {
            if (theta - pole).abs() < self.pole_radius {
                return Err(Error::PoleProximity {
                    theta,
                    pole,
                    radius: self.pole_radius,
                });
            }
        }
        Ok(())
    }

    fn raw_ratios(&self, theta: f64) -> Vec<Complex64> {
        self.coeffs.iter().map(|c| c.ratio(theta)).collect()
    }

    /// Overall scalar applied by the normalizer at `theta`.
    pub fn normalization(&self, theta: f64) -> Result<Complex64> {
        match self.normalizer {
            Normalizer::None => Ok(re(1.0)),
            Normalizer::ProductFactor { .. } => {
                Ok(self.normalizer.rho(theta) / self.normalizer.rho(-theta))
            }
            Normalizer::TopLeftUnit => {
                let m = self.basis.combine(&self.raw_ratios(theta));
                let a = m.get(0, 0);
                if a.norm() == 0.0 {
                    return Err(Error::InvalidParameters("top-left weight vanishes".into()));
                }
                Ok(a.inv())
            }
        }
    }

    /// Coefficients `k_i(θ)` including any overall normalization.
    pub fn ratios(&self, theta: f64) -> Result<Vec<Complex64>> {
        self.check_pole(theta)?;
        let s = self.normalization(theta)?;
        let out: Vec<Complex64> = self.raw_ratios(theta).into_iter().map(|k| k * s).collect();
        if out.iter().any(|k| !k.re.is_finite() || !k.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(out)
    }

    /// `R̂(θ) = Σ k_i(θ) P_i`.
    pub fn evaluate(&self, theta: f64) -> Result<ComplexMatrix> {
        Ok(self.basis.combine(&self.ratios(theta)?))
    }

    fn scheme_factors(&self, theta: f64, scheme: &FactorScheme) -> Result<Vec<Complex64>> {
        let rho = self.normalizer.rho(theta);
        match scheme {
            FactorScheme::Plain => Ok(self.coeffs.iter().map(|c| c.factor(theta) * rho).collect()),
            FactorScheme::SquareRoot => {
                let t = theta.abs();
                let s = self.normalizer.rho(t) / self.normalizer.rho(-t);
                Ok(self
                    .coeffs
                    .iter()
                    .map(|c| {
                        let root = (c.ratio(t) * s).sqrt();
                        if theta >= 0.0 {
                            root
                        } else {
                            root.inv()
                        }
                    })
                    .collect())
            }
            FactorScheme::Regularized(reg) => self
                .coeffs
                .iter()
                .map(|c| {
                    let yy = match reg {
                        Regulator::Default => {
                            c.default_regulator(theta) * c.default_regulator(-theta)
                        }
                        Regulator::Custom { y, .. } => y(theta) * y(-theta),
                    };
                    if !(yy > 0.0) || !yy.is_finite() {
                        return Err(Error::InvalidParameters(format!(
                            "regulator product y(θ)y(−θ) = {yy} is not positive at θ = {theta}"
                        )));
                    }
                    Ok(c.factor(theta) * rho / yy.sqrt())
                })
                .collect(),
        }
    }

    /// `(F(−θ), F(θ))` with `F(−θ)⁻¹ F(θ) = R̂(θ)`.
    pub fn factor(
        &self,
        theta: f64,
        scheme: &FactorScheme,
    ) -> Result<(ComplexMatrix, ComplexMatrix)> {
        if self.normalizer == Normalizer::TopLeftUnit {
            return Err(Error::Unsupported(
                "division by the (1,1) weight is not of the form x(θ)/x(−θ)".into(),
            ));
        }
        self.check_pole(theta)?;
        self.check_pole(-theta)?;
        let plus = self.scheme_factors(theta, scheme)?;
        let minus = self.scheme_factors(-theta, scheme)?;
        let mags: Vec<f64> = minus.iter().map(|z| z.norm()).collect();
        let lo = mags.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = mags.iter().cloned().fold(0.0, f64::max);
        let condition = if lo == 0.0 { f64::INFINITY } else { hi / lo };
        if !(condition < CONDITION_LIMIT) {
            return Err(Error::Singular { condition });
        }
        Ok((self.basis.combine(&minus), self.basis.combine(&plus)))
    }

    /// Diagonal `D(θ)` entries `f_i(θ)` for the given scheme, one per projector.
    pub fn factor_values(&self, theta: f64, scheme: &FactorScheme) -> Result<Vec<Complex64>> {
        if self.normalizer == Normalizer::TopLeftUnit {
            return Err(Error::Unsupported(
                "division by the (1,1) weight is not of the form x(θ)/x(−θ)".into(),
            ));
        }
        self.scheme_factors(theta, scheme)
    }
}

/// Extra inputs for [`make_braid`] that a [`FamilySpec`] cannot carry.
#[derive(Debug, Clone, Default)]
pub struct BraidOptions {
    /// Replaces the default `v(z)` of the `S14` family.
    pub s14_v: Option<Coefficient>,
    /// Candidate coefficients for the nested basis, in basis order.
    pub nested: Option<Vec<Coefficient>>,
}

/// `η` of the exotic class: `tanh η = (1 − 4d²)^{1/2}`.
pub fn eta(n: usize, eps: i32, q: f64) -> Result<f64> {
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
    spec.validate()?;
    let d = exotic_d(n, eps, q);
    let x = 1.0 - 4.0 * d * d;
    if !(x > 0.0) {
        return Err(Error::InvalidParameters(format!(
            "4d² = {} is not below 1",
            4.0 * d * d
        )));
    }
    Ok(x.sqrt().atanh())
}

fn sinh_ratio(shift: f64, scale: f64) -> Coefficient {
    Coefficient::Sinh { shift, scale }
}

fn cosh_ratio(shift: f64, scale: f64) -> Coefficient {
    Coefficient::Cosh { shift, scale }
}

/// Default `S14` factor: `v(θ) = cosh ½(h + θ)/cosh ½(h − θ)`, tending to `q^{±1}`.
pub fn s14_default_v(q: f64) -> Result<Coefficient> {
    if !(q > 0.0) || !q.is_finite() {
        return Err(Error::InvalidParameters(
            "the default S14 v(z) needs q > 0; supply a custom v".into(),
        ));
    }
    Ok(cosh_ratio(-0.5 * q.ln(), 0.5))
}

/// Build the braid of a family with the coefficient functions that solve the braid relation.
pub fn make_braid(spec: &FamilySpec, options: &BraidOptions) -> Result<SpectralBraid> {
    spec.validate()?;
    let h = spec.h();
    let nf = spec.n as f64;
    let basis = bases::basis_for(spec)?;
    let mut normalizer = Normalizer::None;
    let coeffs = match spec.family {
        Family::GLq => vec![sinh_ratio(h, 1.0), Coefficient::One],
        Family::SOq => {
            let w = match spec.variant {
                Variant::A => cosh_ratio(nf / 2.0 * h, 1.0),
                Variant::B => Coefficient::Product(vec![
                    sinh_ratio((nf / 2.0 - 1.0) * h, 1.0),
                    sinh_ratio(h, 1.0),
                ]),
            };
            vec![w, sinh_ratio(h, 1.0), Coefficient::One]
        }
        Family::Spq => {
            let half = nf / 2.0;
            let w = match spec.variant {
                Variant::A => sinh_ratio((half + 1.0) * h, 1.0),
                Variant::B => {
                    Coefficient::Product(vec![cosh_ratio(half * h, 1.0), sinh_ratio(h, 1.0)])
                }
            };
            vec![w, sinh_ratio(h, 1.0), Coefficient::One]
        }
        Family::ExoticSO | Family::ExoticSp => {
            let e = eta(spec.n, spec.epsilon(), spec.q)?;
            vec![sinh_ratio(e, 1.0), Coefficient::One]
        }
        Family::S03 => vec![
            Coefficient::S03 { plus: true },
            Coefficient::S03 { plus: false },
        ],
        Family::S14 => {
            let v = match &options.s14_v {
                Some(v) => v.clone(),
                None => s14_default_v(spec.q)?,
            };
            vec![
                Coefficient::One,
                v.clone(),
                Coefficient::OddSign(Box::new(v)),
            ]
        }
        Family::AffineSl2 => vec![Coefficient::One, Coefficient::One, sinh_ratio(h, 0.5)],
        Family::Vertex6 => vec![
            Coefficient::One,
            cosh_ratio(spec.gamma / 2.0, 0.5),
            sinh_ratio(spec.gamma / 2.0, 0.5),
        ],
        Family::Vertex8 => {
            normalizer = match spec.normalization {
                Vertex8Normalization::None => Normalizer::None,
                Vertex8Normalization::TopLeftUnit => Normalizer::TopLeftUnit,
                Vertex8Normalization::ProductFactor => Normalizer::ProductFactor {
                    q: spec.q,
                    k: spec.truncation,
                },
            };
            [
                Sector::OnePlus,
                Sector::OneMinus,
                Sector::TwoPlus,
                Sector::TwoMinus,
            ]
            .into_iter()
            .map(|sector| Coefficient::EightVertex {
                p: spec.p,
                q: spec.q,
                sector,
                truncation: spec.truncation,
            })
            .collect()
        }
        Family::Nested => options.nested.clone().ok_or_else(|| {
            Error::Unsupported(
                "no braid solution is known for the nested basis; pass candidate coefficients"
                    .into(),
            )
        })?,
    };
    Ok(SpectralBraid::new(basis, coeffs)?
        .with_family(*spec)
        .with_normalizer(normalizer))
}

/// Free-function form of [`SpectralBraid::evaluate`].
pub fn evaluate(braid: &SpectralBraid, theta: f64) -> Result<ComplexMatrix> {
    braid.evaluate(theta)
}

/// Free-function form of [`SpectralBraid::factor`].
pub fn factor(
    braid: &SpectralBraid,
    theta: f64,
    scheme: &FactorScheme,
) -> Result<(ComplexMatrix, ComplexMatrix)> {
    braid.factor(theta, scheme)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::c;

    fn gl2() -> SpectralBraid {
        make_braid(&FamilySpec::gl(2, 1.3), &BraidOptions::default()).unwrap()
    }

    #[test]
    fn identity_at_zero() {
        let b = gl2();
        assert!(b
            .evaluate(0.0)
            .unwrap()
            .is_close(&ComplexMatrix::identity(4), 1e-15));
    }

    #[test]
    fn pole_is_rejected() {
        let b = gl2();
        let h = 1.3f64.ln();
        assert!(matches!(b.evaluate(-h), Err(Error::PoleProximity { .. })));
        assert!(matches!(
            b.evaluate(-h + 1e-7),
            Err(Error::PoleProximity { .. })
        ));
        assert!(b.evaluate(-h + 1e-3).is_ok());
    }

    #[test]
    fn plain_factor_is_sinh() {
        let b = gl2();
        let h = 1.3f64.ln();
        let (_, fp) = b.factor(0.4, &FactorScheme::Plain).unwrap();
        let p = b.basis();
        let want = &p.projectors()[1] + &p.projectors()[0].scale(re((h - 0.4).sinh()));
        assert!(fp.is_close(&want, 1e-15));
    }

    #[test]
    fn top_left_unit_cannot_factor() {
        let spec =
            FamilySpec::vertex8(0.1, 1.3, 10).with_normalization(Vertex8Normalization::TopLeftUnit);
        let b = make_braid(&spec, &BraidOptions::default()).unwrap();
        assert!(matches!(
            b.factor(0.3, &FactorScheme::Plain),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn regulator_positivity_enforced() {
        let b = gl2();
        let bad = FactorScheme::Regularized(Regulator::custom("sinh", |t: f64| t.sinh()));
        assert!(b.factor(0.3, &bad).is_err());
    }

    #[test]
    fn nested_needs_coefficients() {
        let spec = FamilySpec::nested(9);
        assert!(matches!(
            make_braid(&spec, &BraidOptions::default()),
            Err(Error::Unsupported(_))
        ));
        let opts = BraidOptions {
            nested: Some(vec![Coefficient::One; 9]),
            ..Default::default()
        };
        let b = make_braid(&spec, &opts).unwrap();
        assert!(b
            .evaluate(0.7)
            .unwrap()
            .is_close(&ComplexMatrix::identity(9), 1e-15));
    }

    #[test]
    fn eta_matches_golden_mean_value() {
        let e = eta(3, 1, 1.0).unwrap();
        assert!((e.sinh() - 5f64.sqrt() / 2.0).abs() < 1e-14);
        assert!(eta(2, 1, 1.0).is_err());
    }

    #[test]
    fn s03_limit_values() {
        let b = make_braid(&FamilySpec::s03(), &BraidOptions::default()).unwrap();
        let k = b.ratios(40.0).unwrap();
        let w = c(1.0, 1.0) / 2f64.sqrt();
        assert!((k[0] - w).norm() < 1e-12);
    }
}
