//! Residual checks: braid relation, unitarity, minimal polynomials, factor
//! reconstruction and conjugation between braids on a common basis.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bases::{self, ProjectorBasis};
use crate::braid::{FactorScheme, SpectralBraid};
use crate::error::{Error, Result};
use crate::family::Family;
use crate::tensor::{kron, minimal_polynomial_residual, re, ComplexMatrix};

/// Default seed for sample generation.
pub const DEFAULT_SEED: u64 = 42;
/// Default number of `(θ, θ′)` pairs.
pub const DEFAULT_SAMPLES: usize = 8;

/// One evaluation point of a check.
#[derive(Debug, Clone, PartialEq)]
pub enum Sample {
    Point(f64),
    Pair(f64, f64),
    Triple(f64, f64, f64),
    Label(String),
}

impl std::fmt::Display for Sample {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Sample::Point(t) => write!(f, "{t:.6}"),
            Sample::Pair(a, b) => write!(f, "({a:.6}, {b:.6})"),
            Sample::Triple(a, b, c) => write!(f, "({a:.6}, {b:.6}, {c:.6})"),
            Sample::Label(s) => f.write_str(s),
        }
    }
}

/// Residuals of one named check against a tolerance.
///
/// The verdict is `pass` iff there is at least one sample and the largest
/// residual is strictly below the tolerance. Once finalized, no more samples
/// can be recorded.
#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    name: String,
    samples: Vec<Sample>,
    residuals: Vec<f64>,
    tol: f64,
    metadata: Vec<(String, String)>,
    finalized: bool,
}

impl VerificationReport {
    pub fn new(name: impl Into<String>, tol: f64) -> Self {
        Self {
            name: name.into(),
            samples: Vec::new(),
            residuals: Vec::new(),
            tol,
            metadata: Vec::new(),
            finalized: false,
        }
    }

    pub fn with_metadata(mut self, key: impl Into<String>, value: impl Into<String>) -> Self {
        self.metadata.push((key.into(), value.into()));
        self
    }

    pub fn record(&mut self, sample: Sample, residual: f64) -> Result<()> {
        if self.finalized {
            return Err(Error::Unsupported(format!(
                "report '{}' is finalized",
                self.name
            )));
        }
        self.samples.push(sample);
        self.residuals.push(residual);
        Ok(())
    }

    pub fn finalize(mut self) -> Self {
        self.finalized = true;
        self
    }

    pub fn is_finalized(&self) -> bool {
        self.finalized
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn samples(&self) -> &[Sample] {
        &self.samples
    }

    pub fn residuals(&self) -> &[f64] {
        &self.residuals
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn metadata(&self) -> &[(String, String)] {
        &self.metadata
    }

    /// Largest residual; NaN if any residual is NaN, 0 for an empty report.
    pub fn max_residual(&self) -> f64 {
        self.residuals
            .iter()
            .fold(0.0, |m, &r| if r.is_nan() || r > m { r } else { m })
    }

    pub fn passed(&self) -> bool {
        !self.residuals.is_empty() && self.max_residual() < self.tol
    }
}

/// Region from which `(θ, θ′)` pairs are drawn.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SamplePlan {
    pub lo: f64,
    pub hi: f64,
    /// Minimal distance from any declared pole for `θ`, `θ′` and `θ + θ′`.
    pub margin: f64,
    /// Bound on `|θ + θ′|`.
    pub max_sum: Option<f64>,
}

impl Default for SamplePlan {
    fn default() -> Self {
        Self {
            lo: -1.0,
            hi: 1.0,
            margin: 0.05,
            max_sum: None,
        }
    }
}

impl SamplePlan {
    /// Keeps `z`, `z′` and `zz′` inside `[1/2, 2]` for the 8-vertex weights.
    pub fn vertex8() -> Self {
        let r = std::f64::consts::LN_2;
        Self {
            lo: -r,
            hi: r,
            margin: 0.1,
            max_sum: Some(r),
        }
    }

    pub fn for_braid(braid: &SpectralBraid) -> Self {
        match braid.family().map(|s| s.family) {
            Some(Family::Vertex8) => Self::vertex8(),
            _ => Self::default(),
        }
    }
}

/// Seeded `(θ, θ′)` pairs avoiding the braid's poles.
pub fn sample_pairs(
    braid: &SpectralBraid,
    plan: SamplePlan,
    count: usize,
    seed: u64,
) -> Vec<(f64, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ok = |t: f64| braid.pole_distance(t) >= plan.margin;
    let mut out = Vec::with_capacity(count);
    let mut attempts = 0usize;
    while out.len() < count && attempts < 100_000 {
        attempts += 1;
        let a = rng.random_range(plan.lo..plan.hi);
        let b = rng.random_range(plan.lo..plan.hi);
        if plan.max_sum.is_some_and(|m| (a + b).abs() > m) {
            continue;
        }
        if ok(a) && ok(b) && ok(a + b) {
            out.push((a, b));
        }
    }
    out
}

/// Seeded single points avoiding the braid's poles, including at `−θ`.
pub fn sample_points(braid: &SpectralBraid, plan: SamplePlan, count: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    let mut attempts = 0usize;
    while out.len() < count && attempts < 100_000 {
        attempts += 1;
        let t = rng.random_range(plan.lo..plan.hi);
        if braid.pole_distance(t) >= plan.margin && braid.pole_distance(-t) >= plan.margin {
            out.push(t);
        }
    }
    out
}

/// `R̂⊗I` and `I⊗R̂` on the triple product.
pub struct TripleSpace {
    id: ComplexMatrix,
}

impl TripleSpace {
    pub fn new(n: usize) -> Self {
        Self {
            id: ComplexMatrix::identity(n),
        }
    }

    pub fn r12(&self, r: &ComplexMatrix) -> Result<ComplexMatrix> {
        kron(r, &self.id)
    }

    pub fn r23(&self, r: &ComplexMatrix) -> Result<ComplexMatrix> {
        kron(&self.id, r)
    }

    /// `‖R̂₁₂(a)R̂₂₃(b)R̂₁₂(c) − R̂₂₃(c)R̂₁₂(b)R̂₂₃(a)‖`.
    pub fn residual(&self, a: &ComplexMatrix, b: &ComplexMatrix, c: &ComplexMatrix) -> Result<f64> {
        let lhs = self.r12(a)?.matmul(&self.r23(b)?).matmul(&self.r12(c)?);
        let rhs = self.r23(c)?.matmul(&self.r12(b)?).matmul(&self.r23(a)?);
        Ok(lhs.distance(&rhs))
    }
}

fn base_dim(basis: &ProjectorBasis) -> Result<usize> {
    basis.base_dim().ok_or_else(|| {
        Error::InvalidParameters(format!("dimension {} is not a square", basis.dim()))
    })
}

fn tagged(report: VerificationReport, braid: &SpectralBraid) -> VerificationReport {
    match braid.family() {
        Some(spec) => report.with_metadata("family", format!("{spec:?}")),
        None => report,
    }
}

/// Braid relation at each `(θ, θ′)` with `R̂(θ + θ′)` in the middle.
pub fn check_braid(
    braid: &SpectralBraid,
    samples: &[(f64, f64)],
    tol: f64,
) -> Result<VerificationReport> {
    let space = TripleSpace::new(base_dim(braid.basis())?);
    let mut report = tagged(VerificationReport::new("braid", tol), braid);
    for &(t, t2) in samples {
        let a = braid.evaluate(t)?;
        let b = braid.evaluate(t + t2)?;
        let c = braid.evaluate(t2)?;
        report.record(Sample::Pair(t, t2), space.residual(&a, &b, &c)?)?;
    }
    Ok(report.finalize())
}

/// `R̂(v) = P(0) + v(P(+) − P(−))` of the S14 family.
pub fn s14_at(v: f64) -> Result<ComplexMatrix> {
    let (_, basis) = bases::s14_basis(1.0)?;
    Ok(basis.combine(&[re(1.0), re(v), re(-v)]))
}

/// S14 relation `R̂₁₂(v)R̂₂₃(v′)R̂₁₂(v″) = R̂₂₃(v″)R̂₁₂(v′)R̂₂₃(v)` for independent parameters.
pub fn check_braid_s14(triples: &[(f64, f64, f64)], tol: f64) -> Result<VerificationReport> {
    let space = TripleSpace::new(2);
    let mut report = VerificationReport::new("braid-s14-independent", tol);
    for &(v, v1, v2) in triples {
        if !(v.is_finite() && v1.is_finite() && v2.is_finite()) {
            return Err(Error::NonFinite);
        }
        let r = space.residual(&s14_at(v)?, &s14_at(v1)?, &s14_at(v2)?)?;
        report.record(Sample::Triple(v, v1, v2), r)?;
    }
    Ok(report.finalize())
}

/// `‖R̂(−θ)R̂(θ) − I‖` at each point.
pub fn check_unitarity(
    braid: &SpectralBraid,
    thetas: &[f64],
    tol: f64,
) -> Result<VerificationReport> {
    let id = ComplexMatrix::identity(braid.dim());
    let mut report = tagged(VerificationReport::new("unitarity", tol), braid);
    for &t in thetas {
        let r = braid.evaluate(-t)?.matmul(&braid.evaluate(t)?);
        report.record(Sample::Point(t), r.distance(&id))?;
    }
    Ok(report.finalize())
}

/// `‖Π(R̂ − k_i I)‖`.
pub fn check_minimal_poly(
    rhat: &ComplexMatrix,
    roots: &[Complex64],
    tol: f64,
) -> VerificationReport {
    let mut report = VerificationReport::new("minimal-polynomial", tol);
    let label = roots
        .iter()
        .map(|z| format!("{z:.6}"))
        .collect::<Vec<_>>()
        .join(", ");
    report
        .record(
            Sample::Label(format!("roots [{label}]")),
            minimal_polynomial_residual(rhat, roots),
        )
        .expect("fresh report");
    report.finalize()
}

/// `‖F(−θ)⁻¹F(θ) − R̂(θ)‖` for one factor scheme.
pub fn check_reconstruction(
    braid: &SpectralBraid,
    thetas: &[f64],
    scheme: &FactorScheme,
    tol: f64,
) -> Result<VerificationReport> {
    let name = match scheme {
        FactorScheme::Plain => "factorization-plain",
        FactorScheme::SquareRoot => "factorization-sqrt",
        FactorScheme::Regularized(_) => "factorization-regularized",
    };
    let mut report = tagged(VerificationReport::new(name, tol), braid);
    for &t in thetas {
        let (fm, fp) = braid.factor(t, scheme)?;
        let rec = fm.inverse()?.matmul(&fp);
        report.record(Sample::Point(t), rec.distance(&braid.evaluate(t)?))?;
    }
    Ok(report.finalize())
}

/// `H(θ) = Σ g_i(θ)/f_i(θ) P_i` relating `primed` (factors `g_i`) to `reference` (factors `f_i`).
///
/// Fails unless `R̂′(θ) = H(−θ)⁻¹ R̂(θ) H(θ)` holds within `tol`.
pub fn relate_spectral(
    primed: &SpectralBraid,
    reference: &SpectralBraid,
    theta: f64,
    tol: f64,
) -> Result<ComplexMatrix> {
    if !primed.basis().same_as(reference.basis(), tol) {
        return Err(Error::Mismatch(
            "braids are not built on the same projector basis".into(),
        ));
    }
    let h = |t: f64| -> Result<ComplexMatrix> {
        let g = primed.factor_values(t, &FactorScheme::Plain)?;
        let f = reference.factor_values(t, &FactorScheme::Plain)?;
        let ratios: Vec<Complex64> = g.iter().zip(&f).map(|(g, f)| g / f).collect();
        if ratios
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::Singular {
                condition: f64::INFINITY,
            });
        }
        Ok(reference.basis().combine(&ratios))
    };
    let h_plus = h(theta)?;
    let (h_minus_inv, cond) = h(-theta)?.inverse_with_condition()?;
    if !(cond < crate::braid::CONDITION_LIMIT) {
        return Err(Error::Singular { condition: cond });
    }
    let conj = h_minus_inv
        .matmul(&reference.evaluate(theta)?)
        .matmul(&h_plus);
    let residual = conj.distance(&primed.evaluate(theta)?);
    if !(residual < tol) {
        return Err(Error::Mismatch(format!(
            "conjugation residual {residual:.3e} exceeds tolerance {tol:.3e}"
        )));
    }
    Ok(h_plus)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::{make_braid, BraidOptions, Coefficient};
    use crate::family::FamilySpec;

    fn gl2() -> SpectralBraid {
        make_braid(&FamilySpec::gl(2, 1.3), &BraidOptions::default()).unwrap()
    }

    #[test]
    fn report_is_append_only_after_finalize() {
        let mut r = VerificationReport::new("x", 1.0);
        r.record(Sample::Point(0.0), 0.5).unwrap();
        let mut r = r.finalize();
        assert!(r.record(Sample::Point(1.0), 0.1).is_err());
        assert_eq!(r.residuals(), &[0.5]);
        assert!(r.passed());
    }

    #[test]
    fn verdict_is_strict_and_nan_fails() {
        let mut r = VerificationReport::new("x", 0.5);
        r.record(Sample::Point(0.0), 0.5).unwrap();
        assert!(!r.passed());
        let mut r = VerificationReport::new("x", 1.0);
        r.record(Sample::Point(0.0), f64::NAN).unwrap();
        r.record(Sample::Point(0.0), 0.1).unwrap();
        assert!(!r.passed());
        assert!(!VerificationReport::new("empty", 1.0).passed());
    }

    #[test]
    fn gl2_braid_passes() {
        let b = gl2();
        let s = sample_pairs(&b, SamplePlan::default(), 8, DEFAULT_SEED);
        assert_eq!(s.len(), 8);
        let rep = check_braid(&b, &s, 1e-10).unwrap();
        assert!(rep.passed(), "{}", rep.max_residual());
    }

    #[test]
    fn zero_second_argument_is_exact() {
        let rep = check_braid(&gl2(), &[(0.37, 0.0)], 1e-300).unwrap();
        assert_eq!(rep.max_residual(), 0.0);
    }

    #[test]
    fn cosh_perturbation_fails() {
        let b = gl2();
        let h = 1.3f64.ln();
        let bad = b
            .with_coefficients(vec![
                Coefficient::Cosh {
                    shift: h,
                    scale: 1.0,
                },
                Coefficient::One,
            ])
            .unwrap();
        let s = sample_pairs(&bad, SamplePlan::default(), 8, DEFAULT_SEED);
        let rep = check_braid(&bad, &s, 1e-10).unwrap();
        assert!(rep.max_residual() > 1e-3);
    }

    #[test]
    fn pole_in_sum_is_an_error() {
        let b = gl2();
        let h = 1.3f64.ln();
        assert!(matches!(
            check_braid(&b, &[(0.1, -h - 0.1)], 1e-10),
            Err(Error::PoleProximity { .. })
        ));
    }

    #[test]
    fn s14_independent_parameters() {
        let rep = check_braid_s14(&[(0.3, 1.7, -2.1), (0.4, 0.4, 0.4)], 1e-12).unwrap();
        assert!(rep.passed());
    }

    #[test]
    fn samples_are_deterministic() {
        let b = gl2();
        assert_eq!(
            sample_pairs(&b, SamplePlan::default(), 8, 7),
            sample_pairs(&b, SamplePlan::default(), 8, 7)
        );
    }

    #[test]
    fn relate_to_self_is_identity() {
        let b = gl2();
        let h = relate_spectral(&b, &b, 0.6, 1e-12).unwrap();
        assert!(h.is_close(&ComplexMatrix::identity(4), 1e-14));
    }

    #[test]
    fn relate_cosh_variant() {
        let b = gl2();
        let h = 1.3f64.ln();
        let p = b
            .with_coefficients(vec![
                Coefficient::Cosh {
                    shift: h,
                    scale: 1.0,
                },
                Coefficient::One,
            ])
            .unwrap();
        assert!(relate_spectral(&p, &b, 0.6, 1e-11).is_ok());
        let h0 = relate_spectral(&p, &b, 0.0, 1e-11).unwrap();
        let ratio = h.cosh() / h.sinh();
        let want = b.basis().combine(&[re(ratio), re(1.0)]);
        assert!(h0.is_close(&want, 1e-13));
    }
}
