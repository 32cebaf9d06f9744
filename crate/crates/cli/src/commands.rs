use std::fmt::Write as _;

use baxter_core::bases::basis_for;
use baxter_core::braid::limit;
use baxter_core::diag::{explicit_m, solve_diagonalizer, Diagonalizer};
use baxter_core::tensor::{minimal_polynomial_residual, DISTINCT_EIGENVALUE_GAP};
use baxter_core::transfer::{
    exchange_relation_residual, hat_transform, k_transform, monodromy, vertex6_x_table,
    x_table_residuals, ConstraintSuite,
};
use baxter_core::verify::{
    check_braid, check_braid_s14, check_reconstruction, check_unitarity, sample_pairs,
    sample_points, Sample, SamplePlan, VerificationReport,
};
use baxter_core::{
    make_braid, BraidOptions, ComplexMatrix, Error, FactorScheme, Family, FamilySpec,
    ProjectorBasis, Result, SpectralBraid, Variant,
};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::report::{Invocation, ReportDocument};
use crate::{Params, VariantArg};

pub struct Output {
    pub text: String,
    pub doc: ReportDocument,
}

fn default_n(f: Family) -> usize {
    match f {
        Family::SOq | Family::ExoticSO => 3,
        Family::Spq | Family::ExoticSp | Family::Nested => 4,
        _ => 2,
    }
}

/// `soq3` style names carry N as a suffix.
fn parse_family(s: &str) -> Result<(Family, Option<usize>)> {
    if let Ok(f) = s.parse::<Family>() {
        return Ok((f, None));
    }
    let stem = s.trim_end_matches(|c: char| c.is_ascii_digit());
    let digits = &s[stem.len()..];
    match (stem.parse::<Family>(), digits.parse::<usize>()) {
        (Ok(f), Ok(n)) => Ok((f, Some(n))),
        _ => Err(Error::InvalidParameters(format!("unknown family '{s}'"))),
    }
}

pub fn build_spec(p: &Params) -> Result<FamilySpec> {
    let (family, suffix) = parse_family(&p.family)?;
    let n = match (p.n, suffix) {
        (Some(a), Some(b)) if a != b => {
            return Err(Error::InvalidParameters(format!(
                "--n {a} conflicts with family suffix {b}"
            )))
        }
        (Some(a), _) | (None, Some(a)) => a,
        (None, None) => default_n(family),
    };
    let variant = match p.variant {
        VariantArg::A => Variant::A,
        VariantArg::B => Variant::B,
    };
    let mut spec = match family {
        Family::GLq => FamilySpec::gl(n, p.q),
        Family::SOq => FamilySpec::so(n, p.q, variant),
        Family::Spq => FamilySpec::sp(n, p.q, variant),
        Family::ExoticSO => FamilySpec::exotic_so(n, p.q),
        Family::ExoticSp => FamilySpec::exotic_sp(n, p.q),
        Family::S03 => FamilySpec::s03(),
        Family::S14 => FamilySpec::s14(p.q),
        Family::AffineSl2 => FamilySpec::affine(p.q),
        Family::Vertex6 => FamilySpec::vertex6(p.gamma),
        Family::Vertex8 => FamilySpec::vertex8(p.p, p.q, p.trunc),
        Family::Nested => FamilySpec::nested(n),
    };
    spec.n = n;
    spec.validate()?;
    Ok(spec)
}

fn invocation(command: &str, p: &Params, spec: &FamilySpec, tol: f64) -> Invocation {
    Invocation {
        command: command.to_string(),
        family: spec.family.cli_name().to_string(),
        n: spec.n,
        q: spec.q,
        gamma: spec.gamma,
        p: spec.p,
        trunc: spec.truncation,
        variant: format!("{:?}", spec.variant).to_lowercase(),
        theta: p.theta,
        theta2: p.theta2,
        l: p.l,
        samples: p.samples,
        seed: p.seed,
        tol,
    }
}

pub fn run(command: &str, p: &Params) -> Result<Output> {
    let spec = build_spec(p)?;
    let tol = match p.tol {
        Some(t) if t.is_finite() && t > 0.0 => t,
        Some(t) => {
            return Err(Error::InvalidParameters(format!(
                "tolerance must be positive, got {t}"
            )))
        }
        None if spec.family == Family::Vertex8 => 1e-8,
        None => 1e-10,
    };
    let mut text = String::new();
    let _ = writeln!(
        text,
        "baxter {command} family={} n={} seed={} tol={tol:.2e}",
        spec.family.cli_name(),
        spec.n,
        p.seed
    );
    let reports = match command {
        "verify" => verify(&spec, p, tol, &mut text)?,
        "diag" => diag(&spec, p, tol, &mut text)?,
        _ => transfer(&spec, p, tol, &mut text)?,
    };
    let doc = ReportDocument::new(invocation(command, p, &spec, tol), &reports);
    Ok(Output { text, doc })
}

fn single(name: &str, tol: f64, label: String, residual: f64) -> Result<VerificationReport> {
    let mut r = VerificationReport::new(name, tol);
    r.record(Sample::Label(label), residual)?;
    Ok(r.finalize())
}

fn distinct(values: &[Complex64]) -> Vec<Complex64> {
    let mut out: Vec<Complex64> = Vec::new();
    for &v in values {
        if out.iter().all(|u| (u - v).norm() > DISTINCT_EIGENVALUE_GAP) {
            out.push(v);
        }
    }
    out
}

fn braid_for(spec: &FamilySpec) -> Result<SpectralBraid> {
    make_braid(spec, &BraidOptions::default())
}

fn verify(
    spec: &FamilySpec,
    p: &Params,
    tol: f64,
    text: &mut String,
) -> Result<Vec<VerificationReport>> {
    if p.samples == 0 {
        return Err(Error::InvalidParameters(
            "--samples must be at least 1".into(),
        ));
    }
    let b = braid_for(spec)?;
    let plan = SamplePlan::for_braid(&b);
    let pairs = sample_pairs(&b, plan, p.samples, p.seed);
    let points = sample_points(&b, plan, p.samples, p.seed);
    if pairs.len() < p.samples || points.len() < p.samples {
        return Err(Error::InvalidParameters(
            "could not draw enough samples away from poles".into(),
        ));
    }
    let _ = writeln!(text, "projectors: {}", b.basis().labels().join(", "));
    let mut out = vec![
        check_braid(&b, &pairs, tol)?,
        check_unitarity(&b, &points, tol)?,
    ];
    let mut poly = VerificationReport::new("minimal-polynomial", tol);
    for &t in &points {
        let roots = distinct(&b.ratios(t)?);
        poly.record(
            Sample::Point(t),
            minimal_polynomial_residual(&b.evaluate(t)?, &roots),
        )?;
    }
    out.push(poly.finalize());
    out.push(check_reconstruction(
        &b,
        &points,
        &FactorScheme::Plain,
        tol,
    )?);
    if spec.family == Family::S14 {
        let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
        let triples: Vec<(f64, f64, f64)> = (0..p.samples)
            .map(|_| {
                (
                    rng.random_range(-3.0..3.0),
                    rng.random_range(-3.0..3.0),
                    rng.random_range(-3.0..3.0),
                )
            })
            .collect();
        out.push(check_braid_s14(&triples, tol)?);
    }
    Ok(out)
}

fn diagonalizer_for(spec: &FamilySpec, basis: &ProjectorBasis) -> Result<Diagonalizer> {
    match explicit_m(spec) {
        Ok(d) => Ok(d),
        Err(Error::Unsupported(_)) => {
            let order: Vec<&str> = basis.labels().iter().map(String::as_str).collect();
            solve_diagonalizer(basis, &order, 1e-9)
        }
        Err(e) => Err(e),
    }
}

fn fmt_entry(z: Complex64) -> String {
    let clean = |x: f64| if x.abs() < 1e-14 { 0.0 } else { x };
    let (a, b) = (clean(z.re), clean(z.im));
    if b == 0.0 {
        format!("{a:.4}")
    } else {
        format!("{a:.4}{b:+.4}i")
    }
}

fn write_matrix(text: &mut String, title: &str, m: &ComplexMatrix) {
    let _ = writeln!(text, "{title}:");
    for r in 0..m.dim() {
        let row: Vec<String> = m
            .row(r)
            .iter()
            .map(|&z| format!("{:>10}", fmt_entry(z)))
            .collect();
        let _ = writeln!(text, "  [{}]", row.join(" "));
    }
}

/// Runs of equal consecutive diagonal entries as `value ×count`.
fn runs(values: &[Complex64]) -> String {
    let mut parts: Vec<(Complex64, usize)> = Vec::new();
    for &v in values {
        match parts.last_mut() {
            Some((u, k)) if (*u - v).norm() < 1e-9 => *k += 1,
            _ => parts.push((v, 1)),
        }
    }
    parts
        .iter()
        .map(|(v, k)| format!("{} ×{k}", fmt_entry(*v)))
        .collect::<Vec<_>>()
        .join(", ")
}

fn zero_one_residual(c: &ComplexMatrix) -> f64 {
    let diag = c
        .diagonal()
        .iter()
        .map(|z| z.norm().min((z - 1.0).norm()))
        .fold(0.0, f64::max);
    diag.max(c.off_diagonal_max())
}

fn diag(
    spec: &FamilySpec,
    p: &Params,
    tol: f64,
    text: &mut String,
) -> Result<Vec<VerificationReport>> {
    let basis = basis_for(spec)?;
    let d = diagonalizer_for(spec, &basis)?;
    write_matrix(text, "M", d.matrix());
    write_matrix(text, "M^-1", d.inverse());
    let _ = writeln!(text, "row labels: {}", d.diag_labels().join(", "));

    let mut out = Vec::new();
    let mut images = VerificationReport::new("projector-images", tol);
    for (label, proj) in basis.labels().iter().zip(basis.projectors()) {
        images.record(
            Sample::Label(label.clone()),
            zero_one_residual(&d.conjugate(proj)),
        )?;
    }
    out.push(images.finalize());

    match braid_for(spec) {
        Ok(b) => {
            let c = d.conjugate(&b.evaluate(p.theta)?);
            let _ = writeln!(
                text,
                "diagonal at theta={}: {}",
                p.theta,
                runs(&c.diagonal())
            );
            out.push(single(
                "diagonal-form",
                tol,
                format!("theta={}", p.theta),
                c.off_diagonal_max(),
            )?);
            if let (Ok(lp), Ok(lm)) = (limit(spec, 1), limit(spec, -1)) {
                let _ = writeln!(
                    text,
                    "limit(+1) diagonal: {}",
                    runs(&d.conjugate(&lp).diagonal())
                );
                let _ = writeln!(
                    text,
                    "limit(-1) diagonal: {}",
                    runs(&d.conjugate(&lm).diagonal())
                );
                let id = ComplexMatrix::identity(lp.dim());
                out.push(single(
                    "limit-product",
                    tol,
                    "limit(+1)limit(-1)".into(),
                    lp.matmul(&lm).distance(&id),
                )?);
            }
        }
        Err(e) => {
            let _ = writeln!(text, "no braid evaluated ({e}); projector images only");
        }
    }
    Ok(out)
}

fn transfer(
    spec: &FamilySpec,
    p: &Params,
    tol: f64,
    text: &mut String,
) -> Result<Vec<VerificationReport>> {
    let b = braid_for(spec)?;
    let d = diagonalizer_for(spec, b.basis())?;
    let suite = ConstraintSuite::new(&b, &d)?;
    let (t, t2) = (p.theta, p.theta2);
    let x = hat_transform(&monodromy(&b, p.l, t)?, 1e-10)?;
    let y = hat_transform(&monodromy(&b, p.l, t2)?, 1e-10)?;
    let pair = format!("({t}, {t2})");
    if t == t2 {
        let _ = writeln!(text, "theta = theta2: the constraints are degenerate");
    }
    let mut out = vec![single(
        "exchange",
        tol,
        pair.clone(),
        exchange_relation_residual(&b, &x, &y, t, t2)?,
    )?];

    let r = suite.exchange_residuals(&x, &y, t, t2)?;
    let _ = writeln!(
        text,
        "projected constraint residuals (rows P_i, columns P_j):"
    );
    let _ = writeln!(
        text,
        "  {:>8} {}",
        "",
        r.labels
            .iter()
            .map(|l| format!("{l:>10}"))
            .collect::<String>()
    );
    for (i, row) in r.projected.iter().enumerate() {
        let cells: String = row.iter().map(|v| format!("{v:>10.2e}")).collect();
        let _ = writeln!(text, "  {:>8} {cells}", r.labels[i]);
    }
    // classes: leading block, trailing blocks, and the weighted mixed entries
    let mut class = [0f64; 3];
    for (i, row) in r.projected.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            let c = match (i, j) {
                (0, 0) => 0,
                (0, _) | (_, 0) => 2,
                _ => 1,
            };
            class[c] = class[c].max(*v);
        }
    }
    let _ = writeln!(
        text,
        "constraint classes: (1,1) {:.2e}; (i,j > 1) {:.2e}; (1,j)/(j,1) {:.2e}",
        class[0], class[1], class[2]
    );
    let mut projected = VerificationReport::new("projected-constraints", tol);
    let mut diagonalized = VerificationReport::new("diagonalized-constraints", tol);
    for (i, li) in r.labels.iter().enumerate() {
        for (j, lj) in r.labels.iter().enumerate() {
            projected.record(Sample::Label(format!("{li},{lj}")), r.projected[i][j])?;
            diagonalized.record(Sample::Label(format!("{li},{lj}")), r.diagonalized[i][j])?;
        }
    }
    out.push(projected.finalize());
    out.push(diagonalized.finalize());
    out.push(single(
        "constraint-completeness",
        tol,
        pair.clone(),
        r.agreement.max(r.completeness),
    )?);

    if spec.family == Family::Vertex6 {
        let table = vertex6_x_table(spec.gamma, t - t2);
        let k = k_transform(&x, &d)?;
        let k2 = k_transform(&y, &d)?;
        let res = x_table_residuals(&k, &k2, &table)?;
        let _ = writeln!(text, "x table (K K' = x K' K per auxiliary entry):");
        let mut rep = VerificationReport::new("x-table", tol);
        for (i, (xs, rs)) in table.iter().zip(&res).enumerate() {
            let cells: String = xs.iter().map(|v| format!("{v:>10.5}")).collect();
            let _ = writeln!(text, "  {cells}");
            for (j, r) in rs.iter().enumerate() {
                rep.record(Sample::Label(format!("({},{})", i + 1, j + 1)), *r)?;
            }
        }
        out.push(rep.finalize());
    }
    Ok(out)
}
