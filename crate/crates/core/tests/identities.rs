use baxter_core::bases::{basis_for, exotic_d};
use baxter_core::braid::{eta, limit, make_braid, BraidOptions, SpectralBraid};
use baxter_core::tensor::{permutation, re};
use baxter_core::verify::{check_minimal_poly, relate_spectral};
use baxter_core::{ComplexMatrix, FamilySpec, Variant};
use num_complex::Complex64;
use proptest::prelude::*;

fn braid(spec: &FamilySpec) -> SpectralBraid {
    make_braid(spec, &BraidOptions::default()).unwrap()
}

fn trace_of(spec: &FamilySpec, label: &str) -> f64 {
    basis_for(spec)
        .unwrap()
        .projector(label)
        .unwrap()
        .trace()
        .re
}

#[test]
fn projector_traces() {
    for n in 2..=5usize {
        let spec = FamilySpec::gl(n, 1.3);
        assert!((trace_of(&spec, "P-") - (n * (n - 1) / 2) as f64).abs() < 1e-10);
        assert!((trace_of(&spec, "P+") - (n * (n + 1) / 2) as f64).abs() < 1e-10);
    }
    for spec in [
        FamilySpec::so(3, 1.3, Variant::A),
        FamilySpec::so(4, 1.3, Variant::A),
        FamilySpec::sp(4, 1.3, Variant::A),
    ] {
        assert!((trace_of(&spec, "P0") - 1.0).abs() < 1e-10, "{spec:?}");
    }
    for n in 3..=6usize {
        let spec = FamilySpec::exotic_so(n, 1.4);
        assert!((trace_of(&spec, "P1") - (n * n - 1) as f64).abs() < 1e-10);
        assert!((trace_of(&spec, "P0") - 1.0).abs() < 1e-10);
    }
}

fn limit_specs() -> Vec<FamilySpec> {
    vec![
        FamilySpec::gl(2, 1.3),
        FamilySpec::gl(3, 0.7),
        FamilySpec::so(3, 1.3, Variant::A),
        FamilySpec::so(4, 1.3, Variant::B),
        FamilySpec::sp(4, 1.3, Variant::A),
        FamilySpec::sp(4, 1.3, Variant::B),
        FamilySpec::exotic_so(3, 1.5),
        FamilySpec::exotic_sp(4, 1.5),
        FamilySpec::affine(1.3),
        FamilySpec::vertex6(0.9),
    ]
}

#[test]
fn limits_match_large_theta() {
    for spec in limit_specs() {
        let b = braid(&spec);
        let lp = limit(&spec, 1).unwrap();
        let lm = limit(&spec, -1).unwrap();
        assert!(lp.distance(&b.evaluate(40.0).unwrap()) < 1e-8, "{spec:?}");
        assert!(lm.distance(&b.evaluate(-40.0).unwrap()) < 1e-8, "{spec:?}");
        assert!(lp
            .matmul(&lm)
            .is_close(&ComplexMatrix::identity(b.dim()), 1e-12));
    }
}

#[test]
fn vertex6_limit_is_diagonal_after_permutation() {
    let g: f64 = 0.9;
    let spec = FamilySpec::vertex6(g);
    for s in [1, -1] {
        let r = permutation(2).matmul(&limit(&spec, s).unwrap());
        let e = (-(s as f64) * g).exp();
        let want = ComplexMatrix::diag(&[re(1.0), re(e), re(e), re(1.0)]);
        assert!(r.is_close(&want, 1e-14));
    }
}

#[test]
fn exotic_constants() {
    for q in [0.6, 1.0, 1.5, 2.2] {
        let e = eta(3, 1, q).unwrap();
        assert!((2.0 * e.cosh() - (q + 1.0 / q + 1.0)).abs() < 1e-14 * (q + 1.0 / q + 1.0));
    }
    assert!((eta(3, 1, 1.0).unwrap().sinh() - 5f64.sqrt() / 2.0).abs() < 1e-14);
    for n in 3..=5usize {
        let want = (1.0 - 4.0 / (n * n) as f64).sqrt();
        assert!((eta(n, 1, 1.0).unwrap().tanh() - want).abs() < 1e-14);
        assert!((exotic_d(n, 1, 1.0) - 1.0 / n as f64).abs() < 1e-15);
    }
}

#[test]
fn exotic_hecke_identity_at_unit_q() {
    for n in [3, 4, 5] {
        let spec = FamilySpec::exotic_so(n, 1.0);
        let e = eta(n, 1, 1.0).unwrap();
        let rp = limit(&spec, 1).unwrap();
        let roots: [Complex64; 2] = [re(1.0), re(-(-2.0 * e).exp())];
        let rep = check_minimal_poly(&rp, &roots, 1e-12);
        assert!(rep.passed(), "N={n}: {:.3e}", rep.max_residual());
    }
}

fn two_term(spec: &FamilySpec, x: f64, theta: f64) -> ComplexMatrix {
    let rp = limit(spec, 1).unwrap();
    let rm = limit(spec, -1).unwrap();
    let (a, b) = ((x + theta).exp(), (-x - theta).exp());
    (&rp.scale(re(a)) - &rm.scale(re(b))).scale(re(1.0 / (a - b)))
}

#[test]
fn two_term_forms() {
    let thetas = [-0.83, -0.31, 0.12, 0.47, 0.95];
    for q in [0.7, 1.3] {
        let spec = FamilySpec::gl(3, q);
        let b = braid(&spec);
        for t in thetas {
            assert!(two_term(&spec, q.ln(), t).distance(&b.evaluate(t).unwrap()) < 1e-10);
        }
    }
    for spec in [
        FamilySpec::exotic_so(3, 1.5),
        FamilySpec::exotic_so(4, 1.0),
        FamilySpec::exotic_sp(4, 1.5),
    ] {
        let b = braid(&spec);
        let e = eta(spec.n, spec.epsilon(), spec.q).unwrap();
        for t in thetas {
            assert!(
                two_term(&spec, e, t).distance(&b.evaluate(t).unwrap()) < 1e-10,
                "{spec:?}"
            );
        }
    }
}

#[test]
fn variants_related_by_spectral_conjugation() {
    for spec_b in [
        FamilySpec::so(3, 1.3, Variant::B),
        FamilySpec::sp(4, 1.3, Variant::B),
    ] {
        let spec_a = FamilySpec {
            variant: Variant::A,
            ..spec_b
        };
        let (a, b) = (braid(&spec_a), braid(&spec_b));
        for t in [-0.4, 0.2, 0.6] {
            relate_spectral(&b, &a, t, 1e-10).unwrap();
        }
    }
    // different bases cannot be related
    let gl = braid(&FamilySpec::gl(2, 1.3));
    let v6 = braid(&FamilySpec::vertex6(0.9));
    assert!(relate_spectral(&gl, &v6, 0.3, 1e-10).is_err());
}

proptest! {
    #[test]
    fn limit_inverse_pairs(q in 0.5f64..2.0) {
        prop_assume!((q - 1.0).abs() > 1e-3);
        for spec in [FamilySpec::gl(2, q), FamilySpec::so(3, q, Variant::A), FamilySpec::exotic_so(3, q)] {
            let lp = limit(&spec, 1).unwrap();
            let lm = limit(&spec, -1).unwrap();
            prop_assert!(lp.matmul(&lm).is_close(&ComplexMatrix::identity(lp.dim()), 1e-11));
        }
    }

    #[test]
    fn two_term_form_for_any_theta(q in 0.5f64..2.0, t in -1.5f64..1.5) {
        let spec = FamilySpec::exotic_so(3, q);
        let e = eta(3, 1, q).unwrap();
        let b = braid(&spec);
        prop_assert!(two_term(&spec, e, t).distance(&b.evaluate(t).unwrap()) < 1e-9);
    }
}
