use baxter_core::braid::{eta, limit, make_braid, BraidOptions, SpectralBraid};
use baxter_core::diag::explicit_m;
use baxter_core::tensor::re;
use baxter_core::transfer::{
    exchange_relation_residual, hat_transform, k_transform, l_operator_residuals, monodromy,
    monodromy_from_matrix, nonzero_weights, vertex6_x_table, x_table_residuals, ConstraintSuite,
};
use baxter_core::{ComplexMatrix, FamilySpec};

fn braid(spec: &FamilySpec) -> SpectralBraid {
    make_braid(spec, &BraidOptions::default()).unwrap()
}

fn hat(b: &SpectralBraid, l: usize, t: f64) -> ComplexMatrix {
    hat_transform(&monodromy(b, l, t).unwrap(), 1e-13).unwrap()
}

#[test]
fn vertex6_exchange_and_projected_constraints() {
    let spec = FamilySpec::vertex6(0.9);
    let b = braid(&spec);
    let d = explicit_m(&spec).unwrap();
    let suite = ConstraintSuite::new(&b, &d).unwrap();
    for l in [1, 2] {
        let (x, y) = (hat(&b, l, 0.3), hat(&b, l, 0.7));
        assert!(exchange_relation_residual(&b, &x, &y, 0.3, 0.7).unwrap() < 1e-10);
        let r = suite.exchange_residuals(&x, &y, 0.3, 0.7).unwrap();
        assert!(r.max_projected() < 1e-10, "{r:?}");
        assert!(r.max_diagonalized() < 1e-10);
        assert!(r.agreement < 1e-12);
        assert!(r.completeness < 1e-12);
    }
}

#[test]
fn x_table_matches_entry_assignment() {
    let g = 0.9;
    let (t, t2) = (0.3, 0.7);
    let phi: f64 = t - t2;
    let u = (0.5 * (g - phi)).cosh() / (0.5 * (g + phi)).cosh();
    let v = (0.5 * (g - phi)).sinh() / (0.5 * (g + phi)).sinh();
    // one-based (i, j) -> x
    let mut want = [[f64::NAN; 4]; 4];
    for (i, j) in [(1, 1), (2, 2), (3, 3), (4, 4), (1, 4), (4, 1)] {
        want[i - 1][j - 1] = 1.0;
    }
    for (i, j) in [(1, 2), (4, 2)] {
        want[i - 1][j - 1] = u;
    }
    for (i, j) in [(2, 1), (2, 4)] {
        want[i - 1][j - 1] = 1.0 / u;
    }
    for (i, j) in [(1, 3), (4, 3)] {
        want[i - 1][j - 1] = v;
    }
    for (i, j) in [(3, 1), (3, 4)] {
        want[i - 1][j - 1] = 1.0 / v;
    }
    want[2][1] = u / v;
    want[1][2] = v / u;
    let table = vertex6_x_table(g, phi);
    for i in 0..4 {
        for j in 0..4 {
            assert!((table[i][j] - want[i][j]).abs() < 1e-14, "({i},{j})");
        }
    }
    let b = braid(&FamilySpec::vertex6(g));
    let d = explicit_m(&FamilySpec::vertex6(g)).unwrap();
    for l in [1, 2] {
        let k = k_transform(&hat(&b, l, t), &d).unwrap();
        let k2 = k_transform(&hat(&b, l, t2), &d).unwrap();
        let res = x_table_residuals(&k, &k2, &want).unwrap();
        for row in res {
            for r in row {
                assert!(r < 1e-10);
            }
        }
    }
}

#[test]
fn k_hat_block_pattern() {
    let b = braid(&FamilySpec::vertex6(0.9));
    let d = explicit_m(&FamilySpec::vertex6(0.9)).unwrap();
    for l in [1, 2] {
        let m = monodromy(&b, l, 0.3).unwrap();
        let x = hat_transform(&m, 1e-13).unwrap();
        let k2 = k_transform(&x, &d).unwrap().scale(re(2.0));
        let [a, bb, c, dd] = [m.block(0, 0), m.block(0, 1), m.block(1, 0), m.block(1, 1)];
        let apd = &a + &dd;
        let amd = &a - &dd;
        let bpc = &bb + &c;
        let bmc = &bb - &c;
        let want = ComplexMatrix::from_blocks(&[
            vec![apd.clone(), bpc.clone(), bmc.clone(), amd.clone()],
            vec![bpc.clone(), apd.clone(), -&amd, -&bmc],
            vec![bmc.clone(), amd.clone(), -&apd, -&bpc],
            vec![amd, bmc, bpc, apd.clone()],
        ])
        .unwrap();
        assert!(k2.is_close(&want, 1e-12));
        assert!((k2.trace().scale(0.5) - apd.trace()).norm() < 1e-12);
        assert!((apd.trace() - m.matrix().trace()).norm() < 1e-12);
    }
}

#[test]
fn equal_spectral_points_degenerate() {
    let spec = FamilySpec::vertex6(0.9);
    let b = braid(&spec);
    let d = explicit_m(&spec).unwrap();
    let suite = ConstraintSuite::new(&b, &d).unwrap();
    let x = hat(&b, 1, 0.3);
    let r = suite.exchange_residuals(&x, &x, 0.3, 0.3).unwrap();
    assert_eq!(r.max_projected(), 0.0);
}

#[test]
fn exotic_so3_constraint_classes() {
    let spec = FamilySpec::exotic_so(3, 1.5);
    let b = braid(&spec);
    let d = explicit_m(&spec).unwrap();
    let suite = ConstraintSuite::new(&b, &d).unwrap();
    let (x, y) = (hat(&b, 1, 0.3), hat(&b, 1, 0.7));
    assert!(exchange_relation_residual(&b, &x, &y, 0.3, 0.7).unwrap() < 1e-9);
    let r = suite.exchange_residuals(&x, &y, 0.3, 0.7).unwrap();
    for (i, j) in [("P0", "P0"), ("P1", "P1"), ("P0", "P1"), ("P1", "P0")] {
        let (p, q) = r.get(i, j).unwrap();
        assert!(p < 1e-10 && q < 1e-10, "{i}{j}: {p:.3e} {q:.3e}");
    }
    assert!(r.agreement < 1e-12);
}

#[test]
fn exotic_l_operators_from_limits() {
    let q = 1.3;
    let spec = FamilySpec::exotic_so(3, q);
    let b = braid(&spec);
    let d = explicit_m(&spec).unwrap();
    let suite = ConstraintSuite::new(&b, &d).unwrap();
    let e = eta(3, 1, q).unwrap();
    let tp = hat_transform(
        &monodromy_from_matrix(&limit(&spec, 1).unwrap(), 1).unwrap(),
        1e-13,
    )
    .unwrap();
    let tm = hat_transform(
        &monodromy_from_matrix(&limit(&spec, -1).unwrap(), 1).unwrap(),
        1e-13,
    )
    .unwrap();
    let lp = tp.scale(re(e.exp()));
    let lm = tm.scale(re((-e).exp()));
    let r = l_operator_residuals(&suite, &lp, &lm, 0.3, 0.8).unwrap();
    assert!(r.max_projected() < 1e-9, "{r:?}");
    assert!(r.max_diagonalized() < 1e-9);

    // perturb one entry: first-row/column weighted classes break
    let mut bad = lp.as_slice().to_vec();
    bad[1] += re(0.37);
    bad[27 * 5 + 3] += re(-0.21);
    let bad = ComplexMatrix::from_vec(bad).unwrap();
    let r = l_operator_residuals(&suite, &bad, &lm, 0.3, 0.8).unwrap();
    let worst = r
        .get("P0", "P1")
        .unwrap()
        .0
        .max(r.get("P1", "P0").unwrap().0);
    assert!(worst > 1e-3);
}

#[test]
fn exotic_nonzero_counts() {
    for (n, want) in [(3, 15), (4, 28)] {
        let b = braid(&FamilySpec::exotic_so(n, 1.5));
        assert_eq!(nonzero_weights(&b, 0.37, 1e-12).unwrap(), want);
        assert_eq!(want, n * (2 * n - 1));
    }
}
