use foliation_algebra::{GaussRat, MVPoly};
use foliation_core::{formal_separatrix, parse_vector_field, SeparatrixOutcome, VectorFieldGerm};
use foliation_nevanlinna::corpus::{exponential_curve, identity_curve, leaf_fixtures};
use foliation_nevanlinna::{
    log_derivative_check, multiplicity_bookkeeping, multiplicity_bookkeeping_series, parse_curve, parse_expr,
    tautological_pairing, Applicability, Meromorphic, NevanlinnaError, ParametrizedCurve, QuadratureConfig,
    TangentMetric,
};
use num_complex::Complex64;

fn cfg() -> QuadratureConfig {
    QuadratureConfig::default()
}

fn doubling(from: f64, steps: usize) -> Vec<f64> {
    (0..steps).map(|k| from * 2f64.powi(k as i32)).collect()
}

#[test]
fn leaf_fixtures_satisfy_the_identity_exactly() {
    for fx in leaf_fixtures() {
        let b = multiplicity_bookkeeping(&fx.curve, &fx.field, &fx.t0, 12).unwrap();
        assert_eq!((b.mu, b.eta, b.nu), fx.expected, "{}", fx.name);
        assert!(b.identity_holds && b.eta_plus_nu_nonnegative, "{}", fx.name);
    }
}

#[test]
fn parabola_gives_zero_minus_one_one() {
    let f = parse_curve("f(t) = (t, t^2)").unwrap();
    let v = parse_vector_field("(x) d/dx + (2*y) d/dy").unwrap();
    let b = multiplicity_bookkeeping(&f, &v, &GaussRat::from_int(0), 10).unwrap();
    assert_eq!((b.mu, b.eta, b.nu), (0, -1, 1));
}

#[test]
fn non_leaves_are_rejected() {
    let f = parse_curve("f(t) = (t, t)").unwrap();
    let v = parse_vector_field("(x) d/dx + (2*y) d/dy").unwrap();
    let err = multiplicity_bookkeeping(&f, &v, &GaussRat::from_int(0), 10).unwrap_err();
    assert_eq!(err, NevanlinnaError::NotALeaf { order: 1 });
    let g = parse_curve("g(t) = (t, t, t)").unwrap();
    assert!(matches!(
        multiplicity_bookkeeping(&g, &v, &GaussRat::from_int(0), 4),
        Err(NevanlinnaError::DimensionMismatch { .. })
    ));
}

#[test]
fn formal_separatrix_leaf_bookkeeping() {
    let v = parse_vector_field("(x) d/dx + (-y + x^2) d/dy").unwrap();
    let SeparatrixOutcome::Curve(curve) = formal_separatrix(&v, 1, 8).unwrap() else {
        panic!("expected a separatrix");
    };
    let b = multiplicity_bookkeeping_series(&curve.components, &v).unwrap();
    assert_eq!((b.mu, b.eta, b.nu), (0, -1, 1));
    assert!(b.identity_holds);
}

#[test]
fn exp_leaf_at_a_gaussian_point() {
    let f = parse_curve("f(t) = (exp(t), exp(2t))").unwrap();
    let v = VectorFieldGerm::from_components(vec![MVPoly::var(2, 0), MVPoly::var(2, 1).scale(&GaussRat::from_int(2))])
        .unwrap();
    let t0 = GaussRat::from_ratio(-3, 4) + GaussRat::i();
    let b = multiplicity_bookkeeping(&f, &v, &t0, 16).unwrap();
    assert_eq!((b.mu, b.eta, b.nu), (0, 0, 0));
}

#[test]
fn tautological_pairing_for_the_exponential() {
    let grid = doubling(4.0, 7);
    let rep = tautological_pairing(&exponential_curve(), &grid, TangentMetric::Euclidean, &cfg()).unwrap();
    assert_eq!(rep.applicability, Applicability::Transcendental);
    // |f′|² = |e^t|² averages to zero on every circle
    for (v, b) in rep.values.iter().zip(&rep.bounds) {
        assert!(v.abs() <= b + 1e-9, "{v} {b}");
        assert!(*v >= -1e-3);
    }
    assert!(!rep.violation);

    let fs = tautological_pairing(&exponential_curve(), &grid, TangentMetric::FubiniStudy, &cfg()).unwrap();
    assert!(fs.values.iter().all(|v| *v >= 0.0));
}

#[test]
fn algebraic_control_is_not_applicable() {
    let rep = tautological_pairing(&identity_curve(), &doubling(4.0, 4), TangentMetric::Euclidean, &cfg()).unwrap();
    assert!(matches!(rep.applicability, Applicability::NotApplicable { .. }));
    assert!(!rep.violation);
}

#[test]
fn parabola_pairing_uses_declared_derivative_zeros() {
    // f′ = (1, 2t) never vanishes; ln|f′|² averages to ln(1 + 4r²) exactly
    let f = parse_curve("f(t) = (t, t^2)").unwrap();
    let grid = [2.0, 4.0, 8.0];
    let rep = tautological_pairing(&f, &grid, TangentMetric::Euclidean, &cfg()).unwrap();
    for (k, r) in grid.iter().enumerate() {
        let expected = -((1.0 + 4.0 * r * r).ln() - 5f64.ln()) / rep.characteristic[k];
        assert!((rep.values[k] - expected).abs() < 1e-7, "{r}");
    }
    // (t^2, t^4) has f′ vanishing to order 1 at 0
    let g = parse_curve("g(t) = (t^2, t^4) zeros: f' at 0 order 1").unwrap();
    let rep = tautological_pairing(&g, &grid, TangentMetric::Euclidean, &cfg()).unwrap();
    for (k, r) in grid.iter().enumerate() {
        // |f′|² = 4|t|²(1 + 4|t|⁴)
        let mean = |s: f64| 4f64.ln() + 2.0 * s.ln() + (1.0 + 4.0 * s.powi(4)).ln();
        let expected = (r.ln() - mean(*r) + mean(1.0)) / rep.characteristic[k];
        assert!((rep.values[k] - expected).abs() < 1e-7, "{r}");
    }
}

#[test]
fn log_derivative_examples() {
    let grid = doubling(2.0, 6);
    let exp = Meromorphic::entire(parse_expr("exp(t)", "t").unwrap());
    let rep = log_derivative_check(&exp, &grid, &cfg()).unwrap();
    assert!(rep.lhs.iter().all(|v| v.abs() < 1e-12));
    assert!(rep.pass);

    let mut t = Meromorphic::entire(parse_expr("t", "t").unwrap());
    t.singular_points = vec![(Complex64::new(0.0, 0.0), 1)];
    let rep = log_derivative_check(&t, &grid, &cfg()).unwrap();
    assert!(rep.lhs.iter().all(|v| v.abs() < 1e-12));
    assert!(rep.pass);

    let mut te = Meromorphic::entire(parse_expr("t exp(t)", "t").unwrap());
    te.singular_points = vec![(Complex64::new(0.0, 0.0), 1)];
    let rep = log_derivative_check(&te, &grid, &cfg()).unwrap();
    assert!(rep.pass, "{rep:?}");
    // |g′/g| = |1 + 1/t| ≤ 1 + 1/r so the left side stays below ln 2
    assert!(rep.lhs.iter().all(|v| *v >= 0.0 && *v <= 2f64.ln()));
}

#[test]
fn rational_functions_are_accepted() {
    let g = Meromorphic {
        numerator: parse_expr("t^2 + 1/4", "t").unwrap(),
        denominator: parse_expr("t - 3/2", "t").unwrap(),
        singular_points: vec![
            (Complex64::new(0.0, 0.5), 1),
            (Complex64::new(0.0, -0.5), 1),
            (Complex64::new(1.5, 0.0), 1),
        ],
    };
    let rep = log_derivative_check(&g, &doubling(2.0, 5), &cfg()).unwrap();
    assert!(rep.pass);
    // T of a degree-2 rational map grows like 2 ln r
    let last = rep.characteristic.len() - 1;
    let slope = (rep.characteristic[last] - rep.characteristic[last - 1]) / 2f64.ln();
    assert!((slope - 2.0).abs() < 0.05, "{slope}");
}

#[test]
fn curves_report_algebraicity() {
    assert!(ParametrizedCurve::from_components(vec![parse_expr("t^3 - 1", "t").unwrap()]).is_algebraic());
    assert!(!exponential_curve().is_algebraic());
}
