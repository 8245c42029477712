use foliation_algebra::{GaussRat, TruncatedSeries};
use foliation_core::*;

fn germ(text: &str) -> VectorFieldGerm {
    parse_vector_field(text).unwrap()
}

fn curve(v: &VectorFieldGerm, direction: usize, n: usize) -> FormalCurve {
    match formal_separatrix(v, direction, n).unwrap() {
        SeparatrixOutcome::Curve(c) => c,
        other => panic!("{other:?}"),
    }
}

#[test]
fn diagonal_axis_is_a_separatrix() {
    let c = curve(&germ("v = x d/dx - y d/dy"), 1, 6);
    assert_eq!(c.components[0], TruncatedSeries::variable(6));
    assert_eq!(c.components[1], TruncatedSeries::zero(6));
    assert!(c.residual_order.unwrap() >= 7);
    let other = curve(&germ("v = x d/dx - y d/dy"), 2, 6);
    assert_eq!(other.components[1], TruncatedSeries::variable(6));
    assert_eq!(other.eigenvalue, Some(GaussRat::from_int(-1)));
    assert_eq!(other.eta_residue, Some(GaussRat::from_int(-1)));
}

#[test]
fn parabola_coefficient_is_one_third() {
    let c = curve(&germ("v = x d/dx + (-y + x^2) d/dy"), 1, 4);
    assert_eq!(c.components[0], TruncatedSeries::variable(4));
    assert_eq!(c.components[1].coeff(2), GaussRat::from_ratio(1, 3));
    for k in [1, 3, 4] {
        assert_eq!(c.components[1].coeff(k), GaussRat::from_int(0));
    }
}

#[test]
fn resonance_at_order_two() {
    match formal_separatrix(&germ("v = x d/dx + (2*y + x^2) d/dy"), 1, 6).unwrap() {
        SeparatrixOutcome::Resonance { order, .. } => assert_eq!(order, 2),
        other => panic!("{other:?}"),
    }
}

#[test]
fn solver_preconditions() {
    assert!(matches!(
        formal_separatrix(&germ("v = x d/dx - y d/dy"), 3, 4),
        Err(CoreError::DirectionOutOfRange { index: 3, count: 2 })
    ));
    assert!(matches!(
        formal_separatrix(&germ("v = x d/dx + y^2 d/dy"), 2, 4),
        Err(CoreError::ZeroEigenvalueDirection(2))
    ));
    assert!(matches!(
        formal_separatrix(&germ("v = y d/dx + 2*x d/dy"), 1, 4),
        Err(CoreError::IndeterminateEigenvalues)
    ));
}

#[test]
fn residual_certified_on_fixtures() {
    let fixtures = [
        ("v = x d/dx + (-y + x^2) d/dy", 1),
        ("v = (x + y^2) d/dx + (-2*y + x^3) d/dy", 1),
        ("v = (x + y^2) d/dx + (-2*y + x^3) d/dy", 2),
        ("v = (x + x*y) d/dx + (i*y + x^2) d/dy", 1),
        ("v = x d/dx + (-y + z^2) d/dy + (-1/2*z + x*y) d/dz", 1),
    ];
    for (text, dir) in fixtures {
        let c = curve(&germ(text), dir, 8);
        assert!(c.residual_order.unwrap() >= 9, "{text}");
    }
}

#[test]
fn corners_have_no_transverse_separatrix() {
    let d = LogDivisor::original(&[0, 1]);
    for text in [
        "v = x d/dx - y d/dy",
        "v = x d/dx - 2*y d/dy",
        "v = x*(1 + y) d/dx - 1/2*y d/dy",
        "v = x d/dx + i*y d/dy",
    ] {
        let verdict = corner_has_no_transverse_separatrix(&germ(text), &d, 8).unwrap();
        assert!(matches!(verdict, CornerVerdict::Confirmed { .. }), "{text}: {verdict:?}");
    }
    assert!(matches!(
        corner_has_no_transverse_separatrix(&germ("v = 2*x d/dx + 3*y d/dy"), &d, 8),
        Err(CoreError::NotACorner)
    ));
}

#[test]
fn lifts_meet_the_simple_point() {
    let v = germ("v = x^2 d/dx - y d/dy");
    let d = LogDivisor::original(&[0]);
    let axis = coordinate_axis(2, 0, 6);
    match separatrix_lift_check(&v, &d, &axis, 6).unwrap() {
        LiftVerdict::MeetsSimplePoint { chart, point, status } => {
            assert_eq!(chart, 1);
            assert!(point.iter().all(|c| *c == GaussRat::from_int(0)));
            assert_eq!(status, SimpleStatus::SimplePointA);
        }
        other => panic!("{other:?}"),
    }

    let saddle = germ("v = x d/dx - y d/dy");
    let d2 = LogDivisor::original(&[1]);
    let y_axis = coordinate_axis(2, 1, 6);
    assert!(matches!(
        separatrix_lift_check(&saddle, &d2, &y_axis, 6).unwrap(),
        LiftVerdict::MeetsSimplePoint { chart: 2, .. }
    ));
    let x_axis = coordinate_axis(2, 0, 6);
    assert!(matches!(
        separatrix_lift_check(&saddle, &d2, &x_axis, 6),
        Err(CoreError::CurveInDivisor)
    ));
}

#[test]
fn lift_of_a_solved_separatrix() {
    // the curved separatrix of a (B) point transverse to D = {y = 0}
    let v = germ("v = (-x + y^2) d/dx + y d/dy");
    let d = LogDivisor::original(&[1]);
    assert_eq!(classify_simple(&v, &d).unwrap(), SimpleStatus::SimplePointB);
    let dirs = eigendirections(&v.linear_part()).unwrap();
    let idx = dirs.iter().position(|(l, _)| *l == GaussRat::from_int(1)).unwrap() + 1;
    let c = curve(&v, idx, 8);
    assert_eq!(c.components[0].coeff(2), GaussRat::from_ratio(1, 3));
    assert!(matches!(
        separatrix_lift_check(&v, &d, &c, 8).unwrap(),
        LiftVerdict::MeetsSimplePoint { chart: 2, .. }
    ));
}
