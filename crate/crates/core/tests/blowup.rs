use foliation_algebra::{GaussRat, MVPoly};
use foliation_core::*;

fn germ(text: &str) -> VectorFieldGerm {
    parse_vector_field(text).unwrap()
}

fn poly(text: &str, vars: &[&str]) -> MVPoly {
    let vars: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
    foliation_algebra::parse_polynomial(text, &vars).unwrap()
}

fn q(n: i64) -> GaussRat {
    GaussRat::from_int(n)
}

#[test]
fn chart_substitutions() {
    let charts = blowup_charts(2).unwrap();
    assert_eq!(charts.len(), 2);
    let xy = ["x", "y"];
    assert_eq!(charts[0].substitution(), vec![poly("x", &xy), poly("x*y", &xy)]);
    assert_eq!(charts[1].substitution(), vec![poly("x*y", &xy), poly("y", &xy)]);
    let charts = blowup_charts(3).unwrap();
    assert_eq!(charts.len(), 3);
    let xyz = ["x", "y", "z"];
    assert_eq!(
        charts[0].substitution(),
        vec![poly("x", &xyz), poly("x*y", &xyz), poly("x*z", &xyz)]
    );
    assert!(matches!(blowup_charts(1), Err(CoreError::DimensionTooSmall(1))));
}

#[test]
fn chart_transition_inverts_w_and_scales_u() {
    let charts = blowup_charts(2).unwrap();
    // chart 1 point (u, w) = (3, 2) goes to (w', u') = (1/2, 6) in chart 2
    let p = charts[0].transition_to(&charts[1], &[q(3), q(2)]).unwrap();
    assert_eq!(p, vec![GaussRat::from_ratio(1, 2), q(6)]);
    assert_eq!(charts[1].map_point(&p), charts[0].map_point(&[q(3), q(2)]));
    assert!(charts[0].transition_to(&charts[1], &[q(3), q(0)]).is_none());
    let formulas = charts[0].transition_formulas(&charts[1]);
    let xy = ["x", "y"];
    // w' = 1/w, u' = u·w
    assert_eq!(formulas[0], (poly("1", &xy), poly("y", &xy)));
    assert_eq!(formulas[1], (poly("x*y", &xy), poly("1", &xy)));
}

#[test]
fn radial_transform_is_dicritical() {
    let charts = blowup_charts(2).unwrap();
    let t = transform_vector_field(&germ("v = x d/dx + y d/dy"), &charts[0]);
    assert_eq!(t.raw_field.components(), &[poly("x", &["x", "y"]), MVPoly::zero(2)]);
    assert_eq!(t.saturation_exponent, 1);
    assert_eq!(t.saturated_field.components(), &[MVPoly::one(2), MVPoly::zero(2)]);
    assert!(!t.exceptional_invariant);
}

#[test]
fn saddle_transform_keeps_e_invariant() {
    let charts = blowup_charts(2).unwrap();
    let t = transform_vector_field(&germ("v = x d/dx - y d/dy"), &charts[0]);
    assert_eq!(t.saturation_exponent, 0);
    assert_eq!(t.raw_field.components(), &[poly("x", &["x", "y"]), poly("-2*y", &["x", "y"])]);
    assert!(t.exceptional_invariant);
    assert_eq!(t.divisor.axes(), vec![0]);
    let eig = foliation_algebra::eigenvalues_exact(&t.saturated_field.linear_part());
    let mut values = eig.exact().unwrap().to_vec();
    values.sort();
    assert_eq!(values, vec![q(-2), q(1)]);
}

#[test]
fn nilpotent_transform_has_one_point_on_e() {
    let v = germ("v = y d/dx + x^2 d/dy");
    let charts = blowup_charts(2).unwrap();
    let t = transform_vector_field(&v, &charts[0]);
    assert_eq!(t.saturation_exponent, 0);
    assert_eq!(
        t.saturated_field.components(),
        &[poly("x*y", &["x", "y"]), poly("x - y^2", &["x", "y"])]
    );
    let b = Blowup::new(&v, &LogDivisor::empty(), 1).unwrap();
    assert_eq!(b.locus.points.len(), 1);
    assert_eq!(b.locus.points[0].chart, charts[0]);
    assert!(b.locus.points[0].is_chart_origin());
    let (g, _) = b.point_germ(&b.locus.points[0]);
    assert_eq!(classify_reduced(&g).unwrap(), ReducedVerdict::NotReduced);
}

#[test]
fn hyperbolic_rotation_transform() {
    // y d/dx + x d/dy: chart field (x*y, 1 - y^2), E invariant
    let charts = blowup_charts(2).unwrap();
    let t = transform_vector_field(&germ("v = y d/dx + x d/dy"), &charts[0]);
    assert_eq!(t.saturation_exponent, 0);
    assert_eq!(
        t.saturated_field.components(),
        &[poly("x*y", &["x", "y"]), poly("1 - y^2", &["x", "y"])]
    );
    assert!(t.exceptional_invariant);
}

#[test]
fn pullback_examples() {
    let charts = blowup_charts(2).unwrap();
    let xy = ["x", "y"];
    let dz1 = pullback_one_form(&[MVPoly::one(2), MVPoly::zero(2)], &charts[0]).unwrap();
    assert_eq!(dz1.log_coefficient, poly("x", &xy));
    assert_eq!(dz1.log_quotient, MVPoly::one(2));
    assert!(dz1.dw_coefficients[1].is_zero());
    let dz2 = pullback_one_form(&[MVPoly::zero(2), MVPoly::one(2)], &charts[0]).unwrap();
    assert_eq!(dz2.log_coefficient, poly("x*y", &xy));
    assert_eq!(dz2.dw_coefficients[1], poly("x", &xy));
    assert_eq!(dz2.log_quotient, poly("y", &xy));
    assert_eq!(dz2.dw_quotients[1], MVPoly::one(2));
    // x dy - y dx = u^2 dw
    let rot = pullback_one_form(&[poly("-y", &xy), poly("x", &xy)], &charts[0]).unwrap();
    assert!(rot.log_coefficient.is_zero());
    assert_eq!(rot.dw_coefficients[1], poly("x^2", &xy));
    assert_eq!(rot.dw_quotients[1], poly("x", &xy));
}

#[test]
fn exceptional_multiplicity_examples() {
    let z2 = poly("y", &["x", "y"]);
    assert_eq!(exceptional_multiplicity(&z2, &[0]).unwrap(), 1);
    for k in 1..=6 {
        let path = vec![0; k];
        assert_eq!(exceptional_multiplicity(&z2, &path).unwrap(), k as u32);
        let z1k = poly(&format!("x^{k}"), &["x", "y"]);
        assert_eq!(exceptional_multiplicity(&z1k, &path).unwrap(), k as u32);
    }
    assert!(matches!(
        exceptional_multiplicity(&MVPoly::zero(2), &[0]),
        Err(CoreError::ZeroPolynomial)
    ));
}

#[test]
fn effectivity_examples() {
    assert_eq!(effectivity_count(2, 4, 2).verdict, EffectivityVerdict::SectionExists(11));
    assert_eq!(effectivity_count(2, 4, 2).degree, 4);
    assert_eq!(effectivity_count(2, 1, 1).verdict, EffectivityVerdict::SectionExists(2));
    let c = effectivity_count(3, 8, 1);
    assert_eq!((c.degree, c.sections, c.constraints), (2, 10, 3));
    assert_eq!(c.verdict, EffectivityVerdict::SectionExists(7));
}

#[test]
fn saturated_transform_reconstructs_raw_field() {
    let charts = blowup_charts(2).unwrap();
    for text in [
        "v = x d/dx + y d/dy",
        "v = x^2 d/dx + x*y d/dy",
        "v = x^3 d/dx + y^3 d/dy",
        "v = y^2 d/dx + x^2 d/dy",
    ] {
        let v = germ(text);
        let m = algebraic_multiplicity(&v).unwrap();
        for c in &charts {
            let t = transform_vector_field(&v, c);
            assert!(t.saturation_exponent + 1 >= m, "{text}");
            let u = MVPoly::var(2, c.index()).pow(t.saturation_exponent);
            for (raw, sat) in t.raw_field.components().iter().zip(t.saturated_field.components()) {
                assert_eq!(raw, &(&u * sat));
            }
        }
    }
}
