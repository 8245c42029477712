//! Fixture curves, polynomials and leaves shared by tests, the acceptance
//! suite and `selftest`.

use foliation_algebra::{GaussRat, MVPoly};
use foliation_core::VectorFieldGerm;

use crate::curve::{DeclaredZero, ParametrizedCurve, ZeroTarget, DEFAULT_WORKING_RADIUS};
use crate::expr::Expr;
use crate::functions::IdealData;

fn g(re: (i64, i64), im: (i64, i64)) -> GaussRat {
    GaussRat::from_ratio(re.0, re.1) + GaussRat::from_ratio(im.0, im.1) * GaussRat::i()
}

fn q(n: i64) -> GaussRat {
    GaussRat::from_int(n)
}

fn t() -> Expr {
    Expr::var()
}

fn exp_t(k: i64) -> Expr {
    Expr::product(vec![Expr::int(k), t()]).exp()
}

/// `c · Π (t − a)^k`.
pub fn polynomial_from_zeros(leading: GaussRat, zeros: &[(GaussRat, u32)]) -> Expr {
    let mut factors = vec![Expr::constant(leading)];
    for (a, k) in zeros {
        factors.push(Expr::sum(vec![t(), Expr::constant(-a.clone())]).powu(*k));
    }
    Expr::product(factors)
}

#[derive(Clone, Debug)]
pub struct JensenFixture {
    pub name: String,
    pub polynomial: Expr,
    pub zeros: Vec<(GaussRat, u32)>,
}

/// Twenty polynomials with rational and Gaussian-rational zeros, including
/// zeros at the origin, inside the unit disk and on the circles `|t| = 2`
/// and `|t| = 5`.
pub fn jensen_corpus() -> Vec<JensenFixture> {
    let half = GaussRat::from_ratio(1, 2);
    let specs: Vec<(GaussRat, Vec<(GaussRat, u32)>)> = vec![
        (q(1), vec![(q(0), 1)]),
        (q(1), vec![(q(3), 1)]),
        (q(2), vec![(GaussRat::from_ratio(1, 2), 1), (q(-4), 1)]),
        (q(1), vec![(q(0), 3)]),
        (q(-3), vec![(q(2), 1)]),
        (q(1), vec![(g((0, 1), (2, 1)), 1), (g((0, 1), (-2, 1)), 1)]),
        (q(1), vec![(q(5), 2), (q(-1), 1)]),
        (g((1, 1), (1, 1)), vec![(g((3, 1), (4, 1)), 1)]),
        (q(1), vec![(g((1, 3), (1, 4)), 2), (q(7), 1)]),
        (half.clone(), vec![(q(0), 2), (q(6), 1), (q(-6), 1)]),
        (q(1), vec![(g((-2, 3), (0, 1)), 1), (g((0, 1), (3, 2)), 1), (q(9), 1)]),
        (q(5), vec![(g((6, 5), (8, 5)), 1)]),
        (q(1), vec![(q(1), 1), (q(-1), 1), (g((0, 1), (1, 1)), 1), (g((0, 1), (-1, 1)), 1)]),
        (q(1), vec![(g((-3, 1), (-4, 1)), 1), (q(8), 2)]),
        (q(-1), vec![(GaussRat::from_ratio(1, 10), 1), (GaussRat::from_ratio(-9, 10), 1)]),
        (q(1), vec![(q(4), 4)]),
        (g((0, 1), (1, 1)), vec![(q(0), 1), (g((5, 2), (-5, 2)), 1), (q(12), 1)]),
        (q(3), vec![(g((1, 2), (1, 2)), 1), (g((1, 2), (-1, 2)), 1), (q(-2), 1)]),
        (q(1), vec![(g((7, 1), (1, 1)), 1), (q(-5), 1), (GaussRat::from_ratio(3, 2), 3)]),
        (q(7), vec![]),
    ];
    specs
        .into_iter()
        .enumerate()
        .map(|(k, (c, zeros))| JensenFixture {
            name: format!("P{}", k + 1),
            polynomial: polynomial_from_zeros(c, &zeros),
            zeros,
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct FmtFixture {
    pub name: String,
    pub curve: ParametrizedCurve,
    pub ideal: IdealData,
}

fn xy(n: usize) -> (MVPoly, MVPoly) {
    (MVPoly::var(n, 0), MVPoly::var(n, 1))
}

/// Curves with coefficient ideals for the First Main Theorem check.
pub fn fmt_fixtures() -> Vec<FmtFixture> {
    let (x, y) = xy(2);
    let zero_at_origin = |order| DeclaredZero {
        target: ZeroTarget::Common,
        at: q(0),
        order,
    };
    let parabola = ParametrizedCurve::new(vec![t(), t().powu(2)], vec![zero_at_origin(1)], DEFAULT_WORKING_RADIUS)
        .expect("parabola");
    let cusp = ParametrizedCurve::new(vec![t(), t().powu(3)], vec![zero_at_origin(1)], DEFAULT_WORKING_RADIUS)
        .expect("cubic");
    let exponential = ParametrizedCurve::from_components(vec![exp_t(1), exp_t(2)]);
    vec![
        FmtFixture {
            name: "(t, t^2) against (x, y)".to_string(),
            ideal: IdealData::new(&parabola, vec![x.clone(), y.clone()], vec![(q(0), 1)]).expect("ideal"),
            curve: parabola.clone(),
        },
        FmtFixture {
            name: "(exp(t), exp(2t)) against (x, y)".to_string(),
            ideal: IdealData::new(&exponential, vec![x.clone(), y.clone()], vec![]).expect("ideal"),
            curve: exponential,
        },
        FmtFixture {
            name: "(t, t^2) against (1)".to_string(),
            ideal: IdealData::unit(2),
            curve: parabola,
        },
        FmtFixture {
            name: "(t, t^3) against (x^2, y)".to_string(),
            ideal: IdealData::new(&cusp, vec![x.pow(2), y], vec![(q(0), 2)]).expect("ideal"),
            curve: cusp,
        },
    ]
}

#[derive(Clone, Debug)]
pub struct LeafFixture {
    pub name: String,
    pub curve: ParametrizedCurve,
    pub field: VectorFieldGerm,
    pub t0: GaussRat,
    /// `(μ, η, ν)`
    pub expected: (u32, i64, u32),
}

fn field(components: Vec<MVPoly>) -> VectorFieldGerm {
    VectorFieldGerm::from_components(components).expect("fixture field")
}

/// Leaves with known orders `(μ, η, ν)`.
pub fn leaf_fixtures() -> Vec<LeafFixture> {
    let (x, y) = xy(2);
    let weighted = field(vec![x.clone(), y.scale(&q(2))]);
    let saddle = field(vec![x.clone(), -&y]);
    let leaf = |name: &str, comps: Vec<Expr>, v: &VectorFieldGerm, t0: GaussRat, expected| LeafFixture {
        name: name.to_string(),
        curve: ParametrizedCurve::from_components(comps),
        field: v.clone(),
        t0,
        expected,
    };
    vec![
        leaf("(t, t^2) at 0", vec![t(), t().powu(2)], &weighted, q(0), (0, -1, 1)),
        leaf("(t, t^2) at 1", vec![t(), t().powu(2)], &weighted, q(1), (0, 0, 0)),
        leaf("(exp(t), exp(2t)) at 0", vec![exp_t(1), exp_t(2)], &weighted, q(0), (0, 0, 0)),
        leaf("(exp(t), exp(2t)) at 1/2 + i", vec![exp_t(1), exp_t(2)], &weighted, g((1, 2), (1, 1)), (0, 0, 0)),
        leaf("(t^2, t^4) at 0", vec![t().powu(2), t().powu(4)], &weighted, q(0), (1, -1, 2)),
        leaf("(t^3, t^6) at 0", vec![t().powu(3), t().powu(6)], &weighted, q(0), (2, -1, 3)),
        leaf("(t, 0) for the saddle at 0", vec![t(), Expr::int(0)], &saddle, q(0), (0, -1, 1)),
        leaf("(t^2, 0) for the saddle at 0", vec![t().powu(2), Expr::int(0)], &saddle, q(0), (1, -1, 2)),
    ]
}

/// `exp(t)` into the projective line.
pub fn exponential_curve() -> ParametrizedCurve {
    ParametrizedCurve::from_components(vec![exp_t(1)])
}

/// `t` into the projective line.
pub fn identity_curve() -> ParametrizedCurve {
    ParametrizedCurve::from_components(vec![t()])
}
