use foliation_algebra::{multiplier_ideal_trivial_monomial, GaussRat, MVPoly, Matrix, MonomialIdeal};
use foliation_core::corpus::{jordan_fixtures, seidenberg_corpus};
use foliation_core::*;
use proptest::prelude::*;

fn poly_strategy(n: usize, min_deg: u32, max_deg: u32, max_terms: usize) -> impl Strategy<Value = MVPoly> {
    let term = (proptest::collection::vec(0u32..=max_deg, n), -3i64..=3);
    proptest::collection::vec(term, 0..=max_terms).prop_map(move |terms| {
        let mut p = MVPoly::zero(n);
        for (mut e, c) in terms {
            let mut deg: u32 = e.iter().sum();
            // clamp into the degree window
            while deg > max_deg {
                let k = e.iter().position(|&x| x > 0).unwrap();
                e[k] -= 1;
                deg -= 1;
            }
            if deg < min_deg {
                e[0] += min_deg - deg;
            }
            p = &p + &MVPoly::monomial(n, e, GaussRat::from_int(c));
        }
        p
    })
}

fn singular_germ(n: usize, max_deg: u32) -> impl Strategy<Value = VectorFieldGerm> {
    proptest::collection::vec(poly_strategy(n, 1, max_deg, 4), n)
        .prop_filter("nonzero field", |c| c.iter().any(|p| !p.is_zero()))
        .prop_map(|c| VectorFieldGerm::from_components(c).unwrap())
}

fn invertible_matrix(n: usize) -> impl Strategy<Value = Matrix> {
    proptest::collection::vec(-2i64..=2, n * n).prop_filter_map("invertible", move |v| {
        let rows: Vec<Vec<GaussRat>> = v.chunks(n).map(|r| r.iter().map(|&x| GaussRat::from_int(x)).collect()).collect();
        let m = Matrix::from_rows(rows);
        (!num_traits::Zero::is_zero(&m.determinant())).then_some(m)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn conjugation_preserves_the_taxonomy(v in singular_germ(2, 3), p in invertible_matrix(2)) {
        let w = v.conjugate(&p).unwrap();
        prop_assert_eq!(algebraic_multiplicity(&v).unwrap(), algebraic_multiplicity(&w).unwrap());
        prop_assert_eq!(classify_reduced(&v).unwrap(), classify_reduced(&w).unwrap());
        if isolation(&v) == Isolation::Isolated {
            prop_assert_eq!(is_dicritical(&v).unwrap(), is_dicritical(&w).unwrap());
        }
    }

    #[test]
    fn conjugation_fixing_the_divisor_preserves_simple_status(
        a in 1i64..=3, b in -2i64..=2, c in 1i64..=3, lambda in -3i64..=3, mu in -3i64..=3, t in -2i64..=2,
    ) {
        prop_assume!(lambda != 0);
        // P maps {x = 0} to itself: its first row is (a, 0)
        let p = Matrix::from_int_rows(&[&[a, 0], &[b, c]]);
        let text = format!("v = ({lambda}*x + x*y) d/dx + ({mu}*y + {t}*x + x^2) d/dy");
        let v = parse_vector_field(&text).unwrap();
        let w = v.conjugate(&p).unwrap();
        let d = LogDivisor::original(&[0]);
        prop_assert_eq!(classify_simple(&v, &d).unwrap(), classify_simple(&w, &d).unwrap());
    }

    #[test]
    fn saturation_bound(v in singular_germ(2, 4)) {
        let m = algebraic_multiplicity(&v).unwrap();
        for c in blowup_charts(2).unwrap() {
            let t = transform_vector_field(&v, &c);
            prop_assert!(t.saturation_exponent + 1 >= m);
            if is_dicritical(&v).unwrap_or(false) {
                prop_assert!(t.saturation_exponent >= 1);
            }
        }
    }

    #[test]
    fn saturation_bound_dim3(v in singular_germ(3, 3)) {
        let m = algebraic_multiplicity(&v).unwrap();
        for c in blowup_charts(3).unwrap() {
            prop_assert!(transform_vector_field(&v, &c).saturation_exponent + 1 >= m);
        }
    }

    #[test]
    fn charts_agree_on_overlaps(v in singular_germ(2, 3), u in 1i64..=3, w in 1i64..=3) {
        check_chart_compatibility(&v, &[GaussRat::from_int(u), GaussRat::from_ratio(w, 2)]);
    }

    #[test]
    fn charts_agree_on_overlaps_dim3(v in singular_germ(3, 2), a in 1i64..=3, b in 1i64..=3, c in 1i64..=3) {
        check_chart_compatibility(&v, &[GaussRat::from_int(a), GaussRat::from_ratio(b, 3), GaussRat::from_int(c)]);
    }

    #[test]
    fn siu_divisibility(b in (2usize..=4).prop_flat_map(|n| proptest::collection::vec(poly_strategy(n, 0, 4, 5), n))) {
        for chart in blowup_charts(b.len()).unwrap() {
            prop_assert!(pullback_one_form(&b, &chart).is_ok());
        }
    }

    #[test]
    fn exceptional_multiplicity_is_additive(
        p in poly_strategy(2, 0, 4, 4),
        q in poly_strategy(2, 0, 4, 4),
        path in proptest::collection::vec(0usize..2, 1..4),
    ) {
        prop_assume!(!p.is_zero() && !q.is_zero());
        let pq = &p * &q;
        prop_assert_eq!(
            exceptional_multiplicity(&pq, &path).unwrap(),
            exceptional_multiplicity(&p, &path).unwrap() + exceptional_multiplicity(&q, &path).unwrap()
        );
    }

    #[test]
    fn translation_round_trip(v in singular_germ(3, 3), a in -3i64..=3, b in -3i64..=3, c in -3i64..=3) {
        let p = [GaussRat::from_int(a), GaussRat::from_ratio(b, 2), GaussRat::from_int(c)];
        let minus: Vec<GaussRat> = p.iter().map(|x| -x.clone()).collect();
        prop_assert_eq!(translate_to_point(&translate_to_point(&v, &p), &minus), v);
    }

    #[test]
    fn text_round_trip(v in singular_germ(3, 3)) {
        prop_assert_eq!(parse_vector_field(&v.to_text()).unwrap(), v);
    }

    #[test]
    fn invariance_is_unchanged_by_unit_multiples(v in singular_germ(2, 3), h in poly_strategy(2, 1, 2, 3), c in 1i64..=3) {
        let unit = &h + &MVPoly::constant(2, GaussRat::from_int(c));
        let w = v.multiply(&unit);
        for axes in [vec![0], vec![1], vec![0, 1]] {
            prop_assert_eq!(divisor_invariance_check(&v, &axes), divisor_invariance_check(&w, &axes));
        }
    }

    #[test]
    fn plain_ideal_is_inside_log_ideal(e in proptest::collection::vec((0u32..3, 0u32..3, -2i64..=2), 1..4)) {
        // components x·m1, y·m2 keep both axes invariant
        let mut a = MVPoly::zero(2);
        let mut b = MVPoly::zero(2);
        for (i, (p, q, c)) in e.iter().enumerate() {
            let c = if *c == 0 { 1 } else { *c };
            let m = MVPoly::monomial(2, vec![*p, *q], GaussRat::from_int(c));
            if i % 2 == 0 { a = &a + &(&m * &MVPoly::var(2, 0)); } else { b = &b + &(&m * &MVPoly::var(2, 1)); }
        }
        prop_assume!(a.num_terms() <= 1 && b.num_terms() <= 1 && !(a.is_zero() && b.is_zero()));
        let v = VectorFieldGerm::from_components(vec![a, b]).unwrap();
        let pres = coefficient_ideal(&v, Some(&LogDivisor::original(&[0, 1]))).unwrap();
        if let (Some(plain), Some(log)) = (pres.plain_monomial(), pres.log_monomial()) {
            prop_assert!(plain.generators().iter().all(|g| log.contains_monomial(g)));
        }
    }

    #[test]
    fn nonresonant_directions_have_separatrices(l1 in 1i64..=4, l2 in -6i64..=-1, c in -2i64..=2, d in -2i64..=2) {
        let v = parse_vector_field(&format!(
            "v = ({l1}*x + {c}*y^2) d/dx + ({l2}*y + {d}*x^2 + x*y) d/dy"
        )).unwrap();
        for dir in 1..=2 {
            match formal_separatrix(&v, dir, 8).unwrap() {
                SeparatrixOutcome::Curve(curve) => prop_assert!(curve.residual_order.unwrap() >= 9),
                other => prop_assert!(false, "unexpected {:?}", other),
            }
        }
    }
}

fn check_chart_compatibility(v: &VectorFieldGerm, point: &[GaussRat]) {
    let n = v.dim();
    let charts = blowup_charts(n).unwrap();
    for a in &charts {
        for b in &charts {
            if a == b {
                continue;
            }
            let Some(target) = a.transition_to(b, point) else { continue };
            let va = transform_vector_field(v, a).saturated_field.value_at(point);
            let vb = transform_vector_field(v, b).saturated_field.value_at(&target);
            // push va forward with the Jacobian of the transition map
            let formulas = a.transition_formulas(b);
            let pushed: Vec<GaussRat> = formulas
                .iter()
                .map(|(num, den)| {
                    let (nv, dv) = (num.eval(point), den.eval(point));
                    (0..n)
                        .map(|k| {
                            let dn = num.derivative(k).eval(point);
                            let dd = den.derivative(k).eval(point);
                            let partial = &(&(&dn * &dv) - &(&nv * &dd)) / &(&dv * &dv);
                            &partial * &va[k]
                        })
                        .fold(GaussRat::from_int(0), |acc, x| &acc + &x)
                })
                .collect();
            for i in 0..n {
                for j in 0..n {
                    let minor = &(&pushed[i] * &vb[j]) - &(&pushed[j] * &vb[i]);
                    assert!(num_traits::Zero::is_zero(&minor), "{v:?} charts {a:?} {b:?}");
                }
            }
        }
    }
}

#[test]
fn jordan_fixtures_are_stable_under_blowup() {
    for f in jordan_fixtures() {
        let b = Blowup::new(&f.germ, &f.divisor, 1).unwrap();
        assert_eq!(b.locus.status, LocusStatus::Finite, "{}", f.name);
        assert!(b.locus.clusters.is_empty());
        let mut found: Vec<(usize, SimpleStatus)> = b
            .locus
            .points
            .iter()
            .map(|p| {
                assert!(p.is_chart_origin(), "{}: {:?}", f.name, p);
                let (g, d) = b.point_germ(p);
                (p.chart.index(), classify_simple(&g, &d).unwrap())
            })
            .collect();
        found.sort_by_key(|x| x.0);
        assert_eq!(found, f.predicted, "{}", f.name);
    }
}

/// Every antichain of monomials of degree ≤ 4 in two variables.
fn all_planar_monomial_ideals() -> Vec<MonomialIdeal> {
    let monos: Vec<[u32; 2]> = (0..=4u32).flat_map(|d| (0..=d).map(move |a| [a, d - a])).collect();
    let divides = |a: &[u32; 2], b: &[u32; 2]| a[0] <= b[0] && a[1] <= b[1];
    let mut out = Vec::new();
    let mut chosen: Vec<[u32; 2]> = Vec::new();
    fn rec(
        k: usize,
        monos: &[[u32; 2]],
        chosen: &mut Vec<[u32; 2]>,
        out: &mut Vec<MonomialIdeal>,
        divides: &dyn Fn(&[u32; 2], &[u32; 2]) -> bool,
    ) {
        if k == monos.len() {
            if !chosen.is_empty() {
                out.push(MonomialIdeal::new(2, chosen.iter().map(|m| m.to_vec()).collect()).unwrap());
            }
            return;
        }
        rec(k + 1, monos, chosen, out, divides);
        let m = monos[k];
        if chosen.iter().all(|c| !divides(c, &m) && !divides(&m, c)) {
            chosen.push(m);
            rec(k + 1, monos, chosen, out, divides);
            chosen.pop();
        }
    }
    rec(0, &monos, &mut chosen, &mut out, &divides);
    out
}

#[test]
fn howald_agrees_with_discrepancies_exhaustively() {
    let ideals = all_planar_monomial_ideals();
    assert!(ideals.len() > 100);
    for a in &ideals {
        let by_resolution = discrepancy_test(a, 32).expect("monomial log resolution completes");
        assert_eq!(multiplier_ideal_trivial_monomial(a), by_resolution, "{a}");
    }
}

#[test]
fn seidenberg_terminates_on_a_corpus_sample() {
    for v in seidenberg_corpus(11, 40) {
        let t = seidenberg_reduce(&v, 8).unwrap();
        assert_eq!(t.status, TowerStatus::Complete, "{v}");
        for leaf in t.leaves() {
            assert!(leaf.report.reduced, "{v} at {}", leaf.path);
        }
        for c in t.nodes.iter().flat_map(|n| &n.clusters) {
            assert!(c.all_reduced(), "{v}");
        }
    }
}
