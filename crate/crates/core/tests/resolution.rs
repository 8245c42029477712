use foliation_algebra::MonomialIdeal;
use foliation_core::*;

fn germ(text: &str) -> VectorFieldGerm {
    parse_vector_field(text).unwrap()
}

fn ideal(gens: &[&[u32]]) -> MonomialIdeal {
    MonomialIdeal::new(gens[0].len(), gens.iter().map(|g| g.to_vec()).collect()).unwrap()
}

#[test]
fn saddle_is_already_reduced() {
    let t = seidenberg_reduce(&germ("v = x d/dx - y d/dy"), 8).unwrap();
    assert_eq!(t.status, TowerStatus::Complete);
    assert_eq!(t.nodes.len(), 1);
    assert_eq!(t.blowup_count(), 0);
}

#[test]
fn radial_needs_one_dicritical_blowup() {
    let t = seidenberg_reduce(&germ("v = x d/dx + y d/dy"), 8).unwrap();
    assert_eq!(t.status, TowerStatus::Complete);
    assert_eq!(t.blowup_count(), 1);
    assert_eq!(t.nodes.len(), 1);
    assert!(t.nodes[0].report.dicritical);
}

#[test]
fn nilpotent_cusp_field_reduces_in_several_steps() {
    let t = seidenberg_reduce(&germ("v = y d/dx + x^2 d/dy"), 8).unwrap();
    assert_eq!(t.status, TowerStatus::Complete);
    assert!(t.blowup_count() >= 2, "{t:#?}");
    let first = t.node("b1.c1").expect("level-1 point in chart 1");
    assert!(!first.report.reduced);
    assert!(first.blown_up);
    for leaf in t.leaves() {
        assert!(leaf.report.reduced, "{}", leaf.path);
        assert!(matches!(
            leaf.report.surface_type,
            SurfaceType::NonDegenerate | SurfaceType::DegenerateType(_)
        ));
    }
}

#[test]
fn seidenberg_rejects_non_isolated_loci() {
    assert!(matches!(
        seidenberg_reduce(&germ("v = x*y d/dx + y^2 d/dy"), 8),
        Err(CoreError::NonIsolatedSingularLocus)
    ));
}

#[test]
fn nondegenerate_blowup_gives_two_nondegenerate_points() {
    for text in ["v = x d/dx - y d/dy", "v = x d/dx + 3*y d/dy", "v = 2*x d/dx - 3*y d/dy", "v = x d/dx + i*y d/dy"] {
        let b = Blowup::new(&germ(text), &LogDivisor::empty(), 1).unwrap();
        assert_eq!(b.locus.points.len(), 2, "{text}");
        for p in &b.locus.points {
            let (g, _) = b.point_germ(p);
            assert_eq!(surface_seidenberg_type(&g).unwrap(), SurfaceType::NonDegenerate, "{text}");
        }
    }
}

#[test]
fn type_k_blowup_keeps_the_type() {
    for k in 2..=5u32 {
        let v = germ(&format!("v = x d/dx + y^{k} d/dy"));
        let b = Blowup::new(&v, &LogDivisor::empty(), 1).unwrap();
        let mut types: Vec<SurfaceType> = b
            .locus
            .points
            .iter()
            .map(|p| surface_seidenberg_type(&b.point_germ(p).0).unwrap())
            .collect();
        types.sort_by_key(|t| format!("{t:?}"));
        assert_eq!(types, vec![SurfaceType::DegenerateType(k), SurfaceType::NonDegenerate], "k = {k}");
    }
}

#[test]
fn jordan_germ_resolves_after_one_blowup() {
    // λ₁ = 1, λ₂ = −1 with a Jordan block on (y, z), D = {1}
    let v = germ("v = x d/dx + (-y + z) d/dy - z d/dz");
    let d = LogDivisor::original(&[0]);
    assert_eq!(classify_simple(&v, &d).unwrap(), SimpleStatus::SimplePointB);
    let b = Blowup::new(&v, &d, 1).unwrap();
    assert_eq!(b.locus.points.len(), 2);
    let statuses: Vec<SimpleStatus> = b
        .locus
        .points
        .iter()
        .map(|p| {
            let (g, d) = b.point_germ(p);
            classify_simple(&g, &d).unwrap()
        })
        .collect();
    assert_eq!(statuses.iter().filter(|s| **s == SimpleStatus::SimplePointB).count(), 1);
    assert_eq!(statuses.iter().filter(|s| **s == SimpleStatus::SimpleCorner).count(), 1);
    let t = resolve_simple(&v, &d, 4).unwrap();
    assert_eq!(t.status, TowerStatus::Complete);
    assert_eq!(t.blowup_count(), 0);
}

#[test]
fn type_a_point_needs_no_blowup() {
    let t = resolve_simple(&germ("v = x^2 d/dx - y d/dy"), &LogDivisor::original(&[0]), 4).unwrap();
    assert_eq!(t.status, TowerStatus::Complete);
    assert_eq!(t.blowup_count(), 0);
    assert_eq!(t.nodes[0].report.simple_status, SimpleStatus::SimplePointA);
}

#[test]
fn resonant_corner_resolution() {
    // the 1:2 corner: the radial point on E is dicritical, the other is a corner (2, -1)
    let t = resolve_simple(&germ("v = x d/dx + 2*y d/dy"), &LogDivisor::original(&[0, 1]), 6).unwrap();
    assert_eq!(t.nodes[0].report.simple_status, SimpleStatus::NotSimple);
    assert!(t.blowup_count() >= 1);
    assert!(matches!(t.status, TowerStatus::Complete | TowerStatus::DepthExceeded));
    for leaf in t.leaves() {
        if t.status == TowerStatus::Complete {
            assert!(leaf.report.simple_status.is_simple(), "{}", leaf.path);
            assert!(!leaf.report.dicritical);
        }
    }
    let json = serde_json::to_value(&t).unwrap();
    assert!(json["nodes"].get("root").is_some());
}

#[test]
fn depth_cap_is_a_result() {
    let t = seidenberg_reduce(&germ("v = y d/dx + x^2 d/dy"), 1).unwrap();
    assert_eq!(t.status, TowerStatus::DepthExceeded);
    let json = serde_json::to_value(&t).unwrap();
    assert_eq!(json["status"], "depth_exceeded");
}

#[test]
fn monomial_log_resolution_ledgers() {
    let r = monomial_log_resolution(&ideal(&[&[1, 0], &[0, 1]]), 8);
    assert_eq!(r.status, LogResolutionStatus::Complete);
    assert_eq!(r.entries.len(), 1);
    assert_eq!((r.entries[0].discrepancy, r.entries[0].ideal_order), (1, 1));
    assert_eq!(r.discrepancy_condition(), Some(true));

    let r = monomial_log_resolution(&ideal(&[&[2, 0], &[1, 1], &[0, 2]]), 8);
    assert_eq!((r.entries[0].discrepancy, r.entries[0].ideal_order), (1, 2));
    assert_eq!(r.discrepancy_condition(), Some(false));

    let r = monomial_log_resolution(&ideal(&[&[2, 0], &[0, 1]]), 8);
    assert_eq!(r.entries.len(), 2);
    assert_eq!(r.discrepancy_condition(), Some(true));

    // a single blow-up of the origin in dim n has discrepancy n - 1
    for n in 2..=4 {
        let gens: Vec<Vec<u32>> = (0..n).map(|i| (0..n).map(|j| u32::from(i == j)).collect()).collect();
        let r = monomial_log_resolution(&MonomialIdeal::new(n, gens).unwrap(), 8);
        assert_eq!(r.entries[0].discrepancy, n as u32 - 1);
    }

    // the k-step tower ideal (z1^k, z2) needs k blow-ups along chart 1
    for k in 1..=6u32 {
        let r = monomial_log_resolution(&ideal(&[&[k, 0], &[0, 1]]), 16);
        assert_eq!(r.centers.len(), k as usize);
        assert_eq!(r.discrepancy_condition(), Some(true));
    }
}

#[test]
fn weakly_reduced_examples() {
    let saddle = weakly_reduced_check(&germ("v = x d/dx - y d/dy"), 8);
    assert_eq!(saddle.verdict, WeaklyReducedVerdict::Certified);
    assert_eq!(saddle.newton_polyhedron_trivial, Some(true));

    let radial = weakly_reduced_check(&germ("v = x d/dx + y d/dy"), 8);
    match &radial.verdict {
        WeaklyReducedVerdict::Refuted(w) => {
            assert_eq!(w.len(), 1);
            assert_eq!(w[0].clause(), 1);
            assert!(matches!(w[0], Witness::Saturation { saturation_exponent: 1, .. }));
        }
        other => panic!("{other:?}"),
    }

    let report = weakly_reduced_check(&germ("v = x^2 d/dx + y d/dy"), 8);
    assert_eq!(report.verdict, WeaklyReducedVerdict::Certified);
    assert_eq!(report.newton_polyhedron_trivial, Some(true));
    assert!(report.saturation_exponents.iter().all(|(_, s)| *s == 0));

    let nontrivial = weakly_reduced_check(&germ("v = x^2 d/dx + y^2 d/dy"), 8);
    assert!(matches!(nontrivial.verdict, WeaklyReducedVerdict::Refuted(_)));

    let unknown = weakly_reduced_check(&germ("v = (x + y^2) d/dx + (x^2 + y^3) d/dy"), 8);
    assert!(matches!(unknown.verdict, WeaklyReducedVerdict::Unknown(_)));
}
