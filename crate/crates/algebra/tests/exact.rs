use foliation_algebra::{
    eigenvalues_exact, multiplier_ideal_trivial_monomial, parse_polynomial, ratio_in_q_plus, vanishing_order,
    Eigenvalues, GaussRat, Matrix, MonomialIdeal, RatioVerdict, TruncatedSeries, UniPoly, VanishingOrder,
};
use proptest::prelude::*;

fn xy(text: &str) -> foliation_algebra::MVPoly {
    parse_polynomial(text, &["x".to_string(), "y".to_string()]).unwrap()
}

fn g(n: i64) -> GaussRat {
    GaussRat::from_int(n)
}

#[test]
fn vanishing_order_examples() {
    assert_eq!(vanishing_order(&xy("x^2 + y^3")), VanishingOrder::Finite(2));
    assert_eq!(vanishing_order(&xy("0")), VanishingOrder::Infinite);
    assert_eq!(vanishing_order(&xy("x*y + x^4")), VanishingOrder::Finite(2));
}

#[test]
fn eigenvalue_examples() {
    let e = eigenvalues_exact(&Matrix::from_int_rows(&[&[1, 0], &[0, -1]]));
    assert_eq!(e.exact().unwrap(), &[g(-1), g(1)]);
    let e = eigenvalues_exact(&Matrix::from_int_rows(&[&[0, 1], &[0, 0]]));
    assert_eq!(e.exact().unwrap(), &[g(0), g(0)]);
    // λ² + 1 = (λ - i)(λ + i)
    let e = eigenvalues_exact(&Matrix::from_int_rows(&[&[0, -1], &[1, 0]]));
    let roots = e.exact().unwrap();
    assert_eq!(roots.len(), 2);
    assert!(roots.contains(&GaussRat::i()) && roots.contains(&-GaussRat::i()));
}

#[test]
fn ratio_examples() {
    assert_eq!(ratio_in_q_plus(&g(1), &g(2)), RatioVerdict::Yes);
    assert_eq!(ratio_in_q_plus(&g(1), &g(-1)), RatioVerdict::No);
    // 2i / i = 2
    assert_eq!(ratio_in_q_plus(&GaussRat::i(), &GaussRat::complex(0, 1, 2, 1)), RatioVerdict::Yes);
    assert_eq!(ratio_in_q_plus(&g(0), &g(1)), RatioVerdict::Undefined);
    assert_eq!(ratio_in_q_plus(&g(1), &GaussRat::i()), RatioVerdict::No);
}

#[test]
fn multiplier_ideal_examples() {
    let ideal = |gens: &[[u32; 2]]| MonomialIdeal::new(2, gens.iter().map(|e| e.to_vec()).collect()).unwrap();
    assert!(multiplier_ideal_trivial_monomial(&ideal(&[[1, 0], [0, 1]])));
    assert!(!multiplier_ideal_trivial_monomial(&ideal(&[[2, 0], [1, 1], [0, 2]])));
    assert!(multiplier_ideal_trivial_monomial(&ideal(&[[2, 0], [0, 1]])));
    assert!(MonomialIdeal::new(2, vec![]).is_err());
}

#[test]
fn ideal_generators_are_minimal() {
    let a = MonomialIdeal::new(2, vec![vec![1, 0], vec![2, 3], vec![0, 2], vec![1, 2]]).unwrap();
    assert_eq!(a.generators(), &[vec![0, 2], vec![1, 0]]);
}

#[test]
fn series_arithmetic_keeps_the_smaller_order() {
    let t5 = TruncatedSeries::<GaussRat>::variable(5);
    let one3 = TruncatedSeries::constant(g(1), 3);
    let s = t5.add(&one3);
    assert_eq!(s.truncation_order(), 3);
    let geometric = one3.sub(&TruncatedSeries::variable(3)).inverse().unwrap();
    assert!(geometric.coeffs().iter().all(|c| *c == g(1)));
    assert_eq!(t5.mul(&one3).truncation_order(), 3);
}

/// `(1, 1)` lies in the interior of `conv(gens) + R²₊` iff some point of
/// `conv(gens)` is strictly below it in both coordinates; in the plane it
/// suffices to look at segments between pairs of generators.
fn interior_by_segments(gens: &[[u32; 2]]) -> bool {
    gens.iter().any(|a| {
        gens.iter().any(|b| {
            // s·a + (1 - s)·b < 1 coordinatewise, s ∈ [0, 1]
            let (mut lo, mut lo_open, mut hi, mut hi_open) = (0.0f64, false, 1.0f64, false);
            for k in 0..2 {
                let slope = a[k] as f64 - b[k] as f64;
                let rhs = 1.0 - b[k] as f64;
                if slope == 0.0 {
                    if rhs <= 0.0 {
                        return false;
                    }
                } else if slope > 0.0 {
                    let bound = rhs / slope;
                    if bound < hi || (bound == hi && !hi_open) {
                        hi = bound;
                        hi_open = true;
                    }
                } else {
                    let bound = rhs / slope;
                    if bound > lo || (bound == lo && !lo_open) {
                        lo = bound;
                        lo_open = true;
                    }
                }
            }
            lo < hi || (lo == hi && !lo_open && !hi_open)
        })
    })
}

fn planar_ideal() -> impl Strategy<Value = Vec<[u32; 2]>> {
    proptest::collection::vec((0u32..5, 0u32..5), 1..5)
        .prop_map(|gs| gs.into_iter().filter(|(a, b)| a + b <= 4).map(|(a, b)| [a, b]).collect::<Vec<_>>())
        .prop_filter("nonzero ideal", |gs| !gs.is_empty())
}

fn upper_triangular() -> impl Strategy<Value = Vec<Vec<(i64, i64)>>> {
    (2usize..5).prop_flat_map(|n| {
        proptest::collection::vec(proptest::collection::vec((-3i64..4, -3i64..4), n), n).prop_map(move |mut rows| {
            for (i, row) in rows.iter_mut().enumerate() {
                for entry in row.iter_mut().take(i) {
                    *entry = (0, 0);
                }
            }
            rows
        })
    })
}

fn product_of_roots(roots: &[GaussRat]) -> UniPoly {
    roots
        .iter()
        .fold(UniPoly::constant(g(1)), |acc, r| acc.mul(&UniPoly::linear_root(r)))
}

proptest! {
    #[test]
    fn newton_criterion_matches_segment_oracle(gens in planar_ideal()) {
        let ideal = MonomialIdeal::new(2, gens.iter().map(|e| e.to_vec()).collect()).unwrap();
        prop_assert_eq!(multiplier_ideal_trivial_monomial(&ideal), interior_by_segments(&gens));
    }

    #[test]
    fn triangular_spectrum_is_the_diagonal(rows in upper_triangular(), perm in any::<u64>()) {
        let m = Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&(a, b)| GaussRat::complex(a, 1, b, 1)).collect())
                .collect(),
        );
        let n = m.rows();
        // conjugate by a unipotent matrix so the triangular shape is hidden
        let mut p = Matrix::identity(n);
        let (i, j) = ((perm % n as u64) as usize, ((perm / 7) % n as u64) as usize);
        if i != j {
            p.set(i, j, g(1 + (perm % 3) as i64));
        }
        let conj = p.mul(&m).mul(&p.inverse().unwrap());
        let mut diagonal: Vec<GaussRat> = (0..n).map(|k| m.get(k, k).clone()).collect();
        diagonal.sort();
        match eigenvalues_exact(&conj) {
            Eigenvalues::Exact(roots) => {
                prop_assert_eq!(&roots, &diagonal);
                prop_assert_eq!(product_of_roots(&roots), conj.char_poly().monic());
            }
            other => prop_assert!(false, "expected an exact spectrum, got {:?}", other),
        }
    }
}
