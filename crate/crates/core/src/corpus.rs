//! Fixture families shared by tests, the acceptance suite and `selftest`.

use foliation_algebra::{GaussRat, MVPoly};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::classify::{isolation, Isolation, SimpleStatus};
use crate::germ::{LogDivisor, VectorFieldGerm};

/// A germ in Jordan form with the singular points its one-step blow-up
/// must have: one per Jordan block, at the origin of the chart of the
/// block's leading coordinate.
#[derive(Clone, Debug)]
pub struct JordanFixture {
    pub name: String,
    pub germ: VectorFieldGerm,
    pub divisor: LogDivisor,
    pub root_status: SimpleStatus,
    /// `(0-based chart index, expected status)`, sorted by chart.
    pub predicted: Vec<(usize, SimpleStatus)>,
}

/// `(eigenvalue, block size)`; an eigenvalue of `None` marks the `x²∂x`
/// block of a type (A) point.
type Block = (Option<GaussRat>, usize);

fn build(name: &str, blocks: &[Block], divisor_axes: &[usize], extra: &[(usize, &str)]) -> JordanFixture {
    let n: usize = blocks.iter().map(|b| b.1).sum();
    let vars = crate::germ::default_variable_names(n);
    let mut comps = vec![MVPoly::zero(n); n];
    let mut leading = Vec::new();
    let mut p = 0;
    for (lambda, size) in blocks {
        leading.push(p);
        for k in 0..*size {
            let i = p + k;
            comps[i] = match lambda {
                None => MVPoly::var(n, i).pow(2),
                Some(l) => MVPoly::var(n, i).scale(l),
            };
            if k + 1 < *size {
                comps[i] = &comps[i] + &MVPoly::var(n, i + 1);
            }
        }
        p += size;
    }
    for (i, text) in extra {
        let term = foliation_algebra::parse_polynomial(text, &vars).expect("fixture term");
        comps[*i] = &comps[*i] + &term;
    }
    let germ = VectorFieldGerm::new(vars, comps).expect("fixture shape");
    let divisor = LogDivisor::original(divisor_axes);
    let point_kind = match blocks[0].0 {
        None => SimpleStatus::SimplePointA,
        Some(_) => SimpleStatus::SimplePointB,
    };
    let root_status = if divisor_axes.len() >= 2 {
        SimpleStatus::SimpleCorner
    } else {
        point_kind
    };
    let predicted = leading
        .into_iter()
        .map(|j| {
            let status = if root_status.is_point() && j == divisor_axes[0] {
                root_status
            } else {
                SimpleStatus::SimpleCorner
            };
            (j, status)
        })
        .collect();
    JordanFixture {
        name: name.to_string(),
        germ,
        divisor,
        root_status,
        predicted,
    }
}

fn q(a: i64, b: i64) -> Option<GaussRat> {
    Some(GaussRat::from_ratio(a, b))
}

fn int(a: i64) -> Option<GaussRat> {
    Some(GaussRat::from_int(a))
}

fn imag(a: i64) -> Option<GaussRat> {
    Some(GaussRat::complex(0, 1, a, 1))
}

/// Twenty simple points and corners in dimensions 2 to 4.
pub fn jordan_fixtures() -> Vec<JordanFixture> {
    vec![
        build("B2 saddle", &[(int(1), 1), (int(-1), 1)], &[0], &[]),
        build("B2 rotation ratio", &[(int(1), 1), (imag(1), 1)], &[0], &[]),
        build("B2 with quadratic terms", &[(int(2), 1), (int(-3), 1)], &[0], &[(0, "x*y"), (1, "x^2")]),
        build("A2", &[(None, 1), (int(-1), 1)], &[0], &[]),
        build("A2 complex", &[(None, 1), (imag(1), 1)], &[0], &[(0, "x^2*y")]),
        build("corner 1:-1", &[(int(1), 1), (int(-1), 1)], &[0, 1], &[]),
        build("corner 1:-2", &[(int(1), 1), (int(-2), 1)], &[0, 1], &[(0, "x*y")]),
        build("corner 1:i", &[(int(1), 1), (imag(1), 1)], &[0, 1], &[]),
        build("B3 Jordan block", &[(int(1), 1), (int(-1), 2)], &[0], &[]),
        build("B3 diagonal", &[(int(1), 1), (int(-2), 1), (int(-3), 1)], &[0], &[]),
        build("B3 complex pair", &[(int(1), 1), (imag(1), 1), (imag(-1), 1)], &[0], &[(2, "x*y")]),
        build("A3 Jordan block", &[(None, 1), (int(-1), 2)], &[0], &[]),
        build("A3 diagonal", &[(None, 1), (int(-1), 1), (int(-2), 1)], &[0], &[(1, "x*y")]),
        build("corner3 e=2", &[(int(1), 1), (int(-1), 1), (q(-1, 2), 1)], &[0, 1], &[]),
        build("corner3 e=3", &[(int(1), 1), (int(-1), 1), (imag(1), 1)], &[0, 1, 2], &[]),
        build("corner3 block", &[(int(2), 1), (int(-1), 1), (int(3), 1)], &[0, 1], &[(2, "x*y")]),
        build("B4 Jordan block", &[(int(1), 1), (int(-1), 3)], &[0], &[]),
        build("B4 mixed", &[(int(1), 1), (int(-1), 2), (imag(1), 1)], &[0], &[]),
        build("corner4", &[(int(1), 1), (int(-1), 1), (imag(1), 2)], &[0, 1], &[]),
        build("A4", &[(None, 1), (int(-1), 1), (int(-2), 2)], &[0], &[]),
    ]
}

/// Hand-picked planar germs with isolated singularities: saddles, nodes,
/// resonances, nilpotent and higher-multiplicity cases.
pub fn classic_planar_germs() -> Vec<VectorFieldGerm> {
    [
        "v = x d/dx - y d/dy",
        "v = x d/dx + y d/dy",
        "v = x d/dx + 2*y d/dy",
        "v = (x + y) d/dx + y d/dy",
        "v = y d/dx + x^2 d/dy",
        "v = y d/dx + x^3 d/dy",
        "v = y d/dx - x d/dy",
        "v = x^2 d/dx + y^2 d/dy",
        "v = x^2 d/dx - y^2 d/dy",
        "v = x^2 d/dx + x*y d/dy - y^3 d/dy",
        "v = (x^2 - 2*y^2) d/dx + x*y d/dy",
        "v = x d/dx + y^3 d/dy",
        "v = (y + x^2) d/dx + x*y d/dy",
        "v = (2*x^3 - y^2) d/dx + (x^2*y + y^3) d/dy",
        "v = (x^3 + y^3) d/dx + x^2*y d/dy",
        "v = y^2 d/dx + x^3 d/dy",
        "v = (x*y + y^3) d/dx + (x^2 - 2*y^2) d/dy",
    ]
    .iter()
    .map(|t| crate::text::parse_vector_field(t).expect("classic fixture"))
    .collect()
}

const PLANAR_MONOMIALS: [[u32; 2]; 9] = [[1, 0], [0, 1], [2, 0], [1, 1], [0, 2], [3, 0], [2, 1], [1, 2], [0, 3]];

/// A random planar germ singular at the origin: components of degree ≤ 3
/// with coefficients in `{0, ±1, ±2}`, at most `max_terms` terms each.
pub fn random_planar_germ(rng: &mut impl Rng, max_terms: usize) -> VectorFieldGerm {
    let comps: Vec<MVPoly> = (0..2)
        .map(|_| {
            let count = rng.gen_range(1..=max_terms);
            let mut p = MVPoly::zero(2);
            for _ in 0..count {
                let e = PLANAR_MONOMIALS[rng.gen_range(0..PLANAR_MONOMIALS.len())];
                let c = [-2i64, -1, 1, 2][rng.gen_range(0..4)];
                p = &p + &MVPoly::monomial(2, e.to_vec(), GaussRat::from_int(c));
            }
            p
        })
        .collect();
    VectorFieldGerm::from_components(comps).expect("planar")
}

/// Classic germs followed by `samples` seeded random germs, keeping only
/// those with an isolated singularity at the origin.
pub fn seidenberg_corpus(seed: u64, samples: usize) -> Vec<VectorFieldGerm> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = classic_planar_germs();
    let mut drawn = 0;
    while drawn < samples {
        let v = random_planar_germ(&mut rng, 4);
        if v.components().iter().any(MVPoly::is_zero) || isolation(&v) != Isolation::Isolated {
            continue;
        }
        out.push(v);
        drawn += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::classify_simple;

    #[test]
    fn fixtures_have_the_declared_root_status() {
        let fixtures = jordan_fixtures();
        assert_eq!(fixtures.len(), 20);
        for f in fixtures {
            assert_eq!(classify_simple(&f.germ, &f.divisor).unwrap(), f.root_status, "{}", f.name);
        }
    }

    #[test]
    fn corpus_is_deterministic() {
        assert_eq!(seidenberg_corpus(7, 20), seidenberg_corpus(7, 20));
    }
}
