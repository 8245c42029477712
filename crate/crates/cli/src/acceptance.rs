//! The eleven acceptance checks, shared by `selftest` and the acceptance
//! test. Each check returns a verdict with a one-line detail.

use std::time::Instant;

use foliation_algebra::{multiplier_ideal_trivial_monomial, GaussRat, MVPoly, MonomialIdeal};
use foliation_core::corpus::{jordan_fixtures, seidenberg_corpus};
use foliation_core::{
    blowup_charts, classify_simple, corner_has_no_transverse_separatrix, discrepancy_test, effectivity_count,
    exceptional_multiplicity, formal_separatrix, is_dicritical, parse_vector_field, pullback_one_form,
    seidenberg_reduce, weakly_reduced_check, Blowup, CornerVerdict, EffectivityVerdict, LocusStatus, LogDivisor,
    SeparatrixOutcome, TowerStatus, VectorFieldGerm, WeaklyReducedVerdict, Witness,
};
use foliation_nevanlinna::corpus::{exponential_curve, fmt_fixtures, identity_curve, jensen_corpus, leaf_fixtures};
use foliation_nevanlinna::{
    fmt_verify, jensen_verify, multiplicity_bookkeeping, multiplicity_bookkeeping_series, tautological_pairing,
    Applicability, QuadratureConfig, TangentMetric,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::commands::{default_alpha, JENSEN_TOLERANCE};

/// Random germs drawn for the Seidenberg corpus on top of the classics.
pub const SEIDENBERG_SAMPLES: usize = 300;
pub const SEIDENBERG_DEPTH: usize = 8;
pub const SEIDENBERG_SECONDS: f64 = 60.0;
pub const SIU_FORMS: usize = 500;
pub const SEPARATRIX_ORDER: usize = 8;
pub const JENSEN_RADII: [f64; 3] = [2.0, 5.0, 10.0];
pub const FMT_GRID: [f64; 6] = [2.0, 4.0, 8.0, 16.0, 32.0, 64.0];
pub const NUMERICS_SECONDS: f64 = 120.0;
pub const TAUTOLOGICAL_FLOOR: f64 = -1e-3;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Outcome {
    pub number: usize,
    pub title: &'static str,
    pub pass: bool,
    pub detail: String,
    pub seconds: f64,
}

impl Outcome {
    pub fn line(&self) -> String {
        format!(
            "criterion {:>2} [{}] {}: {} ({:.2} s)",
            self.number,
            if self.pass { "PASS" } else { "FAIL" },
            self.title,
            self.detail,
            self.seconds
        )
    }
}

type Check = Result<String, String>;

fn timed(number: usize, title: &'static str, check: impl FnOnce() -> Check) -> Outcome {
    let start = Instant::now();
    let result = check();
    let seconds = start.elapsed().as_secs_f64();
    let (pass, detail) = match result {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    Outcome {
        number,
        title,
        pass,
        detail,
        seconds,
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn germ(text: &str) -> Result<VectorFieldGerm, String> {
    parse_vector_field(text).map_err(|e| format!("{text}: {e}"))
}

pub fn seidenberg(seed: u64) -> Outcome {
    timed(1, "Seidenberg corpus", || {
        let start = Instant::now();
        let corpus = seidenberg_corpus(seed, SEIDENBERG_SAMPLES);
        let mut blowups = 0;
        for v in &corpus {
            let t = seidenberg_reduce(v, SEIDENBERG_DEPTH).map_err(|e| format!("{v}: {e}"))?;
            ensure(t.status == TowerStatus::Complete, || format!("{v}: tower {:?}", t.status))?;
            for leaf in t.leaves() {
                ensure(leaf.report.reduced, || format!("{v}: leaf {} not reduced", leaf.path))?;
            }
            for c in t.nodes.iter().flat_map(|n| &n.clusters) {
                ensure(c.all_reduced(), || format!("{v}: algebraic cluster not reduced"))?;
            }
            blowups += t.blowup_count();
        }
        let secs = start.elapsed().as_secs_f64();
        ensure(secs < SEIDENBERG_SECONDS, || format!("took {secs:.1} s"))?;
        Ok(format!("{} germs reduced within depth {SEIDENBERG_DEPTH}, {blowups} blow-ups", corpus.len()))
    })
}

pub fn jordan_stability() -> Outcome {
    timed(2, "simple singularities stable under blow-up", || {
        let fixtures = jordan_fixtures();
        for f in &fixtures {
            let b = Blowup::new(&f.germ, &f.divisor, 1).map_err(|e| format!("{}: {e}", f.name))?;
            ensure(b.locus.status == LocusStatus::Finite && b.locus.clusters.is_empty(), || {
                format!("{}: locus {:?}", f.name, b.locus.status)
            })?;
            let mut found = Vec::new();
            for p in &b.locus.points {
                ensure(p.is_chart_origin(), || format!("{}: point off the chart origin", f.name))?;
                let (g, d) = b.point_germ(p);
                found.push((p.chart.index(), classify_simple(&g, &d).map_err(|e| format!("{}: {e}", f.name))?));
            }
            found.sort_by_key(|x| x.0);
            ensure(found == f.predicted, || format!("{}: found {found:?}, predicted {:?}", f.name, f.predicted))?;
        }
        Ok(format!("{} Jordan fixtures match their chart lists", fixtures.len()))
    })
}

pub fn dicriticality() -> Outcome {
    timed(3, "dicriticality", || {
        let cases = [
            ("v = x d/dx + y d/dy", true),
            ("v = x d/dx - y d/dy", false),
            ("v = x d/dx - 2*y d/dy", false),
            ("v = y d/dx - x d/dy", false),
        ];
        for (text, expected) in cases {
            let d = is_dicritical(&germ(text)?).map_err(|e| e.to_string())?;
            ensure(d == expected, || format!("{text}: dicritical = {d}"))?;
        }
        Ok("radial dicritical; saddle, 1:(-2) and rotation non-dicritical".to_string())
    })
}

/// Every antichain of monomials of degree ≤ 4 in two variables.
pub fn planar_monomial_ideals() -> Vec<MonomialIdeal> {
    let monos: Vec<[u32; 2]> = (0..=4u32).flat_map(|d| (0..=d).map(move |a| [a, d - a])).collect();
    fn rec(k: usize, monos: &[[u32; 2]], chosen: &mut Vec<[u32; 2]>, out: &mut Vec<MonomialIdeal>) {
        if k == monos.len() {
            if !chosen.is_empty() {
                out.push(MonomialIdeal::new(2, chosen.iter().map(|m| m.to_vec()).collect()).expect("nonempty"));
            }
            return;
        }
        rec(k + 1, monos, chosen, out);
        let m = monos[k];
        let divides = |a: &[u32; 2], b: &[u32; 2]| a[0] <= b[0] && a[1] <= b[1];
        if chosen.iter().all(|c| !divides(c, &m) && !divides(&m, c)) {
            chosen.push(m);
            rec(k + 1, monos, chosen, out);
            chosen.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, &monos, &mut Vec::new(), &mut out);
    out
}

pub fn multiplier_ideals() -> Outcome {
    timed(4, "multiplier-ideal oracle equivalence", || {
        let ideals = planar_monomial_ideals();
        for a in &ideals {
            let by_resolution = discrepancy_test(a, 32).ok_or_else(|| format!("{a}: log resolution incomplete"))?;
            ensure(multiplier_ideal_trivial_monomial(a) == by_resolution, || format!("{a}: verdicts differ"))?;
        }
        let ideal = |gens: &[[u32; 2]]| MonomialIdeal::new(2, gens.iter().map(|g| g.to_vec()).collect()).unwrap();
        let named = [
            ("(x, y)", ideal(&[[1, 0], [0, 1]]), true),
            ("(x, y)^2", ideal(&[[2, 0], [1, 1], [0, 2]]), false),
            ("(x^2, y)", ideal(&[[2, 0], [0, 1]]), true),
        ];
        for (name, a, trivial) in named {
            ensure(multiplier_ideal_trivial_monomial(&a) == trivial, || format!("{name}: wrong verdict"))?;
            ensure(discrepancy_test(&a, 32) == Some(trivial), || format!("{name}: wrong discrepancy verdict"))?;
        }
        Ok(format!("{} monomial ideals agree", ideals.len()))
    })
}

pub fn weakly_reduced() -> Outcome {
    timed(5, "weakly reduced certificates", || {
        let saddle = weakly_reduced_check(&germ("v = x d/dx - y d/dy")?, 8);
        ensure(saddle.verdict == WeaklyReducedVerdict::Certified, || format!("saddle: {:?}", saddle.verdict))?;
        let radial = weakly_reduced_check(&germ("v = x d/dx + y d/dy")?, 8);
        match &radial.verdict {
            WeaklyReducedVerdict::Refuted(w)
                if w.len() == 1
                    && w[0].clause() == 1
                    && matches!(w[0], Witness::Saturation { saturation_exponent: 1, .. }) => {}
            other => return Err(format!("radial: {other:?}")),
        }
        Ok("saddle Certified; radial Refuted by clause 1 with s = 1".to_string())
    })
}

fn random_poly(rng: &mut ChaCha8Rng, n: usize) -> MVPoly {
    let terms = rng.gen_range(0..=5);
    let mut p = MVPoly::zero(n);
    for _ in 0..terms {
        let deg = rng.gen_range(0..=4u32);
        let mut e = vec![0u32; n];
        for _ in 0..deg {
            e[rng.gen_range(0..n)] += 1;
        }
        let c = GaussRat::from_ratio(rng.gen_range(-5..=5), rng.gen_range(1..=3))
            + GaussRat::from_int(rng.gen_range(-1..=1)) * GaussRat::i();
        p = &p + &MVPoly::monomial(n, e, c);
    }
    p
}

pub fn siu_lemma(seed: u64) -> Outcome {
    timed(6, "pullback divisibility of 1-forms", || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut checked = 0;
        for k in 0..SIU_FORMS {
            let n = 2 + k % 3;
            let b: Vec<MVPoly> = (0..n).map(|_| random_poly(&mut rng, n)).collect();
            for chart in blowup_charts(n).map_err(|e| e.to_string())? {
                pullback_one_form(&b, &chart).map_err(|e| format!("form {k}: {e}"))?;
                checked += 1;
            }
        }
        Ok(format!("{SIU_FORMS} forms in dimensions 2-4, {checked} chart pullbacks divisible"))
    })
}

pub fn effectivity() -> Outcome {
    timed(7, "effectivity", || {
        for n in [2u32, 3] {
            let alpha = default_alpha(n);
            for k in 1..=64u64 {
                let c = effectivity_count(n, k, alpha);
                ensure(matches!(c.verdict, EffectivityVerdict::SectionExists(_)), || {
                    format!("n = {n}, k = {k}, alpha = {alpha}: {c:?}")
                })?;
            }
            for k in 1..=16usize {
                let z2 = MVPoly::var(n as usize, 1);
                let m = exceptional_multiplicity(&z2, &vec![0; k]).map_err(|e| e.to_string())?;
                ensure(m == k as u32, || format!("n = {n}: multiplicity {m} after {k} blow-ups"))?;
            }
        }
        Ok(format!("sections exist for n in {{2, 3}}, k <= 64 (alpha = {}); z2 multiplicities exact", default_alpha(2)))
    })
}

pub fn separatrices() -> Outcome {
    timed(8, "separatrix solver", || {
        let n = SEPARATRIX_ORDER;
        let solved = |text: &str, dir: usize| -> Result<foliation_core::FormalCurve, String> {
            match formal_separatrix(&germ(text)?, dir, n).map_err(|e| e.to_string())? {
                SeparatrixOutcome::Curve(c) => Ok(c),
                other => Err(format!("{text}: {other:?}")),
            }
        };
        let c = solved("v = x d/dx + (-y + x^2) d/dy", 1)?;
        ensure(c.components[1].coeff(2) == GaussRat::from_ratio(1, 3), || {
            format!("coefficient {}", c.components[1].coeff(2))
        })?;
        match formal_separatrix(&germ("v = x d/dx + (2*y + x^2) d/dy")?, 1, n).map_err(|e| e.to_string())? {
            SeparatrixOutcome::Resonance { order: 2, .. } => {}
            other => return Err(format!("resonant fixture: {other:?}")),
        }
        let d = LogDivisor::original(&[0, 1]);
        for text in ["v = x d/dx - y d/dy", "v = x d/dx - 2*y d/dy", "v = x d/dx - 1/2*y d/dy", "v = x d/dx + i*y d/dy"] {
            let verdict = corner_has_no_transverse_separatrix(&germ(text)?, &d, n).map_err(|e| e.to_string())?;
            ensure(matches!(verdict, CornerVerdict::Confirmed { .. }), || format!("{text}: {verdict:?}"))?;
        }
        let fixtures = [
            ("v = x d/dx + (-y + x^2) d/dy", 1),
            ("v = (x + y^2) d/dx + (-2*y + x^3) d/dy", 1),
            ("v = (x + y^2) d/dx + (-2*y + x^3) d/dy", 2),
            ("v = (x + x*y) d/dx + (i*y + x^2) d/dy", 1),
            ("v = x d/dx + (-y + z^2) d/dy + (-1/2*z + x*y) d/dz", 1),
        ];
        let mut least = usize::MAX;
        for (text, dir) in fixtures {
            let r = solved(text, dir)?.residual_order.ok_or_else(|| format!("{text}: no residual order"))?;
            ensure(r >= n, || format!("{text}: residual order {r}"))?;
            least = least.min(r);
        }
        Ok(format!("1/3 exact, Resonance(2), 4 corners confirmed, residual order >= {least} at N = {n}"))
    })
}

pub fn jensen_fmt() -> Outcome {
    timed(9, "Jensen and First Main Theorem numerics", || {
        let start = Instant::now();
        let cfg = QuadratureConfig::from_env();
        let corpus = jensen_corpus();
        let mut worst = 0.0f64;
        for fx in &corpus {
            for r in JENSEN_RADII {
                let rep = jensen_verify(&fx.polynomial, &fx.zeros, r, &cfg).map_err(|e| format!("{}: {e}", fx.name))?;
                worst = worst.max(rep.residual);
                ensure(rep.residual <= JENSEN_TOLERANCE, || format!("{} at r = {r}: {}", fx.name, rep.residual))?;
            }
        }
        let mut steepest = 0.0f64;
        for fx in fmt_fixtures() {
            let rep = fmt_verify(&fx.curve, &fx.ideal, &FMT_GRID, &cfg).map_err(|e| format!("{}: {e}", fx.name))?;
            ensure(rep.pass, || format!("{}: slope {}", fx.name, rep.slope))?;
            steepest = steepest.max(rep.slope.abs());
        }
        let secs = start.elapsed().as_secs_f64();
        ensure(secs < NUMERICS_SECONDS, || format!("took {secs:.1} s"))?;
        Ok(format!(
            "{} polynomials, max Jensen residual {worst:.1e}; max |FMT slope| {steepest:.1e}",
            corpus.len()
        ))
    })
}

pub fn bookkeeping() -> Outcome {
    timed(10, "multiplicity bookkeeping", || {
        let fixtures = leaf_fixtures();
        for fx in &fixtures {
            let b = multiplicity_bookkeeping(&fx.curve, &fx.field, &fx.t0, 12).map_err(|e| format!("{}: {e}", fx.name))?;
            ensure((b.mu, b.eta, b.nu) == fx.expected && b.identity_holds && b.eta_plus_nu_nonnegative, || {
                format!("{}: {b:?}", fx.name)
            })?;
        }
        let v = germ("v = x d/dx + (-y + x^2) d/dy")?;
        let SeparatrixOutcome::Curve(c) = formal_separatrix(&v, 1, SEPARATRIX_ORDER).map_err(|e| e.to_string())? else {
            return Err("no formal separatrix".to_string());
        };
        let b = multiplicity_bookkeeping_series(&c.components, &v).map_err(|e| e.to_string())?;
        ensure(b.identity_holds && (b.mu, b.eta, b.nu) == (0, -1, 1), || format!("separatrix: {b:?}"))?;
        Ok(format!("mu = eta + nu on {} leaves and a formal separatrix", fixtures.len()))
    })
}

pub fn tautological() -> Outcome {
    timed(11, "tautological trend", || {
        let cfg = QuadratureConfig::from_env();
        let grid: Vec<f64> = (0..7).map(|k| 4.0 * 2f64.powi(k)).collect();
        let rep = tautological_pairing(&exponential_curve(), &grid, TangentMetric::Euclidean, &cfg)
            .map_err(|e| e.to_string())?;
        ensure(rep.applicability == Applicability::Transcendental, || "exp not transcendental".to_string())?;
        let least = rep.values.iter().copied().fold(f64::INFINITY, f64::min);
        ensure(least >= TAUTOLOGICAL_FLOOR && !rep.violation, || format!("exp: minimum {least}"))?;
        let control = tautological_pairing(&identity_curve(), &grid, TangentMetric::Euclidean, &cfg)
            .map_err(|e| e.to_string())?;
        ensure(matches!(control.applicability, Applicability::NotApplicable { .. }), || {
            "f(t) = t not flagged".to_string()
        })?;
        Ok(format!("exp pairing >= {least:.1e} on [4, 256]; f(t) = t NotApplicable"))
    })
}

/// All checks in order.
pub fn run_all(seed: u64) -> Vec<Outcome> {
    vec![
        seidenberg(seed),
        jordan_stability(),
        dicriticality(),
        multiplier_ideals(),
        weakly_reduced(),
        siu_lemma(seed),
        effectivity(),
        separatrices(),
        jensen_fmt(),
        bookkeeping(),
        tautological(),
    ]
}
