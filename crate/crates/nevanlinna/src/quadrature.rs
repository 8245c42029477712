//! Circle means by the periodic trapezoid rule and the `dt/t`-weighted
//! area integrals that define characteristic functions.

use std::cell::Cell;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::NevanlinnaError;

pub const DEFAULT_TOLERANCE: f64 = 1e-8;
pub const DEFAULT_BUDGET: u64 = 400_000_000;
pub const BUDGET_ENV: &str = "FOLIATION_LAB_BUDGET";
/// Declared zeros this close to an integration circle are "on" it.
pub const ZERO_PROXIMITY: f64 = 1e-9;
/// Relative outward shift applied to a radius that meets a declared zero.
pub const RADIUS_NUDGE: f64 = 1e-6;
/// Zeros whose modulus ratio to the radius exceeds this are integrated
/// analytically (singularity subtraction).
const NEAR_ZERO_RATIO: f64 = 0.5;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QuadratureConfig {
    /// Target per integral, relative to `1 + |value|`.
    pub tol: f64,
    /// Initial number of nodes on a circle.
    pub n_quad: usize,
    /// Cap on integrand evaluations for one top-level computation.
    pub budget: u64,
    /// Largest number of nodes on a single circle or radial segment.
    pub max_points: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            tol: DEFAULT_TOLERANCE,
            n_quad: 64,
            budget: DEFAULT_BUDGET,
            max_points: 1 << 20,
        }
    }
}

impl QuadratureConfig {
    /// Defaults with the evaluation budget read from `FOLIATION_LAB_BUDGET`.
    pub fn from_env() -> Self {
        let mut cfg = QuadratureConfig::default();
        if let Some(b) = std::env::var(BUDGET_ENV).ok().and_then(|s| s.trim().parse().ok()) {
            cfg.budget = b;
        }
        cfg
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }
}

/// Evaluation counter shared by the nested quadratures of one computation.
#[derive(Debug)]
pub struct Meter {
    used: Cell<u64>,
    cap: u64,
}

impl Meter {
    pub fn new(cap: u64) -> Self {
        Meter { used: Cell::new(0), cap }
    }

    pub fn used(&self) -> u64 {
        self.used.get()
    }

    fn charge(&self, n: usize) -> Result<(), NevanlinnaError> {
        let used = self.used.get() + n as u64;
        self.used.set(used);
        if used > self.cap {
            return Err(NevanlinnaError::DivergedWithinBudget { evaluations: used });
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Estimate {
    pub value: f64,
    /// A-posteriori bound: difference between the last two refinements.
    pub bound: f64,
}

fn finite(v: f64, z: Complex64) -> Result<f64, NevanlinnaError> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(NevanlinnaError::Degenerate(format!("integrand is not finite at t = {z}")))
    }
}

/// `(1/2π)∮ f(re^{iθ}) dθ` by trapezoid doubling until successive
/// estimates agree to the tolerance.
pub fn circle_mean(
    f: &dyn Fn(Complex64) -> f64,
    r: f64,
    cfg: &QuadratureConfig,
    meter: &Meter,
) -> Result<Estimate, NevanlinnaError> {
    let mut n = cfg.n_quad.max(4);
    meter.charge(n)?;
    let mut sum = 0.0;
    for k in 0..n {
        let z = Complex64::from_polar(r, 2.0 * PI * k as f64 / n as f64);
        sum += finite(f(z), z)?;
    }
    let mut est = sum / n as f64;
    loop {
        if 2 * n > cfg.max_points {
            return Err(NevanlinnaError::DivergedWithinBudget { evaluations: meter.used() });
        }
        meter.charge(n)?;
        for k in 0..n {
            let z = Complex64::from_polar(r, 2.0 * PI * (k as f64 + 0.5) / n as f64);
            sum += finite(f(z), z)?;
        }
        n *= 2;
        let next = sum / n as f64;
        let bound = (next - est).abs();
        est = next;
        if bound <= cfg.tol * (1.0 + est.abs()) {
            return Ok(Estimate { value: est, bound });
        }
    }
}

/// Circle mean of a function with logarithmic singularities
/// `w · ln|t − a|²` at the listed points. Singularities close to the
/// circle are subtracted and integrated in closed form,
/// `(1/2π)∮ ln|t − a|² = 2 ln max(r, |a|)`.
pub fn circle_mean_log(
    f: &dyn Fn(Complex64) -> f64,
    r: f64,
    singular: &[(Complex64, f64)],
    cfg: &QuadratureConfig,
    meter: &Meter,
) -> Result<Estimate, NevanlinnaError> {
    let near: Vec<(Complex64, f64)> = singular
        .iter()
        .copied()
        .filter(|(a, _)| {
            let m = a.norm();
            m.min(r) / m.max(r) > NEAR_ZERO_RATIO
        })
        .collect();
    if near.is_empty() {
        return circle_mean(f, r, cfg, meter);
    }
    let g = |z: Complex64| f(z) - near.iter().map(|(a, w)| w * (z - a).norm_sqr().ln()).sum::<f64>();
    let est = circle_mean(&g, r, cfg, meter)?;
    let closed: f64 = near.iter().map(|(a, w)| w * 2.0 * r.max(a.norm()).ln()).sum();
    Ok(Estimate {
        value: est.value + closed,
        bound: est.bound,
    })
}

/// Error when a declared zero lies on the circle `|t| = r`.
pub fn check_circle(r: f64, zeros: &[(Complex64, u32)]) -> Result<(), NevanlinnaError> {
    for (a, _) in zeros {
        let d = (a.norm() - r).abs();
        if d <= ZERO_PROXIMITY * r.max(1.0) {
            return Err(NevanlinnaError::ZeroOnCircle {
                radius: r,
                at: a.to_string(),
                distance: d,
            });
        }
    }
    Ok(())
}

/// The radius actually used: `r` itself unless a declared zero lies on
/// the circle, in which case `r` is pushed outward by the nudge.
pub fn effective_radius(r: f64, zeros: &[(Complex64, u32)]) -> f64 {
    let mut rr = r;
    while check_circle(rr, zeros).is_err() {
        rr *= 1.0 + RADIUS_NUDGE;
    }
    rr
}

/// `T(r) = ∫₁^r dt/t ∫_{|z|<t} ρ dA` for every radius of an increasing
/// grid (radii ≥ 1), where `density` is ρ with respect to Lebesgue
/// measure. Uses `T(r) = ∫_{|z|<r} ρ(z) ln(r / max(1, |z|)) dA`, polar
/// coordinates, composite Simpson in the radius and circle means in the
/// angle.
pub fn characteristic_integral(
    density: &dyn Fn(Complex64) -> f64,
    r_grid: &[f64],
    cfg: &QuadratureConfig,
    meter: &Meter,
) -> Result<Vec<Estimate>, NevanlinnaError> {
    validate_grid(r_grid)?;
    let mut breaks = vec![0.0, 1.0];
    for &r in r_grid {
        if r > *breaks.last().unwrap() {
            breaks.push(r);
        }
    }
    // per piece: (∫ s ρ̄ ds, ∫ s ln s ρ̄ ds) with bounds
    let mut pieces = Vec::new();
    for w in breaks.windows(2) {
        pieces.push(radial_piece(density, w[0], w[1], cfg, meter)?);
    }
    let mut out = Vec::new();
    for &r in r_grid {
        let lr = r.ln();
        let (mut value, mut bound) = (0.0, 0.0);
        for (k, w) in breaks.windows(2).enumerate() {
            if w[1] > r {
                break;
            }
            let p = &pieces[k];
            value += lr * p.m0.value;
            bound += lr * p.m0.bound;
            if w[0] >= 1.0 {
                value -= p.m1.value;
                bound += p.m1.bound;
            }
        }
        out.push(Estimate { value, bound });
    }
    Ok(out)
}

pub fn validate_grid(r_grid: &[f64]) -> Result<(), NevanlinnaError> {
    if r_grid.is_empty() {
        return Err(NevanlinnaError::InvalidGrid("empty".to_string()));
    }
    if r_grid.iter().any(|r| !r.is_finite() || *r < 1.0) || r_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(NevanlinnaError::InvalidGrid(format!("{r_grid:?}")));
    }
    Ok(())
}

struct Piece {
    m0: Estimate,
    m1: Estimate,
}

fn radial_piece(
    density: &dyn Fn(Complex64) -> f64,
    a: f64,
    b: f64,
    cfg: &QuadratureConfig,
    meter: &Meter,
) -> Result<Piece, NevanlinnaError> {
    // node value: (s ρ̄(s), s ρ̄ bound), ρ̄(s) = ∫₀^{2π} ρ(se^{iθ}) dθ
    let node = |s: f64| -> Result<(f64, f64), NevanlinnaError> {
        if s == 0.0 {
            return Ok((0.0, 0.0));
        }
        let e = circle_mean(density, s, cfg, meter)?;
        Ok((2.0 * PI * s * e.value, 2.0 * PI * s * e.bound))
    };
    let mut n = 8;
    let mut nodes: Vec<(f64, f64)> = (0..=n)
        .map(|k| node(a + (b - a) * k as f64 / n as f64))
        .collect::<Result<_, _>>()?;
    let simpson = |nodes: &[(f64, f64)], n: usize, log_weight: bool| -> (f64, f64) {
        let h = (b - a) / n as f64;
        let (mut s, mut e) = (0.0, 0.0);
        for (k, (v, eb)) in nodes.iter().enumerate() {
            let w = if k == 0 || k == n {
                1.0
            } else if k % 2 == 1 {
                4.0
            } else {
                2.0
            };
            let x = a + h * k as f64;
            let ln_x = if x > 0.0 { x.ln() } else { 0.0 };
            let (fw, bw) = if log_weight { (ln_x, ln_x.abs()) } else { (1.0, 1.0) };
            s += w * v * fw;
            e += w * eb * bw;
        }
        (s * h / 3.0, e * h / 3.0)
    };
    let (mut p0, mut p1) = (simpson(&nodes, n, false), simpson(&nodes, n, true));
    loop {
        if 2 * n > cfg.max_points {
            return Err(NevanlinnaError::DivergedWithinBudget { evaluations: meter.used() });
        }
        let mut refined = Vec::with_capacity(2 * n + 1);
        for k in 0..n {
            refined.push(nodes[k]);
            refined.push(node(a + (b - a) * (2 * k + 1) as f64 / (2 * n) as f64)?);
        }
        refined.push(nodes[n]);
        nodes = refined;
        n *= 2;
        let (q0, q1) = (simpson(&nodes, n, false), simpson(&nodes, n, true));
        let (p0r, p1r, q0r, q1r) = (p0.0, p1.0, q0.0, q1.0);
        let d0 = (q0.0 - p0.0).abs();
        let d1 = (q1.0 - p1.0).abs();
        p0 = q0;
        p1 = q1;
        if d0 <= cfg.tol * (1.0 + p0.0.abs()) && d1 <= cfg.tol * (1.0 + p1.0.abs()) {
            return Ok(Piece {
                m0: Estimate {
                    value: p0.0 + (q0r - p0r) / 15.0,
                    bound: d0 + p0.1,
                },
                m1: Estimate {
                    value: p1.0 + (q1r - p1r) / 15.0,
                    bound: d1 + p1.1,
                },
            });
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circle_mean_of_smooth_functions() {
        let cfg = QuadratureConfig::default();
        let meter = Meter::new(cfg.budget);
        let e = circle_mean(&|z: Complex64| (z * z).re + 3.0, 2.0, &cfg, &meter).unwrap();
        assert!((e.value - 3.0).abs() < 1e-12);
        let e = circle_mean_log(&|z: Complex64| (z - 2.0).norm_sqr().ln(), 2.0 + 1e-7, &[(Complex64::new(2.0, 0.0), 1.0)], &cfg, &meter)
            .unwrap();
        assert!((e.value - 2.0 * (2.0f64 + 1e-7).ln()).abs() < 1e-9);
    }

    #[test]
    fn area_integral_of_the_unit_density() {
        // ρ = 1/π: ∫_{B(t)} ρ = t², T(r) = (r² − 1)/2
        let cfg = QuadratureConfig::default();
        let meter = Meter::new(cfg.budget);
        let out = characteristic_integral(&|_| 1.0 / PI, &[1.0, 2.0, 5.0], &cfg, &meter).unwrap();
        for (e, r) in out.iter().zip([1.0, 2.0, 5.0]) {
            assert!((e.value - (r * r - 1.0) / 2.0).abs() < 1e-8, "{r}: {e:?}");
        }
    }

    #[test]
    fn budget_is_enforced() {
        let cfg = QuadratureConfig::default().with_budget(100);
        let meter = Meter::new(cfg.budget);
        let r = characteristic_integral(&|_| 1.0, &[4.0], &cfg, &meter);
        assert!(matches!(r, Err(NevanlinnaError::DivergedWithinBudget { .. })));
    }

    #[test]
    fn nudged_radius_clears_declared_zeros() {
        let zeros = [(Complex64::new(0.0, 2.0), 1)];
        assert!(check_circle(2.0, &zeros).is_err());
        let r = effective_radius(2.0, &zeros);
        assert!(r > 2.0 && r < 2.0 * (1.0 + 2e-6));
        assert!(check_circle(r, &zeros).is_ok());
    }
}
