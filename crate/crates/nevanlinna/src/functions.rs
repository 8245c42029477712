//! Counting, proximity and characteristic functions; the Jensen formula
//! and the First Main Theorem at finite radii.
//!
//! Normalizations. Circle averages are of `ln|g|²`, and the Jensen identity
//! is checked in the form
//! `(1/2π)∮_r ln|P|² − (1/2π)∮_1 ln|P|² = 2 (N(r) − N(1))`,
//! i.e. `dd^c ln|t − a|²` carries mass 2 per zero order. Characteristic
//! functions use the Fubini–Study form of total mass 1 on each `P¹`
//! factor, so `T(r) = ½ ln((1 + r²)/2)` for `f(t) = t`. In that
//! normalization the proximity function is `m(r) = −(1/4π)∮ φ_J ∘ f`
//! and the First Main Theorem reads `T = N + m + O(1)`.

use std::f64::consts::PI;

use foliation_algebra::{GaussRat, MVPoly};
use num_complex::Complex64;
use serde::Serialize;

use crate::curve::{expr_order, ParametrizedCurve};
use crate::error::NevanlinnaError;
use crate::expr::Expr;
use crate::quadrature::{
    characteristic_integral, check_circle, circle_mean_log, effective_radius, validate_grid, Estimate, Meter,
    QuadratureConfig,
};
use crate::scaled::{ln_norm_sqr, log_sum_exp, Scaled};

/// Slack allowed on the regression slope of `T − N − m` against `ln r`.
pub const FMT_SLOPE_TOLERANCE: f64 = 0.05;

fn as_weights(zeros: &[(Complex64, u32)]) -> Vec<(Complex64, f64)> {
    zeros.iter().map(|(a, k)| (*a, f64::from(*k))).collect()
}

/// `(1/2π)∮ ln|g(re^{iθ})|² dθ` with a refinement bound. Declared zeros of
/// `g` near the circle are integrated in closed form.
pub fn circle_average_log(
    g: &Expr,
    r: f64,
    zeros: &[(Complex64, u32)],
    cfg: &QuadratureConfig,
) -> Result<Estimate, NevanlinnaError> {
    check_circle(r, zeros)?;
    let meter = Meter::new(cfg.budget);
    circle_mean_log(&|z| 2.0 * g.eval(z).ln_abs(), r, &as_weights(zeros), cfg, &meter)
}

/// `N(r) = Σ_{|t_j|<r} ν_j ln(r/|t_j|)`; a zero at the origin contributes
/// `ν ln r`, so that `N(1)` only counts zeros in the punctured unit disk.
pub fn counting_function(zeros: &[(Complex64, u32)], r: f64) -> f64 {
    zeros
        .iter()
        .filter(|(a, _)| a.norm() < r)
        .map(|(a, k)| {
            let m = a.norm();
            let term = if m == 0.0 { r.ln() } else { (r / m).ln() };
            f64::from(*k) * term
        })
        .sum()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct JensenReport {
    pub radius: f64,
    pub unit_radius: f64,
    /// `2 (N(r) − N(1))`
    pub counting_term: f64,
    pub average_at_radius: f64,
    pub average_at_one: f64,
    pub residual: f64,
    pub quadrature_bound: f64,
}

/// Check the Jensen formula for a polynomial whose zeros are all declared.
/// Radii meeting a zero are nudged outward.
pub fn jensen_verify(
    p: &Expr,
    zeros: &[(GaussRat, u32)],
    r: f64,
    cfg: &QuadratureConfig,
) -> Result<JensenReport, NevanlinnaError> {
    let coeffs = p
        .to_univariate()
        .ok_or_else(|| NevanlinnaError::Unsupported("Jensen check expects a polynomial".to_string()))?;
    let degree = coeffs.len() - 1;
    let mut declared = 0;
    for (a, k) in zeros {
        let found = expr_order(p, a, *k as usize + 1);
        if found != Some(*k as usize) {
            return Err(NevanlinnaError::ZeroMismatch {
                target: "P".to_string(),
                at: a.to_string(),
                declared: *k,
                found: found.map_or_else(|| "a higher order".to_string(), |k| k.to_string()),
            });
        }
        declared += k;
    }
    if declared as usize != degree {
        return Err(NevanlinnaError::IncompleteZeros { declared, degree });
    }
    if p.is_zero() {
        return Err(NevanlinnaError::Degenerate("the zero polynomial".to_string()));
    }
    let numeric: Vec<(Complex64, u32)> = zeros.iter().map(|(a, k)| (a.to_complex(), *k)).collect();
    let rr = effective_radius(r, &numeric);
    let r1 = effective_radius(1.0, &numeric);
    if degree == 0 {
        // every term is the same constant: the identity is exact
        let c = 2.0 * p.eval(Complex64::new(0.0, 0.0)).ln_abs();
        return Ok(JensenReport {
            radius: rr,
            unit_radius: r1,
            counting_term: 0.0,
            average_at_radius: c,
            average_at_one: c,
            residual: 0.0,
            quadrature_bound: 0.0,
        });
    }
    let a_r = circle_average_log(p, rr, &numeric, cfg)?;
    let a_1 = circle_average_log(p, r1, &numeric, cfg)?;
    let counting_term = 2.0 * (counting_function(&numeric, rr) - counting_function(&numeric, r1));
    Ok(JensenReport {
        radius: rr,
        unit_radius: r1,
        counting_term,
        average_at_radius: a_r.value,
        average_at_one: a_1.value,
        residual: (counting_term - (a_r.value - a_1.value)).abs(),
        quadrature_bound: a_r.bound + a_1.bound,
    })
}

/// Built-in positive (1,1)-forms on the target of a curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FormSpec {
    /// Sum of the Fubini–Study forms of the `P¹` factors.
    FubiniStudy,
    /// `(i/2π) Σ dz_k ∧ dz̄_k` on the affine chart.
    Euclidean,
}

/// Density of `(i/2π) ∂∂̄ ln ‖h‖²` for `h = (h_i)` with derivatives `dh`:
/// `Σ_{i<j} |h_i h_j′ − h_j h_i′|² / (π ‖h‖⁴)`.
/// `NaN` where `h` vanishes (a removable point).
pub fn wronskian_density(h: &[Scaled], dh: &[Scaled]) -> f64 {
    let norm = ln_norm_sqr(h);
    if norm == f64::NEG_INFINITY {
        return f64::NAN;
    }
    let mut logs = Vec::new();
    for i in 0..h.len() {
        for j in i + 1..h.len() {
            let w = h[i] * dh[j] - h[j] * dh[i];
            if !w.is_zero() {
                logs.push(2.0 * w.ln_abs());
            }
        }
    }
    if logs.is_empty() {
        return 0.0;
    }
    (log_sum_exp(&logs) - 2.0 * norm).exp() / PI
}

/// Pullback density of the Fubini–Study form of `P¹` by `f`:
/// `|f′|² / (π (1 + |f|²)²)`.
pub fn fubini_study_density(f: Scaled, df: Scaled) -> f64 {
    wronskian_density(&[Scaled::ONE, f], &[Scaled::ZERO, df])
}

struct Evaluator {
    comps: Vec<Expr>,
    derivs: Vec<Expr>,
}

impl Evaluator {
    fn new(comps: &[Expr]) -> Self {
        Evaluator {
            comps: comps.to_vec(),
            derivs: comps.iter().map(Expr::derivative).collect(),
        }
    }

    fn values(&self, z: Complex64) -> (Vec<Scaled>, Vec<Scaled>) {
        (
            self.comps.iter().map(|e| e.eval(z)).collect(),
            self.derivs.iter().map(|e| e.eval(z)).collect(),
        )
    }
}

/// Evaluate a density away from removable 0/0 points by a tiny shift.
fn guarded(density: impl Fn(Complex64) -> f64) -> impl Fn(Complex64) -> f64 {
    move |z| {
        let v = density(z);
        if v.is_finite() {
            v
        } else {
            density(z * (1.0 + 1e-7) + 1e-9)
        }
    }
}

fn form_density(curve: &ParametrizedCurve, form: FormSpec) -> impl Fn(Complex64) -> f64 {
    let ev = Evaluator::new(curve.components());
    guarded(move |z| {
        let (f, df) = ev.values(z);
        match form {
            FormSpec::FubiniStudy => f.iter().zip(&df).map(|(a, b)| fubini_study_density(*a, *b)).sum(),
            FormSpec::Euclidean => df.iter().map(|d| (2.0 * d.ln_abs()).exp()).sum::<f64>() / PI,
        }
    })
}

/// Coefficient-ideal data along a curve: generators in the target's affine
/// coordinates and the declared common zeros of the pulled-back generators.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdealData {
    #[serde(serialize_with = "serialize_polys")]
    pub generators: Vec<MVPoly>,
    pub zeros: Vec<(GaussRat, u32)>,
}

fn serialize_polys<S: serde::Serializer>(ps: &[MVPoly], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(ps.iter().map(|p| p.fmt_with(&foliation_core::germ::default_variable_names(p.nvars()))))
}

impl IdealData {
    /// Verify the declared zeros: the minimal vanishing order of the
    /// generators along `f` at each point equals the declared multiplicity.
    pub fn new(
        curve: &ParametrizedCurve,
        generators: Vec<MVPoly>,
        zeros: Vec<(GaussRat, u32)>,
    ) -> Result<Self, NevanlinnaError> {
        if generators.iter().any(|g| g.nvars() != curve.dim()) || generators.is_empty() {
            return Err(NevanlinnaError::DimensionMismatch {
                curve: curve.dim(),
                expected: generators.first().map_or(0, MVPoly::nvars),
            });
        }
        let data = IdealData { generators, zeros };
        let pulled = data.pulled_back(curve);
        for (a, k) in &data.zeros {
            let found = pulled.iter().filter_map(|e| expr_order(e, a, *k as usize + 1)).min();
            if found != Some(*k as usize) {
                return Err(NevanlinnaError::ZeroMismatch {
                    target: "ideal".to_string(),
                    at: a.to_string(),
                    declared: *k,
                    found: found.map_or_else(|| "a higher order".to_string(), |k| k.to_string()),
                });
            }
        }
        Ok(data)
    }

    /// The unit ideal `(1)`.
    pub fn unit(dim: usize) -> Self {
        IdealData {
            generators: vec![MVPoly::one(dim)],
            zeros: Vec::new(),
        }
    }

    pub fn pulled_back(&self, curve: &ParametrizedCurve) -> Vec<Expr> {
        self.generators.iter().map(|g| Expr::compose(g, curve.components())).collect()
    }

    /// Degree of the generators in each variable: the generators are
    /// sections of `O(D_1, ..., D_n)` on `(P¹)ⁿ`.
    pub fn multidegree(&self) -> Vec<u32> {
        let n = self.generators[0].nvars();
        (0..n)
            .map(|k| {
                self.generators
                    .iter()
                    .flat_map(|g| g.terms().map(move |(e, _)| e[k]))
                    .max()
                    .unwrap_or(0)
            })
            .collect()
    }

    fn numeric_zeros(&self) -> Vec<(Complex64, u32)> {
        self.zeros.iter().map(|(a, k)| (a.to_complex(), *k)).collect()
    }
}

/// `φ_J ∘ f = ln Σ|g_i ∘ f|² − Σ_k D_k ln(1 + |f_k|²)`.
fn phi(curve: &ParametrizedCurve, ideal: &IdealData) -> impl Fn(Complex64) -> f64 {
    let gens = ideal.pulled_back(curve);
    let comps = curve.components().to_vec();
    let degs = ideal.multidegree();
    move |z| {
        let h: Vec<Scaled> = gens.iter().map(|e| e.eval(z)).collect();
        let mut v = ln_norm_sqr(&h);
        for (e, d) in comps.iter().zip(&degs) {
            if *d > 0 {
                v -= f64::from(*d) * log_sum_exp(&[0.0, 2.0 * e.eval(z).ln_abs()]);
            }
        }
        v
    }
}

/// `m(r) = −(1/4π)∮ φ_J ∘ f`.
fn proximity(
    curve: &ParametrizedCurve,
    ideal: &IdealData,
    r: f64,
    cfg: &QuadratureConfig,
    meter: &Meter,
) -> Result<Estimate, NevanlinnaError> {
    let f = phi(curve, ideal);
    let e = circle_mean_log(&f, r, &as_weights(&ideal.numeric_zeros()), cfg, meter)?;
    Ok(Estimate {
        value: -0.5 * e.value,
        bound: 0.5 * e.bound,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ProfileStatus {
    Converged,
    DivergedWithinBudget { evaluations: u64 },
}

/// Sampled growth functions of a curve.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NevanlinnaProfile {
    pub r_grid: Vec<f64>,
    #[serde(rename = "T_values")]
    pub t_values: Vec<f64>,
    #[serde(rename = "N_values")]
    pub n_values: Vec<f64>,
    pub m_values: Vec<f64>,
    pub quadrature_error_bounds: Vec<f64>,
    pub status: ProfileStatus,
    pub evaluations: u64,
}

impl NevanlinnaProfile {
    fn diverged(evaluations: u64) -> Self {
        NevanlinnaProfile {
            r_grid: Vec::new(),
            t_values: Vec::new(),
            n_values: Vec::new(),
            m_values: Vec::new(),
            quadrature_error_bounds: Vec::new(),
            status: ProfileStatus::DivergedWithinBudget { evaluations },
            evaluations,
        }
    }

    pub fn is_converged(&self) -> bool {
        self.status == ProfileStatus::Converged
    }

    /// CSV with columns `r,T,N,m,bound`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("r,T,N,m,bound\n");
        for k in 0..self.r_grid.len() {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                self.r_grid[k], self.t_values[k], self.n_values[k], self.m_values[k], self.quadrature_error_bounds[k]
            ));
        }
        out
    }
}

fn profile_from(
    r_grid: Vec<f64>,
    t: Result<Vec<Estimate>, NevanlinnaError>,
    nm: impl FnOnce(&[f64]) -> Result<(Vec<f64>, Vec<f64>, Vec<f64>), NevanlinnaError>,
    meter: &Meter,
) -> Result<NevanlinnaProfile, NevanlinnaError> {
    let t = match t {
        Ok(t) => t,
        Err(NevanlinnaError::DivergedWithinBudget { evaluations }) => return Ok(NevanlinnaProfile::diverged(evaluations)),
        Err(e) => return Err(e),
    };
    let (n, m, mb) = match nm(&r_grid) {
        Ok(v) => v,
        Err(NevanlinnaError::DivergedWithinBudget { evaluations }) => return Ok(NevanlinnaProfile::diverged(evaluations)),
        Err(e) => return Err(e),
    };
    Ok(NevanlinnaProfile {
        quadrature_error_bounds: t.iter().zip(&mb).map(|(e, b)| e.bound + b).collect(),
        t_values: t.iter().map(|e| e.value).collect(),
        n_values: n,
        m_values: m,
        r_grid,
        status: ProfileStatus::Converged,
        evaluations: meter.used(),
    })
}

fn counting_and_proximity(
    curve: &ParametrizedCurve,
    ideal: Option<&IdealData>,
    grid: &[f64],
    cfg: &QuadratureConfig,
    meter: &Meter,
) -> Result<(Vec<f64>, Vec<f64>, Vec<f64>), NevanlinnaError> {
    let Some(ideal) = ideal else {
        return Ok((vec![0.0; grid.len()], vec![0.0; grid.len()], vec![0.0; grid.len()]));
    };
    let zeros = ideal.numeric_zeros();
    let (mut n, mut m, mut b) = (Vec::new(), Vec::new(), Vec::new());
    for &r in grid {
        n.push(counting_function(&zeros, r));
        let e = proximity(curve, ideal, r, cfg, meter)?;
        m.push(e.value);
        b.push(e.bound);
    }
    Ok((n, m, b))
}

/// The grid with each radius pushed off any declared zero.
fn effective_grid(r_grid: &[f64], zeros: &[(Complex64, u32)]) -> Vec<f64> {
    r_grid.iter().map(|r| effective_radius(*r, zeros)).collect()
}

/// `T_{f,ω}(r) = ∫₁^r dt/t ∫_{B(t)} f*ω` on a grid of radii `≥ 1`, with
/// `N` and `m` of an ideal when one is supplied. Running out of budget is
/// reported in the profile status.
pub fn characteristic_t(
    curve: &ParametrizedCurve,
    form: FormSpec,
    r_grid: &[f64],
    ideal: Option<&IdealData>,
    cfg: &QuadratureConfig,
) -> Result<NevanlinnaProfile, NevanlinnaError> {
    validate_grid(r_grid)?;
    let grid = effective_grid(r_grid, &ideal.map(IdealData::numeric_zeros).unwrap_or_default());
    let meter = Meter::new(cfg.budget);
    let density = form_density(curve, form);
    let t = characteristic_integral(&density, &grid, cfg, &meter);
    profile_from(grid, t, |g| counting_and_proximity(curve, ideal, g, cfg, &meter), &meter)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FmtReport {
    /// `T` is `T_{f̂,Θ_D}`, the characteristic of the divisor cut out by
    /// the ideal on a log resolution.
    pub profile: NevanlinnaProfile,
    pub differences: Vec<f64>,
    pub slope: f64,
    pub oscillation_top_half: f64,
    pub slope_tolerance: f64,
    pub pass: bool,
}

/// Least-squares slope of `y` against `x`.
pub fn regression_slope(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    if sxx == 0.0 {
        0.0
    } else {
        sxy / sxx
    }
}

/// First Main Theorem at finite radii: `T − N − m` on the grid, where
/// `T = Σ_k D_k T_{FS,k} − ∫₁^r dt/t ∫ (i/2π)∂∂̄ ln Σ|g_i ∘ f|²` (the
/// absolutely continuous part). Passes when the regression slope against
/// `ln r` is within the tolerance.
pub fn fmt_verify(
    curve: &ParametrizedCurve,
    ideal: &IdealData,
    r_grid: &[f64],
    cfg: &QuadratureConfig,
) -> Result<FmtReport, NevanlinnaError> {
    validate_grid(r_grid)?;
    let grid = effective_grid(r_grid, &ideal.numeric_zeros());
    let meter = Meter::new(cfg.budget);
    let comps = Evaluator::new(curve.components());
    let gens = Evaluator::new(&ideal.pulled_back(curve));
    let degs = ideal.multidegree();
    let density = guarded(move |z| {
        let (f, df) = comps.values(z);
        let (h, dh) = gens.values(z);
        let fs: f64 = f
            .iter()
            .zip(&df)
            .zip(&degs)
            .map(|((a, b), d)| f64::from(*d) * fubini_study_density(*a, *b))
            .sum();
        fs - wronskian_density(&h, &dh)
    });
    let t = characteristic_integral(&density, &grid, cfg, &meter);
    let profile = profile_from(grid, t, |g| counting_and_proximity(curve, Some(ideal), g, cfg, &meter), &meter)?;
    let differences: Vec<f64> = (0..profile.r_grid.len())
        .map(|k| profile.t_values[k] - profile.n_values[k] - profile.m_values[k])
        .collect();
    let logs: Vec<f64> = profile.r_grid.iter().map(|r| r.ln()).collect();
    let slope = if differences.len() >= 2 {
        regression_slope(&logs, &differences)
    } else {
        0.0
    };
    let top = &differences[differences.len() / 2..];
    let oscillation_top_half = if top.is_empty() {
        0.0
    } else {
        top.iter().copied().fold(f64::NEG_INFINITY, f64::max) - top.iter().copied().fold(f64::INFINITY, f64::min)
    };
    let pass = profile.is_converged() && slope.abs() <= FMT_SLOPE_TOLERANCE;
    Ok(FmtReport {
        profile,
        differences,
        slope,
        oscillation_top_half,
        slope_tolerance: FMT_SLOPE_TOLERANCE,
        pass,
    })
}
