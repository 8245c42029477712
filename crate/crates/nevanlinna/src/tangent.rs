//! The tangent-bundle side: the tautological pairing of the canonical
//! lift, the logarithmic derivative lemma and the multiplicity identity
//! `μ = η + ν` for leaves of a vector field.

use foliation_algebra::series::eval_poly_generic;
use foliation_algebra::{GaussRat, TruncatedSeries};
use foliation_core::VectorFieldGerm;
use num_complex::Complex64;
use serde::Serialize;

use crate::curve::{ParametrizedCurve, ZeroTarget};
use crate::error::NevanlinnaError;
use crate::exact::ExpCoeff;
use crate::expr::Expr;
use crate::functions::{characteristic_t, counting_function, wronskian_density, FormSpec, ProfileStatus};
use crate::quadrature::{
    characteristic_integral, circle_mean, circle_mean_log, effective_radius, validate_grid, Meter, QuadratureConfig,
};
use crate::scaled::{ln_norm_sqr, log_sum_exp, Scaled};

/// Slack on the fit residual of the logarithmic derivative lemma.
pub const LOG_DERIVATIVE_SLACK: f64 = 0.5;

/// Hermitian metric used for `|f′|_ω`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TangentMetric {
    /// `Σ |f_k′|²` in the affine chart.
    Euclidean,
    /// `Σ |f_k′|² / (1 + |f_k|²)²`.
    FubiniStudy,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Applicability {
    Transcendental,
    NotApplicable { reason: String },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TautologicalReport {
    pub applicability: Applicability,
    pub metric: TangentMetric,
    pub r_grid: Vec<f64>,
    /// `T_f(r)` for the Fubini–Study form.
    pub characteristic: Vec<f64>,
    /// `[Σ μ_j ln(r/|t_j|) − (1/2π)∮_r ln|f′|²_ω + (1/2π)∮_1 ln|f′|²_ω] / T_f(r)`
    pub values: Vec<f64>,
    pub bounds: Vec<f64>,
    /// Minimum over the upper half of the grid.
    pub liminf_top_half: f64,
    /// A value below `−bound` on the upper half of the grid for a
    /// transcendental curve.
    pub violation: bool,
}

/// The eq.-(tower) right-hand side divided by `T_f(r)`. Zeros of `f′`
/// are taken from the curve's declarations.
pub fn tautological_pairing(
    curve: &ParametrizedCurve,
    r_grid: &[f64],
    metric: TangentMetric,
    cfg: &QuadratureConfig,
) -> Result<TautologicalReport, NevanlinnaError> {
    validate_grid(r_grid)?;
    let applicability = if curve.is_algebraic() {
        Applicability::NotApplicable {
            reason: "the curve is algebraic; the inequality assumes a transcendental curve".to_string(),
        }
    } else {
        Applicability::Transcendental
    };
    let mu = curve.zeros(&ZeroTarget::Derivative);
    let grid: Vec<f64> = r_grid.iter().map(|r| effective_radius(*r, &mu)).collect();
    let profile = characteristic_t(curve, FormSpec::FubiniStudy, &grid, None, cfg)?;
    if let ProfileStatus::DivergedWithinBudget { evaluations } = profile.status {
        return Err(NevanlinnaError::DivergedWithinBudget { evaluations });
    }
    let comps = curve.components().to_vec();
    let derivs = curve.derivative();
    let log_norm = move |z: Complex64| -> f64 {
        let d: Vec<Scaled> = derivs.iter().map(|e| e.eval(z)).collect();
        match metric {
            TangentMetric::Euclidean => ln_norm_sqr(&d),
            TangentMetric::FubiniStudy => {
                let logs: Vec<f64> = d
                    .iter()
                    .zip(&comps)
                    .filter(|(dk, _)| !dk.is_zero())
                    .map(|(dk, fk)| 2.0 * dk.ln_abs() - 2.0 * log_sum_exp(&[0.0, 2.0 * fk.eval(z).ln_abs()]))
                    .collect();
                log_sum_exp(&logs)
            }
        }
    };
    let weights: Vec<(Complex64, f64)> = mu.iter().map(|(a, k)| (*a, f64::from(*k))).collect();
    let meter = Meter::new(cfg.budget);
    let r1 = effective_radius(1.0, &mu);
    let a1 = circle_mean_log(&log_norm, r1, &weights, cfg, &meter)?;
    let (mut values, mut bounds) = (Vec::new(), Vec::new());
    for (k, &r) in grid.iter().enumerate() {
        let t = profile.t_values[k];
        if t <= 0.0 {
            return Err(NevanlinnaError::Degenerate(format!("T_f({r}) = {t} is not positive")));
        }
        let ar = circle_mean_log(&log_norm, r, &weights, cfg, &meter)?;
        let num = counting_function(&mu, r) - ar.value + a1.value;
        values.push(num / t);
        bounds.push((ar.bound + a1.bound) / t + (num / t).abs() * profile.quadrature_error_bounds[k] / t);
    }
    let half = values.len() / 2;
    let liminf_top_half = values[half..].iter().copied().fold(f64::INFINITY, f64::min);
    let violation = applicability == Applicability::Transcendental
        && values[half..].iter().zip(&bounds[half..]).any(|(v, b)| *v < -(b + cfg.tol));
    Ok(TautologicalReport {
        applicability,
        metric,
        r_grid: grid,
        characteristic: profile.t_values,
        values,
        bounds,
        liminf_top_half,
        violation,
    })
}

/// A meromorphic function `numerator / denominator` of entire expressions.
#[derive(Clone, Debug, PartialEq)]
pub struct Meromorphic {
    pub numerator: Expr,
    pub denominator: Expr,
    /// Zeros and poles (as `(location, order)`) used to keep integration
    /// circles away from singular points.
    pub singular_points: Vec<(Complex64, u32)>,
}

impl Meromorphic {
    pub fn entire(g: Expr) -> Self {
        Meromorphic {
            numerator: g,
            denominator: Expr::int(1),
            singular_points: Vec::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LogDerivativeReport {
    pub r_grid: Vec<f64>,
    /// `(1/2π)∮ ln⁺|g′/g|`
    pub lhs: Vec<f64>,
    pub characteristic: Vec<f64>,
    /// `(a, b, c)` of the least-squares fit `lhs ≈ a ln⁺T + b ln r + c`.
    pub fit: (f64, f64, f64),
    pub residuals: Vec<f64>,
    pub max_residual_top_half: f64,
    pub pass: bool,
}

/// Compare `(1/2π)∮ ln⁺|g′/g|` with `ln T_g(r)` and `ln r`.
pub fn log_derivative_check(
    g: &Meromorphic,
    r_grid: &[f64],
    cfg: &QuadratureConfig,
) -> Result<LogDerivativeReport, NevanlinnaError> {
    validate_grid(r_grid)?;
    let grid: Vec<f64> = r_grid.iter().map(|r| effective_radius(*r, &g.singular_points)).collect();
    let (num, den) = (g.numerator.clone(), g.denominator.clone());
    let (dnum, dden) = (num.derivative(), den.derivative());
    let meter = Meter::new(cfg.budget);
    // g as a map to P¹: [den : num]
    let density = |z: Complex64| {
        let h = [den.eval(z), num.eval(z)];
        let dh = [dden.eval(z), dnum.eval(z)];
        wronskian_density(&h, &dh)
    };
    let t = characteristic_integral(&density, &grid, cfg, &meter)?;
    // g′/g = (num′ den − num den′) / (num den)
    let integrand = |z: Complex64| {
        let (a, b) = (num.eval(z), den.eval(z));
        let w = dnum.eval(z) * b - a * dden.eval(z);
        if w.is_zero() {
            return 0.0;
        }
        (w.ln_abs() - a.ln_abs() - b.ln_abs()).max(0.0)
    };
    let mut lhs = Vec::new();
    for &r in &grid {
        lhs.push(circle_mean(&integrand, r, cfg, &meter)?.value);
    }
    let characteristic: Vec<f64> = t.iter().map(|e| e.value).collect();
    let rows: Vec<[f64; 3]> = grid
        .iter()
        .zip(&characteristic)
        .map(|(r, t)| [t.max(1.0).ln(), r.ln(), 1.0])
        .collect();
    let fit = least_squares(&rows, &lhs);
    let residuals: Vec<f64> = rows
        .iter()
        .zip(&lhs)
        .map(|(x, y)| y - (fit[0] * x[0] + fit[1] * x[1] + fit[2] * x[2]))
        .collect();
    let max_residual_top_half = residuals[residuals.len() / 2..].iter().fold(0.0f64, |m, r| m.max(r.abs()));
    Ok(LogDerivativeReport {
        r_grid: grid,
        lhs,
        characteristic,
        fit: (fit[0], fit[1], fit[2]),
        residuals,
        max_residual_top_half,
        pass: max_residual_top_half <= LOG_DERIVATIVE_SLACK,
    })
}

/// Least squares through the normal equations; columns that are
/// numerically dependent on earlier ones get coefficient zero.
fn least_squares(rows: &[[f64; 3]], y: &[f64]) -> [f64; 3] {
    let mut a = [[0.0; 4]; 3];
    for (x, v) in rows.iter().zip(y) {
        for i in 0..3 {
            for j in 0..3 {
                a[i][j] += x[i] * x[j];
            }
            a[i][3] += x[i] * v;
        }
    }
    let mut active = [true; 3];
    let mut out = [0.0; 3];
    for col in 0..3 {
        let pivot = (col..3).filter(|r| active[*r]).max_by(|p, q| a[*p][col].abs().total_cmp(&a[*q][col].abs()));
        let Some(p) = pivot else { continue };
        if a[p][col].abs() < 1e-10 * (1.0 + a[col][col].abs()) {
            active[col] = false;
            continue;
        }
        a.swap(col, p);
        for r in 0..3 {
            if r != col {
                let f = a[r][col] / a[col][col];
                for c in col..4 {
                    a[r][c] -= f * a[col][c];
                }
            }
        }
    }
    for i in 0..3 {
        if active[i] && a[i][i] != 0.0 {
            out[i] = a[i][3] / a[i][i];
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Bookkeeping {
    pub t0: GaussRat,
    /// Vanishing order of `f′`.
    pub mu: u32,
    /// Order of `λ` in `f′ = λ · v(f)`.
    pub eta: i64,
    /// Vanishing order of the coefficient ideal along `f`.
    pub nu: u32,
    pub identity_holds: bool,
    pub eta_plus_nu_nonnegative: bool,
    /// Orders through which `f′ ∧ v(f)` was checked to vanish.
    pub working_order: usize,
}

/// Exact orders `(μ, η, ν)` at `t0` for a leaf `f` of `v`, where the
/// coefficient ideal is generated by the components of `v`. Tangency is
/// checked through `working_order`.
pub fn multiplicity_bookkeeping(
    f: &ParametrizedCurve,
    v: &VectorFieldGerm,
    t0: &GaussRat,
    working_order: usize,
) -> Result<Bookkeeping, NevanlinnaError> {
    if f.dim() != v.dim() {
        return Err(NevanlinnaError::DimensionMismatch {
            curve: f.dim(),
            expected: v.dim(),
        });
    }
    let k = working_order;
    let series: Vec<TruncatedSeries<ExpCoeff>> = f
        .components()
        .iter()
        .map(|e| e.taylor(t0, k + 1))
        .collect::<Option<_>>()
        .ok_or_else(|| NevanlinnaError::Unsupported(format!("at t = {t0}")))?;
    let df: Vec<TruncatedSeries<ExpCoeff>> = series.iter().map(|s| s.derivative().truncate(k)).collect();
    let vf: Vec<TruncatedSeries<ExpCoeff>> = v
        .components()
        .iter()
        .map(|p| eval_poly_generic(p, &series).truncate(k))
        .collect();
    let mu = df
        .iter()
        .filter_map(TruncatedSeries::valuation)
        .min()
        .ok_or_else(|| NevanlinnaError::Degenerate("f′ vanishes through the working order".to_string()))?;
    let nu = vf
        .iter()
        .filter_map(TruncatedSeries::valuation)
        .min()
        .ok_or_else(|| NevanlinnaError::Degenerate("f stays in the singular locus through the working order".to_string()))?;
    for i in 0..df.len() {
        for j in i + 1..df.len() {
            let wedge = df[i].mul(&vf[j]).sub(&df[j].mul(&vf[i]));
            if let Some(order) = wedge.valuation() {
                return Err(NevanlinnaError::NotALeaf { order });
            }
        }
    }
    let i = vf.iter().position(|s| s.valuation() == Some(nu)).expect("minimum attained");
    let lead = df[i]
        .valuation()
        .ok_or_else(|| NevanlinnaError::Degenerate("λ vanishes through the working order".to_string()))?;
    let eta = lead as i64 - nu as i64;
    Ok(Bookkeeping {
        t0: t0.clone(),
        mu: mu as u32,
        eta,
        nu: nu as u32,
        identity_holds: mu as i64 == eta + nu as i64,
        eta_plus_nu_nonnegative: eta + nu as i64 >= 0,
        working_order: k,
    })
}

/// Bookkeeping at `t = 0` for a truncated series parametrization, such as
/// a formal separatrix, checked through its truncation order.
pub fn multiplicity_bookkeeping_series(
    components: &[TruncatedSeries<GaussRat>],
    v: &VectorFieldGerm,
) -> Result<Bookkeeping, NevanlinnaError> {
    let n = components.iter().map(TruncatedSeries::truncation_order).min().unwrap_or(0);
    let f = ParametrizedCurve::from_series(components);
    multiplicity_bookkeeping(&f, v, &GaussRat::from_int(0), n)
}
