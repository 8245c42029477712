//! Formal invariant curves through a singular point.

use foliation_algebra::{eigenvalues_exact, Eigenvalues, GaussRat, Matrix, MVPoly, TruncatedSeries};
use num_traits::Zero;
use serde::{Serialize, Serializer};

use crate::blowup::{BlowupChart, Blowup};
use crate::classify::{classify_simple, SimpleStatus};
use crate::error::CoreError;
use crate::germ::{LogDivisor, VectorFieldGerm};

/// Truncated parametrized curve `f(t)` with `f(0) = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct FormalCurve {
    pub components: Vec<TruncatedSeries>,
    /// 1-based eigendirection index, when built by [`formal_separatrix`].
    pub direction: Option<usize>,
    pub eigenvalue: Option<GaussRat>,
    pub truncation_order: usize,
    /// Vanishing order of `t f′ − v(f)/λ`; at least `truncation_order + 1`
    /// for a solved curve.
    pub residual_order: Option<usize>,
    /// `b(0)` in `η(t) = b(t)/t`, the time change relating `f′` to `v(f)`.
    pub eta_residue: Option<GaussRat>,
}

impl FormalCurve {
    /// A curve given explicitly by its coefficients (e.g. a coordinate axis).
    pub fn explicit(components: Vec<TruncatedSeries>) -> Self {
        let truncation_order = components.iter().map(|c| c.truncation_order()).min().unwrap_or(0);
        Self {
            components,
            direction: None,
            eigenvalue: None,
            truncation_order,
            residual_order: None,
            eta_residue: None,
        }
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }
}

impl Serialize for FormalCurve {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct View<'a> {
            components: Vec<Vec<String>>,
            direction: Option<usize>,
            eigenvalue: &'a Option<GaussRat>,
            truncation_order: usize,
            residual_order: Option<usize>,
            eta_residue: &'a Option<GaussRat>,
        }
        View {
            components: self
                .components
                .iter()
                .map(|c| c.coeffs().iter().map(|x| x.to_string()).collect())
                .collect(),
            direction: self.direction,
            eigenvalue: &self.eigenvalue,
            truncation_order: self.truncation_order,
            residual_order: self.residual_order,
            eta_residue: &self.eta_residue,
        }
        .serialize(s)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum SeparatrixOutcome {
    Curve(FormalCurve),
    /// The order-`order` system `(k I − L/λ) c = r` has no solution.
    Resonance { order: usize, obstruction: String },
}

/// Eigen-directions ordered by the first coordinate where the eigenvector
/// is nonzero, then by eigenvalue.
pub fn eigendirections(l: &Matrix) -> Result<Vec<(GaussRat, Vec<GaussRat>)>, CoreError> {
    let values = match eigenvalues_exact(l) {
        Eigenvalues::Exact(v) => v,
        Eigenvalues::Indeterminate { .. } => return Err(CoreError::IndeterminateEigenvalues),
    };
    let mut distinct = values;
    distinct.sort();
    distinct.dedup();
    let n = l.rows();
    let mut out = Vec::new();
    for lambda in distinct {
        let shifted = l.sub(&Matrix::identity(n).scale(&lambda));
        for e in shifted.null_space() {
            let c = e.iter().position(|x| !x.is_zero()).expect("nonzero eigenvector");
            let inv = e[c].inv().expect("nonzero");
            let e: Vec<GaussRat> = e.iter().map(|x| x * &inv).collect();
            out.push((lambda.clone(), e));
        }
    }
    let key = |e: &[GaussRat]| e.iter().position(|x| !x.is_zero()).unwrap_or(usize::MAX);
    out.sort_by(|(la, ea), (lb, eb)| key(ea).cmp(&key(eb)).then(la.cmp(lb)).then(ea.cmp(eb)));
    Ok(out)
}

/// `t f′ − v(f)/λ`.
fn residual(v: &VectorFieldGerm, f: &[TruncatedSeries], inv_lambda: &GaussRat) -> Vec<TruncatedSeries> {
    f.iter()
        .zip(v.components())
        .map(|(fi, a)| fi.euler_derivative().sub(&TruncatedSeries::eval_poly(a, f).scale(inv_lambda)))
        .collect()
}

/// Solve `t f′(t) = v(f(t))/λ` with `f = e·t + Σ_{k≥2} c_k t^k` through
/// order `n`. At order `k` the coefficient solves `(k I − L/λ) c_k = r_k`
/// where `r_k` collects the nonlinear terms of lower order.
pub fn formal_separatrix(
    v: &VectorFieldGerm,
    direction: usize,
    n: usize,
) -> Result<SeparatrixOutcome, CoreError> {
    let dim = v.dim();
    let l = v.linear_part();
    let dirs = eigendirections(&l)?;
    if direction == 0 || direction > dirs.len() {
        return Err(CoreError::DirectionOutOfRange {
            index: direction,
            count: dirs.len(),
        });
    }
    let (lambda, e) = dirs[direction - 1].clone();
    if lambda.is_zero() {
        return Err(CoreError::ZeroEigenvalueDirection(direction));
    }
    let inv_lambda = lambda.inv().expect("nonzero");
    let l_scaled = l.scale(&inv_lambda);
    let nonlinear: Vec<MVPoly> = v
        .components()
        .iter()
        .map(|a| {
            let mut lin = MVPoly::zero(dim);
            for (j, c) in a.linear_coeffs().iter().enumerate() {
                if !c.is_zero() {
                    lin = &lin + &MVPoly::var(dim, j).scale(c);
                }
            }
            (a - &(&lin + &MVPoly::constant(dim, a.constant_term()))).scale(&inv_lambda)
        })
        .collect();
    let order = n.max(1);
    let mut coeffs: Vec<Vec<GaussRat>> = (0..dim)
        .map(|i| {
            let mut c = vec![GaussRat::zero(); order + 1];
            c[1] = e[i].clone();
            c
        })
        .collect();
    for k in 2..=order {
        let f: Vec<TruncatedSeries> = coeffs
            .iter()
            .map(|c| TruncatedSeries::new(c[..k].to_vec(), k))
            .collect();
        let rhs: Vec<GaussRat> = nonlinear
            .iter()
            .map(|p| TruncatedSeries::eval_poly(p, &f).coeff(k))
            .collect();
        let system = Matrix::identity(dim)
            .scale(&GaussRat::from_int(k as i64))
            .sub(&l_scaled);
        match system.solve(&rhs) {
            Some(c) => {
                for (i, ci) in c.into_iter().enumerate() {
                    coeffs[i][k] = ci;
                }
            }
            None => {
                let rhs_text: Vec<String> = rhs.iter().map(|r| r.to_string()).collect();
                return Ok(SeparatrixOutcome::Resonance {
                    order: k,
                    obstruction: format!(
                        "({k} I - L/{lambda}) c = ({}) is inconsistent",
                        rhs_text.join(", ")
                    ),
                });
            }
        }
    }
    let components: Vec<TruncatedSeries> = coeffs
        .into_iter()
        .map(|c| TruncatedSeries::new(c, order))
        .collect();
    let residual_order = residual_vanishing_order(v, &components, &inv_lambda);
    if residual_order <= order {
        return Err(CoreError::Internal(format!(
            "separatrix residual vanishes only to order {residual_order}"
        )));
    }
    Ok(SeparatrixOutcome::Curve(FormalCurve {
        components,
        direction: Some(direction),
        eigenvalue: Some(lambda),
        truncation_order: order,
        residual_order: Some(residual_order),
        eta_residue: Some(inv_lambda),
    }))
}

/// First nonzero order of `t f′ − v(f)/λ` with `f` padded by zeros one
/// order beyond its truncation; `N + 2` when it vanishes through `N + 1`.
pub fn residual_vanishing_order(
    v: &VectorFieldGerm,
    components: &[TruncatedSeries],
    inv_lambda: &GaussRat,
) -> usize {
    let n = components.iter().map(|c| c.truncation_order()).min().unwrap_or(0);
    let padded: Vec<TruncatedSeries> = components
        .iter()
        .map(|c| TruncatedSeries::new(c.coeffs()[..=n].to_vec(), n + 1))
        .collect();
    residual(v, &padded, inv_lambda)
        .iter()
        .filter_map(TruncatedSeries::valuation)
        .min()
        .unwrap_or(n + 2)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum CornerVerdict {
    /// No vanishing-order vector `ν ∈ {1..N}^e` admits `b(0)` with
    /// `b(0)·λ_d = ν_d`, and no eigendirection with all divisor components
    /// nonzero carries a formal separatrix.
    Confirmed {
        order_vectors_checked: u64,
        eigendirections_attempted: usize,
    },
    CounterexampleCandidate { detail: String },
}

/// Along a separatrix not contained in `D`, `f′_d/f_d = η a_d(f)` forces
/// `b(0)·λ_d = ν_d > 0` for every divisor axis; search for such `ν`.
pub fn corner_has_no_transverse_separatrix(
    v: &VectorFieldGerm,
    divisor: &LogDivisor,
    n: usize,
) -> Result<CornerVerdict, CoreError> {
    if divisor.len() < 2 || classify_simple(v, divisor)? != SimpleStatus::SimpleCorner {
        return Err(CoreError::NotACorner);
    }
    let l = v.linear_part();
    let axes = divisor.axes();
    let lambdas: Vec<GaussRat> = axes.iter().map(|&d| l.get(d, d).clone()).collect();
    let bound = n.max(1) as u64;
    let mut checked = 0u64;
    let mut nu = vec![1u64; axes.len()];
    loop {
        checked += 1;
        if let Some(detail) = admissible_time_change(&lambdas, &nu) {
            return Ok(CornerVerdict::CounterexampleCandidate { detail });
        }
        // odometer over {1..bound}^e
        let mut i = 0;
        loop {
            if i == nu.len() {
                break;
            }
            if nu[i] < bound {
                nu[i] += 1;
                break;
            }
            nu[i] = 1;
            i += 1;
        }
        if i == nu.len() {
            break;
        }
    }
    let mut attempted = 0;
    if let Ok(dirs) = eigendirections(&l) {
        for (idx, (lambda, e)) in dirs.iter().enumerate() {
            if lambda.is_zero() || axes.iter().any(|&d| e[d].is_zero()) {
                continue;
            }
            attempted += 1;
            if let SeparatrixOutcome::Curve(c) = formal_separatrix(v, idx + 1, n)? {
                return Ok(CornerVerdict::CounterexampleCandidate {
                    detail: format!(
                        "formal separatrix along direction {} with eigenvalue {lambda} leaves D",
                        c.direction.unwrap_or(idx + 1)
                    ),
                });
            }
        }
    }
    Ok(CornerVerdict::Confirmed {
        order_vectors_checked: checked,
        eigendirections_attempted: attempted,
    })
}

fn admissible_time_change(lambdas: &[GaussRat], nu: &[u64]) -> Option<String> {
    let (first, rest) = lambdas.split_first()?;
    if first.is_zero() {
        return None;
    }
    let b0 = &GaussRat::from_int(nu[0] as i64) / first;
    let ok = rest
        .iter()
        .zip(&nu[1..])
        .all(|(l, &k)| &b0 * l == GaussRat::from_int(k as i64));
    ok.then(|| format!("b(0) = {b0} matches vanishing orders {nu:?}"))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum LiftVerdict {
    MeetsSimplePoint {
        /// 1-based chart number.
        chart: usize,
        point: Vec<GaussRat>,
        status: SimpleStatus,
    },
    Mismatch {
        reason: String,
    },
}

/// Lift the curve through the blow-up of the origin and check that it meets
/// `E` at the unique simple point among the singular points on `E`.
pub fn separatrix_lift_check(
    v: &VectorFieldGerm,
    divisor: &LogDivisor,
    curve: &FormalCurve,
    n: usize,
) -> Result<LiftVerdict, CoreError> {
    if curve.dim() != v.dim() {
        return Err(CoreError::DimensionMismatch {
            expected: v.dim(),
            found: curve.dim(),
        });
    }
    if divisor.len() != 1 || !classify_simple(v, divisor)?.is_point() {
        return Err(CoreError::NotASimplePoint);
    }
    let order = n.min(curve.truncation_order);
    let comps: Vec<TruncatedSeries> = curve.components.iter().map(|c| c.truncate(order)).collect();
    let d = divisor.axes()[0];
    if comps[d].valuation().is_none() {
        return Err(CoreError::CurveInDivisor);
    }
    let vals: Vec<usize> = comps.iter().map(|c| c.valuation().unwrap_or(usize::MAX)).collect();
    let min_val = *vals.iter().min().expect("nonempty");
    if min_val == 0 {
        return Ok(LiftVerdict::Mismatch {
            reason: "curve does not pass through the origin".to_string(),
        });
    }
    let c = vals.iter().position(|&k| k == min_val).expect("minimum attained");
    let chart = BlowupChart::new(v.dim(), c)?;
    let mut point = vec![GaussRat::zero(); v.dim()];
    for (i, fi) in comps.iter().enumerate() {
        if i != c {
            let w = fi.div(&comps[c]).expect("valuation at least the minimum");
            point[i] = w.coeff(0);
        }
    }
    let blowup = Blowup::new(v, divisor, 1)?;
    let Some(hit) = blowup
        .locus
        .points
        .iter()
        .find(|p| p.chart == chart && p.coords == point)
    else {
        return Ok(LiftVerdict::Mismatch {
            reason: format!("lift meets E at {point:?} in chart {}, not a singular point", c + 1),
        });
    };
    let mut simple_points = Vec::new();
    for p in &blowup.locus.points {
        let (germ, d) = blowup.point_germ(p);
        if d.is_empty() {
            continue;
        }
        let status = classify_simple(&germ, &d)?;
        if status.is_point() {
            simple_points.push((p.clone(), status));
        }
    }
    if !blowup.locus.clusters.is_empty() {
        return Ok(LiftVerdict::Mismatch {
            reason: "singular points on E outside Q(i) prevent a complete check".to_string(),
        });
    }
    match simple_points.as_slice() {
        [(p, status)] if p == hit => Ok(LiftVerdict::MeetsSimplePoint {
            chart: c + 1,
            point,
            status: *status,
        }),
        [] => Ok(LiftVerdict::Mismatch {
            reason: "no simple point on E".to_string(),
        }),
        [(p, _)] => Ok(LiftVerdict::Mismatch {
            reason: format!("the simple point on E is {:?} in chart {}", p.coords, p.chart.number()),
        }),
        _ => Ok(LiftVerdict::Mismatch {
            reason: format!("{} simple points on E", simple_points.len()),
        }),
    }
}

/// `(t·e₁, 0, …, 0)`-style coordinate axis as an explicit curve.
pub fn coordinate_axis(dim: usize, axis: usize, order: usize) -> FormalCurve {
    FormalCurve::explicit(
        (0..dim)
            .map(|i| {
                if i == axis {
                    TruncatedSeries::variable(order)
                } else {
                    TruncatedSeries::zero(order)
                }
            })
            .collect(),
    )
}
