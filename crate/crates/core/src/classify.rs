//! Singularity taxonomy at the origin of a germ.

use std::collections::VecDeque;

use foliation_algebra::{
    eigenvalues_exact, ratio_in_q_plus, Eigenvalues, GaussRat, Matrix, MVPoly, RatioVerdict,
    TruncatedSeries, UniPoly,
};
use num_traits::Zero;
use serde::Serialize;

use crate::bivariate::common_curve_through_origin;
use crate::blowup::{blowup_charts, transform_vector_field, Blowup, LocusStatus};
use crate::error::CoreError;
use crate::germ::{first_nonsingular_component, LogDivisor, VectorFieldGerm};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SurfaceType {
    NonDegenerate,
    DegenerateType(u32),
    NotApplicable,
    Unclassified,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SimpleStatus {
    #[serde(rename = "SimplePoint(A)")]
    SimplePointA,
    #[serde(rename = "SimplePoint(B)")]
    SimplePointB,
    SimpleCorner,
    NotSimple,
}

impl SimpleStatus {
    pub fn is_simple(self) -> bool {
        !matches!(self, SimpleStatus::NotSimple)
    }

    pub fn is_point(self) -> bool {
        matches!(self, SimpleStatus::SimplePointA | SimpleStatus::SimplePointB)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ReducedVerdict {
    Reduced,
    NotReduced,
}

/// Serializable view of [`Eigenvalues`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EigenSummary {
    pub exact: bool,
    pub values: Vec<GaussRat>,
    #[serde(serialize_with = "crate::blowup::serialize_unipoly")]
    pub char_poly: UniPoly,
    #[serde(serialize_with = "crate::blowup::serialize_complex_list")]
    pub approximations: Vec<num_complex::Complex64>,
}

impl EigenSummary {
    fn new(m: &Matrix) -> Self {
        let eig = eigenvalues_exact(m);
        let approximations = eig.approximations();
        match eig {
            Eigenvalues::Exact(values) => Self {
                exact: true,
                values,
                char_poly: m.char_poly(),
                approximations,
            },
            Eigenvalues::Indeterminate {
                char_poly,
                exact_part,
                ..
            } => Self {
                exact: false,
                values: exact_part,
                char_poly,
                approximations,
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SingularityReport {
    pub multiplicity: u32,
    pub linear_part: Matrix,
    pub eigenvalues: EigenSummary,
    pub reduced: bool,
    pub surface_type: SurfaceType,
    pub simple_status: SimpleStatus,
    pub dicritical: bool,
    pub notes: Vec<String>,
}

fn require_singular(v: &VectorFieldGerm) -> Result<(), CoreError> {
    match first_nonsingular_component(v) {
        Some(i) => Err(CoreError::NonSingularPoint { component: i + 1 }),
        None => Ok(()),
    }
}

/// `m_p(F)`: the minimal vanishing order of the components.
pub fn algebraic_multiplicity(v: &VectorFieldGerm) -> Result<u32, CoreError> {
    require_singular(v)?;
    v.vanishing_order().finite().ok_or(CoreError::ZeroPolynomial)
}

/// Multiplicity one with a nonzero eigenvalue. The eigenvalues all vanish
/// iff the characteristic polynomial is `λⁿ`, which is decided exactly even
/// when the roots are not Gaussian rationals.
pub fn classify_reduced(v: &VectorFieldGerm) -> Result<ReducedVerdict, CoreError> {
    let m = algebraic_multiplicity(v)?;
    if m != 1 {
        return Ok(ReducedVerdict::NotReduced);
    }
    let cp = v.linear_part().char_poly();
    let nilpotent = cp.coeffs().iter().rev().skip(1).all(Zero::is_zero);
    Ok(if nilpotent {
        ReducedVerdict::NotReduced
    } else {
        ReducedVerdict::Reduced
    })
}

const CENTER_CURVE_ORDER: usize = 24;

/// Seidenberg type of a planar singularity, with diagnostics.
pub fn surface_type_with_notes(v: &VectorFieldGerm) -> Result<(SurfaceType, Vec<String>), CoreError> {
    if v.dim() != 2 {
        return Err(CoreError::DimensionMismatch {
            expected: 2,
            found: v.dim(),
        });
    }
    require_singular(v)?;
    let l = v.linear_part();
    if !l.determinant().is_zero() {
        return Ok((SurfaceType::NonDegenerate, Vec::new()));
    }
    let lambda = l.trace();
    if lambda.is_zero() {
        let note = if l.is_zero() {
            "vanishing linear part"
        } else {
            "nilpotent linear part"
        };
        return Ok((SurfaceType::Unclassified, vec![note.to_string()]));
    }
    // Coordinates adapted to the eigen-directions: z = P z', new linear
    // part diag(λ, 0).
    let e_lambda = l.sub(&Matrix::identity(2).scale(&lambda)).null_space().remove(0);
    let e_zero = l.null_space().remove(0);
    let p = Matrix::from_rows(vec![
        vec![e_lambda[0].clone(), e_zero[0].clone()],
        vec![e_lambda[1].clone(), e_zero[1].clone()],
    ]);
    let w = v.conjugate(&p).expect("eigenvectors of distinct eigenvalues");
    let a1 = w.component(0);
    let a2 = w.component(1);
    let rest = a1 - &MVPoly::var(2, 0).scale(&lambda);
    let neg_inv = -lambda.inv().expect("nonzero");
    let n = CENTER_CURVE_ORDER;
    let t = TruncatedSeries::variable(n);
    // Solve a1(φ(t), t) = 0 by fixed-point iteration on φ = −rest(φ, t)/λ.
    let mut phi = TruncatedSeries::zero(n);
    for _ in 0..=n {
        phi = TruncatedSeries::eval_poly(&rest, &[phi.clone(), t.clone()]).scale(&neg_inv);
    }
    let along = TruncatedSeries::eval_poly(a2, &[phi.clone(), t]);
    let mut notes = vec!["surrogate criterion: exact ideal comparison after linear normalization".to_string()];
    let Some(k) = along.valuation() else {
        notes.push(format!(
            "second component vanishes along the invariant curve through order {n}"
        ));
        return Ok((SurfaceType::Unclassified, notes));
    };
    let phi_order = phi.valuation().unwrap_or(usize::MAX);
    if phi_order >= k {
        Ok((SurfaceType::DegenerateType(k as u32), notes))
    } else {
        notes.push(format!(
            "ideal (z1 - phi(z2), z2^{k}) with ord phi = {phi_order} < {k} is not (z1, z2^{k})"
        ));
        Ok((SurfaceType::Unclassified, notes))
    }
}

pub fn surface_seidenberg_type(v: &VectorFieldGerm) -> Result<SurfaceType, CoreError> {
    surface_type_with_notes(v).map(|(t, _)| t)
}

/// Multiplicity of `root` in `p`.
fn root_multiplicity(p: &UniPoly, root: &GaussRat) -> usize {
    let lin = UniPoly::linear_root(root);
    let mut q = p.clone();
    let mut k = 0;
    loop {
        let (quot, rem) = q.div_rem(&lin);
        if !rem.is_zero() || q.is_zero() {
            return k;
        }
        q = quot;
        k += 1;
    }
}

/// Simple point / corner test relative to a log divisor, with diagnostics.
pub fn simple_status_with_notes(
    v: &VectorFieldGerm,
    divisor: &LogDivisor,
) -> Result<(SimpleStatus, Vec<String>), CoreError> {
    divisor.validate(v)?;
    require_singular(v)?;
    let axes = divisor.axes();
    if axes.is_empty() {
        return Err(CoreError::NoDivisorThroughPoint);
    }
    let n = v.dim();
    let l = v.linear_part();
    let mut notes = Vec::new();
    if axes.len() == 1 {
        let d = axes[0];
        let lambda = l.get(d, d).clone();
        if !lambda.is_zero() {
            let cp = l.char_poly();
            if root_multiplicity(&cp, &lambda) != 1 {
                notes.push(format!("eigenvalue {lambda} is not simple"));
                return Ok((SimpleStatus::NotSimple, notes));
            }
            let split = cp.split_roots();
            for (mu, _) in &split.roots {
                if mu != &lambda && ratio_in_q_plus(&lambda, mu) == RatioVerdict::Yes {
                    notes.push(format!("eigenvalue ratio {} is a positive rational", mu / &lambda));
                    return Ok((SimpleStatus::NotSimple, notes));
                }
            }
            if !split.splits() {
                notes.push("eigenvalues outside Q(i) cannot be rational multiples of the divisor eigenvalue".to_string());
            }
            return Ok((SimpleStatus::SimplePointB, notes));
        }
        let zero = GaussRat::zero();
        let axis_invariant = (0..n).filter(|&i| i != d).all(|i| {
            let mut c = v.component(i).clone();
            for k in (0..n).filter(|&k| k != d) {
                c = c.set_var(k, &zero);
            }
            c.is_zero()
        });
        if !axis_invariant {
            notes.push(format!(
                "the z{}-axis is not invariant in the given coordinates",
                d + 1
            ));
            return Ok((SimpleStatus::NotSimple, notes));
        }
        let rank = l.minor(&[d]).rank();
        if rank != n - 1 {
            notes.push(format!("restricted linear part has rank {rank} < {}", n - 1));
            return Ok((SimpleStatus::NotSimple, notes));
        }
        return Ok((SimpleStatus::SimplePointA, notes));
    }
    for &j in &axes {
        let lambda = l.get(j, j);
        if lambda.is_zero() {
            continue;
        }
        for &k in axes.iter().filter(|&&k| k != j) {
            if ratio_in_q_plus(lambda, l.get(k, k)) == RatioVerdict::No {
                return Ok((SimpleStatus::SimpleCorner, notes));
            }
        }
    }
    notes.push("every pair of divisor eigenvalues has ratio in Q+ or vanishes".to_string());
    Ok((SimpleStatus::NotSimple, notes))
}

pub fn classify_simple(v: &VectorFieldGerm, divisor: &LogDivisor) -> Result<SimpleStatus, CoreError> {
    simple_status_with_notes(v, divisor).map(|(s, _)| s)
}

/// One blow-up; dicritical iff the exceptional hyperplane is not invariant
/// by the saturated transform in some chart.
pub fn is_dicritical(v: &VectorFieldGerm) -> Result<bool, CoreError> {
    require_singular(v)?;
    let charts = blowup_charts(v.dim())?;
    Ok(charts
        .iter()
        .any(|c| !transform_vector_field(v, c).exceptional_invariant))
}

/// Full report; `divisor` feeds the simple-singularity test.
pub fn classify(v: &VectorFieldGerm, divisor: Option<&LogDivisor>) -> Result<SingularityReport, CoreError> {
    let multiplicity = algebraic_multiplicity(v)?;
    let linear_part = v.linear_part();
    let eigenvalues = EigenSummary::new(&linear_part);
    let reduced = classify_reduced(v)? == ReducedVerdict::Reduced;
    let mut notes = Vec::new();
    if !eigenvalues.exact {
        notes.push("eigenvalues not in Q(i); float approximations attached".to_string());
    }
    let surface_type = if v.dim() == 2 {
        let (t, n) = surface_type_with_notes(v)?;
        notes.extend(n);
        t
    } else {
        SurfaceType::NotApplicable
    };
    let simple_status = match divisor {
        Some(d) if !d.is_empty() => {
            let (s, n) = simple_status_with_notes(v, d)?;
            notes.extend(n);
            s
        }
        _ => {
            notes.push("no divisor component through the point".to_string());
            SimpleStatus::NotSimple
        }
    };
    let dicritical = is_dicritical(v)?;
    Ok(SingularityReport {
        multiplicity,
        linear_part,
        eigenvalues,
        reduced,
        surface_type,
        simple_status,
        dicritical,
        notes,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "reason", rename_all = "snake_case")]
pub enum Isolation {
    Isolated,
    NonIsolated,
    Unknown(String),
}

/// Whether the origin is an isolated zero of `v` (assumed singular).
/// Exact in dimension 2. In higher dimension: isolated when the linear part
/// is invertible, non-isolated when a component vanishes identically or all
/// components share a monomial factor, `Unknown` otherwise.
pub fn isolation(v: &VectorFieldGerm) -> Isolation {
    if v.dim() == 1 {
        return if v.component(0).is_zero() {
            Isolation::NonIsolated
        } else {
            Isolation::Isolated
        };
    }
    if v.dim() == 2 {
        return if common_curve_through_origin(v.component(0), v.component(1)) {
            Isolation::NonIsolated
        } else {
            Isolation::Isolated
        };
    }
    if !v.linear_part().determinant().is_zero() {
        return Isolation::Isolated;
    }
    if v.components().iter().any(MVPoly::is_zero) {
        return Isolation::NonIsolated;
    }
    let common = v
        .components()
        .iter()
        .filter_map(MVPoly::monomial_content)
        .reduce(|a, b| a.iter().zip(&b).map(|(x, y)| *x.min(y)).collect());
    if common.is_some_and(|e| e.iter().any(|&k| k > 0)) {
        return Isolation::NonIsolated;
    }
    Isolation::Unknown("dimension at least 3 with singular linear part".to_string())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum AisOutcome {
    AllLevelsFinite {
        explored_nodes: usize,
        /// Singular points at algebraic coordinates outside `Q(i)`, not
        /// blown up further.
        unexplored_algebraic_points: usize,
    },
    NonIsolatedFound {
        level: usize,
        path: String,
    },
    DepthExceeded {
        explored_nodes: usize,
    },
    Unknown {
        level: usize,
        path: String,
        reason: String,
    },
}

const AIS_NODE_BUDGET: usize = 4096;

/// Blow up every singular point on every exceptional divisor down to
/// `depth` levels, checking that `Sing ∩ E` stays finite.
pub fn bounded_ais_probe(v: &VectorFieldGerm, depth: usize) -> AisOutcome {
    if first_nonsingular_component(v).is_some() {
        return AisOutcome::AllLevelsFinite {
            explored_nodes: 0,
            unexplored_algebraic_points: 0,
        };
    }
    match isolation(v) {
        Isolation::Isolated => {}
        Isolation::NonIsolated => {
            return AisOutcome::NonIsolatedFound {
                level: 0,
                path: String::new(),
            }
        }
        Isolation::Unknown(reason) => {
            return AisOutcome::Unknown {
                level: 0,
                path: String::new(),
                reason,
            }
        }
    }
    let mut queue: VecDeque<(VectorFieldGerm, String, usize)> = VecDeque::new();
    queue.push_back((v.clone(), String::new(), 0));
    let mut explored = 0;
    let mut unexplored = 0;
    while let Some((germ, path, level)) = queue.pop_front() {
        if level >= depth {
            continue;
        }
        explored += 1;
        if explored > AIS_NODE_BUDGET {
            return AisOutcome::DepthExceeded {
                explored_nodes: explored - 1,
            };
        }
        let blowup = match Blowup::new(&germ, &LogDivisor::empty(), level + 1) {
            Ok(b) => b,
            Err(e) => {
                return AisOutcome::Unknown {
                    level: level + 1,
                    path,
                    reason: e.to_string(),
                }
            }
        };
        match &blowup.locus.status {
            LocusStatus::Finite => {}
            LocusStatus::NonIsolated => {
                return AisOutcome::NonIsolatedFound {
                    level: level + 1,
                    path,
                }
            }
            LocusStatus::Unknown(reason) => {
                return AisOutcome::Unknown {
                    level: level + 1,
                    path,
                    reason: reason.clone(),
                }
            }
        }
        unexplored += blowup.locus.clusters.iter().map(|c| c.count).sum::<usize>();
        for p in &blowup.locus.points {
            let (child, _) = blowup.point_germ(p);
            let child_path = join_path(&path, &p.path_element(level + 1));
            queue.push_back((child, child_path, level + 1));
        }
    }
    AisOutcome::AllLevelsFinite {
        explored_nodes: explored,
        unexplored_algebraic_points: unexplored,
    }
}

pub(crate) fn join_path(parent: &str, element: &str) -> String {
    if parent.is_empty() {
        element.to_string()
    } else {
        format!("{parent}/{element}")
    }
}
