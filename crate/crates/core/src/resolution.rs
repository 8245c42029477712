//! Blow-up towers: Seidenberg reduction, resolution to simple
//! singularities, monomial log resolutions and the weakly-reduced test.

use std::collections::BTreeMap;

use foliation_algebra::MonomialIdeal;
use num_traits::Zero;
use serde::{Serialize, Serializer};

use crate::blowup::{AlgebraicCluster, Blowup, LocusStatus};
use crate::classify::{classify, isolation, join_path, Isolation, SingularityReport};
use crate::error::CoreError;
use crate::germ::{coefficient_ideal, first_nonsingular_component, LogDivisor, VectorFieldGerm};

pub const DEFAULT_MAX_DEPTH: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TowerStatus {
    Complete,
    DepthExceeded,
    Blocked,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TowerNode {
    /// Chart path from the root, e.g. `b1.c1/b2.c2`; empty for the root.
    pub path: String,
    pub level: usize,
    pub germ: VectorFieldGerm,
    pub divisor: LogDivisor,
    pub report: SingularityReport,
    /// Saturation exponent of the blow-up that produced this chart.
    pub saturation_exponent: Option<u32>,
    /// Coefficients of `K_{X̂/X}` along the coordinate hyperplanes through
    /// the point, in slot order.
    pub discrepancy: Vec<u32>,
    /// Discrepancy of the exceptional divisor created by the parent blow-up.
    pub exceptional_discrepancy: Option<u32>,
    /// Whether this point was blown up.
    pub blown_up: bool,
    /// Whether the stopping criterion holds here.
    pub resolved: bool,
    pub children: Vec<String>,
    /// Singular points of the blow-up at this node with coordinates outside
    /// `Q(i)`; they are not blown up further.
    pub clusters: Vec<AlgebraicCluster>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ResolutionTower {
    pub root: VectorFieldGerm,
    pub root_divisor: LogDivisor,
    pub nodes: Vec<TowerNode>,
    pub status: TowerStatus,
    pub reason: Option<String>,
    pub max_depth: usize,
}

impl ResolutionTower {
    pub fn node(&self, path: &str) -> Option<&TowerNode> {
        self.nodes.iter().find(|n| n.path == path)
    }

    /// Nodes that were not blown up.
    pub fn leaves(&self) -> impl Iterator<Item = &TowerNode> {
        self.nodes.iter().filter(|n| !n.blown_up)
    }

    pub fn blowup_count(&self) -> usize {
        self.nodes.iter().filter(|n| n.blown_up).count()
    }

    pub fn depth(&self) -> usize {
        self.nodes.iter().map(|n| n.level).max().unwrap_or(0)
    }
}

impl Serialize for ResolutionTower {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct View<'a> {
            root: &'a VectorFieldGerm,
            divisor: &'a LogDivisor,
            status: TowerStatus,
            reason: &'a Option<String>,
            max_depth: usize,
            blowups: usize,
            nodes: BTreeMap<String, &'a TowerNode>,
        }
        View {
            root: &self.root,
            divisor: &self.root_divisor,
            status: self.status,
            reason: &self.reason,
            max_depth: self.max_depth,
            blowups: self.blowup_count(),
            nodes: self
                .nodes
                .iter()
                .map(|n| {
                    let key = if n.path.is_empty() { "root".to_string() } else { n.path.clone() };
                    (key, n)
                })
                .collect(),
        }
        .serialize(s)
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Target {
    Reduced,
    Simple,
}

struct Pending {
    path: String,
    level: usize,
    germ: VectorFieldGerm,
    divisor: LogDivisor,
    saturation_exponent: Option<u32>,
    discrepancy: Vec<u32>,
    exceptional_discrepancy: Option<u32>,
}

/// Discrepancies after blowing up the origin in chart `j` and moving to a
/// point whose nonzero coordinates are flagged in `off_axis`.
fn child_discrepancy(parent: &[u32], j: usize, off_axis: &[bool]) -> (Vec<u32>, u32) {
    let n = parent.len() as u32;
    let e = parent.iter().sum::<u32>() + n - 1;
    let out = parent
        .iter()
        .enumerate()
        .map(|(i, &k)| {
            if i == j {
                e
            } else if off_axis[i] {
                0
            } else {
                k
            }
        })
        .collect();
    (out, e)
}

fn build_tower(
    v: &VectorFieldGerm,
    divisor: &LogDivisor,
    max_depth: usize,
    target: Target,
) -> Result<ResolutionTower, CoreError> {
    let mut nodes: Vec<TowerNode> = Vec::new();
    let mut status = TowerStatus::Complete;
    let mut reason: Option<String> = None;
    let block = |status: &mut TowerStatus, reason: &mut Option<String>, why: String| {
        *status = TowerStatus::Blocked;
        if reason.is_none() {
            *reason = Some(why);
        }
    };
    let mut stack = vec![Pending {
        path: String::new(),
        level: 0,
        germ: v.clone(),
        divisor: divisor.clone(),
        saturation_exponent: None,
        discrepancy: vec![0; v.dim()],
        exceptional_discrepancy: None,
    }];
    while let Some(item) = stack.pop() {
        let report = classify(&item.germ, Some(&item.divisor))?;
        let resolved = match target {
            Target::Reduced => report.reduced && !report.dicritical,
            Target::Simple => report.simple_status.is_simple() && !report.dicritical,
        };
        let mut node = TowerNode {
            path: item.path.clone(),
            level: item.level,
            germ: item.germ.clone(),
            divisor: item.divisor.clone(),
            report,
            saturation_exponent: item.saturation_exponent,
            discrepancy: item.discrepancy.clone(),
            exceptional_discrepancy: item.exceptional_discrepancy,
            blown_up: false,
            resolved,
            children: Vec::new(),
            clusters: Vec::new(),
        };
        if resolved {
            nodes.push(node);
            continue;
        }
        if item.level >= max_depth {
            if status == TowerStatus::Complete {
                status = TowerStatus::DepthExceeded;
                reason = Some(format!("depth {max_depth} reached at '{}'", display_path(&item.path)));
            }
            nodes.push(node);
            continue;
        }
        let blowup = Blowup::new(&item.germ, &item.divisor, item.level + 1)?;
        node.blown_up = true;
        match &blowup.locus.status {
            LocusStatus::Finite => {}
            LocusStatus::NonIsolated => {
                block(
                    &mut status,
                    &mut reason,
                    format!("non-isolated singular set on E above '{}'", display_path(&item.path)),
                );
                nodes.push(node);
                continue;
            }
            LocusStatus::Unknown(why) => {
                block(
                    &mut status,
                    &mut reason,
                    format!("{why} (above '{}')", display_path(&item.path)),
                );
            }
        }
        for c in &blowup.locus.clusters {
            let acceptable = match target {
                Target::Reduced => c.all_reduced(),
                Target::Simple => false,
            };
            if !acceptable {
                block(
                    &mut status,
                    &mut reason,
                    format!(
                        "singular points with coordinates outside Q(i) above '{}' need further blow-ups",
                        display_path(&item.path)
                    ),
                );
            }
        }
        node.clusters = blowup.locus.clusters.clone();
        let mut children = Vec::new();
        for p in &blowup.locus.points {
            let (germ, d) = blowup.point_germ(p);
            let off_axis: Vec<bool> = p.coords.iter().map(|c| !num_traits::Zero::is_zero(c)).collect();
            let (disc, e) = child_discrepancy(&item.discrepancy, p.chart.index(), &off_axis);
            let path = join_path(&item.path, &p.path_element(item.level + 1));
            node.children.push(path.clone());
            children.push(Pending {
                path,
                level: item.level + 1,
                germ,
                divisor: d,
                saturation_exponent: Some(blowup.transform(&p.chart).saturation_exponent),
                discrepancy: disc,
                exceptional_discrepancy: Some(e),
            });
        }
        nodes.push(node);
        // depth-first, children in lexicographic order
        children.sort_by(|a, b| a.path.cmp(&b.path));
        stack.extend(children.into_iter().rev());
    }
    Ok(ResolutionTower {
        root: v.clone(),
        root_divisor: divisor.clone(),
        nodes,
        status,
        reason,
        max_depth,
    })
}

fn display_path(p: &str) -> &str {
    if p.is_empty() {
        "root"
    } else {
        p
    }
}

fn require_singular(v: &VectorFieldGerm) -> Result<(), CoreError> {
    match first_nonsingular_component(v) {
        Some(i) => Err(CoreError::NonSingularPoint { component: i + 1 }),
        None => Ok(()),
    }
}

/// Blow up singular points of a planar germ until every singular point is
/// reduced and non-dicritical (a reduced point with scalar linear part,
/// such as the radial field, is blown up once more).
pub fn seidenberg_reduce(v: &VectorFieldGerm, max_depth: usize) -> Result<ResolutionTower, CoreError> {
    if v.dim() != 2 {
        return Err(CoreError::DimensionMismatch {
            expected: 2,
            found: v.dim(),
        });
    }
    require_singular(v)?;
    if isolation(v) != Isolation::Isolated {
        return Err(CoreError::NonIsolatedSingularLocus);
    }
    build_tower(v, &LogDivisor::empty(), max_depth, Target::Reduced)
}

/// Blow up until every singular point is a simple point or corner and no
/// singular point is dicritical.
pub fn resolve_simple(
    v: &VectorFieldGerm,
    divisor: &LogDivisor,
    max_depth: usize,
) -> Result<ResolutionTower, CoreError> {
    require_singular(v)?;
    divisor.validate(v)?;
    if isolation(v) == Isolation::NonIsolated {
        return Err(CoreError::NonIsolatedSingularLocus);
    }
    build_tower(v, divisor, max_depth, Target::Simple)
}

/// A prime divisor of a log resolution with its discrepancy `a` (coefficient
/// in `K_{X̂/X}`) and its order `d` in the pulled-back ideal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiscrepancyEntry {
    /// `E@<path>` for exceptional divisors, `{z_i = 0}` for strict
    /// transforms of coordinate hyperplanes.
    pub divisor: String,
    pub discrepancy: u32,
    pub ideal_order: u32,
}

impl DiscrepancyEntry {
    pub fn holds(&self) -> bool {
        self.discrepancy >= self.ideal_order
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "reason", rename_all = "snake_case")]
pub enum LogResolutionStatus {
    Complete,
    Unknown(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LogResolution {
    pub ideal: MonomialIdeal,
    pub entries: Vec<DiscrepancyEntry>,
    /// Paths of the blown-up chart origins, root first (`""` is the root).
    pub centers: Vec<String>,
    pub status: LogResolutionStatus,
}

impl LogResolution {
    /// `K_{X̂/X} − D ≥ 0` along every recorded divisor.
    pub fn discrepancy_condition(&self) -> Option<bool> {
        match self.status {
            LogResolutionStatus::Complete => Some(self.entries.iter().all(DiscrepancyEntry::holds)),
            LogResolutionStatus::Unknown(_) => None,
        }
    }
}

/// Principalize a monomial ideal by blowing up chart origins, recording
/// discrepancies. Every blow-up is at the origin of a chart, where the
/// non-principal locus of a monomial ideal always sits.
pub fn monomial_log_resolution(ideal: &MonomialIdeal, max_depth: usize) -> LogResolution {
    let n = ideal.ambient_dim();
    let mut entries = Vec::new();
    let mut centers = Vec::new();
    let root_div = ideal.divisorial_part();
    for (k, &d) in root_div.iter().enumerate() {
        if d > 0 {
            entries.push(DiscrepancyEntry {
                divisor: format!("{{z{} = 0}}", k + 1),
                discrepancy: 0,
                ideal_order: d,
            });
        }
    }
    let mut stack: Vec<(String, MonomialIdeal, Vec<u32>, usize)> = vec![(String::new(), ideal.clone(), vec![0; n], 0)];
    while let Some((path, a, kappa, level)) = stack.pop() {
        let residual = a
            .divide_monomial(&a.divisorial_part())
            .expect("divisorial part divides");
        if residual.is_unit() {
            continue;
        }
        if !residual.is_primary_to_origin() {
            return LogResolution {
                ideal: ideal.clone(),
                entries,
                centers,
                status: LogResolutionStatus::Unknown(format!(
                    "non-principal locus of positive dimension at '{}'",
                    display_path(&path)
                )),
            };
        }
        if level >= max_depth {
            return LogResolution {
                ideal: ideal.clone(),
                entries,
                centers,
                status: LogResolutionStatus::Unknown(format!("depth {max_depth} reached")),
            };
        }
        let e = kappa.iter().sum::<u32>() + n as u32 - 1;
        entries.push(DiscrepancyEntry {
            divisor: format!("E@{}", join_path(&path, &format!("b{}", level + 1))),
            discrepancy: e,
            ideal_order: a.order(),
        });
        centers.push(path.clone());
        let mut children = Vec::new();
        for j in 0..n {
            let mut k2 = kappa.clone();
            k2[j] = e;
            let child_path = join_path(&path, &format!("b{}.c{}", level + 1, j + 1));
            children.push((child_path, a.pullback_chart(j), k2, level + 1));
        }
        stack.extend(children.into_iter().rev());
    }
    LogResolution {
        ideal: ideal.clone(),
        entries,
        centers,
        status: LogResolutionStatus::Complete,
    }
}

/// Discrepancy test for triviality of the multiplier ideal of a monomial
/// ideal; `None` if the resolution did not finish.
pub fn discrepancy_test(ideal: &MonomialIdeal, max_depth: usize) -> Option<bool> {
    monomial_log_resolution(ideal, max_depth).discrepancy_condition()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "clause", rename_all = "snake_case")]
pub enum Witness {
    /// Clause (1): the blow-up at `path` twists the tangent bundle.
    Saturation { path: String, saturation_exponent: u32 },
    /// Clause (2): `K_{X̂/X} − D` is not effective along `divisor`.
    Discrepancy {
        divisor: String,
        discrepancy: u32,
        ideal_order: u32,
    },
}

impl Witness {
    pub fn clause(&self) -> u8 {
        match self {
            Witness::Saturation { .. } => 1,
            Witness::Discrepancy { .. } => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "detail", rename_all = "snake_case")]
pub enum WeaklyReducedVerdict {
    Certified,
    Refuted(Vec<Witness>),
    Unknown(String),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WeaklyReducedReport {
    pub verdict: WeaklyReducedVerdict,
    pub coefficient_ideal: Option<MonomialIdeal>,
    pub log_resolution: Option<LogResolution>,
    /// `(center path, s)` for each blow-up of the log resolution.
    pub saturation_exponents: Vec<(String, u32)>,
    /// Newton-polyhedron verdict on the multiplier ideal, for cross-checking.
    pub newton_polyhedron_trivial: Option<bool>,
}

/// `J_F` as a monomial ideal in the local ring, if it is one: every
/// component a monomial times a unit, or an invertible linear part.
pub fn monomial_coefficient_ideal(v: &VectorFieldGerm) -> Option<MonomialIdeal> {
    let pres = coefficient_ideal(v, None).ok()?;
    if let Some(m) = pres.plain_monomial() {
        return Some(m);
    }
    if !v.linear_part().determinant().is_zero() && first_nonsingular_component(v).is_none() {
        return Some(MonomialIdeal::maximal(v.dim()));
    }
    None
}

/// Clause (1): the field has saturation exponent 0 at every blow-up of the
/// log resolution of `J_F`; clause (2): `a_i ≥ d_i` for every divisor.
pub fn weakly_reduced_check(v: &VectorFieldGerm, max_depth: usize) -> WeaklyReducedReport {
    let unknown = |why: String| WeaklyReducedReport {
        verdict: WeaklyReducedVerdict::Unknown(why),
        coefficient_ideal: None,
        log_resolution: None,
        saturation_exponents: Vec::new(),
        newton_polyhedron_trivial: None,
    };
    if v.dim() < 2 {
        return unknown("dimension must be at least 2".to_string());
    }
    if v.is_zero() {
        return unknown("zero vector field".to_string());
    }
    let Some(ideal) = monomial_coefficient_ideal(v) else {
        return unknown("coefficient ideal is not monomial in these coordinates".to_string());
    };
    let howald = ideal.multiplier_ideal_trivial();
    let resolution = monomial_log_resolution(&ideal, max_depth);
    // Follow the field through the same centers.
    let mut fields: BTreeMap<String, VectorFieldGerm> = BTreeMap::new();
    fields.insert(String::new(), v.clone());
    let mut saturations = Vec::new();
    for center in &resolution.centers {
        let germ = fields.get(center).cloned().expect("centers are visited parent-first");
        let level = if center.is_empty() { 1 } else { center.split('/').count() + 1 };
        let blowup = match Blowup::new(&germ, &LogDivisor::empty(), level) {
            Ok(b) => b,
            Err(e) => return unknown(e.to_string()),
        };
        saturations.push((center.clone(), blowup.saturation_exponent()));
        for t in &blowup.transforms {
            let path = join_path(center, &format!("b{}.c{}", level, t.chart.number()));
            fields.insert(path, t.saturated_field.clone());
        }
    }
    let mut witnesses: Vec<Witness> = saturations
        .iter()
        .filter(|(_, s)| *s > 0)
        .map(|(p, s)| Witness::Saturation {
            path: display_path(p).to_string(),
            saturation_exponent: *s,
        })
        .collect();
    witnesses.extend(resolution.entries.iter().filter(|e| !e.holds()).map(|e| Witness::Discrepancy {
        divisor: e.divisor.clone(),
        discrepancy: e.discrepancy,
        ideal_order: e.ideal_order,
    }));
    let verdict = match (&resolution.status, witnesses.is_empty()) {
        (_, false) => WeaklyReducedVerdict::Refuted(witnesses),
        (LogResolutionStatus::Complete, true) => WeaklyReducedVerdict::Certified,
        (LogResolutionStatus::Unknown(why), true) => WeaklyReducedVerdict::Unknown(why.clone()),
    };
    WeaklyReducedReport {
        verdict,
        coefficient_ideal: Some(ideal),
        log_resolution: Some(resolution),
        saturation_exponents: saturations,
        newton_polyhedron_trivial: Some(howald),
    }
}
