//! Point blow-ups in coordinate charts.
//!
//! Chart `j` (0-based) of the blow-up of the origin in `Cⁿ` uses the
//! coordinate slots of the ambient space: slot `j` carries the exceptional
//! coordinate `u` and every other slot `i` carries `w_i`, with
//! `z_j = u` and `z_i = u·w_i`.

use foliation_algebra::{GaussRat, MVPoly, UniPoly};
use num_complex::Complex64;
use num_traits::Zero;
use serde::Serialize;

use crate::error::CoreError;
use crate::germ::{axis_invariant, AxisOrigin, LogDivisor, VectorFieldGerm};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BlowupChart {
    index: usize,
    dim: usize,
}

pub fn blowup_charts(n: usize) -> Result<Vec<BlowupChart>, CoreError> {
    if n < 2 {
        return Err(CoreError::DimensionTooSmall(n));
    }
    Ok((0..n).map(|index| BlowupChart { index, dim: n }).collect())
}

impl BlowupChart {
    pub fn new(dim: usize, index: usize) -> Result<Self, CoreError> {
        if dim < 2 {
            return Err(CoreError::DimensionTooSmall(dim));
        }
        if index >= dim {
            return Err(CoreError::AxisOutOfRange(index + 1));
        }
        Ok(Self { index, dim })
    }

    /// 0-based slot of the exceptional coordinate.
    pub fn index(&self) -> usize {
        self.index
    }

    /// 1-based chart number used in chart paths.
    pub fn number(&self) -> usize {
        self.index + 1
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Ambient coordinates as polynomials in the chart coordinates.
    pub fn substitution(&self) -> Vec<MVPoly> {
        let n = self.dim;
        let u = MVPoly::var(n, self.index);
        (0..n)
            .map(|i| if i == self.index { u.clone() } else { &u * &MVPoly::var(n, i) })
            .collect()
    }

    /// Image of a chart point in the ambient space.
    pub fn map_point(&self, p: &[GaussRat]) -> Vec<GaussRat> {
        let u = &p[self.index];
        (0..self.dim)
            .map(|i| if i == self.index { u.clone() } else { u * &p[i] })
            .collect()
    }

    /// Chart coordinates of an ambient point with `z_j ≠ 0`.
    pub fn chart_coordinates(&self, z: &[GaussRat]) -> Option<Vec<GaussRat>> {
        let zj = z[self.index].inv()?;
        Some(
            (0..self.dim)
                .map(|i| if i == self.index { z[i].clone() } else { &z[i] * &zj })
                .collect(),
        )
    }

    /// Transition to a sibling chart; `None` off the overlap
    /// (`u ≠ 0`, `w_k ≠ 0`).
    pub fn transition_to(&self, other: &BlowupChart, p: &[GaussRat]) -> Option<Vec<GaussRat>> {
        if p[self.index].is_zero() {
            return None;
        }
        other.chart_coordinates(&self.map_point(p))
    }

    /// Transition to chart `k` as rational functions: `u' = u·w_k`,
    /// `w'_j = 1/w_k`, `w'_i = w_i/w_k`, each as a (numerator, denominator)
    /// pair in slot order.
    pub fn transition_formulas(&self, other: &BlowupChart) -> Vec<(MVPoly, MVPoly)> {
        let n = self.dim;
        let (j, k) = (self.index, other.index);
        let one = MVPoly::one(n);
        (0..n)
            .map(|i| {
                if j == k {
                    (MVPoly::var(n, i), one.clone())
                } else if i == k {
                    (&MVPoly::var(n, j) * &MVPoly::var(n, k), one.clone())
                } else if i == j {
                    (one.clone(), MVPoly::var(n, k))
                } else {
                    (MVPoly::var(n, i), MVPoly::var(n, k))
                }
            })
            .collect()
    }
}

/// Chart-path element `b{level}.c{chart}`.
pub fn chart_label(level: usize, chart: &BlowupChart) -> String {
    format!("b{level}.c{}", chart.number())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SaturatedTransform {
    #[serde(serialize_with = "serialize_chart")]
    pub chart: BlowupChart,
    pub raw_field: VectorFieldGerm,
    pub saturation_exponent: u32,
    pub saturated_field: VectorFieldGerm,
    pub divisor: LogDivisor,
    pub exceptional_invariant: bool,
    /// The germ was regular at the origin, so the pushforward had a simple
    /// pole along `E`; `raw_field` is `u` times the pushforward.
    pub pole_cleared: bool,
}

fn serialize_chart<S: serde::Serializer>(c: &BlowupChart, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_u64(c.number() as u64)
}

/// Transform without a prior divisor (first blow-up of a bare germ).
pub fn transform_vector_field(v: &VectorFieldGerm, chart: &BlowupChart) -> SaturatedTransform {
    transform_with_divisor(v, &LogDivisor::empty(), chart, 1)
}

/// Pushforward of `v` to chart `chart`, saturated by the largest power of
/// `u`, with the divisor `D̃` made of the invariant strict transforms of the
/// axes of `divisor` and, when invariant, the new exceptional axis.
pub fn transform_with_divisor(
    v: &VectorFieldGerm,
    divisor: &LogDivisor,
    chart: &BlowupChart,
    level: usize,
) -> SaturatedTransform {
    let n = v.dim();
    let j = chart.index;
    let sigma = chart.substitution();
    let pulled: Vec<MVPoly> = v.components().iter().map(|a| a.compose(&sigma)).collect();
    let aj = pulled[j].clone();
    let mut numerators: Vec<MVPoly> = Vec::with_capacity(n);
    for (i, ai) in pulled.iter().enumerate() {
        if i == j {
            numerators.push(aj.clone());
        } else {
            numerators.push(ai - &(&MVPoly::var(n, i) * &aj));
        }
    }
    let divisible = numerators
        .iter()
        .enumerate()
        .all(|(i, p)| i == j || p.var_power_divisor(j).is_none_or(|k| k >= 1));
    let raw: Vec<MVPoly> = numerators
        .iter()
        .enumerate()
        .map(|(i, p)| {
            if i == j {
                if divisible {
                    p.clone()
                } else {
                    p * &MVPoly::var(n, j)
                }
            } else if divisible {
                p.div_var_power(j, 1).expect("divisibility checked")
            } else {
                p.clone()
            }
        })
        .collect();
    let s = raw.iter().filter_map(|p| p.var_power_divisor(j)).min().unwrap_or(0);
    let saturated: Vec<MVPoly> = raw
        .iter()
        .map(|p| p.div_var_power(j, s).expect("common power"))
        .collect();
    let label = format!("{}.c{}", v.label(), chart.number());
    let raw_field = VectorFieldGerm::new(v.variables().to_vec(), raw)
        .expect("same shape")
        .with_label(label.clone());
    let saturated_field = VectorFieldGerm::new(v.variables().to_vec(), saturated)
        .expect("same shape")
        .with_label(label);
    let exceptional_invariant = axis_invariant(&saturated_field, j);
    let mut new_divisor = LogDivisor::empty();
    for (k, origin) in divisor.entries() {
        if k != j && axis_invariant(&saturated_field, k) {
            new_divisor = new_divisor.with_axis(k, origin);
        }
    }
    if exceptional_invariant {
        new_divisor = new_divisor.with_axis(j, AxisOrigin::Exceptional(level));
    }
    SaturatedTransform {
        chart: *chart,
        raw_field,
        saturation_exponent: s,
        saturated_field,
        divisor: new_divisor,
        exceptional_invariant,
        pole_cleared: !divisible,
    }
}

/// A singular point of a saturated transform on `E`, with exact chart
/// coordinates (`u = 0`).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExceptionalPoint {
    #[serde(serialize_with = "serialize_chart")]
    pub chart: BlowupChart,
    pub coords: Vec<GaussRat>,
}

impl ExceptionalPoint {
    pub fn is_chart_origin(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// `b1.c2` at a chart origin, `b1.c1@[1/2]` elsewhere (the `w`
    /// coordinates in slot order).
    pub fn path_element(&self, level: usize) -> String {
        let base = chart_label(level, &self.chart);
        if self.is_chart_origin() {
            base
        } else {
            let ws: Vec<String> = self
                .coords
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != self.chart.index())
                .map(|(_, c)| c.to_string())
                .collect();
            format!("{base}@[{}]", ws.join(", "))
        }
    }
}

/// Singular points on `E` whose `w`-coordinate is a root of an irreducible
/// factor without roots in `Q(i)` (dimension 2 only).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AlgebraicCluster {
    #[serde(serialize_with = "serialize_chart")]
    pub chart: BlowupChart,
    /// Square-free polynomial in the `w` coordinate.
    #[serde(serialize_with = "serialize_unipoly")]
    pub factor: UniPoly,
    pub count: usize,
    /// Roots where the linear part has a nonzero eigenvalue.
    pub reduced_count: usize,
    /// Among the reduced roots, those with invertible linear part.
    pub nondegenerate_count: usize,
    #[serde(serialize_with = "serialize_complex_list")]
    pub approximations: Vec<Complex64>,
}

impl AlgebraicCluster {
    pub fn all_reduced(&self) -> bool {
        self.reduced_count == self.count
    }
}

pub(crate) fn serialize_unipoly<S: serde::Serializer>(p: &UniPoly, s: S) -> Result<S::Ok, S::Error> {
    let names = vec!["w".to_string()];
    s.collect_str(&MVPoly::from_univariate(1, 0, p).fmt_with(&names))
}

pub(crate) fn serialize_complex_list<S: serde::Serializer>(
    v: &[Complex64],
    s: S,
) -> Result<S::Ok, S::Error> {
    let pairs: Vec<[f64; 2]> = v.iter().map(|z| [z.re, z.im]).collect();
    pairs.serialize(s)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", content = "detail", rename_all = "snake_case")]
pub enum LocusStatus {
    Finite,
    /// `Sing ∩ E` has positive dimension.
    NonIsolated,
    /// Finiteness could not be decided; listed points are partial.
    Unknown(String),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExceptionalLocus {
    pub points: Vec<ExceptionalPoint>,
    pub clusters: Vec<AlgebraicCluster>,
    pub status: LocusStatus,
}

/// One blow-up of the origin: all chart transforms and `Sing ∩ E`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Blowup {
    pub level: usize,
    pub transforms: Vec<SaturatedTransform>,
    pub locus: ExceptionalLocus,
}

impl Blowup {
    pub fn new(v: &VectorFieldGerm, divisor: &LogDivisor, level: usize) -> Result<Self, CoreError> {
        let charts = blowup_charts(v.dim())?;
        let transforms: Vec<SaturatedTransform> = charts
            .iter()
            .map(|c| transform_with_divisor(v, divisor, c, level))
            .collect();
        let locus = exceptional_locus(v, &transforms)?;
        Ok(Self {
            level,
            transforms,
            locus,
        })
    }

    pub fn is_dicritical(&self) -> bool {
        self.transforms.iter().any(|t| !t.exceptional_invariant)
    }

    pub fn saturation_exponent(&self) -> u32 {
        self.transforms.iter().map(|t| t.saturation_exponent).max().unwrap_or(0)
    }

    pub fn transform(&self, chart: &BlowupChart) -> &SaturatedTransform {
        &self.transforms[chart.index()]
    }

    /// Saturated field recentered at the point, with the divisor components
    /// passing through it.
    pub fn point_germ(&self, p: &ExceptionalPoint) -> (VectorFieldGerm, LogDivisor) {
        let t = self.transform(&p.chart);
        let germ = t
            .saturated_field
            .translate(&p.coords)
            .with_label(p.path_element(self.level));
        let mut d = LogDivisor::empty();
        for (k, origin) in t.divisor.entries() {
            if p.coords[k].is_zero() {
                d = d.with_axis(k, origin);
            }
        }
        (germ, d)
    }
}

fn restrict_to_exceptional(p: &MVPoly, chart: usize) -> MVPoly {
    p.set_var(chart, &GaussRat::zero())
}

/// `Sing(F̃) ∩ E`, each point counted in the first chart containing it
/// (chart `j` keeps only points with `w_i = 0` for `i < j`).
pub fn exceptional_locus(
    v: &VectorFieldGerm,
    transforms: &[SaturatedTransform],
) -> Result<ExceptionalLocus, CoreError> {
    let locus = if v.dim() == 2 {
        locus_dim2(transforms)
    } else {
        locus_higher(v, transforms)
    };
    for p in &locus.points {
        let t = &transforms[p.chart.index()];
        if t.saturated_field.value_at(&p.coords).iter().any(|c| !c.is_zero()) {
            return Err(CoreError::Internal(format!(
                "claimed singular point {:?} is not a zero of the chart field",
                p.coords
            )));
        }
    }
    Ok(locus)
}

fn locus_dim2(transforms: &[SaturatedTransform]) -> ExceptionalLocus {
    let mut points = Vec::new();
    let mut clusters = Vec::new();
    // chart 1: E = {u = 0} with free coordinate w in slot 1
    let t0 = &transforms[0];
    let restricted: Vec<UniPoly> = t0
        .saturated_field
        .components()
        .iter()
        .map(|c| {
            restrict_to_exceptional(c, 0)
                .to_univariate(1)
                .expect("restriction involves only w")
        })
        .collect();
    if restricted.iter().all(UniPoly::is_zero) {
        return ExceptionalLocus {
            points,
            clusters,
            status: LocusStatus::NonIsolated,
        };
    }
    let g = restricted
        .iter()
        .filter(|r| !r.is_zero())
        .fold(UniPoly::zero(), |acc, r| acc.gcd(r));
    if g.degree().unwrap_or(0) > 0 {
        let split = g.split_roots();
        for (root, _) in &split.roots {
            points.push(ExceptionalPoint {
                chart: t0.chart,
                coords: vec![GaussRat::zero(), root.clone()],
            });
        }
        if split.residual.degree().unwrap_or(0) > 0 {
            let residual = split.residual.clone();
            let sqfree = residual.div_rem(&residual.gcd(&residual.derivative())).0;
            clusters.push(analyze_cluster(t0, &sqfree));
        }
    }
    // chart 2: only the point w = 0 (the direction missed by chart 1)
    let t1 = &transforms[1];
    let origin = vec![GaussRat::zero(), GaussRat::zero()];
    if t1.saturated_field.value_at(&origin).iter().all(Zero::is_zero) {
        points.push(ExceptionalPoint {
            chart: t1.chart,
            coords: origin,
        });
    }
    ExceptionalLocus {
        points,
        clusters,
        status: LocusStatus::Finite,
    }
}

/// Split the roots of a square-free factor by the behaviour of the linear
/// part there: entries of the Jacobian at `(0, w)` are polynomials in `w`,
/// so trace and determinant vanish at a root iff the factor shares a root
/// with them.
fn analyze_cluster(t: &SaturatedTransform, factor: &UniPoly) -> AlgebraicCluster {
    let comps = t.saturated_field.components();
    let jac: Vec<Vec<UniPoly>> = comps
        .iter()
        .map(|c| {
            (0..2)
                .map(|k| {
                    restrict_to_exceptional(&c.derivative(k), 0)
                        .to_univariate(1)
                        .expect("restriction involves only w")
                })
                .collect()
        })
        .collect();
    let trace = jac[0][0].add(&jac[1][1]);
    let det = jac[0][0].mul(&jac[1][1]).sub(&jac[0][1].mul(&jac[1][0]));
    let count = factor.degree().unwrap_or(0);
    let deg_common = |a: &UniPoly, b: &UniPoly| -> usize {
        if b.is_zero() {
            a.degree().unwrap_or(0)
        } else {
            a.gcd(b).degree().unwrap_or(0)
        }
    };
    let nilpotent_roots = {
        let g = if trace.is_zero() { factor.clone() } else { factor.gcd(&trace) };
        deg_common(&g, &det)
    };
    let reduced_count = count - nilpotent_roots;
    let singular_linear = deg_common(factor, &det);
    let nondegenerate_count = count - singular_linear;
    AlgebraicCluster {
        chart: t.chart,
        factor: factor.clone(),
        count,
        reduced_count,
        nondegenerate_count,
        approximations: factor.approximate_roots(),
    }
}

fn locus_higher(v: &VectorFieldGerm, transforms: &[SaturatedTransform]) -> ExceptionalLocus {
    let n = v.dim();
    let dicritical = transforms.iter().any(|t| !t.exceptional_invariant);
    if v.vanishing_order().finite() == Some(1) && !dicritical {
        let l = v.linear_part();
        let mut points = Vec::new();
        let eig = foliation_algebra::eigenvalues_exact(&l);
        let (exact, complete) = match &eig {
            foliation_algebra::Eigenvalues::Exact(e) => (e.clone(), true),
            foliation_algebra::Eigenvalues::Indeterminate { exact_part, .. } => (exact_part.clone(), false),
        };
        let mut distinct = exact.clone();
        distinct.dedup();
        for lambda in distinct {
            let shifted = l.sub(&foliation_algebra::Matrix::identity(n).scale(&lambda));
            let ns = shifted.null_space();
            if ns.len() >= 2 {
                return ExceptionalLocus {
                    points: Vec::new(),
                    clusters: Vec::new(),
                    status: LocusStatus::NonIsolated,
                };
            }
            let e = &ns[0];
            let c = e.iter().position(|x| !x.is_zero()).expect("nonzero eigenvector");
            let inv = e[c].inv().expect("nonzero");
            let coords: Vec<GaussRat> = (0..n)
                .map(|i| if i == c { GaussRat::zero() } else { &e[i] * &inv })
                .collect();
            points.push(ExceptionalPoint {
                chart: transforms[c].chart,
                coords,
            });
        }
        points.sort_by(|a, b| (a.chart, &a.coords).cmp(&(b.chart, &b.coords)));
        let status = if complete {
            LocusStatus::Finite
        } else {
            LocusStatus::Unknown("eigen-directions outside Q(i)".to_string())
        };
        return ExceptionalLocus {
            points,
            clusters: Vec::new(),
            status,
        };
    }
    if v.vanishing_order().finite() == Some(1) {
        // L = λ·I with λ ≠ 0: the saturated transform is transverse to E.
        return ExceptionalLocus {
            points: Vec::new(),
            clusters: Vec::new(),
            status: LocusStatus::Finite,
        };
    }
    // Multiplicity ≥ 2 in dimension ≥ 3: only chart origins are checked.
    let points = transforms
        .iter()
        .filter(|t| {
            let zero = vec![GaussRat::zero(); n];
            t.saturated_field.value_at(&zero).iter().all(Zero::is_zero)
        })
        .map(|t| ExceptionalPoint {
            chart: t.chart,
            coords: vec![GaussRat::zero(); n],
        })
        .collect();
    ExceptionalLocus {
        points,
        clusters: Vec::new(),
        status: LocusStatus::Unknown(
            "multiplicity at least 2 in dimension at least 3: only chart origins examined".to_string(),
        ),
    }
}

/// `π*ω` for `ω = Σ b_i dz_i` in the basis `(d log u, dw_i)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PulledBackForm {
    #[serde(serialize_with = "serialize_chart")]
    pub chart: BlowupChart,
    /// Coefficient of `d log u`.
    #[serde(serialize_with = "serialize_poly")]
    pub log_coefficient: MVPoly,
    /// Coefficients of `dw_i` in slot order (the `u` slot is zero).
    #[serde(serialize_with = "serialize_poly_list")]
    pub dw_coefficients: Vec<MVPoly>,
    /// The coefficients divided by `u`.
    #[serde(serialize_with = "serialize_poly")]
    pub log_quotient: MVPoly,
    #[serde(serialize_with = "serialize_poly_list")]
    pub dw_quotients: Vec<MVPoly>,
}

pub(crate) fn serialize_poly<S: serde::Serializer>(p: &MVPoly, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(&format!("{p:?}"))
}

pub(crate) fn serialize_poly_list<S: serde::Serializer>(v: &[MVPoly], s: S) -> Result<S::Ok, S::Error> {
    let strs: Vec<String> = v.iter().map(|p| format!("{p:?}")).collect();
    strs.serialize(s)
}

/// Pull back a 1-form through a chart and certify that every coefficient in
/// the log basis is divisible by `u`.
pub fn pullback_one_form(b: &[MVPoly], chart: &BlowupChart) -> Result<PulledBackForm, CoreError> {
    let n = chart.dim();
    if b.len() != n {
        return Err(CoreError::DimensionMismatch {
            expected: n,
            found: b.len(),
        });
    }
    let j = chart.index();
    let sigma = chart.substitution();
    let pulled: Vec<MVPoly> = b.iter().map(|c| c.compose(&sigma)).collect();
    // coefficient of dy_k in π*ω is Σ_i (b_i∘σ) ∂σ_i/∂y_k
    let coeff = |k: usize| -> MVPoly {
        let mut acc = MVPoly::zero(n);
        for (i, bi) in pulled.iter().enumerate() {
            let d = sigma[i].derivative(k);
            if !d.is_zero() && !bi.is_zero() {
                acc = &acc + &(bi * &d);
            }
        }
        acc
    };
    let u = MVPoly::var(n, j);
    let log_coefficient = &coeff(j) * &u;
    let dw_coefficients: Vec<MVPoly> = (0..n)
        .map(|k| if k == j { MVPoly::zero(n) } else { coeff(k) })
        .collect();
    let quotient = |p: &MVPoly| -> Result<MVPoly, CoreError> {
        p.div_var_power(j, 1).ok_or_else(|| {
            CoreError::Internal(format!("pulled-back coefficient {p:?} is not divisible by u"))
        })
    };
    let log_quotient = quotient(&log_coefficient)?;
    let dw_quotients = dw_coefficients.iter().map(quotient).collect::<Result<Vec<_>, _>>()?;
    Ok(PulledBackForm {
        chart: *chart,
        log_coefficient,
        dw_coefficients,
        log_quotient,
        dw_quotients,
    })
}

/// Order of the pullback of `p` along the exceptional divisor of the last
/// blow-up, for a tower that blows up the origin of the listed charts
/// (0-based indices) in turn.
pub fn exceptional_multiplicity(p: &MVPoly, path: &[usize]) -> Result<u32, CoreError> {
    if p.is_zero() {
        return Err(CoreError::ZeroPolynomial);
    }
    let n = p.nvars();
    let mut q = p.clone();
    let mut last = None;
    for &c in path {
        let chart = BlowupChart::new(n, c)?;
        q = q.compose(&chart.substitution());
        last = Some(c);
    }
    Ok(match last {
        None => 0,
        Some(c) => q.var_power_divisor(c).expect("nonzero"),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "surplus", rename_all = "snake_case")]
pub enum EffectivityVerdict {
    SectionExists(u128),
    NoSection,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EffectivityCount {
    pub degree: u64,
    pub sections: u128,
    pub constraints: u128,
    pub verdict: EffectivityVerdict,
}

/// Smallest `r` with `r^n ≥ k`.
pub fn ceil_root(k: u64, n: u32) -> u64 {
    let mut r = (k as f64).powf(1.0 / n as f64).floor() as u64;
    r = r.saturating_sub(1);
    while (r as u128).pow(n) < k as u128 {
        r += 1;
    }
    r
}

fn binomial(n: u128, k: u128) -> u128 {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

/// Dimension count for sections of `d·H` on projective `n`-space vanishing
/// on the ideal `(z₁^k, z₂, …, z_n)` at a point, `d = ⌈k^{1/n}⌉·α`.
pub fn effectivity_count(n: u32, k: u64, alpha: u64) -> EffectivityCount {
    let degree = ceil_root(k, n) * alpha;
    let sections = binomial(degree as u128 + n as u128, n as u128);
    let constraints = (k as u128).min(degree as u128 + 1);
    let verdict = if sections > constraints {
        EffectivityVerdict::SectionExists(sections - constraints)
    } else {
        EffectivityVerdict::NoSection
    };
    EffectivityCount {
        degree,
        sections,
        constraints,
        verdict,
    }
}
