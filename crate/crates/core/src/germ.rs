//! Local generators of a foliation by curves and log divisors.

use std::collections::BTreeMap;
use std::fmt;

use foliation_algebra::{GaussRat, Matrix, MVPoly, MonomialIdeal, VanishingOrder};
use num_traits::Zero;
use serde::Serialize;

use crate::error::CoreError;

/// `v = Σ a_i ∂/∂z_i` with polynomial coefficients, centered at the origin.
#[derive(Clone, PartialEq, Eq)]
pub struct VectorFieldGerm {
    components: Vec<MVPoly>,
    variables: Vec<String>,
    label: String,
}

/// Conventional names: `x, y` in dimension 2, `x, y, z` in dimension 3,
/// `z1 … zn` otherwise.
pub fn default_variable_names(n: usize) -> Vec<String> {
    match n {
        1 => vec!["x".into()],
        2 => vec!["x".into(), "y".into()],
        3 => vec!["x".into(), "y".into(), "z".into()],
        _ => (1..=n).map(|i| format!("z{i}")).collect(),
    }
}

impl VectorFieldGerm {
    pub fn new(variables: Vec<String>, components: Vec<MVPoly>) -> Result<Self, CoreError> {
        let n = variables.len();
        if components.len() != n || components.iter().any(|c| c.nvars() != n) {
            return Err(CoreError::ComponentCount {
                components: components.len(),
                variables: n,
            });
        }
        Ok(Self {
            components,
            variables,
            label: "root".to_string(),
        })
    }

    /// Germ with [`default_variable_names`].
    pub fn from_components(components: Vec<MVPoly>) -> Result<Self, CoreError> {
        Self::new(default_variable_names(components.len()), components)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[MVPoly] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &MVPoly {
        &self.components[i]
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(MVPoly::is_zero)
    }

    /// Jacobian at the origin: entry `(i, j)` is `∂a_i/∂z_j(0)`.
    pub fn linear_part(&self) -> Matrix {
        Matrix::from_rows(self.components.iter().map(MVPoly::linear_coeffs).collect())
    }

    /// `v(0)`.
    pub fn value_at_origin(&self) -> Vec<GaussRat> {
        self.components.iter().map(MVPoly::constant_term).collect()
    }

    pub fn value_at(&self, p: &[GaussRat]) -> Vec<GaussRat> {
        self.components.iter().map(|c| c.eval(p)).collect()
    }

    /// Minimum vanishing order of the components.
    pub fn vanishing_order(&self) -> VanishingOrder {
        self.components
            .iter()
            .map(MVPoly::vanishing_order)
            .min()
            .unwrap_or(VanishingOrder::Infinite)
    }

    /// Components composed with `z ↦ z + p`.
    pub fn translate(&self, p: &[GaussRat]) -> Self {
        Self {
            components: self.components.iter().map(|c| c.translate(p)).collect(),
            variables: self.variables.clone(),
            label: self.label.clone(),
        }
    }

    /// `h · v`.
    pub fn multiply(&self, h: &MVPoly) -> Self {
        Self {
            components: self.components.iter().map(|c| c * h).collect(),
            variables: self.variables.clone(),
            label: self.label.clone(),
        }
    }

    /// The derivation `f ↦ Σ a_i ∂f/∂z_i`.
    pub fn apply(&self, f: &MVPoly) -> MVPoly {
        let mut out = MVPoly::zero(self.dim());
        for (i, a) in self.components.iter().enumerate() {
            let d = f.derivative(i);
            if !d.is_zero() {
                out = &out + &(a * &d);
            }
        }
        out
    }

    /// Linear change of coordinates `z = P·z'`: returns `P⁻¹ · v(P z')`.
    pub fn conjugate(&self, p: &Matrix) -> Option<Self> {
        let inv = p.inverse()?;
        let n = self.dim();
        let subs: Vec<MVPoly> = (0..n)
            .map(|i| {
                let mut acc = MVPoly::zero(n);
                for j in 0..n {
                    let c = p.get(i, j);
                    if !c.is_zero() {
                        acc = &acc + &MVPoly::var(n, j).scale(c);
                    }
                }
                acc
            })
            .collect();
        let composed: Vec<MVPoly> = self.components.iter().map(|c| c.compose(&subs)).collect();
        let components = (0..n)
            .map(|i| {
                let mut acc = MVPoly::zero(n);
                for (j, cj) in composed.iter().enumerate() {
                    let c = inv.get(i, j);
                    if !c.is_zero() {
                        acc = &acc + &cj.scale(c);
                    }
                }
                acc
            })
            .collect();
        Some(Self {
            components,
            variables: self.variables.clone(),
            label: self.label.clone(),
        })
    }

    /// Canonical text in the CLI grammar, e.g.
    /// `v(x, y) = (x^2 + y) d/dx + (x*y) d/dy`.
    pub fn to_text(&self) -> String {
        let head = format!("v({})", self.variables.join(", "));
        let terms: Vec<String> = self
            .components
            .iter()
            .zip(&self.variables)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, name)| format!("({}) d/d{}", c.fmt_with(&self.variables), name))
            .collect();
        if terms.is_empty() {
            format!("{head} = 0")
        } else {
            format!("{head} = {}", terms.join(" + "))
        }
    }
}

impl fmt::Display for VectorFieldGerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for VectorFieldGerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.label, self.to_text())
    }
}

impl Serialize for VectorFieldGerm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(&self.to_text())
    }
}

/// `translate_to_point(v, p)`.
pub fn translate_to_point(v: &VectorFieldGerm, p: &[GaussRat]) -> VectorFieldGerm {
    v.translate(p)
}

pub fn is_singular_at_origin(v: &VectorFieldGerm) -> bool {
    v.components.iter().all(|c| c.constant_term().is_zero())
}

/// Index of the first component with nonzero constant term.
pub(crate) fn first_nonsingular_component(v: &VectorFieldGerm) -> Option<usize> {
    v.components.iter().position(|c| !c.constant_term().is_zero())
}

/// Whether `z_j | a_j` for each (0-based) axis `j` in `axes`.
pub fn divisor_invariance_check(v: &VectorFieldGerm, axes: &[usize]) -> bool {
    axes.iter().all(|&j| axis_invariant(v, j))
}

pub(crate) fn axis_invariant(v: &VectorFieldGerm, j: usize) -> bool {
    j < v.dim() && v.components[j].var_power_divisor(j).is_none_or(|k| k >= 1)
}

/// Where a divisor axis came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AxisOrigin {
    Original,
    /// Exceptional divisor of the blow-up at the given level (1-based).
    Exceptional(usize),
}

impl fmt::Display for AxisOrigin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxisOrigin::Original => f.write_str("original"),
            AxisOrigin::Exceptional(l) => write!(f, "E{l}"),
        }
    }
}

/// Normal-crossings divisor `Π_{j∈S} z_j = 0` through the origin.
/// Axes are 0-based internally; the text form is 1-based.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LogDivisor {
    axes: BTreeMap<usize, AxisOrigin>,
}

impl LogDivisor {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Divisor made of original coordinate hyperplanes.
    pub fn original(axes: &[usize]) -> Self {
        Self {
            axes: axes.iter().map(|&a| (a, AxisOrigin::Original)).collect(),
        }
    }

    pub fn with_axis(mut self, axis: usize, origin: AxisOrigin) -> Self {
        self.axes.insert(axis, origin);
        self
    }

    pub fn axes(&self) -> Vec<usize> {
        self.axes.keys().copied().collect()
    }

    pub fn origin_of(&self, axis: usize) -> Option<AxisOrigin> {
        self.axes.get(&axis).copied()
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, AxisOrigin)> + '_ {
        self.axes.iter().map(|(&a, &o)| (a, o))
    }

    pub fn contains(&self, axis: usize) -> bool {
        self.axes.contains_key(&axis)
    }

    pub fn len(&self) -> usize {
        self.axes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.axes.is_empty()
    }

    /// Check every axis index is below `n` and invariant by `v`.
    pub fn validate(&self, v: &VectorFieldGerm) -> Result<(), CoreError> {
        for &a in self.axes.keys() {
            if a >= v.dim() {
                return Err(CoreError::AxisOutOfRange(a + 1));
            }
            if !axis_invariant(v, a) {
                return Err(CoreError::DivisorNotInvariant { axis: a + 1 });
            }
        }
        Ok(())
    }

    /// Text form `D = {1, 2}`.
    pub fn to_text(&self) -> String {
        let parts: Vec<String> = self.axes.keys().map(|a| (a + 1).to_string()).collect();
        format!("D = {{{}}}", parts.join(", "))
    }
}

impl fmt::Display for LogDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Generators of `J_F` and, when a divisor is given, of `J_{F,D}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffIdealPresentation {
    pub plain_generators: Vec<MVPoly>,
    pub log_generators: Option<Vec<MVPoly>>,
}

impl CoeffIdealPresentation {
    /// Monomial ideal generated by the plain generators when each is a
    /// monomial times a unit at the origin.
    pub fn plain_monomial(&self) -> Option<MonomialIdeal> {
        monomial_ideal_of(&self.plain_generators)
    }

    pub fn log_monomial(&self) -> Option<MonomialIdeal> {
        monomial_ideal_of(self.log_generators.as_ref()?)
    }
}

/// Monomial ideal generated by `gens` in the local ring at the origin, when
/// every nonzero generator is a monomial times a unit.
pub fn monomial_ideal_of(gens: &[MVPoly]) -> Option<MonomialIdeal> {
    let n = gens.first()?.nvars();
    let mut exps = Vec::new();
    for g in gens.iter().filter(|g| !g.is_zero()) {
        exps.push(g.local_monomial()?);
    }
    MonomialIdeal::new(n, exps).ok()
}

pub fn coefficient_ideal(
    v: &VectorFieldGerm,
    divisor: Option<&LogDivisor>,
) -> Result<CoeffIdealPresentation, CoreError> {
    let plain_generators = v.components.clone();
    let log_generators = match divisor {
        None => None,
        Some(d) => {
            d.validate(v)?;
            let gens = v
                .components
                .iter()
                .enumerate()
                .map(|(j, a)| {
                    if d.contains(j) && !a.is_zero() {
                        a.div_var_power(j, 1).expect("invariance checked")
                    } else {
                        a.clone()
                    }
                })
                .collect();
            Some(gens)
        }
    };
    Ok(CoeffIdealPresentation {
        plain_generators,
        log_generators,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[(&[u32], i64)]) -> MVPoly {
        MVPoly::from_int_terms(2, terms)
    }

    fn germ(a: &[(&[u32], i64)], b: &[(&[u32], i64)]) -> VectorFieldGerm {
        VectorFieldGerm::from_components(vec![p(a), p(b)]).unwrap()
    }

    #[test]
    fn translation_examples() {
        let v = germ(&[(&[1, 0], 1), (&[0, 0], -1)], &[(&[0, 1], 1)]);
        let t = v.translate(&[GaussRat::from_int(1), GaussRat::zero()]);
        assert_eq!(t, germ(&[(&[1, 0], 1)], &[(&[0, 1], 1)]));
        assert_eq!(t.translate(&[GaussRat::from_int(-1), GaussRat::zero()]), v);
    }

    #[test]
    fn singular_and_invariance() {
        let radial = germ(&[(&[1, 0], 1)], &[(&[0, 1], 1)]);
        assert!(is_singular_at_origin(&radial));
        assert!(divisor_invariance_check(&radial, &[0]));
        let swap = germ(&[(&[0, 1], 1)], &[(&[1, 0], 1)]);
        assert!(!divisor_invariance_check(&swap, &[0]));
        let v = germ(&[(&[1, 0], 1), (&[1, 1], 1)], &[(&[0, 1], -1)]);
        assert!(divisor_invariance_check(&v, &[0, 1]));
        let regular = germ(&[(&[0, 0], 1)], &[]);
        assert!(!is_singular_at_origin(&regular));
    }

    #[test]
    fn coefficient_ideals() {
        let radial = germ(&[(&[1, 0], 1)], &[(&[0, 1], 1)]);
        let plain = coefficient_ideal(&radial, None).unwrap();
        assert_eq!(plain.plain_monomial().unwrap().to_string(), "(x, y)");
        let log = coefficient_ideal(&radial, Some(&LogDivisor::original(&[0]))).unwrap();
        assert!(log.log_monomial().unwrap().is_unit());
        let swap = germ(&[(&[0, 1], 1)], &[(&[1, 0], 1)]);
        assert_eq!(
            coefficient_ideal(&swap, Some(&LogDivisor::original(&[0]))),
            Err(CoreError::DivisorNotInvariant { axis: 1 })
        );
    }

    #[test]
    fn canonical_text() {
        let v = germ(&[(&[2, 0], 1), (&[0, 1], 1)], &[(&[1, 1], 1)]);
        assert_eq!(v.to_text(), "v(x, y) = (x^2 + y) d/dx + (x*y) d/dy");
    }
}
