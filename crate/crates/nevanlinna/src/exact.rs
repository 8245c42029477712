//! Exact Taylor coefficients of exponential-polynomial expressions.
//!
//! At a Gaussian-rational point `t0` every coefficient of such an
//! expression is a finite sum `Σ q_a e^a` with `q_a, a ∈ Q(i)`. By the
//! Lindemann–Weierstrass theorem the exponentials of distinct algebraic
//! numbers are linearly independent over the algebraic numbers, so the sum
//! vanishes exactly when every `q_a` does. That makes vanishing orders at
//! `t0` decidable.

use std::collections::BTreeMap;
use std::fmt;

use foliation_algebra::{Coeff, GaussRat};

/// An element `Σ q_a e^a` of the group ring `Q(i)[exp(Q(i))]`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct ExpCoeff {
    terms: BTreeMap<GaussRat, GaussRat>,
}

impl ExpCoeff {
    pub fn rational(q: GaussRat) -> Self {
        let mut terms = BTreeMap::new();
        if !q.is_zero() {
            terms.insert(GaussRat::zero(), q);
        }
        ExpCoeff { terms }
    }

    /// `e^a`.
    pub fn exponential(a: GaussRat) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(a, GaussRat::one());
        ExpCoeff { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GaussRat, &GaussRat)> {
        self.terms.iter()
    }

    /// The value as a Gaussian rational when no exponential is involved.
    pub fn as_rational(&self) -> Option<GaussRat> {
        match self.terms.len() {
            0 => Some(GaussRat::zero()),
            1 => self.terms.get(&GaussRat::zero()).cloned(),
            _ => None,
        }
    }

    fn insert(&mut self, a: GaussRat, q: GaussRat) {
        let entry = self.terms.entry(a.clone()).or_insert_with(GaussRat::zero);
        *entry += &q;
        if entry.is_zero() {
            self.terms.remove(&a);
        }
    }
}

impl fmt::Debug for ExpCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(a, q)| if a.is_zero() { format!("{q}") } else { format!("({q})·e^({a})") })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Coeff for ExpCoeff {
    fn zero() -> Self {
        ExpCoeff::default()
    }
    fn one() -> Self {
        ExpCoeff::rational(GaussRat::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (a, q) in &other.terms {
            out.insert(a.clone(), q.clone());
        }
        out
    }
    fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (a, q) in &other.terms {
            out.insert(a.clone(), -q);
        }
        out
    }
    fn mul(&self, other: &Self) -> Self {
        let mut out = ExpCoeff::default();
        for (a, p) in &self.terms {
            for (b, q) in &other.terms {
                out.insert(a + b, p * q);
            }
        }
        out
    }
    fn scale(&self, c: &GaussRat) -> Self {
        if c.is_zero() {
            return ExpCoeff::default();
        }
        ExpCoeff {
            terms: self.terms.iter().map(|(a, q)| (a.clone(), q * c)).collect(),
        }
    }
    fn inv(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (a, q) = self.terms.iter().next()?;
        let mut terms = BTreeMap::new();
        terms.insert(-a, q.inv()?);
        Some(ExpCoeff { terms })
    }
    fn exp(&self) -> Option<Self> {
        self.as_rational().map(ExpCoeff::exponential)
    }
}
