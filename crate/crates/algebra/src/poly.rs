//! Sparse multivariate polynomials over `Q(i)`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::gauss::GaussRat;
use crate::univariate::UniPoly;

pub type Exponent = Vec<u32>;

/// Order of vanishing at the origin; the zero polynomial vanishes to infinite order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum VanishingOrder {
    Finite(u32),
    Infinite,
}

impl VanishingOrder {
    pub fn finite(self) -> Option<u32> {
        match self {
            VanishingOrder::Finite(k) => Some(k),
            VanishingOrder::Infinite => None,
        }
    }
}

impl PartialOrd for VanishingOrder {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for VanishingOrder {
    fn cmp(&self, other: &Self) -> Ordering {
        use VanishingOrder::*;
        match (self, other) {
            (Finite(a), Finite(b)) => a.cmp(b),
            (Finite(_), Infinite) => Ordering::Less,
            (Infinite, Finite(_)) => Ordering::Greater,
            (Infinite, Infinite) => Ordering::Equal,
        }
    }
}

impl fmt::Display for VanishingOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VanishingOrder::Finite(k) => write!(f, "{k}"),
            VanishingOrder::Infinite => write!(f, "inf"),
        }
    }
}

/// Polynomial in `nvars` variables; the term map never stores zero
/// coefficients and is ordered lexicographically by exponent vector, so the
/// representation is unique.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MVPoly {
    nvars: usize,
    terms: BTreeMap<Exponent, GaussRat>,
}

pub fn total_degree(e: &[u32]) -> u32 {
    e.iter().sum()
}

impl MVPoly {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: GaussRat) -> Self {
        Self::monomial(nvars, vec![0; nvars], c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, GaussRat::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(nvars, e, GaussRat::one())
    }

    pub fn monomial(nvars: usize, exp: Exponent, c: GaussRat) -> Self {
        assert_eq!(exp.len(), nvars, "exponent length must match variable count");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Self { nvars, terms }
    }

    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponent, GaussRat)>,
    {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            p.add_term(e, &c);
        }
        p
    }

    /// Convenience constructor from integer coefficients.
    pub fn from_int_terms(nvars: usize, terms: &[(&[u32], i64)]) -> Self {
        Self::from_terms(
            nvars,
            terms.iter().map(|(e, c)| (e.to_vec(), GaussRat::from_int(*c))),
        )
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &GaussRat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: &[u32]) -> GaussRat {
        self.terms.get(exp).cloned().unwrap_or_else(GaussRat::zero)
    }

    pub fn constant_term(&self) -> GaussRat {
        self.coeff(&vec![0; self.nvars])
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| total_degree(e) == 0)
    }

    fn add_term(&mut self, exp: Exponent, c: &GaussRat) {
        debug_assert_eq!(exp.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exp) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&exp);
                }
            }
            None => {
                self.terms.insert(exp, c.clone());
            }
        }
    }

    pub fn scale(&self, c: &GaussRat) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Self {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.nvars);
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| total_degree(e)).max()
    }

    /// Minimal total degree among the terms.
    pub fn vanishing_order(&self) -> VanishingOrder {
        self.terms
            .keys()
            .map(|e| total_degree(e))
            .min()
            .map_or(VanishingOrder::Infinite, VanishingOrder::Finite)
    }

    pub fn homogeneous_part(&self, k: u32) -> Self {
        Self {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| total_degree(e) == k)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Drop every term of total degree greater than `k`.
    pub fn truncate(&self, k: u32) -> Self {
        Self {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| total_degree(e) <= k)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Coefficients of `z_1, …, z_n` (the linear part).
    pub fn linear_coeffs(&self) -> Vec<GaussRat> {
        (0..self.nvars)
            .map(|i| {
                let mut e = vec![0; self.nvars];
                e[i] = 1;
                self.coeff(&e)
            })
            .collect()
    }

    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut ne = e.clone();
                ne[i] -= 1;
                out.add_term(ne, &(c * &GaussRat::from_int(e[i] as i64)));
            }
        }
        out
    }

    pub fn eval(&self, point: &[GaussRat]) -> GaussRat {
        assert_eq!(point.len(), self.nvars);
        let mut acc = GaussRat::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    t = &t * &x.pow(k);
                }
            }
            acc += &t;
        }
        acc
    }

    /// Ring-homomorphic substitution `z_i ↦ subs[i]`.
    pub fn compose(&self, subs: &[MVPoly]) -> MVPoly {
        assert_eq!(subs.len(), self.nvars);
        let target = subs.first().map_or(0, |s| s.nvars);
        let mut powers: Vec<Vec<MVPoly>> = subs.iter().map(|s| vec![MVPoly::one(s.nvars)]).collect();
        let mut out = MVPoly::zero(target);
        for (e, c) in &self.terms {
            let mut t = MVPoly::constant(target, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                while powers[i].len() <= k as usize {
                    let next = powers[i].last().unwrap() * &subs[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][k as usize];
            }
            out = &out + &t;
        }
        out
    }

    /// `p(z + shift)`: recentres the polynomial at `shift`.
    pub fn translate(&self, shift: &[GaussRat]) -> MVPoly {
        if shift.iter().all(|s| s.is_zero()) {
            return self.clone();
        }
        let subs: Vec<MVPoly> = (0..self.nvars)
            .map(|i| &MVPoly::var(self.nvars, i) + &MVPoly::constant(self.nvars, shift[i].clone()))
            .collect();
        self.compose(&subs)
    }

    /// Substitute a constant for variable `i`, keeping the variable count.
    pub fn set_var(&self, i: usize, value: &GaussRat) -> MVPoly {
        let mut out = MVPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut ne = e.clone();
            let k = ne[i];
            ne[i] = 0;
            out.add_term(ne, &(c * &value.pow(k)));
        }
        out
    }

    /// Largest `k` with `z_i^k | p`; `None` for the zero polynomial.
    pub fn var_power_divisor(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[i]).min()
    }

    pub fn div_var_power(&self, i: usize, k: u32) -> Option<MVPoly> {
        if k == 0 {
            return Some(self.clone());
        }
        let mut out = MVPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] < k {
                return None;
            }
            let mut ne = e.clone();
            ne[i] -= k;
            out.terms.insert(ne, c.clone());
        }
        Some(out)
    }

    /// Multiply by the monomial `z^exp`.
    pub fn mul_monomial(&self, exp: &[u32]) -> MVPoly {
        MVPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(exp).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    /// Componentwise minimum of the exponents: the largest monomial dividing `p`.
    pub fn monomial_content(&self) -> Option<Exponent> {
        let mut it = self.terms.keys();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, e| acc.iter().zip(e).map(|(a, b)| *a.min(b)).collect()))
    }

    /// `p = z^β · q` with `q(0) ≠ 0`, i.e. `p` generates the same ideal as
    /// the monomial `z^β` in the local ring at the origin.
    pub fn local_monomial(&self) -> Option<Exponent> {
        let beta = self.monomial_content()?;
        self.terms.contains_key(&beta).then_some(beta)
    }

    pub fn variables_used(&self) -> Vec<usize> {
        (0..self.nvars)
            .filter(|&i| self.terms.keys().any(|e| e[i] > 0))
            .collect()
    }

    /// View a polynomial involving only variable `i` as univariate.
    pub fn to_univariate(&self, i: usize) -> Option<UniPoly> {
        let mut coeffs = Vec::new();
        for (e, c) in &self.terms {
            if e.iter().enumerate().any(|(j, &k)| j != i && k > 0) {
                return None;
            }
            let k = e[i] as usize;
            if coeffs.len() <= k {
                coeffs.resize(k + 1, GaussRat::zero());
            }
            coeffs[k] = c.clone();
        }
        Some(UniPoly::new(coeffs))
    }

    pub fn from_univariate(nvars: usize, i: usize, p: &UniPoly) -> MVPoly {
        let mut out = MVPoly::zero(nvars);
        for (k, c) in p.coeffs().iter().enumerate() {
            let mut e = vec![0; nvars];
            e[i] = k as u32;
            out.add_term(e, c);
        }
        out
    }

    /// Embed into a ring with more variables (new variables appended).
    pub fn extend_vars(&self, nvars: usize) -> MVPoly {
        assert!(nvars >= self.nvars);
        MVPoly {
            nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut ne = e.clone();
                    ne.resize(nvars, 0);
                    (ne, c.clone())
                })
                .collect(),
        }
    }

    /// Exact quotient when `divisor` divides `self`.
    ///
    /// Multivariate long division under the lexicographic order; returns
    /// `None` when the remainder is nonzero.
    pub fn exact_div(&self, divisor: &MVPoly) -> Option<MVPoly> {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let (lead_e, lead_c) = divisor.terms.iter().next_back()?;
        let mut rem = self.clone();
        let mut quot = MVPoly::zero(self.nvars);
        while let Some((e, c)) = rem.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone())) {
            if !e.iter().zip(lead_e).all(|(a, b)| a >= b) {
                return None;
            }
            let qe: Exponent = e.iter().zip(lead_e).map(|(a, b)| a - b).collect();
            let qc = &c / lead_c;
            let step = divisor.mul_monomial(&qe).scale(&qc);
            rem = &rem - &step;
            quot.add_term(qe, &qc);
        }
        Some(quot)
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut parts: Vec<String> = Vec::new();
        // Highest total degree first, then lexicographic, for readability.
        let mut ordered: Vec<_> = self.terms.iter().collect();
        ordered.sort_by(|(a, _), (b, _)| total_degree(b).cmp(&total_degree(a)).then(b.cmp(a)));
        for (e, c) in ordered {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| {
                    if k == 1 {
                        names[i].clone()
                    } else {
                        format!("{}^{}", names[i], k)
                    }
                })
                .collect();
            let zero = num_rational::BigRational::zero();
            let (negative, abs) = if (c.im.is_zero() && c.re < zero) || (c.re.is_zero() && c.im < zero) {
                (true, -c.clone())
            } else {
                (false, c.clone())
            };
            let body = if mono.is_empty() {
                abs.to_string()
            } else if abs.is_one() {
                mono.join("*")
            } else {
                format!("{}*{}", abs, mono.join("*"))
            };
            if parts.is_empty() {
                parts.push(if negative { format!("-{body}") } else { body });
            } else {
                parts.push(format!("{} {}", if negative { "-" } else { "+" }, body));
            }
        }
        parts.join(" ")
    }
}

impl fmt::Debug for MVPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.nvars).map(|i| format!("z{i}")).collect();
        write!(f, "{}", self.fmt_with(&names))
    }
}

impl Add<&MVPoly> for &MVPoly {
    type Output = MVPoly;
    fn add(self, rhs: &MVPoly) -> MVPoly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c);
        }
        out
    }
}

impl Sub<&MVPoly> for &MVPoly {
    type Output = MVPoly;
    fn sub(self, rhs: &MVPoly) -> MVPoly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), &-c);
        }
        out
    }
}

impl Mul<&MVPoly> for &MVPoly {
    type Output = MVPoly;
    fn mul(self, rhs: &MVPoly) -> MVPoly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = MVPoly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Exponent = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, &(ca * cb));
            }
        }
        out
    }
}

impl Neg for &MVPoly {
    type Output = MVPoly;
    fn neg(self) -> MVPoly {
        self.scale(&-GaussRat::one())
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<MVPoly> for MVPoly {
            type Output = MVPoly;
            fn $m(self, rhs: MVPoly) -> MVPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&MVPoly> for MVPoly {
            type Output = MVPoly;
            fn $m(self, rhs: &MVPoly) -> MVPoly {
                (&self).$m(rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl Neg for MVPoly {
    type Output = MVPoly;
    fn neg(self) -> MVPoly {
        -&self
    }
}
