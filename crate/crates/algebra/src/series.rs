//! Truncated power series in one variable.

use std::fmt;

use num_traits::{One, Zero};

use crate::gauss::GaussRat;
use crate::poly::MVPoly;

/// Coefficient ring for [`TruncatedSeries`].
pub trait Coeff: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn scale(&self, c: &GaussRat) -> Self;
    fn inv(&self) -> Option<Self>;
    /// `exp(self)` for a constant, when representable.
    fn exp(&self) -> Option<Self>;

    fn from_gauss(c: &GaussRat) -> Self {
        Self::one().scale(c)
    }
}

impl Coeff for GaussRat {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, c: &GaussRat) -> Self {
        self * c
    }
    fn inv(&self) -> Option<Self> {
        GaussRat::inv(self)
    }
    fn exp(&self) -> Option<Self> {
        Zero::is_zero(self).then(One::one)
    }
}

/// `Σ_{k≤N} c_k t^k + O(t^{N+1})`: coefficients are exact through degree
/// `truncation_order`.
#[derive(Clone, PartialEq)]
pub struct TruncatedSeries<C: Coeff = GaussRat> {
    coeffs: Vec<C>,
    truncation_order: usize,
}

impl<C: Coeff> TruncatedSeries<C> {
    pub fn new(mut coeffs: Vec<C>, truncation_order: usize) -> Self {
        coeffs.resize(truncation_order + 1, C::zero());
        Self {
            coeffs,
            truncation_order,
        }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn constant(c: C, order: usize) -> Self {
        Self::new(vec![c], order)
    }

    /// The parameter `t` itself.
    pub fn variable(order: usize) -> Self {
        Self::new(vec![C::zero(), C::one()], order)
    }

    pub fn truncation_order(&self) -> usize {
        self.truncation_order
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> C {
        self.coeffs.get(k).cloned().unwrap_or_else(C::zero)
    }

    pub fn set_coeff(&mut self, k: usize, c: C) {
        if k <= self.truncation_order {
            self.coeffs[k] = c;
        }
    }

    /// Index of the first nonzero coefficient; `None` if the series vanishes
    /// through the truncation order.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.truncation_order);
        Self::new(self.coeffs[..=order].to_vec(), order)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.truncation_order.min(other.truncation_order);
        Self::new((0..=n).map(|k| self.coeffs[k].add(&other.coeffs[k])).collect(), n)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.truncation_order.min(other.truncation_order);
        Self::new((0..=n).map(|k| self.coeffs[k].sub(&other.coeffs[k])).collect(), n)
    }

    pub fn scale(&self, c: &GaussRat) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.scale(c)).collect(), self.truncation_order)
    }

    pub fn mul_coeff(&self, c: &C) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.mul(c)).collect(), self.truncation_order)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.truncation_order.min(other.truncation_order);
        let mut out = vec![C::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Self::new(out, n)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::constant(C::one(), self.truncation_order);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// `d/dt`; the result is exact through one degree less.
    pub fn derivative(&self) -> Self {
        let n = self.truncation_order.saturating_sub(1);
        Self::new(
            (1..=self.truncation_order)
                .map(|k| self.coeffs[k].scale(&GaussRat::from_int(k as i64)))
                .collect(),
            n,
        )
    }

    /// `t · d/dt` (Euler operator); keeps the truncation order.
    pub fn euler_derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| c.scale(&GaussRat::from_int(k as i64)))
                .collect(),
            self.truncation_order,
        )
    }

    /// Divide by `t^k`; fails when a coefficient below degree `k` is nonzero.
    pub fn div_t_power(&self, k: usize) -> Option<Self> {
        if self.coeffs[..k.min(self.coeffs.len())].iter().any(|c| !c.is_zero()) {
            return None;
        }
        let n = self.truncation_order.checked_sub(k)?;
        Some(Self::new(self.coeffs[k..].to_vec(), n))
    }

    /// Multiplicative inverse when the constant term is invertible.
    pub fn inverse(&self) -> Option<Self> {
        let n = self.truncation_order;
        let c0_inv = self.coeffs[0].inv()?;
        let mut out = vec![C::zero(); n + 1];
        out[0] = c0_inv.clone();
        for k in 1..=n {
            let mut s = C::zero();
            for j in 1..=k {
                s = s.add(&self.coeffs[j].mul(&out[k - j]));
            }
            out[k] = C::zero().sub(&s.mul(&c0_inv));
        }
        Some(Self::new(out, n))
    }

    /// Quotient `self / other` allowing a common power of `t` to cancel.
    /// Fails when `other` vanishes to higher order than `self`.
    pub fn div(&self, other: &Self) -> Option<Self> {
        let v = other.valuation()?;
        let num = match self.valuation() {
            Some(u) if u < v => return None,
            Some(_) => self.div_t_power(v)?,
            None => Self::zero(self.truncation_order.checked_sub(v)?),
        };
        let den = other.div_t_power(v)?;
        Some(num.mul(&den.inverse()?))
    }

    /// `exp(self)` via the recursion `E' = s' E`.
    pub fn exp(&self) -> Option<Self> {
        let n = self.truncation_order;
        let e0 = self.coeffs[0].exp()?;
        let mut out = vec![C::zero(); n + 1];
        out[0] = e0;
        for k in 1..=n {
            let mut s = C::zero();
            for j in 1..=k {
                let term = self.coeffs[j].mul(&out[k - j]).scale(&GaussRat::from_int(j as i64));
                s = s.add(&term);
            }
            out[k] = s.scale(&GaussRat::from_ratio(1, k as i64));
        }
        Some(Self::new(out, n))
    }
}

impl TruncatedSeries<GaussRat> {
    /// Evaluate a polynomial at a vector of series (one per variable).
    pub fn eval_poly(p: &MVPoly, args: &[TruncatedSeries<GaussRat>]) -> TruncatedSeries<GaussRat> {
        eval_poly_generic(p, args)
    }
}

/// Evaluate a polynomial at series with coefficients in any [`Coeff`] ring.
pub fn eval_poly_generic<C: Coeff>(p: &MVPoly, args: &[TruncatedSeries<C>]) -> TruncatedSeries<C> {
    assert_eq!(p.nvars(), args.len());
    let n = args.iter().map(|s| s.truncation_order).min().unwrap_or(0);
    let mut powers: Vec<Vec<TruncatedSeries<C>>> = args
        .iter()
        .map(|s| vec![TruncatedSeries::constant(C::one(), n), s.truncate(n)])
        .collect();
    let mut acc = TruncatedSeries::zero(n);
    for (e, c) in p.terms() {
        let mut t = TruncatedSeries::constant(C::from_gauss(c), n);
        for (i, &k) in e.iter().enumerate() {
            if k == 0 {
                continue;
            }
            while powers[i].len() <= k as usize {
                let next = powers[i].last().unwrap().mul(&powers[i][1]);
                powers[i].push(next);
            }
            t = t.mul(&powers[i][k as usize]);
        }
        acc = acc.add(&t);
    }
    acc
}

impl<C: Coeff> fmt::Debug for TruncatedSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| format!("{c:?}*t^{k}"))
            .collect();
        if parts.is_empty() {
            write!(f, "O(t^{})", self.truncation_order + 1)
        } else {
            write!(f, "{} + O(t^{})", parts.join(" + "), self.truncation_order + 1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type S = TruncatedSeries<GaussRat>;

    fn q(a: i64, b: i64) -> GaussRat {
        GaussRat::from_ratio(a, b)
    }

    #[test]
    fn truncation_order_is_minimum_of_operands() {
        let a = S::variable(5);
        let b = S::variable(3);
        assert_eq!(a.mul(&b).truncation_order(), 3);
        assert_eq!(a.add(&b).truncation_order(), 3);
    }

    #[test]
    fn exp_matches_factorials() {
        let e = S::variable(6).exp().unwrap();
        let mut fact = 1i64;
        for k in 0..=6 {
            if k > 0 {
                fact *= k;
            }
            assert_eq!(e.coeff(k as usize), q(1, fact));
        }
    }

    #[test]
    fn inverse_and_division() {
        // 1/(1 - t) = Σ t^k
        let one_minus_t = S::new(vec![q(1, 1), q(-1, 1)], 5);
        let inv = one_minus_t.inverse().unwrap();
        assert!((0..=5).all(|k| inv.coeff(k) == q(1, 1)));
        // (t^2 + t^3) / t = t + t^2
        let num = S::new(vec![q(0, 1), q(0, 1), q(1, 1), q(1, 1)], 5);
        let quot = num.div(&S::variable(5)).unwrap();
        assert_eq!(quot.coeff(1), q(1, 1));
        assert_eq!(quot.coeff(2), q(1, 1));
        assert!(S::variable(5).div(&num).is_none());
    }
}
