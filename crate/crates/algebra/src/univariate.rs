//! Dense univariate polynomials over `Q(i)` and exact root extraction.

use std::fmt;

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::gauss::GaussRat;

/// Coefficients stored low degree first, trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UniPoly {
    coeffs: Vec<GaussRat>,
}

/// Roots found exactly in `Q(i)` plus the factor whose roots lie outside it.
#[derive(Clone, Debug, PartialEq)]
pub struct RootSplit {
    /// Distinct roots with multiplicity.
    pub roots: Vec<(GaussRat, u32)>,
    /// Monic cofactor without roots in `Q(i)` (constant 1 when the
    /// polynomial splits completely).
    pub residual: UniPoly,
}

impl RootSplit {
    pub fn splits(&self) -> bool {
        self.residual.degree() == Some(0)
    }
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<GaussRat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: GaussRat) -> Self {
        Self::new(vec![c])
    }

    /// `x - r`.
    pub fn linear_root(r: &GaussRat) -> Self {
        Self::new(vec![-r, GaussRat::one()])
    }

    pub fn from_ints(cs: &[i64]) -> Self {
        Self::new(cs.iter().map(|&c| GaussRat::from_int(c)).collect())
    }

    pub fn coeffs(&self) -> &[GaussRat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> GaussRat {
        self.coeffs.last().cloned().unwrap_or_else(GaussRat::zero)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.lead();
        Self::new(self.coeffs.iter().map(|c| c / &l).collect())
    }

    pub fn eval(&self, x: &GaussRat) -> GaussRat {
        let mut acc = GaussRat::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn eval_complex(&self, x: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c.to_complex();
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * &GaussRat::from_int(k as i64))
                .collect(),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let z = GaussRat::zero();
        Self::new(
            (0..n)
                .map(|k| self.coeffs.get(k).unwrap_or(&z) + other.coeffs.get(k).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-GaussRat::one()))
    }

    pub fn scale(&self, c: &GaussRat) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![GaussRat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::constant(GaussRat::one()), |acc, _| acc.mul(self))
    }

    /// Euclidean division; panics if `d` is zero.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.degree().unwrap();
        let lead_inv = d.lead().inv().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![GaussRat::zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let q = &rem[k] * &lead_inv;
            if q.is_zero() {
                continue;
            }
            for (j, c) in d.coeffs.iter().enumerate() {
                let t = c * &q;
                rem[k - dd + j] -= &t;
            }
            quot[k - dd] = q;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Yun's square-free decomposition: `p = lead · Π f_k^k` with each `f_k`
    /// monic, square-free and pairwise coprime. Returns `(k, f_k)` for
    /// nonconstant factors.
    pub fn square_free_decomposition(&self) -> Vec<(u32, UniPoly)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let fp = f.derivative();
        let a0 = f.gcd(&fp);
        let mut b = f.div_rem(&a0).0;
        let mut c = fp.div_rem(&a0).0;
        let mut d = c.sub(&b.derivative());
        let mut k = 1;
        loop {
            let a = b.gcd(&d);
            if a.degree().unwrap_or(0) > 0 {
                out.push((k, a.clone()));
            }
            b = b.div_rem(&a).0;
            if b.degree().unwrap_or(0) == 0 {
                break;
            }
            c = d.div_rem(&a).0;
            d = c.sub(&b.derivative());
            k += 1;
        }
        out
    }

    /// Complex root approximations by the Aberth–Ehrlich iteration.
    pub fn approximate_roots(&self) -> Vec<Complex64> {
        let Some(n) = self.degree() else { return Vec::new() };
        if n == 0 {
            return Vec::new();
        }
        let monic: Vec<Complex64> = self.monic().coeffs.iter().map(|c| c.to_complex()).collect();
        let eval = |z: Complex64| -> (Complex64, Complex64) {
            let mut p = Complex64::new(1.0, 0.0);
            let mut dp = Complex64::new(0.0, 0.0);
            for c in monic.iter().rev().skip(1) {
                dp = dp * z + p;
                p = p * z + c;
            }
            (p, dp)
        };
        let bound = 1.0 + monic[..n].iter().map(|c| c.norm()).fold(0.0, f64::max);
        let radius = bound.min(1e6);
        let mut z: Vec<Complex64> = (0..n)
            .map(|k| Complex64::from_polar(radius * 0.5 + 0.1, 0.4 + 2.0 * std::f64::consts::PI * k as f64 / n as f64))
            .collect();
        for _ in 0..500 {
            let mut moved = 0.0f64;
            for i in 0..n {
                let (p, dp) = eval(z[i]);
                if p.norm() == 0.0 {
                    continue;
                }
                let ratio = p / dp;
                let mut s = Complex64::new(0.0, 0.0);
                for j in 0..n {
                    if j != i {
                        let diff = z[i] - z[j];
                        if diff.norm() > 0.0 {
                            s += 1.0 / diff;
                        }
                    }
                }
                let step = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
                if step.is_finite() {
                    z[i] -= step;
                    moved = moved.max(step.norm() / (1.0 + z[i].norm()));
                }
            }
            if moved < 1e-15 {
                break;
            }
        }
        z
    }

    /// Exact roots in `Q(i)`: square-free decomposition, numerical root
    /// candidates rounded to small-denominator Gaussian rationals, exact
    /// verification and deflation, and the quadratic formula for leftover
    /// quadratic factors.
    pub fn split_roots(&self) -> RootSplit {
        let mut roots: Vec<(GaussRat, u32)> = Vec::new();
        let mut residual = UniPoly::constant(GaussRat::one());
        for (mult, factor) in self.square_free_decomposition() {
            let (found, rest) = factor.extract_simple_roots();
            roots.extend(found.into_iter().map(|r| (r, mult)));
            residual = residual.mul(&rest.pow(mult));
        }
        roots.sort_by(|a, b| a.0.cmp(&b.0));
        RootSplit { roots, residual }
    }

    fn extract_simple_roots(&self) -> (Vec<GaussRat>, UniPoly) {
        let mut rest = self.monic();
        let mut found = Vec::new();
        loop {
            match rest.degree() {
                Some(1) => {
                    found.push(-&rest.coeffs[0]);
                    return (found, UniPoly::constant(GaussRat::one()));
                }
                Some(2) => {
                    // x² + b x + c
                    let b = &rest.coeffs[1];
                    let c = &rest.coeffs[0];
                    let disc = &(b * b) - &(&GaussRat::from_int(4) * c);
                    if let Some(s) = disc.sqrt() {
                        let half = GaussRat::from_ratio(1, 2);
                        found.push(&(&-b + &s) * &half);
                        found.push(&(&-b - &s) * &half);
                        return (found, UniPoly::constant(GaussRat::one()));
                    }
                    return (found, rest);
                }
                Some(0) | None => return (found, rest),
                Some(_) => {}
            }
            let mut progress = false;
            'candidates: for z in rest.approximate_roots() {
                for max_den in [16, 1_000, 1_000_000] {
                    if let Some(r) = GaussRat::approximate(z, max_den) {
                        if rest.eval(&r).is_zero() {
                            rest = rest.div_rem(&UniPoly::linear_root(&r)).0;
                            found.push(r);
                            progress = true;
                            break 'candidates;
                        }
                    }
                }
            }
            if !progress {
                return (found, rest);
            }
        }
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => format!("{c}"),
                1 => format!("{c}*x"),
                _ => format!("{c}*x^{k}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_and_division() {
        // (x-1)(x+2) and (x-1)(x-3)
        let a = UniPoly::from_ints(&[-2, 1, 1]);
        let b = UniPoly::from_ints(&[3, -4, 1]);
        assert_eq!(a.gcd(&b), UniPoly::from_ints(&[-1, 1]));
        let (q, r) = a.div_rem(&UniPoly::from_ints(&[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(q, UniPoly::from_ints(&[2, 1]));
    }

    #[test]
    fn square_free_decomposition_of_repeated_roots() {
        // (x-1)^2 (x+1)^3
        let p = UniPoly::from_ints(&[-1, 1])
            .pow(2)
            .mul(&UniPoly::from_ints(&[1, 1]).pow(3));
        let sf = p.square_free_decomposition();
        assert_eq!(sf, vec![(2, UniPoly::from_ints(&[-1, 1])), (3, UniPoly::from_ints(&[1, 1]))]);
    }

    #[test]
    fn splits_over_gaussian_rationals() {
        // x² + 1 → ±i
        let split = UniPoly::from_ints(&[1, 0, 1]).split_roots();
        assert!(split.splits());
        assert_eq!(split.roots.len(), 2);
        // (3x - 2)(x - i)^2
        let p = UniPoly::from_ints(&[-2, 3]).mul(&UniPoly::linear_root(&GaussRat::i()).pow(2));
        let split = p.split_roots();
        assert!(split.splits());
        assert!(split.roots.contains(&(GaussRat::from_ratio(2, 3), 1)));
        assert!(split.roots.contains(&(GaussRat::i(), 2)));
    }

    #[test]
    fn irrational_roots_stay_in_residual() {
        // (x² - 2)(x - 5)
        let p = UniPoly::from_ints(&[-2, 0, 1]).mul(&UniPoly::from_ints(&[-5, 1]));
        let split = p.split_roots();
        assert_eq!(split.roots, vec![(GaussRat::from_int(5), 1)]);
        assert_eq!(split.residual, UniPoly::from_ints(&[-2, 0, 1]));
        // cubic without rational roots
        let split = UniPoly::from_ints(&[-2, 0, 0, 1]).split_roots();
        assert!(split.roots.is_empty());
        assert_eq!(split.residual.degree(), Some(3));
    }
}
