//! Complex numbers carried as `mantissa · e^exponent`, so that values such
//! as `exp(2t)` at `|t| = 512` stay finite.

use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Scaled {
    mant: Complex64,
    exp: f64,
}

const RENORM_HI: f64 = 1e150;
const RENORM_LO: f64 = 1e-150;

impl Scaled {
    pub const ZERO: Scaled = Scaled {
        mant: Complex64::new(0.0, 0.0),
        exp: 0.0,
    };
    pub const ONE: Scaled = Scaled {
        mant: Complex64::new(1.0, 0.0),
        exp: 0.0,
    };

    pub fn new(z: Complex64) -> Self {
        Scaled { mant: z, exp: 0.0 }.renorm()
    }

    fn renorm(self) -> Self {
        let a = self.mant.norm();
        if a == 0.0 || !a.is_finite() {
            return if a == 0.0 { Scaled::ZERO } else { self };
        }
        if (RENORM_LO..=RENORM_HI).contains(&a) {
            return self;
        }
        let l = a.ln();
        Scaled {
            mant: self.mant / a,
            exp: self.exp + l,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.mant == Complex64::new(0.0, 0.0)
    }

    pub fn is_finite(&self) -> bool {
        self.mant.re.is_finite() && self.mant.im.is_finite() && self.exp.is_finite()
    }

    /// `ln |z|`, `-inf` at zero.
    pub fn ln_abs(&self) -> f64 {
        self.mant.norm().ln() + self.exp
    }

    /// Plain complex value; overflows to infinity for huge magnitudes.
    pub fn to_complex(&self) -> Complex64 {
        if self.is_zero() {
            return self.mant;
        }
        self.mant * self.exp.exp()
    }

    /// `e^z`.
    pub fn exp(&self) -> Scaled {
        let z = self.to_complex();
        Scaled {
            mant: Complex64::from_polar(1.0, z.im),
            exp: z.re,
        }
    }

    pub fn powu(&self, k: u32) -> Scaled {
        let mut base = *self;
        let mut acc = Scaled::ONE;
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            k >>= 1;
        }
        acc
    }
}

impl From<Complex64> for Scaled {
    fn from(z: Complex64) -> Self {
        Scaled::new(z)
    }
}

impl Add for Scaled {
    type Output = Scaled;
    fn add(self, other: Scaled) -> Scaled {
        if self.is_zero() {
            return other;
        }
        if other.is_zero() {
            return self;
        }
        let (big, small) = if self.exp >= other.exp { (self, other) } else { (other, self) };
        let d = small.exp - big.exp;
        let mant = if d < -800.0 {
            big.mant
        } else {
            big.mant + small.mant * d.exp()
        };
        Scaled { mant, exp: big.exp }.renorm()
    }
}

impl Neg for Scaled {
    type Output = Scaled;
    fn neg(self) -> Scaled {
        Scaled {
            mant: -self.mant,
            exp: self.exp,
        }
    }
}

impl Sub for Scaled {
    type Output = Scaled;
    fn sub(self, other: Scaled) -> Scaled {
        self + (-other)
    }
}

impl Mul for Scaled {
    type Output = Scaled;
    fn mul(self, other: Scaled) -> Scaled {
        if self.is_zero() || other.is_zero() {
            return Scaled::ZERO;
        }
        Scaled {
            mant: self.mant * other.mant,
            exp: self.exp + other.exp,
        }
        .renorm()
    }
}

impl Div for Scaled {
    type Output = Scaled;
    fn div(self, other: Scaled) -> Scaled {
        if self.is_zero() {
            return Scaled::ZERO;
        }
        Scaled {
            mant: self.mant / other.mant,
            exp: self.exp - other.exp,
        }
        .renorm()
    }
}

/// `ln Σ |z_i|²`, `-inf` when all vanish.
pub fn ln_norm_sqr(zs: &[Scaled]) -> f64 {
    let logs: Vec<f64> = zs.iter().filter(|z| !z.is_zero()).map(|z| 2.0 * z.ln_abs()).collect();
    log_sum_exp(&logs)
}

pub fn log_sum_exp(logs: &[f64]) -> f64 {
    let m = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !m.is_finite() {
        return m;
    }
    m + logs.iter().map(|l| (l - m).exp()).sum::<f64>().ln()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn huge_exponentials_stay_finite() {
        let z = Scaled::new(Complex64::new(1024.0, 3.0)).exp();
        assert!((z.ln_abs() - 1024.0).abs() < 1e-9);
        let w = z * z;
        assert!((w.ln_abs() - 2048.0).abs() < 1e-9);
        let q = w / z;
        assert!((q.ln_abs() - 1024.0).abs() < 1e-9);
        let s = z + Scaled::ONE;
        assert!((s.ln_abs() - 1024.0).abs() < 1e-9);
    }

    #[test]
    fn arithmetic_matches_plain_complex() {
        let a = Complex64::new(1.5, -0.25);
        let b = Complex64::new(-0.5, 2.0);
        let (sa, sb) = (Scaled::new(a), Scaled::new(b));
        assert!(((sa + sb).to_complex() - (a + b)).norm() < 1e-14);
        assert!(((sa * sb).to_complex() - a * b).norm() < 1e-14);
        assert!(((sa - sb).to_complex() - (a - b)).norm() < 1e-14);
        assert!((sa.powu(5).to_complex() - a.powu(5)).norm() < 1e-12);
        assert!((ln_norm_sqr(&[sa, sb]) - (a.norm_sqr() + b.norm_sqr()).ln()).abs() < 1e-14);
    }
}
