//! Monomial ideals and their Newton polyhedra.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::AlgebraError;
use crate::poly::{total_degree, Exponent};

/// Monomial ideal given by a minimal set of generator exponents.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    generators: Vec<Exponent>,
    ambient_dim: usize,
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

impl MonomialIdeal {
    /// Builds the ideal, discarding redundant generators. The zero ideal
    /// (no generators) is rejected.
    pub fn new(ambient_dim: usize, generators: Vec<Exponent>) -> Result<Self, AlgebraError> {
        if generators.is_empty() {
            return Err(AlgebraError::ZeroIdeal);
        }
        if let Some(g) = generators.iter().find(|g| g.len() != ambient_dim) {
            return Err(AlgebraError::DimensionMismatch {
                expected: ambient_dim,
                found: g.len(),
            });
        }
        let mut gens = generators;
        gens.sort();
        gens.dedup();
        let minimal: Vec<Exponent> = gens
            .iter()
            .filter(|g| !gens.iter().any(|h| h != *g && divides(h, g)))
            .cloned()
            .collect();
        Ok(Self {
            generators: minimal,
            ambient_dim,
        })
    }

    /// The maximal ideal `(z_1, …, z_n)`.
    pub fn maximal(n: usize) -> Self {
        let gens = (0..n)
            .map(|i| {
                let mut e = vec![0; n];
                e[i] = 1;
                e
            })
            .collect();
        Self::new(n, gens).expect("nonempty")
    }

    pub fn generators(&self) -> &[Exponent] {
        &self.generators
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn contains_monomial(&self, e: &[u32]) -> bool {
        self.generators.iter().any(|g| divides(g, e))
    }

    pub fn is_unit(&self) -> bool {
        self.generators.iter().any(|g| g.iter().all(|&k| k == 0))
    }

    /// Locally principal at the origin.
    pub fn is_principal(&self) -> bool {
        self.generators.len() == 1
    }

    /// Order of the ideal at the origin: minimal generator degree.
    pub fn order(&self) -> u32 {
        self.generators.iter().map(|g| total_degree(g)).min().unwrap_or(0)
    }

    /// Largest monomial dividing every generator.
    pub fn divisorial_part(&self) -> Exponent {
        let mut out = self.generators[0].clone();
        for g in &self.generators[1..] {
            for (o, k) in out.iter_mut().zip(g) {
                *o = (*o).min(*k);
            }
        }
        out
    }

    /// Divide every generator by the monomial `z^e`.
    pub fn divide_monomial(&self, e: &[u32]) -> Option<Self> {
        let gens: Option<Vec<Exponent>> = self
            .generators
            .iter()
            .map(|g| {
                g.iter()
                    .zip(e)
                    .map(|(a, b)| a.checked_sub(*b))
                    .collect::<Option<Vec<u32>>>()
            })
            .collect();
        Self::new(self.ambient_dim, gens?).ok()
    }

    /// True when the cosupport of the ideal (after removing its divisorial
    /// part) is the origin alone: a pure power of every variable lies in it.
    pub fn is_primary_to_origin(&self) -> bool {
        let rest = self.divide_monomial(&self.divisorial_part()).expect("divisible");
        if rest.is_unit() {
            return false;
        }
        (0..self.ambient_dim).all(|i| {
            rest.generators
                .iter()
                .any(|g| g.iter().enumerate().all(|(j, &k)| j == i || k == 0))
        })
    }

    /// Total transform under the coordinate chart `z_chart = u`,
    /// `z_i = u·w_i` of the blow-up of the origin. Variable positions are
    /// preserved: slot `chart` holds `u`.
    pub fn pullback_chart(&self, chart: usize) -> Self {
        let gens = self
            .generators
            .iter()
            .map(|g| {
                let mut e = g.clone();
                e[chart] = total_degree(g);
                e
            })
            .collect();
        Self::new(self.ambient_dim, gens).expect("nonempty")
    }

    /// `min { t : t·(1,…,1) ∈ Newt(a) }`, computed by an exact simplex over
    /// the generators.
    pub fn diagonal_newton_coordinate(&self) -> BigRational {
        newton_diagonal_min(&self.generators, self.ambient_dim)
    }

    /// Trivial multiplier ideal ⟺ `(1,…,1)` lies in the interior of the
    /// Newton polyhedron ⟺ `t·(1,…,1)` is in the polyhedron for some `t < 1`.
    pub fn multiplier_ideal_trivial(&self) -> bool {
        self.diagonal_newton_coordinate() < BigRational::one()
    }
}

impl fmt::Debug for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = if self.ambient_dim <= 4 {
            ["x", "y", "z", "w"][..self.ambient_dim].iter().map(|s| s.to_string()).collect()
        } else {
            (1..=self.ambient_dim).map(|i| format!("z{i}")).collect()
        };
        let gens: Vec<String> = self
            .generators
            .iter()
            .rev()
            .map(|g| {
                let parts: Vec<String> = g
                    .iter()
                    .enumerate()
                    .filter(|(_, &k)| k > 0)
                    .map(|(i, &k)| if k == 1 { names[i].clone() } else { format!("{}^{}", names[i], k) })
                    .collect();
                if parts.is_empty() { "1".to_string() } else { parts.join("*") }
            })
            .collect();
        write!(f, "({})", gens.join(", "))
    }
}

impl Serialize for MonomialIdeal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Solve `min t` subject to `Σ λ_g g ≤ t·1`, `Σ λ_g = 1`, `λ ≥ 0`.
fn newton_diagonal_min(gens: &[Exponent], n: usize) -> BigRational {
    let m = gens.len();
    // Variables: λ_0..λ_{m-1}, t, s_0..s_{n-1}. Rows: n inequality rows then
    // the convexity row.
    let nv = m + 1 + n;
    let t_col = m;
    let mut a = vec![vec![BigRational::zero(); nv]; n + 1];
    let mut b = vec![BigRational::zero(); n + 1];
    for (k, row) in a.iter_mut().take(n).enumerate() {
        for (g_idx, g) in gens.iter().enumerate() {
            row[g_idx] = BigRational::from_integer(g[k].into());
        }
        row[t_col] = -BigRational::one();
        row[m + 1 + k] = BigRational::one();
    }
    for g_idx in 0..m {
        a[n][g_idx] = BigRational::one();
    }
    b[n] = BigRational::one();
    let mut c = vec![BigRational::zero(); nv];
    c[t_col] = BigRational::one();

    // Feasible start: λ_0 = 1, t = max_k g_0k; the slack at an argmax row is
    // the one left out of the basis.
    let kstar = (0..n).max_by_key(|&k| gens[0][k]).unwrap_or(0);
    let mut basis = vec![0, t_col];
    basis.extend((0..n).filter(|&k| k != kstar).map(|k| m + 1 + k));
    simplex_min(a, b, c, basis)
}

/// Dense tableau simplex with Bland's rule for `min c·x`, `A x = b`, `x ≥ 0`,
/// started from a feasible basis.
fn simplex_min(
    a: Vec<Vec<BigRational>>,
    b: Vec<BigRational>,
    c: Vec<BigRational>,
    basis: Vec<usize>,
) -> BigRational {
    let rows = a.len();
    let cols = c.len();
    let mut t: Vec<Vec<BigRational>> = a
        .into_iter()
        .zip(b)
        .map(|(mut r, bi)| {
            r.push(bi);
            r
        })
        .collect();
    let mut basis = basis;
    // Canonicalise the tableau for the starting basis.
    for (r, &col) in basis.iter().enumerate() {
        let piv_row = (r..rows)
            .find(|&i| !t[i][col].is_zero())
            .expect("starting basis must be nonsingular");
        t.swap(r, piv_row);
        pivot(&mut t, r, col);
    }
    loop {
        // Reduced costs c_j − c_B B⁻¹ A_j.
        let reduced = |j: usize, t: &Vec<Vec<BigRational>>| -> BigRational {
            let mut v = c[j].clone();
            for (r, &bc) in basis.iter().enumerate() {
                v -= &c[bc] * &t[r][j];
            }
            v
        };
        let Some(enter) = (0..cols).find(|&j| !basis.contains(&j) && reduced(j, &t).is_negative())
        else {
            break;
        };
        let mut leave: Option<(usize, BigRational)> = None;
        for r in 0..rows {
            if t[r][enter].is_positive() {
                let ratio = &t[r][cols] / &t[r][enter];
                let better = match &leave {
                    None => true,
                    Some((lr, lv)) => ratio < *lv || (ratio == *lv && basis[r] < basis[*lr]),
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
        }
        let Some((lr, _)) = leave else {
            unreachable!("objective is bounded below by zero");
        };
        pivot(&mut t, lr, enter);
        basis[lr] = enter;
    }
    let mut value = BigRational::zero();
    for (r, &bc) in basis.iter().enumerate() {
        value += &c[bc] * &t[r][cols];
    }
    value
}

fn pivot(t: &mut [Vec<BigRational>], r: usize, col: usize) {
    let inv = BigRational::one() / &t[r][col];
    for v in t[r].iter_mut() {
        *v *= &inv;
    }
    let pivot_row = t[r].clone();
    for (i, row) in t.iter_mut().enumerate() {
        if i != r && !row[col].is_zero() {
            let f = row[col].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                *v -= &f * p;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ideal(gens: &[&[u32]]) -> MonomialIdeal {
        MonomialIdeal::new(gens[0].len(), gens.iter().map(|g| g.to_vec()).collect()).unwrap()
    }

    #[test]
    fn generators_are_minimalised() {
        let i = ideal(&[&[1, 0], &[2, 1], &[0, 3], &[1, 0]]);
        assert_eq!(i.generators(), &[vec![0, 3], vec![1, 0]]);
    }

    #[test]
    fn zero_ideal_is_rejected() {
        assert_eq!(MonomialIdeal::new(2, vec![]), Err(AlgebraError::ZeroIdeal));
    }

    #[test]
    fn howald_examples() {
        assert!(ideal(&[&[1, 0], &[0, 1]]).multiplier_ideal_trivial());
        assert!(!ideal(&[&[2, 0], &[1, 1], &[0, 2]]).multiplier_ideal_trivial());
        assert!(ideal(&[&[2, 0], &[0, 1]]).multiplier_ideal_trivial());
        // a principal divisorial ideal is never trivial
        assert!(!ideal(&[&[1, 0]]).multiplier_ideal_trivial());
        assert!(ideal(&[&[0, 0]]).multiplier_ideal_trivial());
    }

    #[test]
    fn diagonal_coordinate_values() {
        // (x², y): the segment u/2 + v = 1 meets the diagonal at t = 2/3.
        assert_eq!(
            ideal(&[&[2, 0], &[0, 1]]).diagonal_newton_coordinate(),
            BigRational::new(2.into(), 3.into())
        );
        // (x, y, z) in dim 3: t = 1/3.
        assert_eq!(
            MonomialIdeal::maximal(3).diagonal_newton_coordinate(),
            BigRational::new(1.into(), 3.into())
        );
    }

    #[test]
    fn chart_pullback_and_primary_check() {
        let i = ideal(&[&[2, 0], &[0, 1]]);
        assert!(i.is_primary_to_origin());
        // chart 1: (u², u w) = u (u, w)
        let p = i.pullback_chart(0);
        assert_eq!(p.generators(), &[vec![1, 1], vec![2, 0]]);
        assert_eq!(p.divisorial_part(), vec![1, 0]);
        assert!(!ideal(&[&[1, 0, 0], &[0, 1, 0]]).is_primary_to_origin());
    }
}
