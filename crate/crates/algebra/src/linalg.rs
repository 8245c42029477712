//! Small dense matrices over `Q(i)`.

use std::fmt;

use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::gauss::GaussRat;
use crate::univariate::UniPoly;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<GaussRat>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![GaussRat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, GaussRat::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<GaussRat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| GaussRat::from_int(v)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &GaussRat {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: GaussRat) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<GaussRat> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn to_rows(&self) -> Vec<Vec<GaussRat>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = a * other.get(k, j);
                    out.data[i * other.cols + j] += &t;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[GaussRat]) -> Vec<GaussRat> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                (0..self.cols).fold(GaussRat::zero(), |acc, j| &acc + &(self.get(i, j) * &v[j]))
            })
            .collect()
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, c: &GaussRat) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    pub fn trace(&self) -> GaussRat {
        (0..self.rows.min(self.cols)).fold(GaussRat::zero(), |acc, i| &acc + self.get(i, i))
    }

    /// Delete the listed rows and columns.
    pub fn minor(&self, drop: &[usize]) -> Matrix {
        let keep: Vec<usize> = (0..self.rows).filter(|i| !drop.contains(i)).collect();
        Matrix::from_rows(
            keep.iter()
                .map(|&i| keep.iter().map(|&j| self.get(i, j).clone()).collect())
                .collect(),
        )
    }

    /// Reduced row-echelon form and the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m.get(r, c).inv().unwrap();
            for j in 0..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i != r && !m.get(i, c).is_zero() {
                    let f = m.get(i, c).clone();
                    for j in 0..m.cols {
                        let v = m.get(i, j) - &(&f * m.get(r, j));
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn determinant(&self) -> GaussRat {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut m = self.clone();
        let mut det = GaussRat::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return GaussRat::zero();
            };
            if p != c {
                for j in 0..n {
                    m.data.swap(p * n + j, c * n + j);
                }
                det = -det;
            }
            let piv = m.get(c, c).clone();
            det = &det * &piv;
            let inv = piv.inv().unwrap();
            for i in c + 1..n {
                let f = m.get(i, c) * &inv;
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = m.get(i, j) - &(&f * m.get(c, j));
                    m.set(i, j, v);
                }
            }
        }
        det
    }

    /// Basis of the right null space.
    pub fn null_space(&self) -> Vec<Vec<GaussRat>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![GaussRat::zero(); self.cols];
                v[f] = GaussRat::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -r.get(row, f);
                }
                v
            })
            .collect()
    }

    /// Solve `A x = b`; free variables are set to zero. `None` when the
    /// system is inconsistent.
    pub fn solve(&self, b: &[GaussRat]) -> Option<Vec<GaussRat>> {
        assert_eq!(b.len(), self.rows);
        let aug = Matrix::from_rows(
            (0..self.rows)
                .map(|i| {
                    let mut row = self.row(i);
                    row.push(b[i].clone());
                    row
                })
                .collect(),
        );
        let (r, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![GaussRat::zero(); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(row, self.cols).clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let aug = Matrix::from_rows(
            (0..n)
                .map(|i| {
                    let mut row = self.row(i);
                    row.extend((0..n).map(|j| if i == j { GaussRat::one() } else { GaussRat::zero() }));
                    row
                })
                .collect(),
        );
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        Some(Matrix::from_rows(
            (0..n).map(|i| r.row(i)[n..].to_vec()).collect(),
        ))
    }

    /// `det(λI − M)` by the Faddeev–LeVerrier recursion (characteristic 0).
    pub fn char_poly(&self) -> UniPoly {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut coeffs = vec![GaussRat::zero(); n + 1];
        coeffs[n] = GaussRat::one();
        let mut m_k = Matrix::zeros(n, n);
        let mut c_prev = GaussRat::one();
        for k in 1..=n {
            // M_k = A M_{k-1} + c_{n-k+1} I
            let mut next = self.mul(&m_k);
            for i in 0..n {
                let v = next.get(i, i) + &c_prev;
                next.set(i, i, v);
            }
            m_k = next;
            let c = -(&self.mul(&m_k).trace() / &GaussRat::from_int(k as i64));
            coeffs[n - k] = c.clone();
            c_prev = c;
        }
        UniPoly::new(coeffs)
    }

    pub fn fmt_rows(&self) -> Vec<Vec<String>> {
        self.to_rows()
            .into_iter()
            .map(|r| r.into_iter().map(|v| v.to_string()).collect())
            .collect()
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.to_rows())
    }
}

impl Serialize for Matrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.fmt_rows().serialize(s)
    }
}

/// Eigenvalue multiset of a square matrix.
#[derive(Clone, Debug, PartialEq)]
pub enum Eigenvalues {
    /// The characteristic polynomial splits over `Q(i)`; values repeated by
    /// algebraic multiplicity, sorted.
    Exact(Vec<GaussRat>),
    /// Some eigenvalue lies outside `Q(i)`.
    Indeterminate {
        char_poly: UniPoly,
        /// Roots that were found exactly (with multiplicity).
        exact_part: Vec<GaussRat>,
        approximations: Vec<Complex64>,
    },
}

impl Eigenvalues {
    pub fn exact(&self) -> Option<&[GaussRat]> {
        match self {
            Eigenvalues::Exact(v) => Some(v),
            Eigenvalues::Indeterminate { .. } => None,
        }
    }

    pub fn approximations(&self) -> Vec<Complex64> {
        match self {
            Eigenvalues::Exact(v) => v.iter().map(GaussRat::to_complex).collect(),
            Eigenvalues::Indeterminate { approximations, .. } => approximations.clone(),
        }
    }
}

pub fn eigenvalues_exact(m: &Matrix) -> Eigenvalues {
    let cp = m.char_poly();
    let split = cp.split_roots();
    let mut exact: Vec<GaussRat> = split
        .roots
        .iter()
        .flat_map(|(r, k)| std::iter::repeat_n(r.clone(), *k as usize))
        .collect();
    exact.sort();
    if split.splits() {
        Eigenvalues::Exact(exact)
    } else {
        let mut approximations: Vec<Complex64> = exact.iter().map(GaussRat::to_complex).collect();
        approximations.extend(split.residual.approximate_roots());
        Eigenvalues::Indeterminate {
            char_poly: cp,
            exact_part: exact,
            approximations,
        }
    }
}

/// Outcome of the exact `μ/λ ∈ Q₊` test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RatioVerdict {
    Yes,
    No,
    Undefined,
}

/// Whether `mu / lambda` is a strictly positive rational number.
pub fn ratio_in_q_plus(lambda: &GaussRat, mu: &GaussRat) -> RatioVerdict {
    if lambda.is_zero() {
        return RatioVerdict::Undefined;
    }
    if (mu / lambda).is_positive_rational() {
        RatioVerdict::Yes
    } else {
        RatioVerdict::No
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: i64) -> GaussRat {
        GaussRat::from_int(n)
    }

    #[test]
    fn eigenvalue_examples() {
        let diag = Matrix::from_int_rows(&[&[1, 0], &[0, -1]]);
        assert_eq!(eigenvalues_exact(&diag), Eigenvalues::Exact(vec![g(-1), g(1)]));
        let nil = Matrix::from_int_rows(&[&[0, 1], &[0, 0]]);
        assert_eq!(eigenvalues_exact(&nil), Eigenvalues::Exact(vec![g(0), g(0)]));
        let rot = Matrix::from_int_rows(&[&[0, -1], &[1, 0]]);
        let mut expected = vec![GaussRat::i(), -GaussRat::i()];
        expected.sort();
        assert_eq!(eigenvalues_exact(&rot), Eigenvalues::Exact(expected));
    }

    #[test]
    fn irrational_spectrum_is_indeterminate() {
        let m = Matrix::from_int_rows(&[&[0, 2], &[1, 0]]);
        match eigenvalues_exact(&m) {
            Eigenvalues::Indeterminate { char_poly, approximations, .. } => {
                assert_eq!(char_poly, UniPoly::from_ints(&[-2, 0, 1]));
                assert!(approximations.iter().all(|z| (z.norm() - 2f64.sqrt()).abs() < 1e-9));
            }
            other => panic!("expected indeterminate, got {other:?}"),
        }
    }

    #[test]
    fn char_poly_reproduced_by_eigenvalues() {
        let m = Matrix::from_int_rows(&[&[2, 1, 0, 0], &[0, 2, 0, 0], &[0, 0, -1, 3], &[0, 0, 0, 5]]);
        let cp = m.char_poly();
        let ev = eigenvalues_exact(&m);
        let prod = ev
            .exact()
            .unwrap()
            .iter()
            .fold(UniPoly::constant(GaussRat::one()), |acc, l| acc.mul(&UniPoly::linear_root(l)));
        assert_eq!(prod, cp);
    }

    #[test]
    fn ratio_examples() {
        assert_eq!(ratio_in_q_plus(&g(1), &g(2)), RatioVerdict::Yes);
        assert_eq!(ratio_in_q_plus(&g(1), &g(-1)), RatioVerdict::No);
        let i = GaussRat::i();
        assert_eq!(ratio_in_q_plus(&i, &(&i * &g(2))), RatioVerdict::Yes);
        assert_eq!(ratio_in_q_plus(&g(0), &g(2)), RatioVerdict::Undefined);
        assert_eq!(ratio_in_q_plus(&g(1), &i), RatioVerdict::No);
    }

    #[test]
    fn solve_and_null_space() {
        let m = Matrix::from_int_rows(&[&[1, 2], &[2, 4]]);
        assert_eq!(m.rank(), 1);
        assert_eq!(m.null_space(), vec![vec![g(-2), g(1)]]);
        assert!(m.solve(&[g(1), g(3)]).is_none());
        assert_eq!(m.solve(&[g(1), g(2)]), Some(vec![g(1), g(0)]));
        let inv = Matrix::from_int_rows(&[&[2, 1], &[1, 1]]).inverse().unwrap();
        assert_eq!(inv, Matrix::from_int_rows(&[&[1, -1], &[-1, 2]]));
    }
}
