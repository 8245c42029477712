//! Common factors of two polynomials in two variables, via the primitive
//! pseudo-remainder sequence over `Q(i)[x][y]`.

use foliation_algebra::{GaussRat, MVPoly, UniPoly};
use num_traits::Zero;

/// Coefficients in `y`, each a polynomial in `x`.
#[derive(Clone, Debug, PartialEq)]
struct BiPoly(Vec<UniPoly>);

impl BiPoly {
    fn from_mv(p: &MVPoly) -> Self {
        let mut coeffs: Vec<Vec<GaussRat>> = Vec::new();
        for (e, c) in p.terms() {
            let (i, j) = (e[0] as usize, e[1] as usize);
            if coeffs.len() <= j {
                coeffs.resize(j + 1, Vec::new());
            }
            if coeffs[j].len() <= i {
                coeffs[j].resize(i + 1, GaussRat::zero());
            }
            coeffs[j][i] = c.clone();
        }
        let mut out = BiPoly(coeffs.into_iter().map(UniPoly::new).collect());
        out.trim();
        out
    }

    fn trim(&mut self) {
        while self.0.last().is_some_and(UniPoly::is_zero) {
            self.0.pop();
        }
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn lead(&self) -> &UniPoly {
        self.0.last().expect("nonzero")
    }

    fn content(&self) -> UniPoly {
        self.0.iter().fold(UniPoly::zero(), |acc, c| acc.gcd(c))
    }

    fn primitive_part(&self) -> Self {
        let c = self.content();
        if c.is_zero() {
            return self.clone();
        }
        BiPoly(self.0.iter().map(|a| a.div_rem(&c).0).collect())
    }

    /// `lc(b)^k · self mod b` by repeated leading-term cancellation.
    fn pseudo_rem(&self, b: &Self) -> Self {
        let mut a = self.clone();
        let db = b.degree();
        let lb = b.lead().clone();
        while !a.is_zero() && a.degree() >= db {
            let shift = a.degree() - db;
            let la = a.lead().clone();
            let mut next: Vec<UniPoly> = a.0.iter().map(|c| c.mul(&lb)).collect();
            for (k, c) in b.0.iter().enumerate() {
                next[k + shift] = next[k + shift].sub(&c.mul(&la));
            }
            a = BiPoly(next);
            a.trim();
            a = a.primitive_part();
        }
        a
    }

    fn eval_origin(&self) -> GaussRat {
        self.0
            .first()
            .map(|c| c.eval(&GaussRat::zero()))
            .unwrap_or_else(GaussRat::zero)
    }
}

/// Whether `a` and `b` share a nonconstant factor vanishing at the origin,
/// i.e. whether `V(a, b)` contains a curve through the origin.
pub fn common_curve_through_origin(a: &MVPoly, b: &MVPoly) -> bool {
    assert!(a.nvars() == 2 && b.nvars() == 2);
    let zero = [GaussRat::zero(), GaussRat::zero()];
    if a.is_zero() && b.is_zero() {
        return true;
    }
    if a.is_zero() {
        return b.eval(&zero).is_zero();
    }
    if b.is_zero() {
        return a.eval(&zero).is_zero();
    }
    let (pa, pb) = (BiPoly::from_mv(a), BiPoly::from_mv(b));
    let content = pa.content().gcd(&pb.content());
    if content.degree().unwrap_or(0) > 0 && content.eval(&GaussRat::zero()).is_zero() {
        return true;
    }
    let (mut x, mut y) = (pa.primitive_part(), pb.primitive_part());
    if x.degree() < y.degree() {
        std::mem::swap(&mut x, &mut y);
    }
    let g = loop {
        if y.is_zero() {
            break x;
        }
        if y.degree() == 0 {
            // primitive of y-degree 0 is a constant
            break y;
        }
        let r = x.pseudo_rem(&y);
        x = y;
        y = r;
    };
    let g = g.primitive_part();
    g.degree() >= 1 && g.eval_origin().is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[(&[u32], i64)]) -> MVPoly {
        MVPoly::from_int_terms(2, terms)
    }

    #[test]
    fn detects_shared_curves() {
        // y·x and y·(x+1) share y
        let a = p(&[(&[1, 1], 1)]);
        let b = p(&[(&[1, 1], 1), (&[0, 1], 1)]);
        assert!(common_curve_through_origin(&a, &b));
        // x and y are coprime
        assert!(!common_curve_through_origin(&p(&[(&[1, 0], 1)]), &p(&[(&[0, 1], 1)])));
        // (x - y^2)(x+1) and (x - y^2)(y+2)
        let f = p(&[(&[1, 0], 1), (&[0, 2], -1)]);
        let a = &f * &p(&[(&[1, 0], 1), (&[0, 0], 1)]);
        let b = &f * &p(&[(&[0, 1], 1), (&[0, 0], 2)]);
        assert!(common_curve_through_origin(&a, &b));
        // common factor (x + 1) avoids the origin
        let g = p(&[(&[1, 0], 1), (&[0, 0], 1)]);
        let a = &g * &p(&[(&[1, 0], 1)]);
        let b = &g * &p(&[(&[0, 1], 1)]);
        assert!(!common_curve_through_origin(&a, &b));
        // y·∂x: second component zero
        assert!(common_curve_through_origin(&p(&[(&[0, 1], 1)]), &MVPoly::zero(2)));
    }
}
