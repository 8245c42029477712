//! Exact algebra for the foliation lab: Gaussian rationals, sparse
//! multivariate polynomials, truncated series, small linear algebra and
//! monomial ideals with their Newton polyhedra.

pub mod error;
pub mod gauss;
pub mod linalg;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod series;
pub mod univariate;

pub use error::AlgebraError;
pub use gauss::GaussRat;
pub use linalg::{eigenvalues_exact, ratio_in_q_plus, Eigenvalues, Matrix, RatioVerdict};
pub use monomial::MonomialIdeal;
pub use parse::{parse_polynomial, scan_variables, ParseError};
pub use poly::{Exponent, MVPoly, VanishingOrder};
pub use series::{Coeff, TruncatedSeries};
pub use univariate::{RootSplit, UniPoly};

/// Order of vanishing at the origin (minimal total degree of a term).
pub fn vanishing_order(p: &MVPoly) -> VanishingOrder {
    p.vanishing_order()
}

/// Newton-polyhedron criterion for triviality of the multiplier ideal of a
/// monomial ideal.
pub fn multiplier_ideal_trivial_monomial(a: &MonomialIdeal) -> bool {
    a.multiplier_ideal_trivial()
}
