//! Value distribution for entire curves: characteristic, counting and
//! proximity functions, the first main theorem against an ideal, the
//! tautological pairing of the canonical lift and the multiplicity
//! identity for leaves of a vector field.

pub mod corpus;
pub mod curve;
pub mod error;
pub mod exact;
pub mod expr;
pub mod functions;
pub mod quadrature;
pub mod scaled;
pub mod tangent;

pub use curve::{parse_curve, DeclaredZero, ParametrizedCurve, ZeroTarget, DEFAULT_WORKING_RADIUS};
pub use error::NevanlinnaError;
pub use expr::{parse_expr, Expr};
pub use functions::{
    characteristic_t, circle_average_log, counting_function, fmt_verify, jensen_verify, FmtReport, FormSpec,
    IdealData, JensenReport, NevanlinnaProfile, ProfileStatus, FMT_SLOPE_TOLERANCE,
};
pub use quadrature::{Estimate, QuadratureConfig};
pub use tangent::{
    log_derivative_check, multiplicity_bookkeeping, multiplicity_bookkeeping_series, tautological_pairing,
    Applicability, Bookkeeping, LogDerivativeReport, Meromorphic, TangentMetric, TautologicalReport,
};
