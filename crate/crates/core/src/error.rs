use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoreError {
    #[error("germ has {components} components but {variables} variables")]
    ComponentCount { components: usize, variables: usize },
    #[error("the origin is not a singular point (component {component} has a nonzero constant term)")]
    NonSingularPoint { component: usize },
    #[error("operation requires dimension {expected}, germ has dimension {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("divisor axis {axis} is not invariant by the vector field")]
    DivisorNotInvariant { axis: usize },
    #[error("no divisor component passes through the point")]
    NoDivisorThroughPoint,
    #[error("axis index {0} out of range")]
    AxisOutOfRange(usize),
    #[error("blow-up needs ambient dimension at least 2, got {0}")]
    DimensionTooSmall(usize),
    #[error("the singular locus is not isolated at the origin")]
    NonIsolatedSingularLocus,
    #[error("polynomial is identically zero")]
    ZeroPolynomial,
    #[error("eigenvalues of the linear part are not Gaussian rationals")]
    IndeterminateEigenvalues,
    #[error("direction {0} has eigenvalue zero")]
    ZeroEigenvalueDirection(usize),
    #[error("direction index {index} out of range ({count} eigenvalues)")]
    DirectionOutOfRange { index: usize, count: usize },
    #[error("point is not a simple corner")]
    NotACorner,
    #[error("point is not a simple point")]
    NotASimplePoint,
    #[error("curve lies in the divisor")]
    CurveInDivisor,
    #[error("internal self-test failed: {0}")]
    Internal(String),
}
