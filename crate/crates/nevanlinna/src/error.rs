use foliation_algebra::ParseError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NevanlinnaError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("declared zero {at} lies within {distance:e} of the circle |t| = {radius}")]
    ZeroOnCircle { radius: f64, at: String, distance: f64 },
    #[error("quadrature did not reach tolerance within {evaluations} evaluations")]
    DivergedWithinBudget { evaluations: u64 },
    #[error("declared zero of {target} at {at}: declared order {declared}, found {found}")]
    ZeroMismatch {
        target: String,
        at: String,
        declared: u32,
        found: String,
    },
    #[error("declared zero at {at} lies outside the working radius {radius}")]
    ZeroOutsideRadius { at: String, radius: f64 },
    #[error("zero declarations are incomplete: orders sum to {declared}, degree is {degree}")]
    IncompleteZeros { declared: u32, degree: usize },
    #[error("radius grid must be increasing with radii at least 1: {0}")]
    InvalidGrid(String),
    #[error("curve has {curve} components, expected {expected}")]
    DimensionMismatch { curve: usize, expected: usize },
    #[error("curve is not a leaf: f' ∧ v(f) has a nonzero coefficient at order {order}")]
    NotALeaf { order: usize },
    #[error("{0}")]
    Degenerate(String),
    #[error("exact expansion unavailable: {0}")]
    Unsupported(String),
}
