//! Foliations by curves at a point: germs of vector fields, log divisors,
//! singularity classification, point blow-ups, resolution towers and formal
//! separatrices.

pub mod bivariate;
pub mod blowup;
pub mod classify;
pub mod corpus;
pub mod error;
pub mod germ;
pub mod resolution;
pub mod separatrix;
pub mod text;

pub use blowup::{
    blowup_charts, effectivity_count, exceptional_multiplicity, pullback_one_form, transform_vector_field,
    transform_with_divisor, Blowup, BlowupChart, EffectivityCount, EffectivityVerdict, ExceptionalLocus,
    ExceptionalPoint, LocusStatus, PulledBackForm, SaturatedTransform,
};
pub use classify::{
    algebraic_multiplicity, bounded_ais_probe, classify, classify_reduced, classify_simple, is_dicritical,
    isolation, surface_seidenberg_type, AisOutcome, Isolation, ReducedVerdict, SimpleStatus, SingularityReport,
    SurfaceType,
};
pub use error::CoreError;
pub use germ::{
    coefficient_ideal, divisor_invariance_check, is_singular_at_origin, translate_to_point, AxisOrigin,
    CoeffIdealPresentation, LogDivisor, VectorFieldGerm,
};
pub use resolution::{
    discrepancy_test, monomial_coefficient_ideal, monomial_log_resolution, resolve_simple, seidenberg_reduce,
    weakly_reduced_check, DiscrepancyEntry, LogResolution, LogResolutionStatus, ResolutionTower, TowerNode,
    TowerStatus, WeaklyReducedReport, WeaklyReducedVerdict, Witness, DEFAULT_MAX_DEPTH,
};
pub use separatrix::{
    coordinate_axis, corner_has_no_transverse_separatrix, eigendirections, formal_separatrix,
    separatrix_lift_check, CornerVerdict, FormalCurve, LiftVerdict, SeparatrixOutcome,
};
pub use text::{parse_divisor, parse_point, parse_vector_field};
