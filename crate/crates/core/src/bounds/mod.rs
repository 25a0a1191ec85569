//! Closed-form codimension estimates and the arithmetic chains of the local
//! multiplicity arguments. Everything is exact: big integers and rationals.
//!
//! Formulas stated for `M ≥ 27` are still evaluated below that range, with
//! `out_of_regime` set.

mod codim;
mod local;
mod ratio;

pub use codim::{
    binomial, codim_table, condition_codims, induction_codims, projection_minimum, rank_stratum_codim,
    theorem02_bound, theorem21_bound, CodimTable, ConditionCodims, InductionCodims, IntegerBound,
    ProjectionMinimum, ProjectionTerm, REGIME_MIN_M,
};
pub use local::{local_bounds, LocalBounds, SecondStage};
pub use ratio::{hypertangent_ratio_check, mult_deg_threshold, PointCase, RatioCheck, RatioCase};
