//! Point classification and the regularity conditions at nonsingular,
//! quadratic and bi-quadratic points.
//!
//! Rank clauses are decided exactly. Clauses quantified over linear
//! subspaces are refuted by sampling (or decided for one given subspace);
//! a passing sampled verdict never claims the universal statement.

mod checks;
mod classify;

pub use checks::{
    check_r1, check_r2, check_r22, check_regularity, check_singularity_type, r22_system, subspace_equations,
    subspace_from_equations, ClauseOutcome, ClauseStatus, Mode, RegularityOptions, RegularityReport, Verdict, Witness,
};
pub use classify::{check_good_singularity, classify_point, singularity_type, ClassSummary, PointClass, SingularityType};
