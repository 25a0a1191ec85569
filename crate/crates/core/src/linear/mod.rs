//! Exact linear algebra over `ℚ` and `F_p`: matrices, subspaces, quadratic
//! forms and ranks of pencils and sets of forms.

pub mod field;
pub mod matrix;
pub mod pencil;
pub mod quadratic;
pub mod subspace;
pub mod unipoly;

pub use field::{is_prime, next_prime, Field, PrimeField, Rationals};
pub use matrix::{matrix_rank, Matrix};
pub use pencil::{pencil_min_rank, set_min_rank, set_min_rank_rational, SetRank};
pub use quadratic::{restrict_form, QuadraticForm};
pub use subspace::LinearSubspace;
pub use unipoly::UniPoly;
