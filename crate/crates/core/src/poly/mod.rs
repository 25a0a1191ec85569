//! Sparse multivariate polynomials, localization of a pair of forms at a
//! point and the hypertangent sequence.

pub mod monomial;
pub mod parse;
pub mod point;
pub mod polynomial;
pub mod sequence;

pub use monomial::Monomial;
pub use parse::{parse_poly_file, parse_polynomial, PolyFile};
pub use point::{hypertangent_segment, localize_at_point, quadratic_form_of, PointContext, PolyPair};
pub use polynomial::Polynomial;
pub use sequence::{build_sequence, sequence_order, HypertangentSequence};
