//! Dimension of projective zero loci, regular sequences, point counting over
//! finite fields and an irreducibility advisory.

pub mod advisory;
pub mod count;
pub mod dimension;
pub mod gfq;
pub mod groebner;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linear::{field::to_prime_field, Field, PrimeField};
use crate::poly::Polynomial;

pub use advisory::{irreducibility_advisory, Advisory};
pub use count::{count_points, dimension_by_point_count, PointCountEstimate};
pub use dimension::{affine_dimension, is_regular_sequence, projective_dimension, DimensionMethod, DimensionResult};
pub use groebner::{groebner_basis, GroebnerBasis};

/// Homogeneous generators of an ideal in `n_vars` variables; the locus lives
/// in `ℙ^{n_vars − 1}`. Zero generators are kept: they still count towards
/// the length of a sequence.
#[derive(Clone, Debug, PartialEq)]
pub struct IdealPresentation<F: Field> {
    gens: Vec<Polynomial<F>>,
}

impl<F: Field> IdealPresentation<F> {
    pub fn new(gens: Vec<Polynomial<F>>) -> Result<Self> {
        let Some(first) = gens.first() else {
            return Err(Error::InvalidArgument("an ideal needs at least one generator".into()));
        };
        let n = first.n_vars();
        if n == 0 {
            return Err(Error::InvalidArgument("projective space needs at least one variable".into()));
        }
        for (k, g) in gens.iter().enumerate() {
            if g.n_vars() != n {
                return Err(Error::DimensionMismatch(format!(
                    "generator {k} has {} variables, expected {n}",
                    g.n_vars()
                )));
            }
            if !g.is_homogeneous() {
                return Err(Error::InvalidArgument(format!("generator {k} is not homogeneous")));
            }
        }
        Ok(IdealPresentation { gens })
    }

    pub fn gens(&self) -> &[Polynomial<F>] {
        &self.gens
    }
    pub fn n_vars(&self) -> usize {
        self.gens[0].n_vars()
    }
    pub fn ambient_proj_dim(&self) -> i64 {
        self.n_vars() as i64 - 1
    }
    pub fn field(&self) -> &F {
        self.gens[0].field()
    }

    /// Image modulo `p`; `None` when a coefficient has no image.
    pub fn reduce_mod(&self, target: &PrimeField) -> Option<IdealPresentation<PrimeField>> {
        let f = self.field();
        let gens = self
            .gens
            .iter()
            .map(|g| g.map_field(target, |c| to_prime_field(f, target, c)))
            .collect::<Option<Vec<_>>>()?;
        Some(IdealPresentation { gens })
    }
}

/// Limits for Gröbner computations and point enumeration. Exceeding any of
/// them yields [`Error::Budget`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Budget {
    /// S-polynomial reductions.
    pub max_reductions: u64,
    /// Cap on the degree of S-pairs.
    pub max_degree: u32,
    /// Projective points enumerated by a single count.
    pub max_points: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_reductions: 200_000,
            max_degree: 40,
            max_points: 2_000_000,
        }
    }
}
