use serde::Serialize;

use crate::error::{Error, Result};
use crate::linear::{pencil_min_rank, Field, LinearSubspace, Matrix, QuadraticForm};
use crate::poly::PointContext;

/// Local type of a point of `{f₁ = f₂ = 0}`, read off the linear parts.
#[derive(Clone, Debug, PartialEq)]
pub enum PointClass<F: Field> {
    Nonsingular {
        xi1: Vec<F::Elem>,
        xi2: Vec<F::Elem>,
    },
    /// `f_{1,1} = α₁τ`, `f_{2,1} = α₂τ`.
    Quadratic {
        tau: Vec<F::Elem>,
        alpha1: F::Elem,
        alpha2: F::Elem,
        /// `(α₂f_{1,2} − α₁f_{2,2})|_{τ=0}` in coordinates of the hyperplane.
        pencil_form: QuadraticForm<F>,
        hyperplane: LinearSubspace<F>,
    },
    BiQuadratic {
        f12: QuadraticForm<F>,
        f22: QuadraticForm<F>,
    },
}

impl<F: Field> PointClass<F> {
    pub fn name(&self) -> &'static str {
        match self {
            PointClass::Nonsingular { .. } => "nonsingular",
            PointClass::Quadratic { .. } => "quadratic",
            PointClass::BiQuadratic { .. } => "bi-quadratic",
        }
    }

    pub fn summary(&self, field: &F) -> ClassSummary {
        let fmt = |v: &[F::Elem]| v.iter().map(|x| field.format(x)).collect::<Vec<_>>();
        match self {
            PointClass::Nonsingular { xi1, xi2 } => ClassSummary {
                class: self.name(),
                linear_parts: Some([fmt(xi1), fmt(xi2)]),
                tau: None,
                alpha: None,
                pencil_form_rank: None,
                form_ranks: None,
                set_rank: None,
            },
            PointClass::Quadratic {
                tau,
                alpha1,
                alpha2,
                pencil_form,
                ..
            } => ClassSummary {
                class: self.name(),
                linear_parts: None,
                tau: Some(fmt(tau)),
                alpha: Some([field.format(alpha1), field.format(alpha2)]),
                pencil_form_rank: Some(pencil_form.rank()),
                form_ranks: None,
                set_rank: None,
            },
            PointClass::BiQuadratic { f12, f22 } => ClassSummary {
                class: self.name(),
                linear_parts: None,
                tau: None,
                alpha: None,
                pencil_form_rank: None,
                form_ranks: Some([f12.rank(), f22.rank()]),
                set_rank: pencil_min_rank(f12, f22).ok(),
            },
        }
    }
}

/// Serializable description of a [`PointClass`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassSummary {
    pub class: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub linear_parts: Option<[Vec<String>; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tau: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<[String; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pencil_form_rank: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub form_ranks: Option<[usize; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub set_rank: Option<usize>,
}

pub fn classify_point<F: Field>(ctx: &PointContext<F>) -> Result<PointClass<F>> {
    let f = ctx.field();
    let l1 = ctx.linear_part(1);
    let l2 = ctx.linear_part(2);
    let rank = Matrix::from_rows(f, vec![l1.clone(), l2.clone()])?.rank();
    match rank {
        2 => Ok(PointClass::Nonsingular { xi1: l1, xi2: l2 }),
        1 => {
            let source = if l1.iter().any(|c| !f.is_zero(c)) { &l1 } else { &l2 };
            let pivot = source.iter().position(|c| !f.is_zero(c)).unwrap();
            let scale = f.inv(&source[pivot]).unwrap();
            let tau: Vec<F::Elem> = source.iter().map(|c| f.mul(c, &scale)).collect();
            let alpha1 = l1[pivot].clone();
            let alpha2 = l2[pivot].clone();
            let hyperplane = LinearSubspace::from_equations(&Matrix::from_rows(f, vec![tau.clone()])?);
            let q1 = ctx.quadratic_part(1)?;
            let q2 = ctx.quadratic_part(2)?;
            let pencil_form = q1.combine(&alpha2, &q2, &f.neg(&alpha1))?.restrict(&hyperplane)?;
            Ok(PointClass::Quadratic {
                tau,
                alpha1,
                alpha2,
                pencil_form,
                hyperplane,
            })
        }
        _ => Ok(PointClass::BiQuadratic {
            f12: ctx.quadratic_part(1)?,
            f22: ctx.quadratic_part(2)?,
        }),
    }
}

/// Result of the `(r₁, r₂)` singularity-type predicate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SingularityType {
    pub r1: usize,
    pub r2: usize,
    pub holds: bool,
    /// The rank relevant to the point class, if any.
    pub rank: Option<usize>,
    /// Lower bound `min(r₁ − 1, r₂ − 3)` for the codimension of the singular locus.
    pub codim_sing_bound: i64,
}

pub fn singularity_type<F: Field>(class: &PointClass<F>, r1: usize, r2: usize) -> Result<SingularityType> {
    if r2 < r1 + 2 {
        return Err(Error::InvalidArgument(format!("type ({r1}, {r2}) needs r2 >= r1 + 2")));
    }
    let (holds, rank) = match class {
        PointClass::Nonsingular { .. } => (true, None),
        PointClass::Quadratic { pencil_form, .. } => {
            let r = pencil_form.rank();
            (r >= r1, Some(r))
        }
        PointClass::BiQuadratic { f12, f22 } => {
            let r = pencil_min_rank(f12, f22)?;
            (r >= r2, Some(r))
        }
    };
    Ok(SingularityType {
        r1,
        r2,
        holds,
        rank,
        codim_sing_bound: (r1 as i64 - 1).min(r2 as i64 - 3),
    })
}

/// Quadratic points of rank at least 5, bi-quadratic points of set rank at least 7.
pub fn check_good_singularity<F: Field>(class: &PointClass<F>) -> Result<bool> {
    Ok(match class {
        PointClass::Nonsingular { .. } => true,
        PointClass::Quadratic { pencil_form, .. } => pencil_form.rank() >= 5,
        PointClass::BiQuadratic { f12, f22 } => pencil_min_rank(f12, f22)? >= 7,
    })
}
