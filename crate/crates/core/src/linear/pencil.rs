//! Minimal rank over linear combinations of quadratic forms.
//!
//! For two forms the answer is computed exactly from the Smith form of the
//! pencil `t·G₁ + G₂` over `K[t]`: at an affine point `t₀` the rank is the
//! number of invariant factors not vanishing at `t₀`. The point at infinity
//! is the form `q₁` alone.

use num_rational::BigRational;
use serde::Serialize;

use super::field::{next_prime, Field, PrimeField, Rationals};
use super::matrix::Matrix;
use super::quadratic::QuadraticForm;
use super::unipoly::{invariant_factors, UniPoly};
use crate::error::{Error, Result};

/// Minimum rank of `λ₁q₁ + λ₂q₂` over `(λ₁ : λ₂) ∈ ℙ¹`.
///
/// Over the rationals the pencil parameter ranges over the algebraic closure
/// (the ground field is modelled as `ℂ`); over `F_p` it ranges over the
/// `F_p`-rational points of `ℙ¹`, which is what exhaustive enumeration sees.
pub fn pencil_min_rank<F: Field>(q1: &QuadraticForm<F>, q2: &QuadraticForm<F>) -> Result<usize> {
    if q1.n_vars() != q2.n_vars() {
        return Err(Error::DimensionMismatch(format!(
            "pencil of forms in {} and {} variables",
            q1.n_vars(),
            q2.n_vars()
        )));
    }
    let field = q1.field().clone();
    if field.characteristic() == 2 {
        return Err(Error::Characteristic2);
    }
    let n = q1.n_vars();
    let g1 = q1.gram();
    let g2 = q2.gram();
    let rank_at_infinity = q1.rank();
    let pencil: Vec<Vec<UniPoly<F>>> = (0..n)
        .map(|r| {
            (0..n)
                .map(|c| UniPoly::linear(&field, g1.get(r, c).clone(), g2.get(r, c).clone()))
                .collect()
        })
        .collect();

    // rank at t0 counts the invariant factors not vanishing there; the first
    // one with a root in the ground field decides the minimum
    let factors = invariant_factors(&field, pencil);
    let generic = factors.len();
    let affine = factors
        .iter()
        .position(|d| d.degree() != Some(0) && d.has_root_in_ground_field())
        .unwrap_or(generic);
    Ok(affine.min(rank_at_infinity))
}

/// Brute-force minimum over all `F_p`-points of `ℙ¹`; independent of the
/// minor/gcd route above.
pub fn pencil_min_rank_enumerated(q1: &QuadraticForm<PrimeField>, q2: &QuadraticForm<PrimeField>) -> Result<usize> {
    set_min_rank(&[q1.clone(), q2.clone()], u64::MAX)
}

pub const MAX_SET_SIZE: usize = 4;

/// Default cap on the number of projective points enumerated by [`set_min_rank`].
pub const DEFAULT_ENUMERATION_BUDGET: u64 = 5_000_000;

fn check_set<F: Field>(forms: &[QuadraticForm<F>]) -> Result<usize> {
    if forms.is_empty() {
        return Err(Error::InvalidArgument("empty set of forms".into()));
    }
    if forms.len() > MAX_SET_SIZE {
        return Err(Error::InvalidArgument(format!(
            "sets of more than {MAX_SET_SIZE} forms are not supported (got {})",
            forms.len()
        )));
    }
    let n = forms[0].n_vars();
    if forms.iter().any(|q| q.n_vars() != n) {
        return Err(Error::DimensionMismatch("forms have different numbers of variables".into()));
    }
    Ok(n)
}

/// Rank of a set of forms over `F_p`: minimum of `rank(Σ λᵢqᵢ)` over all
/// points of `ℙ^{k-1}(F_p)`, by exhaustive enumeration.
pub fn set_min_rank(forms: &[QuadraticForm<PrimeField>], budget: u64) -> Result<usize> {
    let n = check_set(forms)?;
    let field = *forms[0].field();
    let p = field.modulus();
    let k = forms.len();
    let points = projective_point_count(p, k - 1);
    if points.is_none_or(|c| c > budget) {
        return Err(Error::Budget(format!(
            "enumerating P^{}(F_{p}) exceeds the budget of {budget} points",
            k - 1
        )));
    }
    let mut best = n;
    let mut lambda = vec![0u64; k];
    // normalize the first nonzero coordinate to 1
    for lead in 0..k {
        lambda.iter_mut().for_each(|x| *x = 0);
        lambda[lead] = 1;
        let free = k - lead - 1;
        let total = p.checked_pow(free as u32).expect("within budget");
        for idx in 0..total {
            let mut v = idx;
            for slot in lambda.iter_mut().skip(lead + 1) {
                *slot = v % p;
                v /= p;
            }
            let mut acc = Matrix::zeros(&field, n, n);
            for (q, l) in forms.iter().zip(&lambda) {
                if *l != 0 {
                    acc = acc.add(&q.gram().scale(l))?;
                }
            }
            best = best.min(acc.rank());
            if best == 0 {
                return Ok(0);
            }
        }
    }
    Ok(best)
}

fn projective_point_count(p: u64, dim: usize) -> Option<u64> {
    let mut total: u64 = 0;
    for i in 0..=dim {
        total = total.checked_add(p.checked_pow(i as u32)?)?;
    }
    Some(total)
}

/// Result of the set rank over the rationals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SetRank {
    pub value: usize,
    /// `false` when the value comes from reductions modulo primes: it can
    /// then only overestimate the true value on an unlucky prime.
    pub exact: bool,
    pub primes: Vec<u64>,
}

/// Set rank for rational forms. One or two forms are handled exactly; for
/// three or four forms the forms are reduced modulo three primes `>= 10007`
/// and the minimum of the enumerated ranks is reported.
pub fn set_min_rank_rational(forms: &[QuadraticForm<Rationals>], budget: u64) -> Result<SetRank> {
    check_set(forms)?;
    match forms.len() {
        1 => Ok(SetRank {
            value: forms[0].rank(),
            exact: true,
            primes: vec![],
        }),
        2 => Ok(SetRank {
            value: pencil_min_rank(&forms[0], &forms[1])?,
            exact: true,
            primes: vec![],
        }),
        _ => {
            let mut primes = Vec::new();
            let mut best: Option<usize> = None;
            let mut candidate = 10007;
            while primes.len() < 3 {
                let p = next_prime(candidate);
                candidate = p + 1;
                let field = PrimeField::new(p)?;
                let Some(reduced) = forms
                    .iter()
                    .map(|q| reduce_form(q, &field))
                    .collect::<Option<Vec<_>>>()
                else {
                    continue;
                };
                let r = set_min_rank(&reduced, budget)?;
                best = Some(best.map_or(r, |b: usize| b.min(r)));
                primes.push(p);
            }
            Ok(SetRank {
                value: best.expect("three primes tried"),
                exact: false,
                primes,
            })
        }
    }
}

/// Image of a rational form in `F_p`; `None` if a denominator is divisible by `p`.
pub fn reduce_form(q: &QuadraticForm<Rationals>, field: &PrimeField) -> Option<QuadraticForm<PrimeField>> {
    let gram = q.gram().map_field(field, |x: &BigRational| field.from_rational(x))?;
    QuadraticForm::new(gram).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn q(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    fn diag_q(d: &[i64]) -> QuadraticForm<Rationals> {
        QuadraticForm::diagonal(&Rationals, &d.iter().map(|&v| q(v)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn pencil_examples() {
        // x^2 and x^2: the combination (1, -1) vanishes
        assert_eq!(pencil_min_rank(&diag_q(&[1]), &diag_q(&[1])).unwrap(), 0);
        // x1^2 and x2^2
        assert_eq!(pencil_min_rank(&diag_q(&[1, 0]), &diag_q(&[0, 1])).unwrap(), 1);
        // x1^2 + x2^2 and x1*x2
        let x1x2 = QuadraticForm::from_upper(&Rationals, 2, |i, j| if i != j { q(1) } else { q(0) }).unwrap();
        assert_eq!(pencil_min_rank(&diag_q(&[1, 1]), &x1x2).unwrap(), 1);
    }

    #[test]
    fn pencil_over_prime_field_counts_rational_points_only() {
        // x^2 + y^2 and x^2 - y^2... use q1 = x^2 + y^2, q2 = x*y over F_7:
        // det(λ1 I + λ2 offdiag(1/2)) = λ1^2 - λ2^2/4 has rational roots.
        let f = PrimeField::new(7).unwrap();
        let q1 = QuadraticForm::diagonal(&f, &[1, 1]).unwrap();
        let q2 = QuadraticForm::from_upper(&f, 2, |i, j| u64::from(i != j)).unwrap();
        assert_eq!(pencil_min_rank(&q1, &q2).unwrap(), 1);
        // q1 = x^2 + y^2, q2 = I: det(λ1 (x^2+y^2)+...) -- use q2 = x^2 - 3 y^2 over F_7;
        // λ1 + λ2 = 0 and λ1 - 3λ2 = 0 are both rational, rank drops to 1.
        let q3 = QuadraticForm::diagonal(&f, &[1, 4]).unwrap();
        assert_eq!(pencil_min_rank(&q1, &q3).unwrap(), 1);
        // x^2 + y^2 and x*y + ... with det = λ^2 + 1 (no root mod 7): [[λ, 1], [-1?]] must be symmetric:
        // q1 = x^2 + y^2 (G1 = I), q2 with G2 = [[0, 1], [1, 0]]: det(λI + G2) = λ^2 - 1 (roots).
        // G2 = [[0, 1], [1, 1]]: det = λ^2 + λ - 1, discriminant 5, a non-square mod 7.
        let q4 = QuadraticForm::from_upper(&f, 2, |i, j| match (i, j) {
            (0, 1) => 2,
            (1, 1) => 1,
            _ => 0,
        })
        .unwrap();
        assert_eq!(pencil_min_rank(&q1, &q4).unwrap(), 2);
        assert_eq!(pencil_min_rank_enumerated(&q1, &q4).unwrap(), 2);
    }

    #[test]
    fn set_rank_examples() {
        let f = PrimeField::new(5).unwrap();
        let forms: Vec<_> = (0..3)
            .map(|i| {
                let mut d = vec![0u64; 3];
                d[i] = 1;
                QuadraticForm::diagonal(&f, &d).unwrap()
            })
            .collect();
        assert_eq!(set_min_rank(&forms, DEFAULT_ENUMERATION_BUDGET).unwrap(), 1);
        assert_eq!(set_min_rank(&forms[..1], DEFAULT_ENUMERATION_BUDGET).unwrap(), 1);
        let five = vec![forms[0].clone(); 5];
        assert!(set_min_rank(&five, DEFAULT_ENUMERATION_BUDGET).is_err());
        let other = QuadraticForm::diagonal(&f, &[1, 1]).unwrap();
        assert!(matches!(
            set_min_rank(&[forms[0].clone(), other], DEFAULT_ENUMERATION_BUDGET),
            Err(Error::DimensionMismatch(_))
        ));
        assert!(set_min_rank(&forms, 10).unwrap_err().is_budget());
    }

    #[test]
    fn rational_set_rank_with_three_forms_hits_budget() {
        // P^2(F_p) for p >= 10007 has about 10^8 points
        let forms = vec![diag_q(&[1, 0, 0]), diag_q(&[0, 1, 0]), diag_q(&[0, 0, 1])];
        let err = set_min_rank_rational(&forms, DEFAULT_ENUMERATION_BUDGET).unwrap_err();
        assert!(err.is_budget());
        let two = set_min_rank_rational(&forms[..2], DEFAULT_ENUMERATION_BUDGET).unwrap();
        assert_eq!(two, SetRank { value: 1, exact: true, primes: vec![] });
    }
}
