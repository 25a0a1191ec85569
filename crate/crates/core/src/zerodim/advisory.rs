//! Probabilistic irreducibility check by slicing to curves and counting points.
//!
//! A reducible verdict is only returned with an algebraic certificate; an
//! irreducible verdict is never certain.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::count::count_points;
use super::dimension::projective_dimension;
use super::{Budget, IdealPresentation};
use crate::error::Result;
use crate::linear::{Field, Matrix, PrimeField};
use crate::poly::{Monomial, Polynomial};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Advisory {
    LikelyIrreducible {
        proj_dim: i64,
        trials: usize,
        consistent: usize,
    },
    ReducibleWitness {
        witness: String,
    },
    Inconclusive {
        reason: String,
    },
}

impl Advisory {
    pub fn is_likely_irreducible(&self) -> bool {
        matches!(self, Advisory::LikelyIrreducible { .. })
    }
    pub fn is_reducible(&self) -> bool {
        matches!(self, Advisory::ReducibleWitness { .. })
    }

    fn inconclusive(reason: impl Into<String>) -> Self {
        Advisory::Inconclusive { reason: reason.into() }
    }
}

fn with_extra(ideal: &IdealPresentation<PrimeField>, extra: &[Polynomial<PrimeField>]) -> IdealPresentation<PrimeField> {
    let mut gens = ideal.gens().to_vec();
    gens.extend_from_slice(extra);
    IdealPresentation::new(gens).expect("homogeneous extra generators")
}

/// Looks for a generator `x_i·h` whose two factors cut out distinct top-dimensional pieces.
fn factor_witness(ideal: &IdealPresentation<PrimeField>, dim: i64, budget: &Budget) -> Result<Option<String>> {
    let field = ideal.field();
    let n = ideal.n_vars();
    for (k, g) in ideal.gens().iter().enumerate() {
        if g.is_zero() || g.total_degree() < Some(2) {
            continue;
        }
        for v in 0..n {
            if g.terms().iter().any(|(m, _)| m.exps()[v] == 0) {
                continue;
            }
            let x = Polynomial::var(field, n, v);
            let mut e = vec![0u32; n];
            e[v] = 1;
            let divisor = Monomial::from_exps(e);
            let h = Polynomial::from_terms(
                field,
                n,
                g.terms()
                    .iter()
                    .map(|(m, c)| (divisor.quotient_of(m).expect("divisible"), *c))
                    .collect(),
            );
            let d_x = projective_dimension(&with_extra(ideal, std::slice::from_ref(&x)), budget)?.proj_dim;
            let d_h = projective_dimension(&with_extra(ideal, std::slice::from_ref(&h)), budget)?.proj_dim;
            if d_x != dim || d_h != dim {
                continue;
            }
            let d_both = projective_dimension(&with_extra(ideal, &[x, h.clone()]), budget)?.proj_dim;
            if d_both < dim {
                return Ok(Some(format!(
                    "generator {k} factors as x{v}·({h}); both factors cut out components of dimension {dim}"
                )));
            }
        }
    }
    Ok(None)
}

/// Random injective linear map `F_p^{cols} → F_p^{rows}`.
fn random_embedding(field: &PrimeField, rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> Matrix<PrimeField> {
    loop {
        let entries: Vec<Vec<u64>> = (0..rows)
            .map(|_| (0..cols).map(|_| field.random(rng, 0)).collect())
            .collect();
        let m = Matrix::from_rows(field, entries).expect("rectangular");
        if m.rank() == cols {
            return m;
        }
    }
}

/// Upper bound on the arithmetic genus of a curve of degree `delta`.
fn genus_bound(delta: u64) -> u64 {
    delta.saturating_sub(1).saturating_mul(delta.saturating_sub(2)) / 2
}

/// Fields `GF(p^e)` over which one geometrically irreducible curve of degree
/// `≤ delta` must have between `q/2` and `3q/2` points.
fn reliable(q: u64, delta: u64) -> bool {
    let g = genus_bound(delta) as f64;
    let q = q as f64;
    2.0 * g * q.sqrt() + g + 1.0 <= q / 2.0
}

/// Slices `V(I)` to a curve by random linear subspaces and compares point
/// counts over `GF(p^e)`, `e = 1..=extensions`, with a single component.
///
/// A trial is consistent when `N/q ∈ [1/2, 3/2]` over every reliable field;
/// a strict majority of consistent trials gives `LikelyIrreducible`. A
/// generator `x_i·h` whose factors cut out distinct top-dimensional loci,
/// or two distinct points on a zero-dimensional locus, give a witness.
pub fn irreducibility_advisory(
    ideal: &IdealPresentation<PrimeField>,
    trials: usize,
    extensions: u32,
    seed: u64,
    budget: &Budget,
) -> Advisory {
    if trials == 0 {
        return Advisory::inconclusive("no trials requested");
    }
    match run(ideal, trials, extensions.max(1), seed, budget) {
        Ok(a) => a,
        Err(e) if e.is_budget() => Advisory::inconclusive(format!("budget exceeded: {e}")),
        Err(e) => Advisory::inconclusive(e.to_string()),
    }
}

fn run(
    ideal: &IdealPresentation<PrimeField>,
    trials: usize,
    extensions: u32,
    seed: u64,
    budget: &Budget,
) -> Result<Advisory> {
    let field = ideal.field();
    let p = field.modulus();
    let n = ideal.n_vars();
    let dim = projective_dimension(ideal, budget)?.proj_dim;
    if dim < 0 {
        return Ok(Advisory::inconclusive("the locus is empty"));
    }
    if let Some(w) = factor_witness(ideal, dim, budget)? {
        return Ok(Advisory::ReducibleWitness { witness: w });
    }

    if dim == 0 {
        let mut last = 0;
        for e in 1..=extensions {
            last = count_points(ideal, e, budget)?;
            if last >= 2 {
                return Ok(Advisory::ReducibleWitness {
                    witness: format!("{last} distinct points over GF({p}^{e})"),
                });
            }
        }
        return Ok(if last == 1 {
            Advisory::LikelyIrreducible {
                proj_dim: 0,
                trials,
                consistent: trials,
            }
        } else {
            Advisory::inconclusive("no rational points found")
        });
    }

    let delta: u64 = ideal
        .gens()
        .iter()
        .filter_map(|g| g.total_degree())
        .fold(1u64, |acc, d| acc.saturating_mul(d.max(1) as u64));
    // a curve sits in a linear space of projective dimension n − dim
    let cols = n - dim as usize + 1;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let zero = vec![field.zero(); n];
    let mut consistent = 0;
    let mut decided = 0;
    for _ in 0..trials {
        let a = random_embedding(field, n, cols, &mut rng);
        let gens = ideal
            .gens()
            .iter()
            .map(|g| g.compose_affine(&a, &zero))
            .collect::<Result<Vec<_>>>()?;
        let slice = IdealPresentation::new(gens)?;
        let mut verdict = None;
        for e in 1..=extensions {
            let q = p.pow(e);
            if !reliable(q, delta) {
                continue;
            }
            let points = match count_points(&slice, e, budget) {
                Ok(c) => c,
                Err(err) if err.is_budget() => break,
                Err(err) => return Err(err),
            };
            let ok = 2 * points >= q && 2 * points <= 3 * q;
            verdict = Some(verdict.unwrap_or(true) && ok);
        }
        if let Some(ok) = verdict {
            decided += 1;
            if ok {
                consistent += 1;
            }
        }
    }
    if decided == 0 {
        return Ok(Advisory::inconclusive(format!(
            "no field GF({p}^e), e ≤ {extensions}, is large enough for degree bound {delta} within the point budget"
        )));
    }
    Ok(if 2 * consistent > trials {
        Advisory::LikelyIrreducible {
            proj_dim: dim,
            trials,
            consistent,
        }
    } else {
        Advisory::inconclusive(format!("{consistent} of {trials} slices look like a single component"))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;

    fn ideal(p: u64, gens: &[&str], n: usize) -> IdealPresentation<PrimeField> {
        let f = PrimeField::new(p).unwrap();
        IdealPresentation::new(gens.iter().map(|g| parse_polynomial(&f, g, Some(n)).unwrap()).collect()).unwrap()
    }

    #[test]
    fn factoring_generator_is_a_witness() {
        let a = irreducibility_advisory(&ideal(7, &["x0*x1"], 4), 3, 2, 1, &Budget::default());
        assert!(a.is_reducible(), "{a:?}");
        // x0^2 factors, but both factors cut out the same plane
        let a = irreducibility_advisory(&ideal(7, &["x0^2"], 4), 3, 2, 1, &Budget::default());
        assert!(!a.is_reducible(), "{a:?}");
    }

    #[test]
    fn smooth_quadric_is_likely_irreducible() {
        let a = irreducibility_advisory(&ideal(7, &["x0^2 + x1^2 + x2^2 + x3^2"], 4), 5, 3, 7, &Budget::default());
        assert!(a.is_likely_irreducible(), "{a:?}");
    }

    #[test]
    fn union_of_two_planes_is_not_called_irreducible() {
        // (x0 - x1)(x0 + x1) has no variable factor
        let a = irreducibility_advisory(&ideal(7, &["x0^2 - x1^2"], 4), 5, 2, 3, &Budget::default());
        assert!(!a.is_likely_irreducible(), "{a:?}");
    }

    #[test]
    fn zero_trials_and_finite_sets() {
        assert_eq!(
            irreducibility_advisory(&ideal(7, &["x0"], 3), 0, 2, 0, &Budget::default()),
            Advisory::inconclusive("no trials requested")
        );
        let four_points = ideal(7, &["x0^2 - x1*x2", "x0*x1 - x2^2"], 3);
        assert!(irreducibility_advisory(&four_points, 2, 1, 0, &Budget::default()).is_reducible());
        let one_point = ideal(7, &["x0", "x1"], 3);
        assert!(irreducibility_advisory(&one_point, 2, 2, 0, &Budget::default()).is_likely_irreducible());
    }

    #[test]
    fn tight_budget_is_inconclusive() {
        let tight = Budget {
            max_points: 5,
            ..Budget::default()
        };
        let a = irreducibility_advisory(&ideal(7, &["x0^2 + x1^2 + x2^2 + x3^2"], 4), 3, 2, 0, &tight);
        assert!(matches!(a, Advisory::Inconclusive { .. }));
    }
}
