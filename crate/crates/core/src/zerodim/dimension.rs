use serde::Serialize;

use super::groebner::groebner_basis;
use super::{Budget, IdealPresentation};
use crate::error::Result;
use crate::linear::{next_prime, Field, PrimeField};
use crate::poly::Monomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DimensionMethod {
    Groebner,
    PointCount,
}

/// Leading-term data that determines the dimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimensionCertificate {
    /// Exponent vectors of the leading monomials of the reduced basis.
    pub leading_monomials: Vec<Vec<u32>>,
    /// A largest set of variables independent modulo the leading-term ideal.
    pub independent_set: Vec<usize>,
    pub reductions: u64,
}

/// Dimension of the same ideal reduced modulo a prime.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModularCheck {
    pub prime: u64,
    pub proj_dim: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimensionResult {
    /// `-1` for the empty locus.
    pub proj_dim: i64,
    pub method: DimensionMethod,
    pub certificate: Option<DimensionCertificate>,
    /// Filled for rational inputs whose computation used more than half of
    /// the reduction budget.
    pub modular_checks: Vec<ModularCheck>,
}

/// Size of a smallest set of variables meeting every support; `None` if a
/// support is empty (the unit ideal).
pub fn min_hitting_set(supports: &[Vec<usize>], n_vars: usize) -> Option<Vec<usize>> {
    if supports.iter().any(Vec::is_empty) {
        return None;
    }
    // keep only inclusion-minimal supports
    let mut edges: Vec<u64> = supports
        .iter()
        .map(|s| s.iter().fold(0u64, |acc, &v| acc | (1 << v)))
        .collect();
    edges.sort_by_key(|e| e.count_ones());
    edges.dedup();
    let minimal: Vec<u64> = edges
        .iter()
        .copied()
        .filter(|&e| !edges.iter().any(|&o| o != e && o & e == o))
        .collect();
    if minimal.is_empty() {
        return Some(Vec::new());
    }
    let mut best = if n_vars == 64 { u64::MAX } else { (1u64 << n_vars) - 1 };
    search(&minimal, 0, &mut best);
    Some((0..n_vars).filter(|&v| best & (1 << v) != 0).collect())
}

fn search(edges: &[u64], chosen: u64, best: &mut u64) {
    if chosen.count_ones() >= best.count_ones() {
        return;
    }
    // the unhit edge with the fewest variables is branched on
    let Some(edge) = edges
        .iter()
        .filter(|&&e| e & chosen == 0)
        .min_by_key(|e| e.count_ones())
    else {
        *best = chosen;
        return;
    };
    if chosen.count_ones() + 1 >= best.count_ones() {
        return;
    }
    let mut rest = *edge;
    while rest != 0 {
        let v = rest.trailing_zeros();
        rest &= rest - 1;
        search(edges, chosen | (1 << v), best);
    }
}

/// Projective dimension of the locus from the leading monomials of a
/// Gröbner basis: `(n − τ) − 1` with `τ` the smallest hitting set of the
/// leading-monomial supports.
pub fn dimension_from_leading_monomials(lms: &[Monomial], n_vars: usize) -> (i64, Vec<usize>) {
    let supports: Vec<Vec<usize>> = lms.iter().map(Monomial::support).collect();
    match min_hitting_set(&supports, n_vars) {
        None => (-1, Vec::new()),
        Some(cover) => {
            let independent: Vec<usize> = (0..n_vars).filter(|v| !cover.contains(v)).collect();
            (independent.len() as i64 - 1, independent)
        }
    }
}

fn groebner_dimension<F: Field>(ideal: &IdealPresentation<F>, budget: &Budget) -> Result<DimensionResult> {
    let gb = groebner_basis(ideal, budget)?;
    let lms = gb.leading_monomials();
    let (proj_dim, independent_set) = dimension_from_leading_monomials(&lms, ideal.n_vars());
    Ok(DimensionResult {
        proj_dim,
        method: DimensionMethod::Groebner,
        certificate: Some(DimensionCertificate {
            leading_monomials: lms.iter().map(|m| m.exps().to_vec()).collect(),
            independent_set,
            reductions: gb.reductions(),
        }),
        modular_checks: Vec::new(),
    })
}

pub const VERIFICATION_PRIME_START: u64 = 10007;

/// Dimension of `V(I) ⊂ ℙ^{n−1}`, `-1` for the empty locus.
///
/// Rational inputs that need more than half of the reduction budget are
/// recomputed modulo two primes (a third on disagreement); the results are
/// reported alongside the exact answer.
pub fn projective_dimension<F: Field>(ideal: &IdealPresentation<F>, budget: &Budget) -> Result<DimensionResult> {
    let mut result = groebner_dimension(ideal, budget)?;
    let reductions = result.certificate.as_ref().map_or(0, |c| c.reductions);
    if ideal.field().characteristic() == 0 && reductions * 2 > budget.max_reductions {
        let mut candidate = VERIFICATION_PRIME_START;
        let mut wanted = 2;
        while result.modular_checks.len() < wanted {
            let p = next_prime(candidate);
            candidate = p + 1;
            let field = PrimeField::new(p)?;
            let Some(reduced) = ideal.reduce_mod(&field) else {
                continue;
            };
            let r = groebner_dimension(&reduced, budget)?;
            result.modular_checks.push(ModularCheck {
                prime: p,
                proj_dim: r.proj_dim,
            });
            if wanted == 2
                && result.modular_checks.len() == 2
                && result.modular_checks[0].proj_dim != result.modular_checks[1].proj_dim
            {
                wanted = 3;
            }
        }
    }
    Ok(result)
}

/// Dimension of the affine locus `{w = 1}` of an ideal homogenized with
/// respect to its last variable `w`: the projective dimension of
/// `V(I : w^∞)`. In degree-reverse-lexicographic order `w` is the smallest
/// variable, so dividing the basis elements by their largest power of `w`
/// yields a Gröbner basis of the saturation.
pub fn affine_dimension<F: Field>(homogenized: &IdealPresentation<F>, budget: &Budget) -> Result<i64> {
    let gb = groebner_basis(homogenized, budget)?;
    let n = homogenized.n_vars();
    let stripped: Vec<Monomial> = gb
        .leading_monomials()
        .iter()
        .map(|m| {
            let mut e = m.exps().to_vec();
            e[n - 1] = 0;
            Monomial::from_exps(e)
        })
        .collect();
    Ok(dimension_from_leading_monomials(&stripped, n).0)
}

/// Whether the generators cut out a locus of the expected dimension
/// `n − 1 − #gens` (the empty locus counts when `#gens = n`).
pub fn is_regular_sequence<F: Field>(ideal: &IdealPresentation<F>, budget: &Budget) -> Result<bool> {
    let d = projective_dimension(ideal, budget)?;
    Ok(d.proj_dim == ideal.ambient_proj_dim() - ideal.gens().len() as i64)
}
