//! Point counting on projective loci over `GF(p^e)` and a dimension estimate
//! from the growth of the counts.

use serde::Serialize;

use super::gfq::{upoly, Gfq};
use super::{Budget, IdealPresentation};
use crate::error::{Error, Result};
use crate::linear::{Field, PrimeField};

/// Largest number of variables handled by the zero-pattern count of monomial ideals.
const MONOMIAL_FAST_PATH_VARS: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointCount {
    pub extension: u32,
    pub q: u64,
    pub points: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointCountEstimate {
    pub prime: u64,
    pub counts: Vec<PointCount>,
    /// `-1` when no points were found over any extension.
    pub proj_dim: i64,
    /// True when the counts come from an exact counting polynomial (monomial ideals).
    pub exact: bool,
}

/// A generator prepared for evaluation over `GF(p^e)`: `(coefficient, [(var, exp)])` per term.
type Prepared = Vec<(u32, Vec<(usize, u32)>)>;

fn prepare(ideal: &IdealPresentation<PrimeField>, f: &Gfq) -> Vec<Prepared> {
    let field = ideal.field();
    ideal
        .gens()
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| {
            g.terms()
                .iter()
                .map(|(m, c)| {
                    let c = f.from_residue(field.as_residue(c).expect("prime field"));
                    let exps = m
                        .exps()
                        .iter()
                        .enumerate()
                        .filter(|(_, &e)| e > 0)
                        .map(|(v, &e)| (v, e))
                        .collect();
                    (c, exps)
                })
                .collect()
        })
        .collect()
}

fn vanishes(gens: &[Prepared], logs: &[Option<u32>], f: &Gfq) -> bool {
    let period = f.order() as u64 - 1;
    gens.iter().all(|g| {
        let mut acc = 0u32;
        for (c, exps) in g {
            let mut l = f.log(*c) as u64;
            let mut zero = false;
            for &(v, e) in exps {
                match logs[v] {
                    Some(lv) => l = (l + lv as u64 * e as u64) % period,
                    None => {
                        zero = true;
                        break;
                    }
                }
            }
            if !zero {
                acc = f.add(acc, f.exp(l));
            }
        }
        acc == 0
    })
}

/// Number of points of `ℙ^{n−1}(F_q)`, `None` on overflow.
fn projective_size(q: u64, n: usize) -> Option<u64> {
    let mut total: u64 = 0;
    let mut power: u64 = 1;
    for _ in 0..n {
        total = total.checked_add(power)?;
        power = power.checked_mul(q)?;
    }
    Some(total)
}

/// Supports of the generators when every nonzero generator is a monomial.
fn monomial_supports(ideal: &IdealPresentation<PrimeField>) -> Option<Vec<u64>> {
    ideal
        .gens()
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| {
            (g.len() == 1).then(|| g.terms()[0].0.support().iter().fold(0u64, |acc, &v| acc | (1 << v)))
        })
        .collect()
}

/// Coefficients (in powers of `t = q − 1`) of the projective point count of a
/// monomial ideal: points with zero set exactly `Z` contribute `t^{n−|Z|−1}`.
fn monomial_count_polynomial(supports: &[u64], n: usize) -> Vec<u64> {
    let mut coeffs = vec![0u64; n];
    let full = (1u64 << n) - 1;
    for zeros in 0..full {
        if supports.iter().all(|&s| s & zeros != 0) {
            coeffs[n - zeros.count_ones() as usize - 1] += 1;
        }
    }
    coeffs
}

fn eval_in_t(coeffs: &[u64], t: u64) -> Option<u64> {
    coeffs
        .iter()
        .rev()
        .try_fold(0u64, |acc, &c| acc.checked_mul(t)?.checked_add(c))
}

/// Number of points of `V(I)` in `ℙ^{n−1}(GF(p^e))`.
///
/// Monomial ideals are counted by zero pattern. Otherwise all normalized
/// points of `ℙ^{n−1}` with the last coordinate left free are enumerated,
/// about `#ℙ^{n−2}(F_q)` prefixes, and the roots in the last coordinate are
/// counted via `gcd(g_1, …, g_k, t^q − t)`. The prefix count is what the
/// point budget limits.
pub fn count_points(ideal: &IdealPresentation<PrimeField>, extension: u32, budget: &Budget) -> Result<u64> {
    let p = ideal.field().modulus();
    let n = ideal.n_vars();
    if n <= MONOMIAL_FAST_PATH_VARS {
        if let Some(supports) = monomial_supports(ideal) {
            let q = p
                .checked_pow(extension)
                .ok_or_else(|| Error::Budget(format!("{p}^{extension} overflows")))?;
            let coeffs = monomial_count_polynomial(&supports, n);
            return eval_in_t(&coeffs, q - 1)
                .ok_or_else(|| Error::Budget("point count overflows 64 bits".into()));
        }
    }
    let f = Gfq::new(p, extension)?;
    let q = f.order() as u64;
    projective_size(q, n - 1)
        .filter(|&t| t < budget.max_points)
        .ok_or_else(|| {
            Error::Budget(format!(
                "counting on ℙ^{}(F_{q}) needs more than {} enumeration steps",
                n - 1,
                budget.max_points
            ))
        })?;
    let gens = prepare(ideal, &f);
    let last = n - 1;

    // the point (0 : … : 0 : 1)
    let mut logs: Vec<Option<u32>> = vec![None; n];
    logs[last] = Some(0);
    let mut count = u64::from(vanishes(&gens, &logs, &f));
    if n == 1 {
        return Ok(count);
    }

    let mut coords = vec![0u32; n];
    let mut restricted: Vec<Vec<u32>> = Vec::with_capacity(gens.len());
    for lead in 0..last {
        coords.iter_mut().for_each(|c| *c = 0);
        logs.iter_mut().for_each(|l| *l = None);
        coords[lead] = 1;
        logs[lead] = Some(0);
        loop {
            restricted.clear();
            for g in &gens {
                restricted.push(in_last_variable(g, &logs, last, &f));
            }
            count += roots_in_last_variable(&restricted, &f);
            if !advance(&mut coords[lead + 1..last], &mut logs[lead + 1..last], &f) {
                break;
            }
        }
    }
    Ok(count)
}

/// The generator with all but the last coordinate substituted, as a polynomial in it.
fn in_last_variable(g: &Prepared, logs: &[Option<u32>], last: usize, f: &Gfq) -> Vec<u32> {
    let period = f.order() as u64 - 1;
    let mut out: Vec<u32> = Vec::new();
    for (c, exps) in g {
        let mut l = f.log(*c) as u64;
        let mut power = 0usize;
        let mut zero = false;
        for &(v, e) in exps {
            if v == last {
                power = e as usize;
                continue;
            }
            match logs[v] {
                Some(lv) => l = (l + lv as u64 * e as u64) % period,
                None => {
                    zero = true;
                    break;
                }
            }
        }
        if !zero {
            if out.len() <= power {
                out.resize(power + 1, 0);
            }
            out[power] = f.add(out[power], f.exp(l));
        }
    }
    out
}

/// Common roots in `GF(q)` of univariate polynomials; all zero means every value.
fn roots_in_last_variable(polys: &[Vec<u32>], f: &Gfq) -> u64 {
    let mut g: Vec<u32> = Vec::new();
    for p in polys {
        g = upoly::gcd(f, g, p.clone());
        if g.len() == 1 {
            return 0;
        }
    }
    if g.is_empty() {
        f.order() as u64
    } else {
        upoly::count_roots(f, &g)
    }
}

/// Steps an odometer over `GF(q)^k`; false after the last vector.
fn advance(coords: &mut [u32], logs: &mut [Option<u32>], f: &Gfq) -> bool {
    for k in (0..coords.len()).rev() {
        coords[k] += 1;
        if coords[k] == f.order() {
            coords[k] = 0;
            logs[k] = None;
        } else {
            logs[k] = Some(f.log(coords[k]));
            return true;
        }
    }
    false
}

/// Largest `d` with `points ≥ q^d / 2`; `-1` for no points.
fn growth_exponent(points: u64, q: u64, max_dim: i64) -> i64 {
    if points == 0 {
        return -1;
    }
    let mut d = 0;
    while d < max_dim && 2 * (points as u128) >= (q as u128).pow(d as u32 + 1) {
        d += 1;
    }
    d
}

/// Estimates `dim V(I)` from the counts over `GF(p^e)`, `e = 1..=extensions`.
///
/// Monomial ideals are counted through their zero patterns and the estimate
/// is the degree of the counting polynomial, which is exact. Otherwise only
/// fields with `q > 2δ + 1` are used, where `δ` is the product of the
/// generator degrees: a locus of dimension `d` and total degree `≤ δ` has at
/// most `δ·#ℙ^d(F_q)` points, so the estimate cannot overshoot there. The
/// largest exponent over those fields is reported.
pub fn dimension_by_point_count<F: Field>(
    ideal: &IdealPresentation<F>,
    prime: u64,
    extensions: u32,
    budget: &Budget,
) -> Result<PointCountEstimate> {
    if extensions == 0 {
        return Err(Error::InvalidArgument("at least one extension degree is needed".into()));
    }
    let target = PrimeField::new(prime)?;
    let reduced = ideal
        .reduce_mod(&target)
        .ok_or_else(|| Error::InvalidArgument(format!("a coefficient has no image modulo {prime}")))?;
    let n = reduced.n_vars();
    let max_dim = n as i64 - 1;

    if n <= MONOMIAL_FAST_PATH_VARS {
        if let Some(supports) = monomial_supports(&reduced) {
            let coeffs = monomial_count_polynomial(&supports, n);
            let mut counts = Vec::new();
            for e in 1..=extensions {
                let Some(q) = prime.checked_pow(e) else { break };
                let Some(points) = eval_in_t(&coeffs, q - 1) else { break };
                counts.push(PointCount { extension: e, q, points });
            }
            let proj_dim = coeffs.iter().rposition(|&c| c > 0).map_or(-1, |d| d as i64);
            return Ok(PointCountEstimate {
                prime,
                counts,
                proj_dim,
                exact: true,
            });
        }
    }

    let delta: u64 = reduced
        .gens()
        .iter()
        .filter_map(|g| g.total_degree())
        .fold(1u64, |acc, d| acc.saturating_mul(d.max(1) as u64));
    let mut counts = Vec::new();
    for e in 1..=extensions {
        match count_points(&reduced, e, budget) {
            Ok(points) => counts.push(PointCount {
                extension: e,
                q: prime.pow(e),
                points,
            }),
            Err(err) if err.is_budget() && !counts.is_empty() => break,
            Err(err) => return Err(err),
        }
    }
    if counts.iter().all(|c| c.points == 0) {
        return Ok(PointCountEstimate {
            prime,
            counts,
            proj_dim: -1,
            exact: false,
        });
    }
    let eligible: Vec<&PointCount> = counts
        .iter()
        .filter(|c| c.q > delta.saturating_mul(2).saturating_add(1))
        .collect();
    let proj_dim = if eligible.is_empty() {
        let last = counts.last().expect("at least one count");
        growth_exponent(last.points, last.q, max_dim)
    } else {
        eligible
            .iter()
            .map(|c| growth_exponent(c.points, c.q, max_dim))
            .max()
            .unwrap()
    };
    Ok(PointCountEstimate {
        prime,
        counts,
        proj_dim,
        exact: false,
    })
}
