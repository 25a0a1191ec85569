use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// Smallest `M` for which the uniform quadratic formulas are claimed.
pub const REGIME_MIN_M: i64 = 27;

/// `C(n, k)`, zero outside `0 ≤ k ≤ n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `a·b/2` for integers whose product is known to be even.
fn half(v: BigInt) -> BigInt {
    debug_assert!((&v % 2u8).is_zero(), "{v} is odd");
    v / 2
}

fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntegerBound {
    #[serde(serialize_with = "crate::ser::bigint")]
    pub value: BigInt,
    pub out_of_regime: bool,
}

/// Lower bound for the codimension of the non-regular pairs:
/// `½(M²−17M+64)`, or `½(M²−19M+82)` when `d1 = 3`.
pub fn theorem02_bound(m: i64, d1: i64) -> IntegerBound {
    let (b, c) = if d1 == 3 { (19, 82) } else { (17, 64) };
    IntegerBound {
        value: half(big(m) * big(m) - big(b * m) + big(c)),
        out_of_regime: m < REGIME_MIN_M,
    }
}

/// Codimension `½(N−r)(N−r+1)` of the quadratic forms of rank `≤ r` in `N` variables.
pub fn rank_stratum_codim(n: u64, r: u64) -> Result<BigInt> {
    if r > n {
        return Err(Error::InvalidArgument(format!("rank {r} exceeds the number of variables {n}")));
    }
    let d = BigInt::from(n - r);
    Ok(half(&d * (&d + 1u8)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProjectionTerm {
    /// Position (1-based) in the truncated sequence of the member whose
    /// failure this term estimates.
    pub position: i64,
    pub degree: i64,
    pub top: i64,
    #[serde(serialize_with = "crate::ser::bigint")]
    pub value: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProjectionMinimum {
    pub d1: i64,
    pub d2: i64,
    pub m: i64,
    pub terms: Vec<ProjectionTerm>,
    #[serde(serialize_with = "crate::ser::bigint")]
    pub min: BigInt,
    /// Index into `terms` of the first term attaining the minimum.
    pub argmin: usize,
    #[serde(serialize_with = "crate::ser::bigint")]
    pub closed_form: BigInt,
    pub matches_closed_form: bool,
    pub out_of_regime: bool,
}

/// Degrees of the hypertangent sequence: pairs `j, j` for `j ≤ d1`, then `j` for `d1 < j ≤ d2`.
fn sequence_degrees(d1: i64, d2: i64) -> Vec<i64> {
    let mut out = Vec::new();
    for j in 2..=d2 {
        if j <= d1 {
            out.push(j);
        }
        out.push(j);
    }
    out
}

/// Minimum of the projection-method estimates for the sequence with its last
/// five members removed, on a codimension-2 subspace.
///
/// The member at position `i` of degree `m` contributes `C(M − i − 2 + m, m)`;
/// within a pair of equal degrees only the second (smaller) estimate is
/// kept. For `d2 ≥ d1 + 5` this is the set `{C(M−k, k) : 2 ≤ k ≤ d1} ∪
/// {C(M−d1, d1+k) : 1 ≤ k ≤ M−2d1−3}`; for `d2 ≤ d1 + 4` the truncation cuts
/// into the pairs.
pub fn projection_minimum(d1: i64, d2: i64) -> Result<ProjectionMinimum> {
    if d1 < 2 || d2 < d1 {
        return Err(Error::InvalidArgument(format!("degrees must satisfy 2 <= d1 <= d2, got ({d1}, {d2})")));
    }
    let m = d1 + d2 - 2;
    let degrees = sequence_degrees(d1, d2);
    let len = m - 5;
    if len < 1 {
        return Err(Error::InvalidArgument(format!(
            "M = {m}: the truncated sequence is empty, no estimate to take"
        )));
    }
    let mut terms: Vec<ProjectionTerm> = Vec::new();
    for i in 1..=len {
        let deg = degrees[(i - 1) as usize];
        let top = m - i - 2 + deg;
        let term = ProjectionTerm {
            position: i,
            degree: deg,
            top,
            value: binomial(top, deg),
        };
        match terms.last_mut() {
            Some(last) if last.degree == deg => *last = term,
            _ => terms.push(term),
        }
    }
    let (argmin, min) = terms
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.value.cmp(&b.1.value).then(a.0.cmp(&b.0)))
        .map(|(i, t)| (i, t.value.clone()))
        .expect("nonempty");
    let closed_form = binomial(m - 2, 2);
    Ok(ProjectionMinimum {
        d1,
        d2,
        m,
        matches_closed_form: min == closed_form,
        terms,
        min,
        argmin,
        closed_form,
        out_of_regime: m < REGIME_MIN_M,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionCodims {
    pub m: i64,
    /// `½(M²−9M+14)`
    #[serde(serialize_with = "crate::ser::bigint")]
    pub nonsingular: BigInt,
    /// `½(M−9)(M−10) − 1 + 2(M+2)`
    #[serde(serialize_with = "crate::ser::bigint")]
    pub biquadratic_rank: BigInt,
    /// `½(M²−15M+66)`
    #[serde(serialize_with = "crate::ser::bigint")]
    pub biquadratic_irreducible: BigInt,
    /// `½(M²−17M+82)`, the same condition when `d1 = 3`
    #[serde(serialize_with = "crate::ser::bigint")]
    pub biquadratic_irreducible_d1_3: BigInt,
    /// `½(M²−5M+16)`
    #[serde(serialize_with = "crate::ser::bigint")]
    pub biquadratic_sequence: BigInt,
    pub out_of_regime: bool,
}

pub fn condition_codims(m: i64) -> ConditionCodims {
    let mm = big(m) * big(m);
    ConditionCodims {
        m,
        nonsingular: half(&mm - big(9 * m) + 14),
        biquadratic_rank: half(big(m - 9) * big(m - 10)) - 1 + big(2 * (m + 2)),
        biquadratic_irreducible: half(&mm - big(15 * m) + 66),
        biquadratic_irreducible_d1_3: half(&mm - big(17 * m) + 82),
        biquadratic_sequence: half(&mm - big(5 * m) + 16),
        out_of_regime: m < REGIME_MIN_M,
    }
}

/// `½(N−k−1)(N−k−4) + 2`.
pub fn theorem21_bound(n: i64, k: i64) -> Result<BigInt> {
    if k < 1 || k > n {
        return Err(Error::InvalidArgument(format!("need 1 <= k <= N, got N = {n}, k = {k}")));
    }
    Ok(half(big(n - k - 1) * big(n - k - 4)) + 2)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InductionCodims {
    pub n: i64,
    pub k: i64,
    pub j: i64,
    pub l: i64,
    /// Rank-failure codimension for `l` forms: `½(N+j−k−l−2)(N+j−k−l−3) − l + 1`.
    #[serde(serialize_with = "crate::ser::bigint")]
    pub step_bound: BigInt,
    /// The bound at step `j` after minimizing over `l`: `½(N+j−k−2)(N+j−k−5) + 2`.
    #[serde(serialize_with = "crate::ser::bigint")]
    pub mq_bound: BigInt,
    /// The full count for this `l` with the point free:
    /// `(k−j+1) + l(N+j−k−1+l) + step_bound − N`.
    #[serde(serialize_with = "crate::ser::bigint")]
    pub total: BigInt,
}

pub fn induction_codims(n: i64, k: i64, j: i64, l: i64) -> Result<InductionCodims> {
    if k < 1 || k > n {
        return Err(Error::InvalidArgument(format!("need 1 <= k <= N, got N = {n}, k = {k}")));
    }
    if j < 1 || j > k {
        return Err(Error::InvalidArgument(format!("need 1 <= j <= k, got j = {j}, k = {k}")));
    }
    if l < 1 || l > k - j + 1 {
        return Err(Error::InvalidArgument(format!("need 1 <= l <= k - j + 1 = {}, got l = {l}", k - j + 1)));
    }
    let b = n + j - k;
    let step_bound = half(big(b - l - 2) * big(b - l - 3)) - l + 1;
    let mq_bound = half(big(b - 2) * big(b - 5)) + 2;
    let total = big(k - j + 1) + big(l) * big(b - 1 + l) + &step_bound - n;
    Ok(InductionCodims {
        n,
        k,
        j,
        l,
        step_bound,
        mq_bound,
        total,
    })
}

/// Everything the `codim-bounds` command reports for one `(M, d1, d2)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CodimTable {
    pub m: i64,
    pub d1: i64,
    pub d2: i64,
    pub theorem_bound: IntegerBound,
    pub conditions: ConditionCodims,
    /// The governing condition estimate minus `M` (the point moves in
    /// `ℙ^{M+2}` and the pairs through it have codimension 2).
    #[serde(serialize_with = "crate::ser::bigint")]
    pub assembled_bound: BigInt,
    /// `assembled_bound − theorem_bound`; the published bound is weaker by this much.
    #[serde(serialize_with = "crate::ser::bigint")]
    pub slack: BigInt,
    pub projection: Option<ProjectionMinimum>,
    pub warnings: Vec<String>,
}

pub fn codim_table(m: i64, d1: i64, d2: i64) -> Result<CodimTable> {
    if d1 < 2 || d2 < d1 {
        return Err(Error::InvalidArgument(format!("degrees must satisfy 2 <= d1 <= d2, got ({d1}, {d2})")));
    }
    if m != d1 + d2 - 2 {
        return Err(Error::InvalidArgument(format!("M must equal d1 + d2 - 2 = {}, got {m}", d1 + d2 - 2)));
    }
    let theorem_bound = theorem02_bound(m, d1);
    let conditions = condition_codims(m);
    let governing = if d1 == 3 {
        &conditions.biquadratic_irreducible_d1_3
    } else {
        &conditions.biquadratic_irreducible
    };
    let assembled_bound = governing - m;
    let slack = &assembled_bound - &theorem_bound.value;
    let mut warnings = Vec::new();
    if m < REGIME_MIN_M {
        warnings.push(format!("M = {m} is below {REGIME_MIN_M}: formulas evaluated outside their stated range"));
    }
    let projection = match projection_minimum(d1, d2) {
        Ok(p) => {
            if !p.matches_closed_form {
                warnings.push(format!("projection minimum {} differs from C(M-2, 2) = {}", p.min, p.closed_form));
            }
            Some(p)
        }
        Err(e) => {
            warnings.push(e.to_string());
            None
        }
    };
    Ok(CodimTable {
        m,
        d1,
        d2,
        theorem_bound,
        conditions,
        assembled_bound,
        slack,
        projection,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(28, 2), big(378));
        assert_eq!(binomial(5, 0), big(1));
        assert_eq!(binomial(5, 6), big(0));
        assert_eq!(binomial(60, 30), "118264581564861424".parse::<BigInt>().unwrap());
    }

    #[test]
    fn spot_values() {
        assert_eq!(theorem02_bound(27, 4).value, big(167));
        assert_eq!(theorem02_bound(27, 3).value, big(149));
        assert!(theorem02_bound(20, 4).out_of_regime);
        assert_eq!(rank_stratum_codim(10, 3).unwrap(), big(28));
        assert_eq!(rank_stratum_codim(7, 7).unwrap(), big(0));
        assert!(rank_stratum_codim(3, 4).is_err());
        let c = condition_codims(27);
        assert_eq!(c.biquadratic_rank, big(210));
        assert_eq!(c.biquadratic_sequence, big(305));
        assert_eq!(c.biquadratic_irreducible, big(195));
        assert_eq!(theorem21_bound(20, 4).unwrap(), big(92));
    }

    #[test]
    fn projection_sets() {
        let p = projection_minimum(5, 27).unwrap();
        assert_eq!(p.m, 30);
        let vals: Vec<BigInt> = p.terms.iter().map(|t| t.value.clone()).collect();
        let mut expected = vec![binomial(28, 2), binomial(27, 3), binomial(26, 4), binomial(25, 5)];
        expected.extend((1..=17).map(|k| binomial(25, 5 + k)));
        assert_eq!(vals, expected);
        assert_eq!(p.min, big(378));
        assert_eq!(p.argmin, 0);
        // equal degrees: pairs up to d1 - 3 and one extra cubic-type term
        let p = projection_minimum(27, 27).unwrap();
        assert_eq!(p.terms.len(), 24);
        assert_eq!(p.terms.last().unwrap().value, binomial(52 - 24, 3));
        assert_eq!(p.min, binomial(50, 2));
        assert!(p.matches_closed_form);
        // d2 = d1 + 1: the second part is empty
        let p = projection_minimum(14, 15).unwrap();
        assert_eq!(p.terms.len(), 11);
        assert!(p.terms.iter().all(|t| t.degree <= 12));
        assert!(projection_minimum(2, 4).is_err());
    }

    #[test]
    fn induction_at_j_one_is_the_theorem_bound() {
        for n in 2..60 {
            for k in 1..n {
                let ic = induction_codims(n, k, 1, 1).unwrap();
                assert_eq!(ic.mq_bound, theorem21_bound(n, k).unwrap());
            }
        }
        assert!(induction_codims(10, 3, 2, 3).is_err());
    }

    #[test]
    fn table_reports_slack() {
        let t = codim_table(27, 4, 25).unwrap();
        assert_eq!(t.assembled_bound, big(168));
        assert_eq!(t.slack, big(1));
        assert!(t.warnings.is_empty());
        assert!(codim_table(8, 4, 6).unwrap().warnings[0].contains("below"));
        assert!(codim_table(11, 4, 6).is_err());
    }
}
