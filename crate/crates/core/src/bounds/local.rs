use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// Data of the second step of the chain: the multiplicities `ν_R`, `μ_R` on
/// the hyperplane section `R`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SecondStage {
    #[serde(serialize_with = "crate::ser::rational")]
    pub nu_r: BigRational,
    #[serde(serialize_with = "crate::ser::rational")]
    pub mu_r: BigRational,
    /// `⅔(ν_R + μ_R)`
    #[serde(serialize_with = "crate::ser::rational")]
    pub nu_z_lower: BigRational,
    /// `ν_Z_lower > 14n/9`
    pub nu_z_exceeds_14_9: bool,
    /// `ν_Z_lower > 3n/2`: incompatible with the `mult/deg` bound at a
    /// bi-quadratic point, which is the contradiction sought
    pub nu_z_exceeds_3_2: bool,
    /// `μ_R > n`, assumed by the argument
    pub mu_r_exceeds_n: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalBounds {
    #[serde(serialize_with = "crate::ser::rational")]
    pub nu: BigRational,
    #[serde(serialize_with = "crate::ser::rational")]
    pub mu: BigRational,
    #[serde(serialize_with = "crate::ser::rational")]
    pub n: BigRational,
    /// `(2μ − ν)/3`, lower bound for the multiplicity of the strict transform
    /// along the exceptional divisor over a general line
    #[serde(serialize_with = "crate::ser::rational")]
    pub theorem34_lower: BigRational,
    /// `ν + (2μ − ν)/3 = ⅔(ν + μ)`
    #[serde(serialize_with = "crate::ser::rational")]
    pub nu_r_lower: BigRational,
    /// `μ > n`
    pub mu_exceeds_n: bool,
    /// `ν ≤ 3n/2`
    pub nu_within_3_2: bool,
    /// `ν_R_lower > 4n/3`
    pub nu_r_exceeds_4_3: bool,
    pub second: Option<SecondStage>,
}

/// Evaluates the multiplicity chain `ν → ν_R → ν_Z` for the data `(ν, μ, n)`
/// and optionally `(ν_R, μ_R)`.
pub fn local_bounds(
    nu: &BigRational,
    mu: &BigRational,
    n: &BigRational,
    second: Option<(&BigRational, &BigRational)>,
) -> Result<LocalBounds> {
    if !n.is_positive() {
        return Err(Error::InvalidArgument(format!("n must be positive, got {n}")));
    }
    let r = |a: i64, b: i64| BigRational::new(BigInt::from(a), BigInt::from(b));
    let theorem34_lower = (mu * r(2, 1) - nu) / r(3, 1);
    let nu_r_lower = nu + &theorem34_lower;
    debug_assert!((&nu_r_lower - (nu + mu) * r(2, 3)).is_zero());
    let second = second.map(|(nu_r, mu_r)| {
        let nu_z_lower = (nu_r + mu_r) * r(2, 3);
        SecondStage {
            nu_z_exceeds_14_9: nu_z_lower > n * r(14, 9),
            nu_z_exceeds_3_2: nu_z_lower > n * r(3, 2),
            mu_r_exceeds_n: mu_r > n,
            nu_r: nu_r.clone(),
            mu_r: mu_r.clone(),
            nu_z_lower,
        }
    });
    Ok(LocalBounds {
        mu_exceeds_n: mu > n,
        nu_within_3_2: *nu <= n * r(3, 2),
        nu_r_exceeds_4_3: nu_r_lower > n * r(4, 3),
        nu: nu.clone(),
        mu: mu.clone(),
        n: n.clone(),
        theorem34_lower,
        nu_r_lower,
        second,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn chain_values() {
        let b = local_bounds(&q(1, 1), &q(2, 1), &q(5, 1), None).unwrap();
        assert_eq!(b.theorem34_lower, q(1, 1));
        let b = local_bounds(&q(4, 1), &q(2, 1), &q(1, 1), None).unwrap();
        assert_eq!(b.theorem34_lower, q(0, 1));
        let b = local_bounds(&q(3, 2), &q(101, 100), &q(1, 1), None).unwrap();
        assert_eq!(b.nu_r_lower, q(251, 150));
        assert!(b.nu_r_exceeds_4_3 && b.mu_exceeds_n && b.nu_within_3_2);
        assert!(local_bounds(&q(1, 1), &q(1, 1), &q(0, 1), None).is_err());
    }

    #[test]
    fn second_stage() {
        let n = q(1, 1);
        let b = local_bounds(&q(3, 2), &q(101, 100), &n, Some((&q(251, 150), &q(101, 100)))).unwrap();
        let s = b.second.unwrap();
        // ⅔(251/150 + 101/100) = ⅔ · 805/300
        assert_eq!(s.nu_z_lower, q(161, 90));
        assert!(s.nu_z_exceeds_14_9 && s.nu_z_exceeds_3_2);
    }
}
