use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};

/// Kind of point (and of section through it) for the `mult/deg` threshold.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PointCase {
    Nonsingular,
    Quadratic,
    BiquadraticCodim2,
    BiquadraticCodim3,
}

impl PointCase {
    fn numerator(self) -> i64 {
        match self {
            PointCase::Nonsingular => 2,
            PointCase::Quadratic => 4,
            PointCase::BiquadraticCodim2 => 6,
            PointCase::BiquadraticCodim3 => 8,
        }
    }
}

impl FromStr for PointCase {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "nonsingular" => Ok(PointCase::Nonsingular),
            "quadratic" => Ok(PointCase::Quadratic),
            "biquadratic-codim2" => Ok(PointCase::BiquadraticCodim2),
            "biquadratic-codim3" => Ok(PointCase::BiquadraticCodim3),
            other => Err(Error::InvalidArgument(format!(
                "unknown case '{other}' (expected nonsingular, quadratic, biquadratic-codim2 or biquadratic-codim3)"
            ))),
        }
    }
}

impl fmt::Display for PointCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            PointCase::Nonsingular => "nonsingular",
            PointCase::Quadratic => "quadratic",
            PointCase::BiquadraticCodim2 => "biquadratic-codim2",
            PointCase::BiquadraticCodim3 => "biquadratic-codim3",
        };
        f.write_str(s)
    }
}

fn check_degrees(d1: i64, d2: i64) -> Result<()> {
    if d1 < 2 || d2 < d1 {
        return Err(Error::InvalidArgument(format!("degrees must satisfy 2 <= d1 <= d2, got ({d1}, {d2})")));
    }
    Ok(())
}

/// Upper bound for `mult_o Y / deg Y` of a prime divisor `Y` on the section.
pub fn mult_deg_threshold(case: PointCase, d1: i64, d2: i64) -> Result<BigRational> {
    check_degrees(d1, d2)?;
    Ok(BigRational::new(BigInt::from(case.numerator()), BigInt::from(d1 * d2)))
}

/// Which of the three closing inequalities applies, by the gap `d2 − d1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RatioCase {
    /// `d1 = d2` or `d1 = d2 − 1`: `(4/3)(d1−2)(d2−3)/(d1d2)`
    Close,
    /// `d1 = d2 − 2` or `d1 = d2 − 3`: `(4/3)(d1−1)(d2−4)/(d1d2)`
    Middle,
    /// `d1 ≤ d2 − 4`: `(4/3)(d2−5)/d2`
    Far,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RatioCheck {
    pub d1: i64,
    pub d2: i64,
    pub case: RatioCase,
    /// The ratio reached by the three-dimensional end of the construction.
    #[serde(serialize_with = "crate::ser::rational")]
    pub value: BigRational,
    /// `value ≥ 1`, which is the contradiction the construction needs.
    pub satisfied: bool,
}

pub fn hypertangent_ratio_check(d1: i64, d2: i64) -> Result<RatioCheck> {
    check_degrees(d1, d2)?;
    let r = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
    let four_thirds = r(4, 3);
    let (case, value) = match d2 - d1 {
        0 | 1 => (RatioCase::Close, four_thirds * r((d1 - 2) * (d2 - 3), d1 * d2)),
        2 | 3 => (RatioCase::Middle, four_thirds * r((d1 - 1) * (d2 - 4), d1 * d2)),
        _ => (RatioCase::Far, four_thirds * r(d2 - 5, d2)),
    };
    Ok(RatioCheck {
        d1,
        d2,
        case,
        satisfied: value >= BigRational::one(),
        value,
    })
}
