//! Fibrations of `ℙ^m × ℙ^{M+2}` into complete intersections of type
//! `d1·d2`: the anticanonical class, bigraded intersection numbers and the
//! numerical superrigidity criterion.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FibrationSpec {
    pub m: i64,
    pub d1: i64,
    pub d2: i64,
    pub l1: i64,
    pub l2: i64,
}

impl FibrationSpec {
    pub fn new(m: i64, d1: i64, d2: i64, l1: i64, l2: i64) -> Result<Self> {
        if m < 1 {
            return Err(Error::InvalidArgument(format!("base dimension must be at least 1, got {m}")));
        }
        if d1 < 2 || d2 < d1 {
            return Err(Error::InvalidArgument(format!("degrees must satisfy 2 <= d1 <= d2, got ({d1}, {d2})")));
        }
        if l1 < 0 || l2 < 0 {
            return Err(Error::InvalidArgument(format!("base degrees must be nonnegative, got ({l1}, {l2})")));
        }
        Ok(FibrationSpec { m, d1, d2, l1, l2 })
    }

    /// `M = d1 + d2 − 2`; the fibre space is `ℙ^{M+2}`.
    pub fn big_m(&self) -> i64 {
        self.d1 + self.d2 - 2
    }

    /// Largest base dimension allowed by the codimension bound,
    /// `½(M²−17M+62)`; only stated for `d1 ≠ 3`.
    pub fn base_budget(&self) -> Option<i64> {
        let m = self.big_m();
        (self.d1 != 3).then(|| (m * m - 17 * m + 62) / 2)
    }
}

/// An element of `ℤ[H_S, H_P]/(H_S^{m+1}, H_P^{p+1})`, the Chow ring of
/// `ℙ^m × ℙ^p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigradedClass {
    m: u32,
    p: u32,
    coeffs: BTreeMap<(u32, u32), BigInt>,
}

impl BigradedClass {
    pub fn zero(m: u32, p: u32) -> Self {
        BigradedClass {
            m,
            p,
            coeffs: BTreeMap::new(),
        }
    }

    /// `c · H_S^a · H_P^b`, zero past the truncation.
    pub fn monomial(m: u32, p: u32, a: u32, b: u32, c: impl Into<BigInt>) -> Self {
        let mut out = Self::zero(m, p);
        out.add_term(a, b, c.into());
        out
    }

    pub fn h_s(m: u32, p: u32) -> Self {
        Self::monomial(m, p, 1, 0, 1)
    }

    pub fn h_p(m: u32, p: u32) -> Self {
        Self::monomial(m, p, 0, 1, 1)
    }

    /// `a·H_S + b·H_P`
    pub fn divisor(m: u32, p: u32, a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        let mut out = Self::zero(m, p);
        out.add_term(1, 0, a.into());
        out.add_term(0, 1, b.into());
        out
    }

    fn add_term(&mut self, a: u32, b: u32, c: BigInt) {
        if a > self.m || b > self.p || c.is_zero() {
            return;
        }
        let e = self.coeffs.entry((a, b)).or_default();
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&(a, b));
        }
    }

    fn check(&self, other: &Self) {
        assert_eq!((self.m, self.p), (other.m, other.p), "classes on different products");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        let mut out = self.clone();
        for (&(a, b), c) in &other.coeffs {
            out.add_term(a, b, c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check(other);
        let mut out = Self::zero(self.m, self.p);
        for (&(a1, b1), c1) in &self.coeffs {
            for (&(a2, b2), c2) in &other.coeffs {
                out.add_term(a1 + a2, b1 + b2, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::monomial(self.m, self.p, 0, 0, 1);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn coefficient(&self, a: u32, b: u32) -> BigInt {
        self.coeffs.get(&(a, b)).cloned().unwrap_or_default()
    }

    /// Degree of the zero-cycle part: the coefficient of `H_S^m H_P^p`.
    pub fn degree(&self) -> BigInt {
        self.coefficient(self.m, self.p)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Nonzero terms `(a, b, c)` in increasing order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &BigInt)> {
        self.coeffs.iter().map(|(&(a, b), c)| (a, b, c))
    }
}

fn ring_dims(spec: &FibrationSpec) -> Result<(u32, u32)> {
    let m = u32::try_from(spec.m).map_err(|_| Error::InvalidArgument("base dimension too large".into()))?;
    let p = u32::try_from(spec.big_m() + 2).map_err(|_| Error::InvalidArgument("fibre dimension too large".into()))?;
    Ok((m, p))
}

/// `−K_V = (m + 1 − l1 − l2)·H_S + H_P`.
pub fn anticanonical_class(spec: &FibrationSpec) -> Result<BigradedClass> {
    let (m, p) = ring_dims(spec)?;
    Ok(BigradedClass::divisor(m, p, spec.m + 1 - spec.l1 - spec.l2, 1))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntersectionNumber {
    /// `(−K_V · π⁻¹(line) · H_P^M)`
    #[serde(serialize_with = "crate::ser::bigint")]
    pub number: BigInt,
    pub satisfied: bool,
}

/// Degree of `[V]·H_S^{m−1}·H_P^M·(−K_V)` with
/// `[V] = (l1·H_S + d1·H_P)(l2·H_S + d2·H_P)`, computed in the truncated ring.
pub fn intersection_criterion(spec: &FibrationSpec) -> Result<IntersectionNumber> {
    let (m, p) = ring_dims(spec)?;
    let v = BigradedClass::divisor(m, p, spec.l1, spec.d1).mul(&BigradedClass::divisor(m, p, spec.l2, spec.d2));
    let line = BigradedClass::h_s(m, p).pow(m - 1);
    let slices = BigradedClass::h_p(m, p).pow(p - 2);
    let number = v.mul(&line).mul(&slices).mul(&anticanonical_class(spec)?).degree();
    Ok(IntersectionNumber {
        satisfied: !number.is_positive(),
        number,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FibrationVerdict {
    /// The main inequality holds: both the K-condition and the mobility condition.
    Superrigid,
    /// `Σ l_i(1 − 1/d_i) > m` but not `≥ m + 1`.
    ConditionIiiOnly,
    /// Only `l1 + l2 ≥ m + 1`.
    KConditionOnly,
    /// `l1 + l2 ≤ m`: `−K_V` is ample and projecting to `ℙ^{M+2}` gives a second structure.
    NonRigid,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FibrationReport {
    pub spec: FibrationSpec,
    #[serde(rename = "M")]
    pub big_m: i64,
    /// Coefficient of `H_S` in `−K_V`.
    pub anticanonical_hs: i64,
    pub intersection: IntersectionNumber,
    /// `l1(1 − 1/d1) + l2(1 − 1/d2)`
    #[serde(serialize_with = "crate::ser::rational")]
    pub weighted_sum: BigRational,
    /// `weighted_sum ≥ m + 1`
    pub main_inequality: bool,
    /// `weighted_sum > m`
    pub condition_iii: bool,
    /// `l1 + l2 ≥ m + 1`
    pub k_condition: bool,
    /// `l1 + l2 ≤ m`
    pub non_rigid_regime: bool,
    pub verdict: FibrationVerdict,
    /// The main inequality holds exactly when the intersection number is `≤ 0`.
    pub equivalence_holds: bool,
    pub base_budget: Option<i64>,
    pub warnings: Vec<String>,
}

pub fn superrigidity_criterion(spec: &FibrationSpec) -> Result<FibrationReport> {
    let FibrationSpec { m, d1, d2, l1, l2 } = *spec;
    let intersection = intersection_criterion(spec)?;
    let q = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
    let weighted_sum = q(l1 * (d1 - 1), d1) + q(l2 * (d2 - 1), d2);
    let main_inequality = weighted_sum >= q(m + 1, 1);
    let condition_iii = weighted_sum > q(m, 1);
    let k_condition = l1 + l2 > m;
    let non_rigid_regime = !k_condition;
    let verdict = if main_inequality {
        FibrationVerdict::Superrigid
    } else if non_rigid_regime {
        FibrationVerdict::NonRigid
    } else if condition_iii {
        FibrationVerdict::ConditionIiiOnly
    } else {
        FibrationVerdict::KConditionOnly
    };
    let mut warnings = Vec::new();
    let base_budget = spec.base_budget();
    match base_budget {
        Some(b) if m > b => warnings.push(format!("m = {m} exceeds the base dimension budget {b} for M = {}", spec.big_m())),
        None => warnings.push("d1 = 3: no base dimension budget is stated".into()),
        _ => {}
    }
    if spec.big_m() < crate::bounds::REGIME_MIN_M {
        warnings.push(format!("M = {} is below {}", spec.big_m(), crate::bounds::REGIME_MIN_M));
    }
    Ok(FibrationReport {
        spec: *spec,
        big_m: spec.big_m(),
        anticanonical_hs: m + 1 - l1 - l2,
        equivalence_holds: main_inequality == intersection.satisfied,
        intersection,
        weighted_sum,
        main_inequality,
        condition_iii,
        k_condition,
        non_rigid_regime,
        verdict,
        base_budget,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(m: i64, d1: i64, d2: i64, l1: i64, l2: i64) -> FibrationSpec {
        FibrationSpec::new(m, d1, d2, l1, l2).unwrap()
    }

    #[test]
    fn anticanonical_examples() {
        let k = anticanonical_class(&spec(1, 4, 27, 1, 1)).unwrap();
        assert_eq!(k.coefficient(1, 0), BigInt::zero());
        assert_eq!(k.coefficient(0, 1), BigInt::from(1));
        let k = anticanonical_class(&spec(3, 4, 27, 1, 1)).unwrap();
        assert_eq!(k.coefficient(1, 0), BigInt::from(2));
    }

    #[test]
    fn intersection_examples() {
        let i = intersection_criterion(&spec(1, 4, 27, 2, 1)).unwrap();
        assert_eq!((i.number.clone(), i.satisfied), (BigInt::from(-50), true));
        let i = intersection_criterion(&spec(3, 4, 27, 1, 1)).unwrap();
        assert_eq!((i.number.clone(), i.satisfied), (BigInt::from(247), false));
        let i = intersection_criterion(&spec(2, 5, 6, 0, 0)).unwrap();
        assert_eq!(i.number, BigInt::from(90));
    }

    #[test]
    fn criterion_examples() {
        let r = superrigidity_criterion(&spec(1, 4, 27, 2, 1)).unwrap();
        assert_eq!(r.weighted_sum, BigRational::new(133.into(), 54.into()));
        assert_eq!(r.verdict, FibrationVerdict::Superrigid);
        assert!(r.equivalence_holds);
        let r = superrigidity_criterion(&spec(3, 4, 27, 1, 1)).unwrap();
        assert_eq!(r.weighted_sum, BigRational::new(185.into(), 108.into()));
        assert_eq!(r.verdict, FibrationVerdict::NonRigid);
        // l1 + l2 = m + 1 with small degrees: K-condition without the main inequality
        let r = superrigidity_criterion(&spec(2, 2, 2, 2, 1)).unwrap();
        assert_eq!(r.verdict, FibrationVerdict::KConditionOnly);
        let r = superrigidity_criterion(&spec(2, 2, 2, 3, 2)).unwrap();
        assert_eq!(r.verdict, FibrationVerdict::ConditionIiiOnly);
    }

    #[test]
    fn truncation_is_an_ideal() {
        let (m, p) = (2, 3);
        let x = BigradedClass::divisor(m, p, 3, -2).add(&BigradedClass::monomial(m, p, 1, 2, 5));
        assert!(x.mul(&BigradedClass::h_s(m, p).pow(m + 1)).is_zero());
        assert!(x.mul(&BigradedClass::h_p(m, p).pow(p + 1)).is_zero());
    }

    #[test]
    fn invalid_specs() {
        assert!(FibrationSpec::new(0, 2, 3, 1, 1).is_err());
        assert!(FibrationSpec::new(1, 4, 3, 1, 1).is_err());
        assert!(FibrationSpec::new(1, 2, 3, -1, 1).is_err());
    }
}
