//! Exact scalar fields: the rationals and prime fields `F_p`.
//!
//! A [`Field`] is a small value object (a unit struct or a modulus) that
//! performs arithmetic on its element type. Containers such as matrices and
//! polynomials carry a copy of their field so that they can be combined
//! without threading the field through every call.

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};

pub trait Field: Clone + fmt::Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + PartialEq + Eq + Hash + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_i64(&self, v: i64) -> Self::Elem;
    /// Image of a rational number; `None` when the denominator vanishes in the field.
    fn from_rational(&self, v: &BigRational) -> Option<Self::Elem>;
    /// 0 for the rationals.
    fn characteristic(&self) -> u64;
    fn format(&self, a: &Self::Elem) -> String;
    /// A random element used for sampling subspaces and test data: uniform over
    /// `F_p`, a small integer in `[-bound, bound]` over the rationals.
    fn random<R: Rng + ?Sized>(&self, rng: &mut R, bound: i64) -> Self::Elem;
    /// Human readable name: `QQ` or `F_p`.
    fn name(&self) -> String;
    /// The element as a rational number; `None` in positive characteristic.
    fn as_rational(&self, a: &Self::Elem) -> Option<BigRational>;
    /// The element as a residue in `[0, p)`; `None` over the rationals.
    fn as_residue(&self, a: &Self::Elem) -> Option<u64>;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|ib| self.mul(a, &ib))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Rank of a dense row-major matrix. The default is plain Gaussian
    /// elimination; the rationals override it with a fraction-free variant.
    fn rank_of(&self, rows: usize, cols: usize, data: &[Self::Elem]) -> usize {
        gaussian_rank(self, rows, cols, data.to_vec())
    }
}

pub(crate) fn gaussian_rank<F: Field>(
    field: &F,
    rows: usize,
    cols: usize,
    mut a: Vec<F::Elem>,
) -> usize {
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&r| !field.is_zero(&a[r * cols + col])) else {
            continue;
        };
        if pivot != rank {
            for c in 0..cols {
                a.swap(pivot * cols + c, rank * cols + c);
            }
        }
        let inv = field.inv(&a[rank * cols + col]).expect("nonzero pivot");
        for r in rank + 1..rows {
            if field.is_zero(&a[r * cols + col]) {
                continue;
            }
            let factor = field.mul(&a[r * cols + col], &inv);
            for c in col..cols {
                let t = field.mul(&factor, &a[rank * cols + c]);
                a[r * cols + c] = field.sub(&a[r * cols + c], &t);
            }
        }
        rank += 1;
    }
    rank
}

/// The field of rational numbers, backed by arbitrary precision integers.
/// `BigRational` keeps values reduced with a positive denominator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_rational(&self, v: &BigRational) -> Option<BigRational> {
        Some(v.clone())
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn format(&self, a: &BigRational) -> String {
        format_rational(a)
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R, bound: i64) -> BigRational {
        self.from_i64(rng.gen_range(-bound..=bound))
    }
    fn name(&self) -> String {
        "QQ".to_string()
    }
    fn as_rational(&self, a: &BigRational) -> Option<BigRational> {
        Some(a.clone())
    }
    fn as_residue(&self, _a: &BigRational) -> Option<u64> {
        None
    }

    fn rank_of(&self, rows: usize, cols: usize, data: &[BigRational]) -> usize {
        bareiss_rank(rows, cols, data)
    }
}

/// Rank over the rationals by fraction-free (Bareiss) elimination: rows are
/// first cleared of denominators, after which every intermediate entry is an
/// integer minor of the original matrix.
pub fn bareiss_rank(rows: usize, cols: usize, data: &[BigRational]) -> usize {
    let mut a: Vec<BigInt> = Vec::with_capacity(rows * cols);
    for r in 0..rows {
        let row = &data[r * cols..(r + 1) * cols];
        let lcm = row
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        for x in row {
            a.push(x.numer() * (&lcm / x.denom()));
        }
    }
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&r| !a[r * cols + col].is_zero()) else {
            continue;
        };
        if pivot != rank {
            for c in 0..cols {
                a.swap(pivot * cols + c, rank * cols + c);
            }
        }
        let p = a[rank * cols + col].clone();
        for r in rank + 1..rows {
            let f = a[r * cols + col].clone();
            for c in 0..cols {
                if c == col {
                    continue;
                }
                let v = &p * &a[r * cols + c] - &f * &a[rank * cols + c];
                a[r * cols + c] = v / &prev;
            }
            a[r * cols + col] = BigInt::zero();
        }
        prev = p;
        rank += 1;
    }
    rank
}

pub fn format_rational(a: &BigRational) -> String {
    if a.denom().is_one() {
        a.numer().to_string()
    } else {
        format!("{}/{}", a.numer(), a.denom())
    }
}

/// Parses `n`, `-n` or `a/b`.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(BigRational::new(n, d))
    } else {
        let n: BigInt = s.parse().ok()?;
        Some(BigRational::from_integer(n))
    }
}

/// The prime field `F_p` for a prime `p < 2^61`. Elements are canonical
/// representatives in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

pub const MAX_PRIME_EXCLUSIVE: u64 = 1 << 61;

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p >= MAX_PRIME_EXCLUSIVE {
            return Err(Error::PrimeOutOfRange(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn elem(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    /// Reduces an integer given as `BigInt`.
    pub fn reduce_bigint(&self, v: &BigInt) -> u64 {
        let m = BigInt::from(self.p);
        let r = v.mod_floor(&m);
        r.to_u64().expect("residue fits in u64")
    }

    /// Symmetric representative in `(-p/2, p/2]`, handy for display.
    pub fn signed(&self, a: u64) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        // extended Euclid on signed 128-bit values
        let (mut r0, mut r1) = (self.p as i128, *a as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        Some(t0.rem_euclid(self.p as i128) as u64)
    }
    fn from_i64(&self, v: i64) -> u64 {
        self.elem(v)
    }
    fn from_rational(&self, v: &BigRational) -> Option<u64> {
        let n = self.reduce_bigint(v.numer());
        let d = self.reduce_bigint(v.denom());
        self.inv(&d).map(|di| self.mul(&n, &di))
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn format(&self, a: &u64) -> String {
        a.to_string()
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R, _bound: i64) -> u64 {
        rng.gen_range(0..self.p)
    }
    fn name(&self) -> String {
        format!("F_{}", self.p)
    }
    fn as_rational(&self, _a: &u64) -> Option<BigRational> {
        None
    }
    fn as_residue(&self, a: &u64) -> Option<u64> {
        Some(*a)
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &q in &SMALL {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &SMALL {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Smallest prime `>= start`.
pub fn next_prime(start: u64) -> u64 {
    let mut n = start.max(2);
    while !is_prime(n) {
        n += 1;
    }
    n
}

/// Image of an element of `field` in `F_p`: rationals are reduced (`None`
/// if the denominator vanishes mod `p`), residues are kept when the
/// characteristics agree.
pub fn to_prime_field<F: Field>(field: &F, target: &PrimeField, a: &F::Elem) -> Option<u64> {
    match field.characteristic() {
        0 => target.from_rational(&field.as_rational(a)?),
        c if c == target.modulus() => field.as_residue(a),
        _ => None,
    }
}

/// Converts a rational to an element of `field`, reporting the value on failure.
pub fn coerce<F: Field>(field: &F, v: &BigRational) -> Result<F::Elem> {
    field
        .from_rational(v)
        .ok_or_else(|| Error::NotReducible(format_rational(v)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        let primes: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(
            primes,
            vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]
        );
        assert!(is_prime(32003));
        assert!(is_prime((1 << 61) - 1));
        assert!(!is_prime(3215031751));
        assert_eq!(next_prime(10007), 10007);
        assert_eq!(next_prime(10008), 10009);
    }

    #[test]
    fn prime_field_construction() {
        assert!(PrimeField::new(101).is_ok());
        assert_eq!(PrimeField::new(100), Err(Error::NotPrime(100)));
        assert!(matches!(
            PrimeField::new(1 << 62),
            Err(Error::PrimeOutOfRange(_))
        ));
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = PrimeField::new(101).unwrap();
        for a in 1..101u64 {
            let ia = f.inv(&a).unwrap();
            assert_eq!(f.mul(&a, &ia), 1);
        }
        assert_eq!(f.inv(&0), None);
        assert_eq!(f.from_i64(-1), 100);
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(f.from_rational(&half), Some(51));
        let f2 = PrimeField::new(2).unwrap();
        assert_eq!(f2.from_rational(&half), None);
    }

    #[test]
    fn rationals_are_reduced() {
        let q = parse_rational("6/-4").unwrap();
        assert_eq!(format_rational(&q), "-3/2");
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("abc"), None);
    }

    #[test]
    fn bareiss_matches_gaussian() {
        let data: Vec<BigRational> = [1, 2, 3, 4, 5, 6, 7, 8, 9]
            .iter()
            .map(|&v| BigRational::from_integer(v.into()))
            .collect();
        assert_eq!(bareiss_rank(3, 3, &data), 2);
        assert_eq!(gaussian_rank(&Rationals, 3, 3, data), 2);
    }
}
