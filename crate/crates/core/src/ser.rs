//! Serde helpers: exact numbers are written as strings (`a/b` for rationals).

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serializer;

use crate::linear::field::format_rational;

pub fn rational<S: Serializer>(v: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(v))
}

pub fn opt_rational<S: Serializer>(v: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.serialize_some(&format_rational(v)),
        None => s.serialize_none(),
    }
}

pub fn rationals<S: Serializer>(v: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(format_rational))
}

pub fn bigint<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

pub fn bigints<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}
