//! Arbitrary-precision rationals and the scalar helpers the formulas are
//! written in (Pochhammer symbols, factorials, binomials).

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::str::FromStr;

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"p/q"` or `"p"`. No decimal or floating-point forms are accepted.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    if let Some((n, d)) = t.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|e| Error::Parse(format!("{s}: {e}")))?;
        let d = BigInt::from_str(d.trim()).map_err(|e| Error::Parse(format!("{s}: {e}")))?;
        if d.is_zero() {
            return Err(Error::Parse(format!("{s}: zero denominator")));
        }
        Ok(Rational::new(n, d))
    } else {
        BigInt::from_str(t)
            .map(Rational::from_integer)
            .map_err(|e| Error::Parse(format!("{s}: {e}")))
    }
}

/// Canonical `"num/den"` string, denominator always present.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Short human form: `"3"`, `"-1/2"`.
pub fn display_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Rising factorial `(a)_j = a(a+1)...(a+j-1)`, `(a)_0 = 1`.
pub fn pochhammer(a: &Rational, j: usize) -> Rational {
    let mut acc = Rational::one();
    let mut f = a.clone();
    for _ in 0..j {
        acc *= &f;
        f += Rational::one();
    }
    acc
}

pub fn factorial(n: usize) -> Rational {
    pochhammer(&Rational::one(), n)
}

/// Generalized binomial `binom(t, m) = t(t-1)...(t-m+1)/m!`.
pub fn binomial(t: &Rational, m: usize) -> Rational {
    let mut acc = Rational::one();
    let mut f = t.clone();
    for _ in 0..m {
        acc *= &f;
        f -= Rational::one();
    }
    acc / factorial(m)
}

/// Integer power with negative exponents allowed (`r` must be nonzero then).
pub fn powi(r: &Rational, e: i64) -> Rational {
    if e >= 0 {
        num_traits::pow(r.clone(), e as usize)
    } else {
        num_traits::pow(r.recip(), (-e) as usize)
    }
}

/// `Some(m)` when `r` is the integer `m`.
pub fn as_integer(r: &Rational) -> Option<i64> {
    if r.is_integer() {
        r.numer().to_i64()
    } else {
        None
    }
}

/// True when `r` is one of `0, -1, -2, ...`.
pub fn is_nonpositive_integer(r: &Rational) -> bool {
    r.is_integer() && !r.is_positive()
}

/// True when `r` is one of `-1, -2, ...`.
pub fn is_negative_integer(r: &Rational) -> bool {
    r.is_integer() && r.is_negative()
}

/// Serde adapter writing rationals as `"num/den"` strings.
pub mod serde_rational {
    use super::{format_rational, parse_rational, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}
