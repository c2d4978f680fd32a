//! Dense univariate polynomials over arbitrary-precision rationals.
//!
//! Coefficients are stored in ascending order of degree with trailing zeros
//! stripped, so the zero polynomial has an empty coefficient list.

use crate::error::{Error, Result};
use crate::rational::{factorial, format_rational, int, Rational};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        let mut p = Self { coeffs };
        p.normalize();
        p
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::from_ints(&[0, 1])
    }

    /// `x + c`.
    pub fn linear(c: Rational) -> Self {
        Self::new(vec![c, Rational::one()])
    }

    pub fn monomial(c: Rational, degree: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); degree + 1];
        coeffs[degree] = c;
        Self::new(coeffs)
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        Self::new(self.coeffs.iter().map(|c| c * r).collect())
    }

    /// Horner evaluation.
    pub fn eval(&self, x0: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x0 + c;
        }
        acc
    }

    /// `p(x + l)`.
    pub fn shift(&self, l: &Rational) -> Self {
        if l.is_zero() {
            return self.clone();
        }
        self.compose(&Self::linear(l.clone()))
    }

    /// `p(q(x))`.
    pub fn compose(&self, q: &Polynomial) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * q) + &Self::constant(c.clone());
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * int(i as i64))
                .collect(),
        )
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Forward difference with step `d`: `p(x + d) - p(x)`.
    pub fn difference(&self, d: &Rational) -> Self {
        &self.shift(d) - self
    }

    /// Pretty form in `x`, e.g. `1/2x^2 - 3/2x + 1/2`.
    pub fn to_pretty(&self) -> String {
        self.to_pretty_var("x")
    }

    pub fn to_pretty_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mag_s = crate::rational::display_rational(&mag);
            match i {
                0 => out.push_str(&mag_s),
                _ => {
                    if !mag.is_one() {
                        out.push_str(&mag_s);
                    }
                    out.push_str(var);
                    if i > 1 {
                        out.push_str(&format!("^{i}"));
                    }
                }
            }
        }
        out
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({})", self.to_pretty())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_pretty())
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), Rational::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
        self.normalize();
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl SubAssign<&Polynomial> for Polynomial {
    fn sub_assign(&mut self, rhs: &Polynomial) {
        *self = &*self - rhs;
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<String> = self.coeffs.iter().map(format_rational).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v: Vec<String> = Vec::deserialize(d)?;
        let coeffs = v
            .iter()
            .map(|s| crate::rational::parse_rational(s))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        Ok(Polynomial::new(coeffs))
    }
}

/// `binom(x, j) = x(x-1)...(x-j+1)/j!`.
pub fn binom_poly(j: usize) -> Polynomial {
    falling_factorial_poly(j).scale(&factorial(j).recip())
}

/// `x(x-1)...(x-j+1)`.
pub fn falling_factorial_poly(j: usize) -> Polynomial {
    (0..j).fold(Polynomial::one(), |acc, i| {
        &acc * &Polynomial::linear(-int(i as i64))
    })
}

/// `(x + offset)_j = (x+offset)(x+offset+1)...(x+offset+j-1)`.
pub fn pochhammer_poly(offset: &Rational, j: usize) -> Polynomial {
    (0..j).fold(Polynomial::one(), |acc, i| {
        &acc * &Polynomial::linear(offset + int(i as i64))
    })
}

/// `binom(x + t, m)` as a polynomial in `x`.
pub fn binom_poly_shifted(t: &Rational, m: usize) -> Polynomial {
    binom_poly(m).shift(t)
}

/// The unique `P1` with `P1(0) = 0` and `P1(x + d) - P1(x) = p2(x)`.
///
/// Expands `p2` in the step-`d` Newton basis `binom(x/d, m)` by forward
/// differences at `0, d, 2d, ...`, then raises each basis index by one.
pub fn antidifference(p2: &Polynomial, d: &Rational) -> Result<Polynomial> {
    if d.is_zero() {
        return Err(Error::InvalidStep("antidifference step must be nonzero".into()));
    }
    let Some(deg) = p2.degree() else {
        return Ok(Polynomial::zero());
    };
    let mut diffs: Vec<Rational> = (0..=deg)
        .map(|i| p2.eval(&(d * int(i as i64))))
        .collect();
    let mut newton = Vec::with_capacity(deg + 1);
    for m in 0..=deg {
        newton.push(diffs[0].clone());
        for i in 0..deg - m {
            diffs[i] = &diffs[i + 1] - &diffs[i];
        }
    }
    let scaled_x = Polynomial::new(vec![Rational::zero(), d.recip()]);
    let mut out = Polynomial::zero();
    for (m, c) in newton.iter().enumerate() {
        out += &binom_poly(m + 1).compose(&scaled_x).scale(c);
    }
    Ok(out)
}

/// Coefficients of `target` in a degree-graded basis (`basis[m]` of exact
/// degree `m`), found by top-down triangular elimination.
pub fn expand_in_basis(target: &Polynomial, basis: &[Polynomial]) -> Result<Vec<Rational>> {
    let Some(deg) = target.degree() else {
        return Ok(Vec::new());
    };
    if basis.len() <= deg {
        return Err(Error::Unsupported(format!(
            "basis has {} elements, need degree {deg}",
            basis.len()
        )));
    }
    let mut rest = target.clone();
    let mut out = vec![Rational::zero(); deg + 1];
    for m in (0..=deg).rev() {
        let lead = basis[m].leading();
        if basis[m].degree() != Some(m) {
            return Err(Error::Degenerate {
                context: "basis expansion".into(),
                factor: format!("element {m} is not of exact degree {m}"),
            });
        }
        let c = rest.coeff(m) / lead;
        if !c.is_zero() {
            rest -= &basis[m].scale(&c);
        }
        out[m] = c;
    }
    Ok(out)
}

/// Evaluate `sum coeffs[j] * basis[j]`.
pub fn combine(coeffs: &[Rational], basis: &[Polynomial]) -> Polynomial {
    let mut out = Polynomial::zero();
    for (c, b) in coeffs.iter().zip(basis) {
        if !c.is_zero() {
            out += &b.scale(c);
        }
    }
    out
}

/// Newton-basis helper used by the Laguerre bilinear form:
/// coefficients `w_j` of `p` in `binom(x + j, j)`, `j = 0..=deg p`.
pub fn expand_in_shifted_binomials(p: &Polynomial) -> Result<Vec<Rational>> {
    let deg = p.degree().unwrap_or(0);
    let basis: Vec<Polynomial> = (0..=deg)
        .map(|j| binom_poly_shifted(&int(j as i64), j))
        .collect();
    let mut w = expand_in_basis(p, &basis)?;
    w.resize(deg + 1, Rational::zero());
    Ok(w)
}
