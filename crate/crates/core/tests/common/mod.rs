//! Test-only oracles. Nothing here is used by the library: discrete
//! measures are summed term by term (truncated where infinite) and the
//! continuous ones use closed-form moments.
#![allow(dead_code)]

use krall::poly::Polynomial;
use krall::rational::{factorial, int, pochhammer, powi, rat, Rational};
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Weighted sums `(sum w(x) f(x), sum w(x))` over `x = 0..terms`, with
/// `w(0) = 1` and `w(x+1) = w(x) * ratio(x)`.
pub fn series<F: Fn(&Rational) -> Rational>(
    ratio: impl Fn(i64) -> Rational,
    f: F,
    terms: i64,
) -> (Rational, Rational) {
    let mut w = Rational::one();
    let mut num = Rational::zero();
    let mut den = Rational::zero();
    for x in 0..terms {
        if w.is_zero() {
            break;
        }
        num += &w * f(&int(x));
        den += &w;
        w *= ratio(x);
    }
    (num, den)
}

/// `|a - b| <= 10^-digits * max(1, |b|)`.
pub fn agrees(a: &Rational, b: &Rational, digits: u32) -> bool {
    let scale = if b.abs() > Rational::one() { b.abs() } else { Rational::one() };
    let tol = Rational::new(1.into(), num_bigint::BigInt::from(10u32).pow(digits));
    (a - b).abs() <= tol * scale
}

/// `e^a` truncated; used to normalize the explicit Charlier form.
pub fn exp_series(a: &Rational, terms: i64) -> Rational {
    series(|x| a / int(x + 1), |_| Rational::one(), terms).1
}

/// Ratio of consecutive Charlier weights `a^x / x!`.
pub fn charlier_ratio(a: &Rational) -> impl Fn(i64) -> Rational + '_ {
    move |x| a / int(x + 1)
}

/// Meixner weights `(c)_x a^x / x!`.
pub fn meixner_ratio<'a>(a: &'a Rational, c: &'a Rational) -> impl Fn(i64) -> Rational + 'a {
    move |x| a * (c + int(x)) / int(x + 1)
}

/// Krawtchouk weights `a^x / (Gamma(N-x) x!)`, up to `Gamma(N)`:
/// `(1-N)_x (-a)^x / x!`.
pub fn krawtchouk_ratio<'a>(a: &'a Rational, big_n: &'a Rational) -> impl Fn(i64) -> Rational + 'a {
    move |x| -a * (int(1) - big_n + int(x)) / int(x + 1)
}

/// Hahn weights `Gamma(alpha-x) Gamma(x+c) / (Gamma(N-x) x!)`, up to a
/// constant: `(c)_x (1-N)_x / ((1-alpha)_x x!)`.
pub fn hahn_ratio<'a>(alpha: &'a Rational, c: &'a Rational, big_n: &'a Rational) -> impl Fn(i64) -> Rational + 'a {
    move |x| {
        let xx = int(x);
        (c + &xx) * (int(1) - big_n + &xx) / ((int(1) - alpha + &xx) * (&xx + int(1)))
    }
}

/// `(x + offset + 1)...(x + offset + k)`.
pub fn rising(offset: &Rational, k: usize) -> Polynomial {
    (1..=k).fold(Polynomial::one(), |acc, i| &acc * &Polynomial::linear(offset + int(i as i64)))
}

/// Normalized pairing with a weight series, integrand `r(x - shift) p(x - shift)`.
pub fn discrete_pairing(
    ratio: impl Fn(i64) -> Rational,
    r: &Polynomial,
    shift: i64,
    p: &Polynomial,
    terms: i64,
) -> Rational {
    let s = int(shift);
    let (num, den) = series(ratio, |x| {
        let y = x - &s;
        r.eval(&y) * p.eval(&y)
    }, terms);
    num / den
}

/// The explicit form of the transformed Charlier measure:
/// `(-1)^k k! delta_{-k-1} + sum a^{x+k+1} / ((x+k+1) x!) delta_x`, over `e^a`.
pub fn charlier_tilde_explicit(k: usize, a: &Rational, p: &Polynomial, terms: i64) -> Rational {
    let kk = k as i64;
    let sign = if k % 2 == 0 { int(1) } else { int(-1) };
    let atom = sign * factorial(k) * p.eval(&int(-kk - 1));
    let mut sum = Rational::zero();
    for x in 0..terms {
        sum += powi(a, x + kk + 1) / (int(x + kk + 1) * factorial(x as usize)) * p.eval(&int(x));
    }
    (atom + sum) / exp_series(a, terms + kk + 40)
}

/// `<mu_alpha, x^n> / <mu_alpha, 1> = (alpha+1)_n`.
pub fn laguerre_pairing(alpha: &Rational, p: &Polynomial) -> Rational {
    p.coeffs()
        .iter()
        .enumerate()
        .map(|(n, c)| c * pochhammer(&(alpha + int(1)), n))
        .sum()
}

/// Normalized pairing with `(1-x)^alpha (1+x)^beta` on (-1, 1), through
/// `t = (1+x)/2` and the beta-function moments `(beta+1)_j / (alpha+beta+2)_j`.
pub fn jacobi_pairing(alpha: &Rational, beta: &Rational, p: &Polynomial) -> Rational {
    let in_t = p.compose(&Polynomial::from_ints(&[-1, 2]));
    in_t.coeffs()
        .iter()
        .enumerate()
        .map(|(j, c)| c * pochhammer(&(beta + int(1)), j) / pochhammer(&(alpha + beta + int(2)), j))
        .sum()
}

/// Small random rational: numerator in `-span..=span`, denominator in `1..=den`.
pub fn small_rational(rng: &mut ChaCha8Rng, span: i64, den: i64) -> Rational {
    rat(rng.gen_range(-span..=span), rng.gen_range(1..=den))
}

/// Random polynomial of exact degree `deg`.
pub fn random_poly(rng: &mut ChaCha8Rng, deg: usize) -> Polynomial {
    let mut c: Vec<Rational> = (0..=deg).map(|_| small_rational(rng, 5, 4)).collect();
    if c[deg].is_zero() {
        c[deg] = int(1);
    }
    Polynomial::new(c)
}
