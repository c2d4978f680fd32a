use super::{s_ju, FamilySpec};
use crate::error::{Error, Result};
use crate::opalg::Operator;
use crate::poly::{binom_poly, falling_factorial_poly, pochhammer_poly, Polynomial};
use crate::rational::{binomial, factorial, format_rational, int, pochhammer, powi, Rational};
use num_traits::{One, Zero};

fn neg_x() -> Polynomial {
    Polynomial::from_ints(&[0, -1])
}

/// `(-x)_j`.
fn rising_neg_x(j: usize) -> Polynomial {
    pochhammer_poly(&Rational::zero(), j).compose(&neg_x())
}

/// `p_n` from the family's defining finite sum.
pub fn explicit_poly(spec: &FamilySpec, n: usize) -> Result<Polynomial> {
    let nn = int(n as i64);
    let one = Rational::one();
    let mut out = Polynomial::zero();
    match spec {
        FamilySpec::Charlier { a } => {
            for j in 0..=n {
                let c = powi(&-a, (n - j) as i64) * binomial(&nn, j);
                out += &falling_factorial_poly(j).scale(&c);
            }
            Ok(out.scale(&factorial(n).recip()))
        }
        FamilySpec::Meixner { a, c } => {
            let arg = Polynomial::new(vec![-c.clone(), -one.clone()]);
            for j in 0..=n {
                let term = &binom_poly(j) * &binom_poly(n - j).compose(&arg);
                out += &term.scale(&powi(a, -(j as i64)));
            }
            Ok(if n % 2 == 1 { -out } else { out })
        }
        FamilySpec::Krawtchouk { a, n: big_n } => {
            let ratio = (&one + a) / a;
            for j in 0..=n {
                let sign = if (n + j) % 2 == 0 { one.clone() } else { -one.clone() };
                let c = sign
                    * powi(&ratio, j as i64 - n as i64)
                    * pochhammer(&-&nn, j)
                    * pochhammer(&(big_n - &nn), n - j)
                    / factorial(j);
                out += &rising_neg_x(j).scale(&c);
            }
            Ok(out.scale(&factorial(n).recip()))
        }
        FamilySpec::Hahn { alpha, c, n: big_n } => {
            let s = alpha + c - big_n;
            for j in 0..=n {
                let den = pochhammer(&(&nn + &s + int(j as i64)), n - j) * factorial(j);
                if den.is_zero() {
                    return Err(Error::Degenerate {
                        context: format!("Hahn polynomial of degree {n}"),
                        factor: format!(
                            "(n+alpha+c-N+j)_(n-j) at j = {j}, alpha+c-N = {}",
                            format_rational(&s)
                        ),
                    });
                }
                let jj = int(j as i64);
                let num = pochhammer(&-&nn, j)
                    * pochhammer(&(&one - big_n + &jj), n - j)
                    * pochhammer(&(c + &jj), n - j);
                out += &rising_neg_x(j).scale(&(num / den));
            }
            Ok(out)
        }
        FamilySpec::DualHahn1 { alpha, c, n: big_n } => {
            Ok(dual_hahn_generic(&(big_n + c - &one), &(int(2) - c), &(alpha + c - &one), n))
        }
        FamilySpec::DualHahn2 { alpha, c, n: big_n } => {
            Ok(dual_hahn_generic(&-alpha.clone(), &(int(2) - c), &-big_n.clone(), n))
        }
        FamilySpec::Laguerre { alpha } => {
            let top = &nn + alpha;
            for j in 0..=n {
                let sign = if j % 2 == 0 { one.clone() } else { -one.clone() };
                let c = sign * binomial(&top, n - j) / factorial(j);
                out += &Polynomial::monomial(c, j);
            }
            Ok(out)
        }
        FamilySpec::Jacobi { alpha, beta } => {
            let xm1 = Polynomial::from_ints(&[-1, 1]);
            let xp1 = Polynomial::from_ints(&[1, 1]);
            for j in 0..=n {
                let c = binomial(&(&nn + alpha), j) * binomial(&(&nn + beta), n - j);
                let term = &xm1.pow(n - j) * &xp1.pow(j);
                out += &term.scale(&c);
            }
            Ok(out.scale(&powi(&int(2), -(n as i64))))
        }
    }
}

/// Monic dual Hahn polynomial `h_k^{*, alpha, c, N}` in the basis
/// `s_{j, N - alpha - c}`.
pub fn dual_hahn_generic(alpha: &Rational, c: &Rational, big_n: &Rational, k: usize) -> Polynomial {
    let u = big_n - alpha - c;
    let kk = int(k as i64);
    let one = Rational::one();
    let mut out = Polynomial::zero();
    for j in 0..=k {
        let jj = int(j as i64);
        let w = pochhammer(&-&kk, j)
            * pochhammer(&(&one - big_n + &jj), k - j)
            * pochhammer(&(c + &jj), k - j)
            / factorial(j);
        out += &s_ju(j, &u).scale(&w);
    }
    out
}

/// `h*_{1,k}` (variant 1) or `h*_{2,k}` (variant 2) for Hahn parameters.
pub fn dual_hahn_poly(
    variant: u8,
    alpha: &Rational,
    c: &Rational,
    big_n: &Rational,
    k: usize,
) -> Result<Polynomial> {
    let spec = match variant {
        1 => FamilySpec::DualHahn1 {
            alpha: alpha.clone(),
            c: c.clone(),
            n: big_n.clone(),
        },
        2 => FamilySpec::DualHahn2 {
            alpha: alpha.clone(),
            c: c.clone(),
            n: big_n.clone(),
        },
        v => return Err(Error::Unsupported(format!("dual Hahn variant {v}"))),
    };
    spec.poly(k)
}

/// Second generator: `p_n` as the eigenvector of the second-order operator
/// acting on monomials (upper triangular), scaled to `leading`.
pub fn eigen_solve(spec: &FamilySpec, n: usize, leading: &Rational) -> Result<Polynomial> {
    let op: Operator = spec.second_order_op()?;
    let theta = spec.theta(n as i64)?;
    // columns: D(x^m) for m = 0..=n
    let cols: Vec<Polynomial> = (0..=n)
        .map(|m| op.apply(&Polynomial::monomial(Rational::one(), m)))
        .collect();
    for (m, col) in cols.iter().enumerate() {
        if col.degree().is_some_and(|d| d > m) {
            return Err(Error::Unsupported(format!(
                "operator raises the degree of x^{m}"
            )));
        }
    }
    let mut v = vec![Rational::zero(); n + 1];
    v[n] = leading.clone();
    for i in (0..n).rev() {
        let diag = cols[i].coeff(i) - &theta;
        if diag.is_zero() {
            return Err(Error::Degenerate {
                context: format!("eigen-solve for degree {n}"),
                factor: format!("theta_{i} = theta_{n}"),
            });
        }
        let mut rhs = Rational::zero();
        for m in i + 1..=n {
            rhs += cols[m].coeff(i) * &v[m];
        }
        v[i] = -rhs / diag;
    }
    Ok(Polynomial::new(v))
}
