//! Classical orthogonal families: explicit generators, eigenvalues,
//! second-order operators and three-term recurrences.

mod explicit;
pub mod identities;
mod lattice;

pub use explicit::{dual_hahn_generic, dual_hahn_poly, eigen_solve, explicit_poly};
pub use lattice::s_ju;


use crate::error::{Error, Result};
use crate::opalg::{DifferenceOperator, DifferentialOperator, Operator};
use crate::poly::{expand_in_basis, Polynomial};
use crate::rational::{int, is_negative_integer, rat, serde_rational, Rational};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;
use std::sync::{OnceLock, RwLock};

/// A classical family with exact parameters. `n` is the size parameter `N`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum FamilySpec {
    Charlier {
        #[serde(with = "serde_rational")]
        a: Rational,
    },
    Meixner {
        #[serde(with = "serde_rational")]
        a: Rational,
        #[serde(with = "serde_rational")]
        c: Rational,
    },
    Krawtchouk {
        #[serde(with = "serde_rational")]
        a: Rational,
        #[serde(with = "serde_rational", rename = "N")]
        n: Rational,
    },
    Hahn {
        #[serde(with = "serde_rational")]
        alpha: Rational,
        #[serde(with = "serde_rational")]
        c: Rational,
        #[serde(with = "serde_rational", rename = "N")]
        n: Rational,
    },
    DualHahn1 {
        #[serde(with = "serde_rational")]
        alpha: Rational,
        #[serde(with = "serde_rational")]
        c: Rational,
        #[serde(with = "serde_rational", rename = "N")]
        n: Rational,
    },
    DualHahn2 {
        #[serde(with = "serde_rational")]
        alpha: Rational,
        #[serde(with = "serde_rational")]
        c: Rational,
        #[serde(with = "serde_rational", rename = "N")]
        n: Rational,
    },
    Laguerre {
        #[serde(with = "serde_rational")]
        alpha: Rational,
    },
    Jacobi {
        #[serde(with = "serde_rational")]
        alpha: Rational,
        #[serde(with = "serde_rational")]
        beta: Rational,
    },
}

fn inadmissible(family: &str, reason: impl Into<String>) -> Error {
    Error::Inadmissible {
        family: family.to_string(),
        reason: reason.into(),
    }
}

impl FamilySpec {
    pub fn charlier(a: Rational) -> Result<Self> {
        let s = Self::Charlier { a };
        s.validate()?;
        Ok(s)
    }

    pub fn meixner(a: Rational, c: Rational) -> Result<Self> {
        let s = Self::Meixner { a, c };
        s.validate()?;
        Ok(s)
    }

    pub fn krawtchouk(a: Rational, n: Rational) -> Result<Self> {
        let s = Self::Krawtchouk { a, n };
        s.validate()?;
        Ok(s)
    }

    pub fn hahn(alpha: Rational, c: Rational, n: Rational) -> Result<Self> {
        let s = Self::Hahn { alpha, c, n };
        s.validate()?;
        Ok(s)
    }

    pub fn laguerre(alpha: Rational) -> Result<Self> {
        let s = Self::Laguerre { alpha };
        s.validate()?;
        Ok(s)
    }

    pub fn jacobi(alpha: Rational, beta: Rational) -> Result<Self> {
        let s = Self::Jacobi { alpha, beta };
        s.validate()?;
        Ok(s)
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Charlier { .. } => "charlier",
            Self::Meixner { .. } => "meixner",
            Self::Krawtchouk { .. } => "krawtchouk",
            Self::Hahn { .. } => "hahn",
            Self::DualHahn1 { .. } => "dual_hahn1",
            Self::DualHahn2 { .. } => "dual_hahn2",
            Self::Laguerre { .. } => "laguerre",
            Self::Jacobi { .. } => "jacobi",
        }
    }

    /// Parameter exclusions. Hahn denominators are additionally checked
    /// per degree when polynomials are generated.
    pub fn validate(&self) -> Result<()> {
        let one = Rational::one();
        match self {
            Self::Charlier { a } if a.is_zero() => Err(inadmissible("charlier", "a = 0")),
            Self::Meixner { a, .. } if a.is_zero() || *a == one => {
                Err(inadmissible("meixner", "a must avoid 0 and 1"))
            }
            Self::Krawtchouk { a, .. } if a.is_zero() || *a == -one => {
                Err(inadmissible("krawtchouk", "a must avoid 0 and -1"))
            }
            Self::Hahn { alpha, c, n } if is_negative_integer(&(alpha + c - n)) => Err(
                inadmissible("hahn", "alpha + c - N is a negative integer"),
            ),
            Self::Laguerre { alpha } if is_negative_integer(alpha) => {
                Err(inadmissible("laguerre", "alpha is a negative integer"))
            }
            Self::Jacobi { alpha, beta } => {
                if is_negative_integer(&(alpha + beta)) {
                    Err(inadmissible("jacobi", "alpha + beta is a negative integer"))
                } else if is_negative_integer(alpha) || is_negative_integer(beta) {
                    Err(inadmissible("jacobi", "alpha or beta is a negative integer"))
                } else {
                    Ok(())
                }
            }
            _ => Ok(()),
        }
    }

    pub fn is_differential(&self) -> bool {
        matches!(self, Self::Laguerre { .. } | Self::Jacobi { .. })
    }

    /// Eigenvalue of `p_n` for the second-order operator. Defined for every
    /// integer `n` as a polynomial in `n`.
    pub fn theta(&self, n: i64) -> Result<Rational> {
        let n = int(n);
        Ok(match self {
            Self::Charlier { .. } | Self::Laguerre { .. } => -n,
            Self::Meixner { a, .. } => n * (a - Rational::one()),
            Self::Krawtchouk { a, .. } => -n * (Rational::one() + a),
            Self::Hahn { alpha, c, n: big_n } => {
                (&n + Rational::one()) * (&n + alpha + c - big_n - Rational::one())
            }
            Self::Jacobi { alpha, beta } => -(&n) * (&n + alpha + beta + Rational::one()),
            Self::DualHahn1 { .. } | Self::DualHahn2 { .. } => {
                return Err(Error::Unsupported(
                    "dual Hahn polynomials have no second-order operator in x".into(),
                ))
            }
        })
    }

    /// `theta_{n} - theta_{n-1}` when it does not depend on `n`.
    pub fn theta_step(&self) -> Option<Rational> {
        let t0 = self.theta(0).ok()?;
        let t1 = self.theta(1).ok()?;
        let t2 = self.theta(2).ok()?;
        let d = &t1 - &t0;
        (t2 - t1 == d).then_some(d)
    }

    /// The `sigma_n` sequence of the type-2 families.
    pub fn sigma(&self, n: i64) -> Result<Rational> {
        let n = int(n);
        match self {
            Self::Hahn { alpha, c, n: big_n } => Ok(int(2) * n + alpha + c - big_n - int(2)),
            Self::Jacobi { alpha, beta } => Ok(int(2) * n + alpha + beta - Rational::one()),
            _ => Err(Error::Unsupported(format!(
                "{} has no sigma sequence",
                self.name()
            ))),
        }
    }

    pub fn second_order_op(&self) -> Result<Operator> {
        let x = Polynomial::x;
        let c = Polynomial::constant;
        let lin = |k: Rational, b: Rational| Polynomial::new(vec![b, k]);
        Ok(match self {
            Self::Charlier { a } => DifferenceOperator::from_terms([
                (-1, x()),
                (0, -lin(int(1), a.clone())),
                (1, c(a.clone())),
            ])
            .into(),
            Self::Meixner { a, c: cc } => DifferenceOperator::from_terms([
                (-1, x()),
                (0, -lin(Rational::one() + a, a * cc)),
                (1, lin(a.clone(), a * cc)),
            ])
            .into(),
            Self::Krawtchouk { a, n } => {
                // x Sh_{-1} - (x - a(x-N+1)) Sh_0 - a(x-N+1) Sh_1
                let t = lin(a.clone(), a * (Rational::one() - n));
                DifferenceOperator::from_terms([(-1, x()), (0, -(x() - t.clone())), (1, -t)]).into()
            }
            Self::Hahn { alpha, c: cc, n } => {
                let one = Rational::one();
                let left = &x() * &Polynomial::linear(-alpha.clone());
                let right = &Polynomial::linear(cc.clone()) * &Polynomial::linear(&one - n);
                let mid = Polynomial::new(vec![
                    alpha + n * (cc - &one) - &one,
                    alpha - cc + n - &one,
                    int(-2),
                ]);
                DifferenceOperator::from_terms([(-1, left), (0, mid), (1, right)]).into()
            }
            Self::Laguerre { alpha } => DifferentialOperator::new(vec![
                Polynomial::zero(),
                lin(int(-1), alpha + int(1)),
                x(),
            ])
            .into(),
            Self::Jacobi { alpha, beta } => DifferentialOperator::new(vec![
                Polynomial::zero(),
                lin(-(alpha + beta + int(2)), beta - alpha),
                Polynomial::from_ints(&[1, 0, -1]),
            ])
            .into(),
            Self::DualHahn1 { .. } | Self::DualHahn2 { .. } => {
                return Err(Error::Unsupported(
                    "dual Hahn polynomials have no second-order operator in x".into(),
                ))
            }
        })
    }

    /// `r_j` of the Hahn or Jacobi lattice.
    pub fn r_j(&self, j: usize) -> Result<Polynomial> {
        match self {
            Self::Hahn { alpha, c, n } => Ok(s_ju(j, &(alpha + c - n - int(2)))),
            Self::Jacobi { alpha, beta } => Ok((0..j).fold(Polynomial::one(), |acc, i| {
                let i = int(i as i64);
                let k = (alpha + &i + int(1)) * (beta - &i);
                &acc * &Polynomial::new(vec![k, int(-1)])
            })),
            _ => Err(Error::Unsupported(format!("{} has no r_j basis", self.name()))),
        }
    }

    /// `u_j(n)`, the values `r_j(theta_{n-1})` in closed form.
    pub fn u_j(&self, j: usize, n: i64) -> Result<Rational> {
        use crate::rational::pochhammer;
        let n = int(n);
        match self {
            Self::Hahn { alpha, c, n: big_n } => Ok(pochhammer(&n, j)
                * pochhammer(&(-&n - alpha - c + big_n + int(2)), j)),
            Self::Jacobi { alpha, beta } => {
                Ok(pochhammer(&(&n + alpha), j) * pochhammer(&(&n + beta - int(j as i64)), j))
            }
            _ => Err(Error::Unsupported(format!("{} has no u_j sequence", self.name()))),
        }
    }

    /// `(a_n, b_n, c_n)` with `x p_n = a_n p_{n+1} + b_n p_n + c_n p_{n-1}`.
    pub fn ttr_coeffs(&self, n: usize) -> Result<(Rational, Rational, Rational)> {
        let one = Rational::one();
        let nn = int(n as i64);
        match self {
            Self::Charlier { a } => Ok((&nn + &one, &nn + a, if n == 0 { Rational::zero() } else { a.clone() })),
            Self::Meixner { a, c } => {
                let den = a - &one;
                let cn = if n == 0 { Rational::zero() } else { (&nn + c - &one) / &den };
                Ok((
                    a * (&nn + &one) / &den,
                    -((a + &one) * &nn + a * c) / &den,
                    cn,
                ))
            }
            Self::Hahn { alpha, c, n: big_n } => {
                let s = alpha + c - big_n;
                let d1 = int(2) * &nn + &s - &one;
                let d2 = int(2) * &nn + &s + &one;
                if (&d1 * &d2).is_zero() {
                    return Err(Error::Degenerate {
                        context: format!("Hahn recurrence at n = {n}"),
                        factor: "(2n+alpha+c-N-1)(2n+alpha+c-N+1)".into(),
                    });
                }
                let b = (c * (big_n - &one) * (&s - &one)
                    + &nn * (alpha - c + big_n - &one) * (&nn + &s))
                    / (&d1 * &d2);
                let cn = if n == 0 {
                    Rational::zero()
                } else {
                    let d0 = int(2) * &nn + &s - int(2);
                    let d3 = int(2) * &nn + &s;
                    let den = &d0 * &d1 * &d1 * &d3;
                    if den.is_zero() {
                        return Err(Error::Degenerate {
                            context: format!("Hahn recurrence at n = {n}"),
                            factor: "(2n+alpha+c-N-2)(2n+alpha+c-N-1)^2(2n+alpha+c-N)".into(),
                        });
                    }
                    &nn * (big_n - &nn)
                        * (&nn + &s - &one)
                        * (&nn + alpha - big_n)
                        * (&nn + c - &one)
                        * (&nn + alpha + c - &one)
                        / den
                };
                Ok((one, b, cn))
            }
            _ => self.ttr_by_expansion(n),
        }
    }

    /// Recurrence coefficients read off the triangular expansion of
    /// `x p_n` in `p_0, ..., p_{n+1}`.
    pub fn ttr_by_expansion(&self, n: usize) -> Result<(Rational, Rational, Rational)> {
        let basis = self.polys(n + 1)?;
        let xp = &Polynomial::x() * &basis[n];
        let coeffs = expand_in_basis(&xp, &basis)?;
        if let Some(m) = (0..n.saturating_sub(1)).find(|&m| !coeffs[m].is_zero()) {
            return Err(Error::Unsupported(format!(
                "x p_{n} has a component on p_{m}: not a three-term recurrence"
            )));
        }
        let cn = if n == 0 { Rational::zero() } else { coeffs[n - 1].clone() };
        Ok((coeffs[n + 1].clone(), coeffs[n].clone(), cn))
    }

    /// `p_n` from the defining sum, memoized.
    pub fn poly(&self, n: usize) -> Result<Polynomial> {
        Ok(self.polys(n)?.swap_remove(n))
    }

    /// `[p_0, ..., p_n]`, memoized.
    pub fn polys(&self, n: usize) -> Result<Vec<Polynomial>> {
        let cache = poly_cache();
        if let Some(v) = cache.read().expect("poly cache").get(self) {
            if v.len() > n {
                return Ok(v[..=n].to_vec());
            }
        }
        self.validate()?;
        let have = cache
            .read()
            .expect("poly cache")
            .get(self)
            .map_or(0, Vec::len);
        let fresh = (have..=n)
            .map(|m| explicit_poly(self, m))
            .collect::<Result<Vec<_>>>()?;
        let mut w = cache.write().expect("poly cache");
        let entry = w.entry(self.clone()).or_default();
        if entry.len() == have {
            entry.extend(fresh);
        } else if entry.len() <= n {
            // another writer raced us with a different prefix length
            let start = entry.len();
            for m in start..=n {
                entry.push(explicit_poly(self, m)?);
            }
        }
        Ok(entry[..=n].to_vec())
    }
}

type PolyCache = RwLock<HashMap<FamilySpec, Vec<Polynomial>>>;

fn poly_cache() -> &'static PolyCache {
    static CACHE: OnceLock<PolyCache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// `p_n` of the family.
pub fn classical_poly(spec: &FamilySpec, n: usize) -> Result<Polynomial> {
    spec.poly(n)
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use crate::rational::display_rational as d;
        match self {
            Self::Charlier { a } => write!(f, "Charlier(a={})", d(a)),
            Self::Meixner { a, c } => write!(f, "Meixner(a={}, c={})", d(a), d(c)),
            Self::Krawtchouk { a, n } => write!(f, "Krawtchouk(a={}, N={})", d(a), d(n)),
            Self::Hahn { alpha, c, n } => {
                write!(f, "Hahn(alpha={}, c={}, N={})", d(alpha), d(c), d(n))
            }
            Self::DualHahn1 { alpha, c, n } => {
                write!(f, "DualHahn1(alpha={}, c={}, N={})", d(alpha), d(c), d(n))
            }
            Self::DualHahn2 { alpha, c, n } => {
                write!(f, "DualHahn2(alpha={}, c={}, N={})", d(alpha), d(c), d(n))
            }
            Self::Laguerre { alpha } => write!(f, "Laguerre(alpha={})", d(alpha)),
            Self::Jacobi { alpha, beta } => {
                write!(f, "Jacobi(alpha={}, beta={})", d(alpha), d(beta))
            }
        }
    }
}

/// Sample parameter sets used by examples and tests (three per family).
pub fn sample_specs() -> Vec<FamilySpec> {
    let r = rat;
    vec![
        FamilySpec::Charlier { a: r(1, 1) },
        FamilySpec::Charlier { a: r(-3, 2) },
        FamilySpec::Charlier { a: r(5, 7) },
        FamilySpec::Meixner { a: r(1, 2), c: r(7, 2) },
        FamilySpec::Meixner { a: r(3, 1), c: r(-2, 5) },
        FamilySpec::Meixner { a: r(-2, 3), c: r(1, 1) },
        FamilySpec::Krawtchouk { a: r(1, 2), n: r(15, 2) },
        FamilySpec::Krawtchouk { a: r(2, 1), n: r(6, 1) },
        FamilySpec::Krawtchouk { a: r(-1, 3), n: r(-4, 3) },
        FamilySpec::Hahn { alpha: r(1, 2), c: r(2, 3), n: r(-5, 4) },
        FamilySpec::Hahn { alpha: r(12, 1), c: r(3, 2), n: r(7, 1) },
        FamilySpec::Hahn { alpha: r(-7, 3), c: r(5, 1), n: r(1, 5) },
        FamilySpec::Laguerre { alpha: r(0, 1) },
        FamilySpec::Laguerre { alpha: r(1, 2) },
        FamilySpec::Laguerre { alpha: r(-7, 3) },
        FamilySpec::Jacobi { alpha: r(1, 2), beta: r(2, 1) },
        FamilySpec::Jacobi { alpha: r(0, 1), beta: r(0, 1) },
        FamilySpec::Jacobi { alpha: r(-1, 3), beta: r(5, 4) },
    ]
}
