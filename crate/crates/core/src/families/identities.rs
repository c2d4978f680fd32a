//! Auxiliary polynomial identities behind the Hahn and Jacobi type-2
//! constructions. Each check returns the first failing case.

use super::{dual_hahn_generic, dual_hahn_poly, s_ju, FamilySpec};
use crate::poly::{pochhammer_poly, Polynomial};
use crate::rational::{int, pochhammer, Rational};
use num_traits::One;

pub type Check = std::result::Result<(), String>;

fn fail(what: impl Into<String>) -> Check {
    Err(what.into())
}

/// `x(x + shift)`.
fn lattice(shift: &Rational) -> Polynomial {
    &Polynomial::x() * &Polynomial::linear(shift.clone())
}

/// `s_{j,u}(x(x-u)) = (-x)_j (x-u)_j` for `j <= jmax`.
pub fn nlp(u: &Rational, jmax: usize) -> Check {
    for j in 0..=jmax {
        let lhs = s_ju(j, u).compose(&lattice(&-u.clone()));
        let rhs = &pochhammer_poly(&int(0), j).compose(&Polynomial::from_ints(&[0, -1]))
            * &pochhammer_poly(&-u.clone(), j);
        if lhs != rhs {
            return fail(format!("nlp: u = {u}, j = {j}"));
        }
    }
    Ok(())
}

/// `u_j(n) = r_j(theta_{n-1})` and, for Hahn, the three-term identity
/// linking `sigma_n u_j(n) + sigma_{n+1} u_j(n+1)` to differences of
/// `u_{j+1}` and `u_j`.
pub fn ulll(spec: &FamilySpec, jmax: usize, nmax: i64) -> Check {
    let hahn_s = match spec {
        FamilySpec::Hahn { alpha, c, n } => Some(alpha + c - n),
        FamilySpec::Jacobi { .. } => None,
        other => return fail(format!("ulll: {} has no r_j basis", other.name())),
    };
    let e = |e: crate::error::Error| e.to_string();
    for j in 0..=jmax {
        let rj = spec.r_j(j).map_err(e)?;
        if rj.degree() != Some(j) {
            return fail(format!("ulll: deg r_{j}"));
        }
        for m in 0..=nmax {
            let u = spec.u_j(j, m).map_err(e)?;
            if u != rj.eval(&spec.theta(m - 1).map_err(e)?) {
                return fail(format!("ulll: u_{j}({m}) != r_{j}(theta)"));
            }
            if let Some(s) = &hahn_s {
                let jj = int(j as i64);
                let lhs = spec.sigma(m).map_err(e)? * &u + spec.sigma(m + 1).map_err(e)? * spec.u_j(j, m + 1).map_err(e)?;
                let rhs = int(-2) * (spec.u_j(j + 1, m + 1).map_err(e)? - spec.u_j(j + 1, m).map_err(e)?)
                    / (&jj + int(1))
                    + (-s + int(2) * (&jj + int(1))) * (spec.u_j(j, m + 1).map_err(e)? - &u);
                if lhs != rhs {
                    return fail(format!("ulll: three-term identity j = {j}, n = {m}"));
                }
            }
        }
    }
    Ok(())
}

/// `(c)_n (1-N)_n R_k(n(n+s)) = (c)_k (1-N)_k (n+s)_n h_n(k)` for
/// `k <= kmax`, `n <= nmax`.
pub fn hahn_dual_duality(alpha: &Rational, c: &Rational, big_n: &Rational, kmax: usize, nmax: usize) -> Check {
    let h = FamilySpec::hahn(alpha.clone(), c.clone(), big_n.clone()).map_err(|e| e.to_string())?;
    let s = alpha + c - big_n;
    let one = Rational::one();
    let polys = h.polys(nmax).map_err(|e| e.to_string())?;
    for k in 0..=kmax {
        let dual = dual_hahn_generic(alpha, c, big_n, k);
        for (m, pm) in polys.iter().enumerate() {
            let mm = int(m as i64);
            let lhs = pochhammer(c, m) * pochhammer(&(&one - big_n), m) * dual.eval(&(&mm * (&mm + &s)));
            let rhs = pochhammer(c, k)
                * pochhammer(&(&one - big_n), k)
                * pochhammer(&(&mm + &s), m)
                * pm.eval(&int(k as i64));
            if lhs != rhs {
                return fail(format!("duality: k = {k}, n = {m}"));
            }
        }
    }
    Ok(())
}

/// Second-order difference equation of `h*_{1,k}` on the quadratic lattice
/// and the first-order relation lowering `c` by one, for `k <= kmax`.
pub fn dual_hahn_equations(alpha: &Rational, c: &Rational, big_n: &Rational, kmax: usize) -> Check {
    let one = Rational::one();
    let x = Polynomial::x;
    let lin = |k: i64, b: Rational| Polynomial::new(vec![b, int(k)]);
    let shift = int(2) + big_n - alpha - c;
    let lam = |l: i64| lattice(&shift).shift(&int(l));
    let s0 = -alpha - c + big_n;
    let rr = -(&(&(&x() * &lin(1, big_n.clone())) * &lin(1, big_n - alpha)) * &lin(2, &s0 + int(3)));
    let ss = &(&(&lin(1, &s0 + int(2)) * &lin(1, -alpha - c + int(2))) * &lin(1, -c + int(2)))
        * &lin(2, &s0 + &one);
    let uu = &(&lin(2, &s0 + &one) * &lin(2, &s0 + int(2))) * &lin(2, &s0 + int(3));
    let e = |e: crate::error::Error| e.to_string();
    for k in 0..=kmax {
        let h = dual_hahn_poly(1, alpha, c, big_n, k).map_err(e)?;
        let hm = h.compose(&lam(-1));
        let h0 = h.compose(&lam(0));
        let hp = h.compose(&lam(1));
        let lhs = &(&(&rr * &hm) - &(&(&rr + &ss) * &h0)) + &(&ss * &hp);
        if lhs != (&uu * &h0).scale(&int(k as i64)) {
            return fail(format!("second-order equation k = {k}"));
        }
        if k >= 1 {
            let lower = dual_hahn_poly(1, alpha, &(c - &one), big_n, k - 1).map_err(e)?;
            let lat_lower = lattice(&(int(3) + big_n - alpha - c));
            let rhs = &lin(2, &s0 + int(3)).scale(&int(k as i64)) * &lower.compose(&lat_lower);
            if &hp - &h0 != rhs {
                return fail(format!("first-order equation k = {k}"));
            }
        }
    }
    Ok(())
}
