//! The construction engine: from a family, one of its D-operators and a
//! polynomial `P2`, build `q_n = p_n + beta_n p_{n-1}` together with an
//! operator `D_q` having the `q_n` as eigenfunctions.

use crate::dops::{catalog, DKind, DOperatorSpec, Seq};
use crate::error::{Error, Result};
use crate::families::{dual_hahn_poly, FamilySpec};
use crate::moments::{self, IpKind, MomentFunctional};
use crate::opalg::{poly_of_op, scalar, Operator};
use crate::poly::{antidifference, expand_in_basis, Polynomial};
use crate::rational::{as_integer, factorial, format_rational, int, is_nonpositive_integer, pochhammer, Rational};
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;
use std::fmt;
use std::sync::Arc;

#[derive(Clone)]
pub struct KrallConstruction {
    pub family: FamilySpec,
    pub dop: DOperatorSpec,
    /// `None` when the eigenvalues are not polynomial in `theta_n`
    /// (Koornwinder masses with non-integer parameter).
    pub p1: Option<Polynomial>,
    pub p2: Option<Polynomial>,
    pub gamma: Seq,
    pub lambda: Seq,
    pub beta: Seq,
    pub dq: Option<Operator>,
    pub lambda0: Rational,
    pub label: String,
    pub notes: Vec<String>,
}

impl fmt::Debug for KrallConstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("KrallConstruction")
            .field("label", &self.label)
            .field("family", &self.family)
            .field("dop", &self.dop.label)
            .field("p1", &self.p1)
            .field("p2", &self.p2)
            .finish()
    }
}

impl KrallConstruction {
    pub fn gamma(&self, n: i64) -> Result<Rational> {
        (self.gamma)(n)
    }

    pub fn lambda(&self, n: i64) -> Result<Rational> {
        (self.lambda)(n)
    }

    pub fn beta(&self, n: i64) -> Result<Rational> {
        (self.beta)(n)
    }

    /// `deg P2`, when there is a `P2`.
    pub fn k(&self) -> Option<usize> {
        self.p2.as_ref().and_then(|p| p.degree())
    }

    pub fn q(&self, n: usize) -> Result<Polynomial> {
        let p = self.family.poly(n)?;
        if n == 0 {
            return Ok(p);
        }
        let prev = self.family.poly(n - 1)?;
        Ok(&p + &prev.scale(&self.beta(n as i64)?))
    }

    pub fn qs(&self, nmax: usize) -> Result<Vec<Polynomial>> {
        let ps = self.family.polys(nmax)?;
        let mut out = vec![ps[0].clone()];
        for n in 1..=nmax {
            out.push(&ps[n] + &ps[n - 1].scale(&self.beta(n as i64)?));
        }
        Ok(out)
    }

    /// Copy with `beta_n` replaced. Used for negative controls.
    pub fn with_beta(&self, beta: Seq) -> Self {
        let mut out = self.clone();
        out.beta = beta;
        out
    }

    /// Construction plus sequence tables up to `nmax`, as JSON.
    pub fn to_json(&self, nmax: usize) -> Result<serde_json::Value> {
        let mut rows = Vec::new();
        for n in 0..=nmax {
            let ni = n as i64;
            rows.push(serde_json::json!({
                "n": n,
                "beta": if n == 0 { None } else { Some(format_rational(&self.beta(ni)?)) },
                "gamma": if n == 0 { None } else { Some(format_rational(&self.gamma(ni)?)) },
                "lambda": format_rational(&self.lambda(ni)?),
                "q": self.q(n)?,
            }));
        }
        Ok(serde_json::json!({
            "label": self.label,
            "family": self.family,
            "d_operator": self.dop.label,
            "p1": self.p1,
            "p2": self.p2,
            "lambda0": format_rational(&self.lambda0),
            "dq": self.dq,
            "table": rows,
            "notes": self.notes,
        }))
    }
}

fn hypothesis(theorem: &str, detail: impl Into<String>, n: i64) -> Error {
    Error::Hypothesis {
        theorem: theorem.to_string(),
        detail: detail.into(),
        n,
    }
}

/// Require `gamma_n != 0` for `1 <= n <= nmax + 1`: these are the values
/// actually divided by or used in `beta_n`, `n <= nmax`.
fn check_gamma(label: &str, gamma: &Seq, nmax: usize) -> Result<()> {
    for n in 1..=nmax as i64 + 1 {
        if gamma(n)?.is_zero() {
            return Err(hypothesis(label, "gamma_n vanishes", n));
        }
    }
    Ok(())
}

fn beta_seq(eps: Seq, gamma: Seq) -> Seq {
    Arc::new(move |n| Ok(eps(n)? * gamma(n + 1)? / gamma(n)?))
}

/// Type-1 construction with `P1` the antidifference of `P2` vanishing at 0.
pub fn construct_type1(
    family: &FamilySpec,
    dop: &DOperatorSpec,
    p2: &Polynomial,
    nmax: usize,
) -> Result<KrallConstruction> {
    let d = theta_step(family)?;
    let p1 = antidifference(p2, &d)?;
    construct_type1_with_p1(family, dop, &p1, nmax)
}

fn theta_step(family: &FamilySpec) -> Result<Rational> {
    family.theta_step().ok_or_else(|| {
        Error::WrongConstruction(format!(
            "{} has non-affine eigenvalues; use the type-2 construction",
            family.name()
        ))
    })
}

/// Type-1 construction from a prescribed `P1`; `P2(x) = P1(x + d) - P1(x)`.
pub fn construct_type1_with_p1(
    family: &FamilySpec,
    dop: &DOperatorSpec,
    p1: &Polynomial,
    nmax: usize,
) -> Result<KrallConstruction> {
    if dop.kind != DKind::Type1 {
        return Err(Error::WrongConstruction(format!(
            "{} is not a type-1 D-operator",
            dop.label
        )));
    }
    let d = theta_step(family)?;
    let p2 = &p1.shift(&d) - p1;
    if p2.is_zero() {
        return Err(Error::WrongConstruction("P1 is constant".into()));
    }
    let fam = family.clone();
    let p2c = p2.clone();
    let gamma: Seq = Arc::new(move |n| Ok(p2c.eval(&fam.theta(n - 1)?)));
    let label = format!("type1/{}", dop.label);
    check_gamma(&label, &gamma, nmax)?;
    let fam = family.clone();
    let p1c = p1.clone();
    let lambda: Seq = Arc::new(move |n| Ok(p1c.eval(&fam.theta(n)?)));
    let beta = beta_seq(dop.eps.clone(), gamma.clone());
    let dp = family.second_order_op()?;
    let dq = poly_of_op(p1, &dp).add(&dop.closed_form.compose(&poly_of_op(&p2, &dp))?)?;
    Ok(KrallConstruction {
        family: family.clone(),
        dop: dop.clone(),
        p1: Some(p1.clone()),
        p2: Some(p2),
        lambda0: lambda(0)?,
        gamma,
        lambda,
        beta,
        dq: Some(dq),
        label,
        notes: Vec::new(),
    })
}

/// Bring the D-operator's sigma in line with the family's sigma_n,
/// negating it (and its closed form) when it is the opposite sign.
fn normalize_sigma(family: &FamilySpec, dop: &DOperatorSpec) -> Result<(DOperatorSpec, bool)> {
    let same = (1..=3).all(|n| dop.sigma(n).ok() == family.sigma(n).ok());
    if same {
        return Ok((dop.clone(), false));
    }
    let opposite = (1..=3).all(|n| match (dop.sigma(n), family.sigma(n)) {
        (Ok(a), Ok(b)) => a == -b,
        _ => false,
    });
    if opposite {
        return Ok((dop.negated(), true));
    }
    Err(Error::WrongConstruction(format!(
        "sigma of {} is neither sigma_n nor -sigma_n",
        dop.label
    )))
}

/// `P1` of the type-2 theorems from the `r_j` coordinates of `P2`.
pub fn type2_p1(family: &FamilySpec, w: &[Rational]) -> Result<Polynomial> {
    let mut out = Polynomial::zero();
    for (j, wj) in w.iter().enumerate() {
        if wj.is_zero() {
            continue;
        }
        let jj = int(j as i64);
        let j1 = &jj + int(1);
        let (c_next, c_same) = match family {
            FamilySpec::Hahn { alpha, c, n } => {
                (int(-2) / &j1, -alpha - c + n + int(2) * &j1)
            }
            FamilySpec::Jacobi { alpha, beta } => {
                (int(2) / &j1, alpha - beta + int(2) * &jj + int(1))
            }
            _ => return Err(Error::WrongConstruction("type 2 needs Hahn or Jacobi".into())),
        };
        let term = &family.r_j(j + 1)?.scale(&c_next) + &family.r_j(j)?.scale(&c_same);
        out += &term.scale(wj);
    }
    Ok(out)
}

/// Type-2 construction from the coordinates `w` of `P2` in the `r_j` basis.
pub fn construct_type2(
    family: &FamilySpec,
    dop: &DOperatorSpec,
    w: &[Rational],
    nmax: usize,
) -> Result<KrallConstruction> {
    if dop.kind != DKind::Type2 {
        return Err(Error::WrongConstruction(format!(
            "{} is not a type-2 D-operator",
            dop.label
        )));
    }
    let k = w.iter().rposition(|v| !v.is_zero()).unwrap_or(0);
    if k == 0 {
        return Err(Error::WrongConstruction("type-2 construction needs deg P2 >= 1".into()));
    }
    let w: Vec<Rational> = w[..=k].to_vec();
    let (dop, negated) = normalize_sigma(family, dop)?;
    let mut p2 = Polynomial::zero();
    for (j, wj) in w.iter().enumerate() {
        p2 += &family.r_j(j)?.scale(wj);
    }
    let p1 = type2_p1(family, &w)?;
    let label = format!("type2/{}", dop.label);

    let (fam, wc) = (family.clone(), w.clone());
    let gamma: Seq = Arc::new(move |n| {
        let mut g = Rational::zero();
        for (j, wj) in wc.iter().enumerate() {
            g += wj * fam.u_j(j, n)?;
        }
        Ok(g)
    });
    check_gamma(&label, &gamma, nmax)?;
    let lambda0 = (p1.eval(&family.theta(0)?) - family.sigma(1)? * p2.eval(&family.theta(0)?)) / int(2);
    let (fam, p1c, g2, l0) = (family.clone(), p1.clone(), gamma.clone(), lambda0.clone());
    let lambda: Seq = Arc::new(move |n| {
        if n == 0 {
            return Ok(l0.clone());
        }
        Ok((fam.sigma(n)? * g2(n)? + p1c.eval(&fam.theta(n - 1)?)) / int(2))
    });
    let beta = beta_seq(dop.eps.clone(), gamma.clone());
    let dp = family.second_order_op()?;
    let half = Rational::one() / int(2);
    let dq = poly_of_op(&p1, &dp)
        .scale(&half)
        .add(&dop.closed_form.compose(&poly_of_op(&p2, &dp))?)?;
    let mut notes = Vec::new();
    if negated {
        notes.push(format!(
            "{} carries -sigma_n; used with sigma and closed form negated",
            dop.label.trim_start_matches('-')
        ));
    }
    Ok(KrallConstruction {
        family: family.clone(),
        dop,
        p1: Some(p1),
        p2: Some(p2),
        gamma,
        lambda,
        beta,
        dq: Some(dq),
        lambda0,
        label,
        notes,
    })
}

/// `D_{q,G} = P1^G(D_p) + G(D_p) D P2(D_p)` for a type-1 construction, with
/// `P1^G` the antidifference of `G P2` plus the constant of `kc.p1`.
pub fn generalized_operator(kc: &KrallConstruction, g: &Polynomial) -> Result<(Operator, Polynomial)> {
    if kc.dop.kind != DKind::Type1 {
        return Err(Error::Unsupported("generalized operator is type-1 only".into()));
    }
    let d = kc
        .family
        .theta_step()
        .ok_or_else(|| Error::Unsupported("non-affine eigenvalues".into()))?;
    let (Some(p1), Some(p2)) = (&kc.p1, &kc.p2) else {
        return Err(Error::Unsupported("construction has no P1, P2".into()));
    };
    let p1g = &antidifference(&(g * p2), &d)? + &Polynomial::constant(p1.eval(&Rational::zero()));
    let dp = kc.family.second_order_op()?;
    let tail = poly_of_op(g, &dp).compose(&kc.dop.closed_form.compose(&poly_of_op(p2, &dp))?)?;
    Ok((poly_of_op(&p1g, &dp).add(&tail)?, p1g))
}

#[derive(Clone, Debug, Serialize)]
pub struct EigenFailure {
    pub n: usize,
    pub lhs: Option<Polynomial>,
    pub rhs: Option<Polynomial>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct EigenReport {
    pub label: String,
    pub nmax: usize,
    pub failures: Vec<EigenFailure>,
    /// `n` where `D_q(q_n)` has a p-coefficient outside offsets 0, 1, or the
    /// offsets 0, 1 differ from `lambda_n`, `lambda_n beta_n`.
    pub p_basis_failures: Vec<usize>,
    pub order: Option<i64>,
    pub genre: Option<(i64, i64)>,
    pub expected_order: Option<i64>,
    pub expected_genre: Option<(i64, i64)>,
}

impl EigenReport {
    pub fn shape_ok(&self) -> bool {
        self.order == self.expected_order
            && (self.expected_genre.is_none() || self.genre == self.expected_genre)
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.p_basis_failures.is_empty() && self.shape_ok()
    }
}

/// Exact check of `D_q(q_n) = lambda_n q_n` for `n = 0..=nmax`, plus the
/// p-basis form of the same statement and the operator's order and genre.
pub fn verify_eigen(kc: &KrallConstruction, nmax: usize) -> EigenReport {
    let k = kc.k().map(|k| k as i64);
    let mut rep = EigenReport {
        label: kc.label.clone(),
        nmax,
        failures: Vec::new(),
        p_basis_failures: Vec::new(),
        order: None,
        genre: None,
        expected_order: k.map(|k| 2 * k + 2),
        expected_genre: None,
    };
    let Some(dq) = &kc.dq else {
        rep.failures.push(EigenFailure {
            n: 0,
            lhs: None,
            rhs: None,
            error: Some("construction has no operator".into()),
        });
        return rep;
    };
    if let Ok((s, r, order)) = dq.genre_order() {
        rep.order = Some(order);
        if dq.as_difference().is_some() {
            rep.genre = Some((s, r));
            rep.expected_genre = k.map(|k| (-k - 1, k + 1));
        }
    }
    let ps = match kc.family.polys(nmax) {
        Ok(ps) => ps,
        Err(e) => {
            rep.failures.push(EigenFailure {
                n: 0,
                lhs: None,
                rhs: None,
                error: Some(e.to_string()),
            });
            return rep;
        }
    };
    // (failure, p-basis failure) per n, in order
    let results: Vec<(Option<EigenFailure>, bool)> = (0..=nmax)
        .into_par_iter()
        .map(|n| {
            let run = || -> Result<(Polynomial, Polynomial, bool)> {
                let q = kc.q(n)?;
                let lam = kc.lambda(n as i64)?;
                let lhs = dq.apply(&q);
                let rhs = q.scale(&lam);
                let coeffs = expand_in_basis(&lhs, &ps[..=n])?;
                let mut ok = true;
                for (m, c) in coeffs.iter().enumerate() {
                    let expected = if m == n {
                        lam.clone()
                    } else if m + 1 == n {
                        &lam * kc.beta(n as i64)?
                    } else {
                        Rational::zero()
                    };
                    ok &= *c == expected;
                }
                if lhs.is_zero() && !lam.is_zero() {
                    ok = false;
                }
                Ok((lhs, rhs, ok))
            };
            match run() {
                Ok((lhs, rhs, ok)) if lhs == rhs => (None, !ok),
                Ok((lhs, rhs, ok)) => (
                    Some(EigenFailure {
                        n,
                        lhs: Some(lhs),
                        rhs: Some(rhs),
                        error: None,
                    }),
                    !ok,
                ),
                Err(e) => (
                    Some(EigenFailure {
                        n,
                        lhs: None,
                        rhs: None,
                        error: Some(e.to_string()),
                    }),
                    true,
                ),
            }
        })
        .collect();
    for (n, (fail, pfail)) in results.into_iter().enumerate() {
        if let Some(f) = fail {
            rep.failures.push(f);
        }
        if pfail {
            rep.p_basis_failures.push(n);
        }
    }
    rep
}

#[derive(Clone, Debug, Serialize)]
pub struct BandRow {
    pub n: usize,
    pub offsets: Vec<i64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BandReport {
    pub multiplier: Polynomial,
    pub rows: Vec<BandRow>,
}

impl BandReport {
    pub fn span(&self) -> Option<(i64, i64)> {
        let all = self.rows.iter().flat_map(|r| r.offsets.iter().copied());
        let v: Vec<i64> = all.collect();
        Some((*v.iter().min()?, *v.iter().max()?))
    }

    pub fn within(&self, lo: i64, hi: i64) -> bool {
        self.rows
            .iter()
            .all(|r| r.offsets.iter().all(|&j| lo <= j && j <= hi))
    }
}

/// Nonzero offsets `j` in `multiplier * q_n = sum_j a_{n,j} q_{n+j}`.
pub fn band_profile(kc: &KrallConstruction, multiplier: &Polynomial, nmax: usize) -> Result<BandReport> {
    let m = multiplier.degree().unwrap_or(0);
    let qs = kc.qs(nmax + m)?;
    let mut rows = Vec::new();
    for n in 0..=nmax {
        let coeffs = expand_in_basis(&(multiplier * &qs[n]), &qs)?;
        let offsets = coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, _)| i as i64 - n as i64)
            .collect();
        rows.push(BandRow { n, offsets });
    }
    Ok(BandReport {
        multiplier: multiplier.clone(),
        rows,
    })
}

// --- named constructions --------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Theorem {
    Charlier,
    Meixner1,
    Meixner2,
    Krawtchouk,
    Hahn1,
    Hahn2,
    Laguerre,
    Jacobi,
}

impl Theorem {
    pub const ALL: [Theorem; 8] = [
        Theorem::Charlier,
        Theorem::Meixner1,
        Theorem::Meixner2,
        Theorem::Krawtchouk,
        Theorem::Hahn1,
        Theorem::Hahn2,
        Theorem::Laguerre,
        Theorem::Jacobi,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Theorem::Charlier => "charlier",
            Theorem::Meixner1 => "meixner1",
            Theorem::Meixner2 => "meixner2",
            Theorem::Krawtchouk => "krawtchouk",
            Theorem::Hahn1 => "hahn1",
            Theorem::Hahn2 => "hahn2",
            Theorem::Laguerre => "laguerre",
            Theorem::Jacobi => "jacobi",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|t| t.name() == s)
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Parameters for the named constructions; each theorem reads the fields it
/// needs. `mass` is the rescaled Koornwinder mass `K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedParams {
    pub k: usize,
    pub a: Rational,
    pub c: Rational,
    pub big_n: Rational,
    pub alpha: Rational,
    pub beta: Rational,
    pub mass: Rational,
}

impl Default for NamedParams {
    fn default() -> Self {
        Self {
            k: 1,
            a: int(1),
            c: int(0),
            big_n: int(0),
            alpha: int(0),
            beta: int(0),
            mass: int(1),
        }
    }
}

impl NamedParams {
    /// The entries a theorem actually uses, for reports.
    pub fn used(&self, t: Theorem) -> Vec<(&'static str, String)> {
        let f = format_rational;
        match t {
            Theorem::Charlier => vec![("k", self.k.to_string()), ("a", f(&self.a))],
            Theorem::Meixner1 | Theorem::Meixner2 => vec![
                ("k", self.k.to_string()),
                ("a", f(&self.a)),
                ("c", f(&self.c)),
            ],
            Theorem::Krawtchouk => vec![
                ("k", self.k.to_string()),
                ("a", f(&self.a)),
                ("N", f(&self.big_n)),
            ],
            Theorem::Hahn1 | Theorem::Hahn2 => vec![
                ("k", self.k.to_string()),
                ("alpha", f(&self.alpha)),
                ("c", f(&self.c)),
                ("N", f(&self.big_n)),
            ],
            Theorem::Laguerre => vec![("alpha", f(&self.alpha)), ("mass", f(&self.mass))],
            Theorem::Jacobi => vec![
                ("alpha", f(&self.alpha)),
                ("beta", f(&self.beta)),
                ("mass", f(&self.mass)),
            ],
        }
    }
}

/// `K` from the raw mass `M` for integer `alpha`: `K = M alpha!`.
pub fn laguerre_mass_from_m(alpha: &Rational, m: &Rational) -> Result<Rational> {
    match as_integer(alpha) {
        Some(a) if a >= 0 => Ok(m * factorial(a as usize)),
        _ => Err(Error::Unsupported("raw M needs a nonnegative integer alpha".into())),
    }
}

/// `K` from the raw mass `M` for integer `beta`: `K = M beta! (alpha+1)_beta`.
pub fn jacobi_mass_from_m(alpha: &Rational, beta: &Rational, m: &Rational) -> Result<Rational> {
    match as_integer(beta) {
        Some(b) if b >= 0 => {
            let b = b as usize;
            Ok(m * factorial(b) * pochhammer(&(alpha + int(1)), b))
        }
        _ => Err(Error::Unsupported("raw M needs a nonnegative integer beta".into())),
    }
}

#[derive(Clone, Debug)]
pub struct Named {
    pub theorem: Theorem,
    pub construction: KrallConstruction,
    pub measure: MomentFunctional,
    /// Hypothesis ranges as stated in the various places, and whether they
    /// hold at the checked points.
    pub ranges: Vec<(String, bool)>,
}

fn find_dop(family: &FamilySpec, label: &str) -> Result<DOperatorSpec> {
    catalog(family)?
        .into_iter()
        .find(|d| d.label == label)
        .ok_or_else(|| Error::Unsupported(format!("no D-operator {label}")))
}

fn neg_x_over(s: &Rational, shift: &Rational) -> Polynomial {
    // x / s + shift
    Polynomial::new(vec![shift.clone(), s.recip()])
}

fn range_check(values: impl Iterator<Item = Result<Rational>>) -> Result<bool> {
    for v in values {
        if v?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The named construction of a theorem together with its target measure.
pub fn named(theorem: Theorem, p: &NamedParams, nmax: usize) -> Result<Named> {
    let one = Rational::one();
    let k = p.k;
    let kk = int(k as i64);
    let need_k = || {
        if k == 0 {
            Err(Error::Unsupported("k must be at least 1".into()))
        } else {
            Ok(())
        }
    };
    let top = nmax as i64 + 1;
    match theorem {
        Theorem::Charlier => {
            need_k()?;
            let fam = FamilySpec::charlier(p.a.clone())?;
            let dual = FamilySpec::charlier(-p.a.clone())?;
            let p1 = -dual.poly(k + 1)?;
            let ck = dual.poly(k)?;
            let kc = construct_type1_with_p1(&fam, &find_dop(&fam, "Charlier-nabla")?, &p1, nmax)
                .map_err(|e| rename(e, "charlier"))?;
            same_poly(&kc, &ck.shift(&-one.clone()))?;
            let ranges = vec![
                (
                    format!("c_k^(-a)(-n) != 0, n = 1..={top}"),
                    range_check((1..=top).map(|n| Ok(ck.eval(&int(-n)))))?,
                ),
                (
                    "c_k^(-a)(-n) != 0 also at n = 0, -1".into(),
                    range_check((-1..=0).map(|n| Ok(ck.eval(&int(-n)))))?,
                ),
            ];
            Ok(Named {
                theorem,
                construction: labelled(kc, theorem),
                measure: moments::charlier_tilde(k, &p.a)?,
                ranges,
            })
        }
        Theorem::Meixner1 | Theorem::Meixner2 => {
            need_k()?;
            if is_nonpositive_integer(&(&p.c - &kk - &one)) {
                return Err(Error::Inadmissible {
                    family: "meixner".into(),
                    reason: format!("c must avoid {}, {}, ...", k + 1, k),
                });
            }
            let (a, c) = (&p.a, &p.c);
            let fam = FamilySpec::meixner(a.clone(), c.clone())?;
            let am1 = a - &one;
            let scaled = Polynomial::new(vec![Rational::zero(), -am1.recip()]);
            let shifted = Polynomial::new(vec![-one.clone(), -am1.recip()]);
            let (p1, p2, dop_label, measure, first) = if theorem == Theorem::Meixner1 {
                let m1 = FamilySpec::meixner(a.recip(), &one - c)?.poly(k + 1)?;
                let m2 = FamilySpec::meixner(a.recip(), int(2) - c)?.poly(k)?;
                (
                    m1.compose(&scaled).scale(&am1.recip()),
                    m2.compose(&shifted),
                    "Meixner-D1",
                    moments::meixner1_tilde(k, a, c)?,
                    m2,
                )
            } else {
                let m1 = FamilySpec::meixner(a.clone(), &one - c)?.poly(k + 1)?;
                let m2 = FamilySpec::meixner(a.clone(), int(2) - c)?.poly(k)?;
                (
                    m1.compose(&scaled).scale(&(-a / &am1)),
                    m2.compose(&shifted),
                    "Meixner-D2",
                    moments::meixner2_tilde(k, a, c)?,
                    m2,
                )
            };
            let kc = construct_type1_with_p1(&fam, &find_dop(&fam, dop_label)?, &p1, nmax)
                .map_err(|e| rename(e, theorem.name()))?;
            same_poly(&kc, &p2)?;
            let mut kc = labelled(kc, theorem);
            if theorem == Theorem::Meixner1 {
                kc.notes.push(
                    "operator assembled with (a/(1-a)) Delta from the catalog; \
                     the nabla form does not have the q_n as eigenfunctions"
                        .into(),
                );
            }
            let ranges = vec![(
                format!("gamma_n = m_k(-n) != 0, n = 1..={top}"),
                range_check((1..=top).map(|n| Ok(first.eval(&int(-n)))))?,
            )];
            Ok(Named {
                theorem,
                construction: kc,
                measure,
                ranges,
            })
        }
        Theorem::Krawtchouk => {
            need_k()?;
            let (a, big_n) = (&p.a, &p.big_n);
            let fam = FamilySpec::krawtchouk(a.clone(), big_n.clone())?;
            let a1 = &one + a;
            let k1 = FamilySpec::krawtchouk(a.clone(), &one - big_n)?.poly(k + 1)?;
            let k2 = FamilySpec::krawtchouk(a.clone(), -big_n.clone())?.poly(k)?;
            let p1 = -k1.compose(&neg_x_over(&a1, &Rational::zero()));
            let p2 = k2.compose(&neg_x_over(&a1, &-one.clone()));
            let kc = construct_type1_with_p1(&fam, &find_dop(&fam, "Krawtchouk-D1")?, &p1, nmax)
                .map_err(|e| rename(e, "krawtchouk"))?;
            same_poly(&kc, &p2)?;
            let mut kc = labelled(kc, theorem);
            kc.notes.push(
                "beta_n = gamma_(n+1) / ((1+a) gamma_n), without an extra factor n".into(),
            );
            let ranges = vec![(
                format!("k_k^(a,-N)(-n) != 0, n = 1..={top}"),
                range_check((1..=top).map(|n| Ok(k2.eval(&int(-n)))))?,
            )];
            Ok(Named {
                theorem,
                construction: kc,
                measure: moments::krawtchouk_tilde(k, a, big_n)?,
                ranges,
            })
        }
        Theorem::Hahn1 | Theorem::Hahn2 => {
            need_k()?;
            let (alpha, c, big_n) = (&p.alpha, &p.c, &p.big_n);
            let ip = if theorem == Theorem::Hahn1 { IpKind::HahnI } else { IpKind::HahnII };
            moments::check_hahn_conditions(ip, k, alpha, c, big_n)?;
            let fam = FamilySpec::hahn(alpha.clone(), c.clone(), big_n.clone())?;
            let w: Vec<Rational> = (0..=k)
                .map(|j| {
                    let jj = int(j as i64);
                    let head = pochhammer(&-&kk, j) * pochhammer(&(int(2) - c + &jj), k - j);
                    let tail = if theorem == Theorem::Hahn1 {
                        pochhammer(&(int(2) - alpha - c + &jj), k - j)
                    } else {
                        pochhammer(&(big_n + &one + &jj), k - j)
                    };
                    head * tail / factorial(j)
                })
                .collect();
            let (dop_label, variant) = if theorem == Theorem::Hahn1 {
                ("Hahn-D1", 1)
            } else {
                ("Hahn-D2", 2)
            };
            let kc = construct_type2(&fam, &find_dop(&fam, dop_label)?, &w, nmax)
                .map_err(|e| rename(e, theorem.name()))?;
            let hstar = dual_hahn_poly(variant, alpha, c, big_n, k)?;
            same_poly(&kc, &hstar)?;
            // P1 as printed: s P2 + 2(x - s + 1) sum w_j/(j+1) r_j
            let s = alpha + c - big_n;
            let mut sum = Polynomial::zero();
            for (j, wj) in w.iter().enumerate() {
                sum += &fam.r_j(j)?.scale(&(wj / int(j as i64 + 1)));
            }
            let printed = &hstar.scale(&s)
                + &(&Polynomial::new(vec![-&s + &one, one.clone()]) * &sum).scale(&int(2));
            if kc.p1.as_ref() != Some(&printed) {
                return Err(Error::WrongConstruction(format!(
                    "{theorem}: P1 from the r_j formula differs from the closed form"
                )));
            }
            let ranges = vec![
                (
                    format!("h*_k(theta_(n-1)) != 0, n = 1..={top}"),
                    range_check((1..=top).map(|n| kc.gamma(n)))?,
                ),
                ("h*_k(theta_(n-1)) != 0 at n = 0".into(), range_check(std::iter::once(kc.gamma(0)))?),
            ];
            let measure = if theorem == Theorem::Hahn1 {
                moments::hahn1_tilde(k, alpha, c, big_n)?
            } else {
                moments::hahn2_tilde(k, alpha, c, big_n)?
            };
            Ok(Named {
                theorem,
                construction: labelled(kc, theorem),
                measure,
                ranges,
            })
        }
        Theorem::Laguerre => named_laguerre(p, nmax),
        Theorem::Jacobi => named_jacobi(p, nmax),
    }
}

fn rename(e: Error, theorem: &str) -> Error {
    match e {
        Error::Hypothesis { detail, n, .. } => Error::Hypothesis {
            theorem: theorem.to_string(),
            detail,
            n,
        },
        other => other,
    }
}

fn labelled(mut kc: KrallConstruction, t: Theorem) -> KrallConstruction {
    kc.label = t.name().to_string();
    kc
}

/// The derived `P2` must agree with the theorem's closed form.
fn same_poly(kc: &KrallConstruction, expected: &Polynomial) -> Result<()> {
    if kc.p2.as_ref() == Some(expected) {
        Ok(())
    } else {
        Err(Error::WrongConstruction(format!(
            "{}: P2 derived from P1 is {}, closed form is {}",
            kc.label,
            kc.p2.as_ref().map(|p| p.to_pretty()).unwrap_or_default(),
            expected.to_pretty()
        )))
    }
}

fn named_laguerre(p: &NamedParams, nmax: usize) -> Result<Named> {
    let one = Rational::one();
    let (alpha, mass) = (&p.alpha, &p.mass);
    let measure = moments::laguerre_tilde(alpha, mass)?;
    let fam = FamilySpec::laguerre(alpha.clone())?;
    let dop = find_dop(&fam, "Laguerre-d/dx")?;
    let ranges_for = |kc: &KrallConstruction| -> Result<Vec<(String, bool)>> {
        Ok(vec![(
            format!("gamma_n != 0, n = 1..={}", nmax + 1),
            range_check((1..=nmax as i64 + 1).map(|n| kc.gamma(n)))?,
        )])
    };
    if let Some(ai) = as_integer(alpha).filter(|&a| a >= 1) {
        let ai = ai as usize;
        let m = mass / factorial(ai);
        let negx = Polynomial::from_ints(&[0, -1]);
        let prod = |from: i64, to: i64| {
            (from..=to).fold(Polynomial::one(), |acc, i| &acc * &(&negx + &Polynomial::constant(int(i))))
        };
        let p2 = &Polynomial::one() + &prod(1, ai as i64).scale(&m);
        let p1 = &negx + &prod(0, ai as i64).scale(&(&m / (alpha + &one)));
        let kc = construct_type1_with_p1(&fam, &dop, &p1, nmax).map_err(|e| rename(e, "laguerre"))?;
        same_poly(&kc, &p2)?;
        let kc = labelled(kc, Theorem::Laguerre);
        let ranges = ranges_for(&kc)?;
        return Ok(Named {
            theorem: Theorem::Laguerre,
            construction: kc,
            measure,
            ranges,
        });
    }
    let a = alpha.clone();
    let mk = mass.clone();
    let gamma: Seq = Arc::new(move |n| {
        if n < 1 {
            return Err(Error::Unsupported("gamma_n is defined for n >= 1".into()));
        }
        let m = (n - 1) as usize;
        Ok(Rational::one() + &mk * pochhammer(&(&a + int(1)), m) / factorial(m))
    });
    check_gamma("laguerre", &gamma, nmax)?;
    let g2 = gamma.clone();
    let lambda: Seq = Arc::new(move |n| {
        let mut acc = Rational::zero();
        for m in 1..=n {
            acc += g2(m)?;
        }
        Ok(acc)
    });
    let beta = beta_seq(dop.eps.clone(), gamma.clone());
    let kc = KrallConstruction {
        family: fam,
        dop,
        p1: None,
        p2: None,
        gamma,
        lambda,
        beta,
        dq: None,
        lambda0: Rational::zero(),
        label: "laguerre".into(),
        notes: vec![
            "alpha is not a positive integer: gamma_n is not polynomial in n, so no finite-order operator; lambda_0 = 0".into(),
        ],
    };
    let ranges = ranges_for(&kc)?;
    Ok(Named {
        theorem: Theorem::Laguerre,
        construction: kc,
        measure,
        ranges,
    })
}

fn named_jacobi(p: &NamedParams, nmax: usize) -> Result<Named> {
    let one = Rational::one();
    let (alpha, beta, mass) = (&p.alpha, &p.beta, &p.mass);
    let measure = moments::jacobi_tilde(alpha, beta, mass)?;
    let fam = FamilySpec::jacobi(alpha.clone(), beta.clone())?;
    let dop = find_dop(&fam, "Jacobi-D1")?;
    let ranges_for = |kc: &KrallConstruction| -> Result<Vec<(String, bool)>> {
        Ok(vec![(
            format!("gamma_n != 0, n = 1..={}", nmax + 1),
            range_check((1..=nmax as i64 + 1).map(|n| kc.gamma(n)))?,
        )])
    };
    if let Some(bi) = as_integer(beta).filter(|&b| b >= 1) {
        let bi = bi as usize;
        let m = mass / (factorial(bi) * pochhammer(&(alpha + &one), bi));
        let mut w = vec![Rational::zero(); bi + 1];
        w[0] = one.clone();
        w[bi] += &m;
        let kc = construct_type2(&fam, &dop, &w, nmax).map_err(|e| rename(e, "jacobi"))?;
        // P1 as printed
        let rb = fam.r_j(bi)?;
        let lin = Polynomial::new(vec![alpha + beta + &one, int(-2) / (beta + &one)]);
        let printed = &Polynomial::new(vec![
            alpha * beta + (alpha + &one) * (beta + &one),
            int(-2),
        ]) + &(&lin * &rb).scale(&m);
        if kc.p1.as_ref() != Some(&printed) {
            return Err(Error::WrongConstruction(
                "jacobi: P1 from the r_j formula differs from the closed form".into(),
            ));
        }
        let kc = labelled(kc, Theorem::Jacobi);
        let ranges = ranges_for(&kc)?;
        return Ok(Named {
            theorem: Theorem::Jacobi,
            construction: kc,
            measure,
            ranges,
        });
    }
    let (a, b, mk) = (alpha.clone(), beta.clone(), mass.clone());
    let gamma: Seq = Arc::new(move |n| {
        if n < 1 {
            return Err(Error::Unsupported("gamma_n is defined for n >= 1".into()));
        }
        let m = (n - 1) as usize;
        let one = Rational::one();
        Ok(&one
            + &mk * pochhammer(&(&a + &b + &one), m) * pochhammer(&(&b + &one), m)
                / (pochhammer(&(&a + &one), m) * factorial(m)))
    });
    check_gamma("jacobi", &gamma, nmax)?;
    let (g2, f2) = (gamma.clone(), fam.clone());
    let lambda: Seq = Arc::new(move |n| {
        let mut acc = Rational::zero();
        for m in 1..=n {
            acc += f2.sigma(m)? * g2(m)?;
        }
        Ok(acc)
    });
    let beta_s = beta_seq(dop.eps.clone(), gamma.clone());
    let kc = KrallConstruction {
        family: fam,
        dop,
        p1: None,
        p2: None,
        gamma,
        lambda,
        beta: beta_s,
        dq: None,
        lambda0: Rational::zero(),
        label: "jacobi".into(),
        notes: vec![
            "beta is not a positive integer: gamma_n is not polynomial in n, so no finite-order operator; lambda_0 = 0".into(),
        ],
    };
    let ranges = ranges_for(&kc)?;
    Ok(Named {
        theorem: Theorem::Jacobi,
        construction: kc,
        measure,
        ranges,
    })
}

/// The operator with the given coefficient at `Sh_l`, for checks on the
/// extreme shifts of a difference construction.
pub fn extreme_coefficients(kc: &KrallConstruction) -> Option<(Polynomial, Polynomial)> {
    let d = kc.dq.as_ref()?.as_difference()?;
    let (s, r, _) = d.genre_order().ok()?;
    Some((d.coeff(s), d.coeff(r)))
}

/// `lambda_n I` as an operator of the construction's kind. Handy for
/// spectral checks.
pub fn lambda_scalar(kc: &KrallConstruction, n: i64) -> Result<Operator> {
    let kind = kc
        .dq
        .as_ref()
        .map(|d| d.kind())
        .ok_or_else(|| Error::Unsupported("no operator".into()))?;
    Ok(scalar(kind, kc.lambda(n)?))
}

#[cfg(test)]
mod tests;
