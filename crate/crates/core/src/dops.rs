//! D-operators: the series definition, the closed-form catalog and the
//! check that the two agree on p_0, ..., p_N.

use crate::error::{Error, Result};
use crate::families::FamilySpec;
use crate::opalg::{DifferenceOperator, DifferentialOperator, Operator};
use crate::poly::Polynomial;
use crate::rational::{format_rational, int, Rational};
use num_traits::{One, Zero};
use serde::Serialize;
use std::fmt;
use std::sync::Arc;

/// An exact sequence `n -> value`, evaluated lazily.
pub type Seq = Arc<dyn Fn(i64) -> Result<Rational> + Send + Sync>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DKind {
    Type1,
    Type2,
}

#[derive(Clone)]
pub struct DOperatorSpec {
    pub kind: DKind,
    pub eps: Seq,
    /// Only for type 2.
    pub sigma: Option<Seq>,
    pub closed_form: Operator,
    pub family: FamilySpec,
    pub label: String,
}

impl fmt::Debug for DOperatorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DOperatorSpec")
            .field("kind", &self.kind)
            .field("label", &self.label)
            .field("family", &self.family)
            .field("closed_form", &self.closed_form.to_string())
            .finish()
    }
}

fn constant_seq(c: Rational) -> Seq {
    Arc::new(move |_| Ok(c.clone()))
}

impl DOperatorSpec {
    pub fn eps(&self, n: i64) -> Result<Rational> {
        (self.eps)(n)
    }

    pub fn sigma(&self, n: i64) -> Result<Rational> {
        match &self.sigma {
            Some(s) => s(n),
            None => Err(Error::WrongConstruction(format!(
                "{} is a type-1 D-operator and has no sigma",
                self.label
            ))),
        }
    }

    /// Same D-operator with sigma and the closed form negated. The series is
    /// linear in sigma, so the two stay consistent.
    pub fn negated(&self) -> Self {
        let mut out = self.clone();
        if let Some(s) = self.sigma.clone() {
            out.sigma = Some(Arc::new(move |n| s(n).map(|v| -v)));
        }
        out.closed_form = self.closed_form.scale(&-Rational::one());
        out.label = format!("-{}", self.label);
        out
    }

    /// Replace the eps sequence, keeping everything else. Handy for negative
    /// controls and rescaled families.
    pub fn with_eps(&self, eps: Seq) -> Self {
        let mut out = self.clone();
        out.eps = eps;
        out
    }
}

/// The series applied to `polys[n]`, where `polys` plays the role of the
/// family (only `polys[0..=n]` is read).
pub fn series_on(
    kind: DKind,
    eps: &Seq,
    sigma: Option<&Seq>,
    polys: &[Polynomial],
    n: usize,
) -> Result<Polynomial> {
    let ni = n as i64;
    let mut out = match kind {
        DKind::Type1 => Polynomial::zero(),
        DKind::Type2 => {
            let s = sigma.ok_or_else(|| Error::WrongConstruction("type 2 needs sigma".into()))?;
            polys[n].scale(&(s(ni + 1)? / int(-2)))
        }
    };
    // running product eps_n eps_{n-1} ... eps_{n-j+1}
    let mut prod = Rational::one();
    for j in 1..=n {
        prod *= eps(ni - j as i64 + 1)?;
        let mut c = if j % 2 == 1 { prod.clone() } else { -prod.clone() };
        if kind == DKind::Type2 {
            c *= sigma.unwrap()(ni + 1 - j as i64)?;
        }
        if !c.is_zero() {
            out += &polys[n - j].scale(&c);
        }
    }
    Ok(out)
}

pub fn dop_series_apply(spec: &DOperatorSpec, n: usize) -> Result<Polynomial> {
    let polys = spec.family.polys(n)?;
    series_on(spec.kind, &spec.eps, spec.sigma.as_ref(), &polys, n)
}

fn hahn_den(s: &Rational, n: i64) -> Result<Rational> {
    let two_n = int(2 * n);
    let d = (&two_n + s - int(1)) * (&two_n + s - int(2));
    if d.is_zero() {
        return Err(Error::Degenerate {
            context: format!("Hahn eps_{n}"),
            factor: format!("(2n+alpha+c-N-1)(2n+alpha+c-N-2), alpha+c-N = {}", format_rational(s)),
        });
    }
    Ok(d)
}

fn jacobi_den(ab: &Rational, n: i64) -> Result<Rational> {
    let d = int(n) + ab;
    if d.is_zero() {
        return Err(Error::Degenerate {
            context: format!("Jacobi eps_{n}"),
            factor: "n+alpha+beta".into(),
        });
    }
    Ok(d)
}

/// The catalog of known D-operators for a family.
pub fn catalog(spec: &FamilySpec) -> Result<Vec<DOperatorSpec>> {
    spec.validate()?;
    let one = Rational::one();
    let x = Polynomial::x;
    let konst = Polynomial::constant;
    let entry = |kind, eps: Seq, sigma: Option<Seq>, op: Operator, label: &str| DOperatorSpec {
        kind,
        eps,
        sigma,
        closed_form: op,
        family: spec.clone(),
        label: label.to_string(),
    };
    let t1 = DKind::Type1;
    let t2 = DKind::Type2;
    Ok(match spec {
        FamilySpec::Charlier { .. } => vec![entry(
            t1,
            constant_seq(one.clone()),
            None,
            DifferenceOperator::nabla().into(),
            "Charlier-nabla",
        )],
        FamilySpec::Meixner { a, .. } => vec![
            entry(
                t1,
                constant_seq(-one.clone()),
                None,
                DifferenceOperator::delta().scale(&(a / (&one - a))).into(),
                "Meixner-D1",
            ),
            entry(
                t1,
                constant_seq(-a.recip()),
                None,
                DifferenceOperator::nabla().scale(&(&one - a).recip()).into(),
                "Meixner-D2",
            ),
        ],
        FamilySpec::Krawtchouk { a, .. } => vec![
            entry(
                t1,
                constant_seq((&one + a).recip()),
                None,
                DifferenceOperator::nabla().scale(&(&one + a).recip()).into(),
                "Krawtchouk-D1",
            ),
            entry(
                t1,
                constant_seq(-a / (&one + a)),
                None,
                DifferenceOperator::delta().scale(&(-a / (&one + a))).into(),
                "Krawtchouk-D2",
            ),
        ],
        FamilySpec::Hahn { alpha, c, n: big_n } => {
            let s = alpha + c - big_n;
            let half_s = &s / int(2);
            let id = |r: Rational| DifferenceOperator::term(0, konst(r));
            let sig_plus: Seq = {
                let s = s.clone();
                Arc::new(move |n| Ok(int(2 * n) + &s - int(2)))
            };
            let sig_minus: Seq = {
                let s = s.clone();
                Arc::new(move |n| Ok(-(int(2 * n) + &s - int(2))))
            };
            let mk = |f: Box<dyn Fn(i64) -> Rational + Send + Sync>| -> Seq {
                let s = s.clone();
                Arc::new(move |n| Ok(f(n) / hahn_den(&s, n)?))
            };
            let (al, cc, nn) = (alpha.clone(), c.clone(), big_n.clone());
            let e1 = mk(Box::new(move |n| {
                let n = int(n);
                &n * (&nn - &n) * (&n + &al - &nn)
            }));
            let (al, cc2, nn) = (alpha.clone(), cc.clone(), big_n.clone());
            let e2 = mk(Box::new(move |n| {
                let n = int(n);
                &n * (&n + &al - &nn) * (&n + &al + &cc2 - int(1))
            }));
            let (cc3, nn) = (cc.clone(), big_n.clone());
            let e3 = mk(Box::new(move |n| {
                let n = int(n);
                -(&n * (&nn - &n) * (&n + &cc3 - int(1)))
            }));
            let (al, cc4) = (alpha.clone(), cc.clone());
            let e4 = mk(Box::new(move |n| {
                let n = int(n);
                -(&n * (&n + &cc4 - int(1)) * (&n + &al + &cc4 - int(1)))
            }));
            let d1 = DifferenceOperator::delta()
                .mul_left(&Polynomial::new(vec![big_n - &one, -one.clone()]))
                .add(&id(-half_s.clone()));
            let d2 = DifferenceOperator::nabla()
                .mul_left(&Polynomial::linear(-alpha.clone()))
                .add(&id(half_s.clone()));
            let d3 = DifferenceOperator::nabla().mul_left(&x()).add(&id(half_s.clone()));
            let d4 = DifferenceOperator::delta()
                .mul_left(&-Polynomial::linear(c.clone()))
                .add(&id(-half_s.clone()));
            vec![
                entry(t2, e1, Some(sig_plus.clone()), d1.into(), "Hahn-D1"),
                entry(t2, e2, Some(sig_minus.clone()), d2.into(), "Hahn-D2"),
                entry(t2, e3, Some(sig_minus), d3.into(), "Hahn-D3"),
                entry(t2, e4, Some(sig_plus), d4.into(), "Hahn-D4"),
            ]
        }
        FamilySpec::Laguerre { .. } => vec![entry(
            t1,
            constant_seq(-one.clone()),
            None,
            DifferentialOperator::derivative().into(),
            "Laguerre-d/dx",
        )],
        FamilySpec::Jacobi { alpha, beta } => {
            let ab = alpha + beta;
            let half = (&ab + &one) / int(2);
            let (a1, ab1) = (alpha.clone(), ab.clone());
            let e1: Seq = Arc::new(move |n| Ok((int(n) + &a1) / jacobi_den(&ab1, n)?));
            let (b2, ab2) = (beta.clone(), ab.clone());
            let e2: Seq = Arc::new(move |n| Ok(-(int(n) + &b2) / jacobi_den(&ab2, n)?));
            let ab3 = ab.clone();
            let sig1: Seq = Arc::new(move |n| Ok(int(2 * n) + &ab3 - int(1)));
            let ab4 = ab.clone();
            let sig2: Seq = Arc::new(move |n| Ok(-(int(2 * n) + &ab4 - int(1))));
            let d1 = DifferentialOperator::new(vec![
                konst(-half.clone()),
                Polynomial::from_ints(&[1, -1]),
            ]);
            let d2 = DifferentialOperator::new(vec![konst(half), Polynomial::from_ints(&[1, 1])]);
            vec![
                entry(t2, e1, Some(sig1), d1.into(), "Jacobi-D1"),
                entry(t2, e2, Some(sig2), d2.into(), "Jacobi-D2"),
            ]
        }
        FamilySpec::DualHahn1 { .. } | FamilySpec::DualHahn2 { .. } => {
            return Err(Error::Unsupported(
                "no D-operator catalog for dual Hahn polynomials".into(),
            ))
        }
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct DopFailure {
    pub n: usize,
    pub series: Option<Polynomial>,
    pub closed_form: Option<Polynomial>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DopReport {
    pub label: String,
    pub family: FamilySpec,
    pub kind: DKind,
    pub nmax: usize,
    pub closed_form: String,
    pub in_algebra: bool,
    pub failures: Vec<DopFailure>,
}

impl DopReport {
    pub fn passed(&self) -> bool {
        self.in_algebra && self.failures.is_empty()
    }
}

/// Compare series and closed form on p_0..p_nmax.
pub fn verify_dop(spec: &DOperatorSpec, nmax: usize) -> DopReport {
    let mut failures = Vec::new();
    match spec.family.polys(nmax) {
        Ok(polys) => {
            for n in 0..=nmax {
                let closed = spec.closed_form.apply(&polys[n]);
                match series_on(spec.kind, &spec.eps, spec.sigma.as_ref(), &polys, n) {
                    Ok(series) if series == closed => {}
                    Ok(series) => failures.push(DopFailure {
                        n,
                        series: Some(series),
                        closed_form: Some(closed),
                        error: None,
                    }),
                    Err(e) => failures.push(DopFailure {
                        n,
                        series: None,
                        closed_form: Some(closed),
                        error: Some(e.to_string()),
                    }),
                }
            }
        }
        Err(e) => failures.push(DopFailure {
            n: 0,
            series: None,
            closed_form: None,
            error: Some(e.to_string()),
        }),
    }
    DopReport {
        label: spec.label.clone(),
        family: spec.family.clone(),
        kind: spec.kind,
        nmax,
        closed_form: spec.closed_form.to_string(),
        in_algebra: spec.closed_form.in_algebra(),
        failures,
    }
}
