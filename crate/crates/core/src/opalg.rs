//! Operator algebras acting on polynomials: finite difference operators
//! `sum_l f_l(x) Sh_l` and differential operators `sum_j f_j(x) (d/dx)^j`,
//! both with polynomial coefficients.

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::rational::{binomial, int, Rational};
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// `sum_l f_l(x) Sh_l` with `Sh_l(p)(x) = p(x + l)`. Only nonzero
/// coefficients are stored.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct DifferenceOperator {
    terms: BTreeMap<i64, Polynomial>,
}

impl DifferenceOperator {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn identity() -> Self {
        Self::shift(0)
    }

    pub fn shift(l: i64) -> Self {
        Self::term(l, Polynomial::one())
    }

    pub fn term(l: i64, f: Polynomial) -> Self {
        let mut op = Self::zero();
        op.add_term(l, &f);
        op
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, Polynomial)>>(terms: I) -> Self {
        let mut op = Self::zero();
        for (l, f) in terms {
            op.add_term(l, &f);
        }
        op
    }

    /// `Delta = Sh_1 - Sh_0`.
    pub fn delta() -> Self {
        Self::from_terms([(1, Polynomial::one()), (0, -Polynomial::one())])
    }

    /// `nabla = Sh_0 - Sh_{-1}`.
    pub fn nabla() -> Self {
        Self::from_terms([(0, Polynomial::one()), (-1, -Polynomial::one())])
    }

    fn add_term(&mut self, l: i64, f: &Polynomial) {
        if f.is_zero() {
            return;
        }
        let sum = match self.terms.get(&l) {
            Some(g) => g + f,
            None => f.clone(),
        };
        if sum.is_zero() {
            self.terms.remove(&l);
        } else {
            self.terms.insert(l, sum);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Polynomial)> {
        self.terms.iter().map(|(l, f)| (*l, f))
    }

    pub fn coeff(&self, l: i64) -> Polynomial {
        self.terms.get(&l).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn apply(&self, p: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (l, f) in &self.terms {
            out += &(f * &p.shift(&int(*l)));
        }
        out
    }

    /// `f(x) Sh_a o g(x) Sh_b = f(x) g(x + a) Sh_{a+b}`.
    pub fn compose(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for (a, f) in &self.terms {
            for (b, g) in &rhs.terms {
                out.add_term(a + b, &(f * &g.shift(&int(*a))));
            }
        }
        out
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (l, f) in &rhs.terms {
            out.add_term(*l, f);
        }
        out
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self::from_terms(self.terms.iter().map(|(l, f)| (*l, f.scale(r))))
    }

    /// Left multiplication by a polynomial: `g(x) D`.
    pub fn mul_left(&self, g: &Polynomial) -> Self {
        Self::from_terms(self.terms.iter().map(|(l, f)| (*l, g * f)))
    }

    /// `(s, r, r - s)`: minimal shift, maximal shift and order.
    pub fn genre_order(&self) -> Result<(i64, i64, i64)> {
        let s = *self.terms.keys().next().ok_or(Error::UndefinedGenre)?;
        let r = *self.terms.keys().next_back().ok_or(Error::UndefinedGenre)?;
        Ok((s, r, r - s))
    }
}

/// `sum_j f_j(x) (d/dx)^j`, stored densely by derivative order.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct DifferentialOperator {
    coeffs: Vec<Polynomial>,
}

impl DifferentialOperator {
    pub fn new(coeffs: Vec<Polynomial>) -> Self {
        let mut op = Self { coeffs };
        while op.coeffs.last().is_some_and(Polynomial::is_zero) {
            op.coeffs.pop();
        }
        op
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn identity() -> Self {
        Self::new(vec![Polynomial::one()])
    }

    /// `d/dx`.
    pub fn derivative() -> Self {
        Self::new(vec![Polynomial::zero(), Polynomial::one()])
    }

    pub fn coeffs(&self) -> &[Polynomial] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> Polynomial {
        self.coeffs.get(j).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Highest derivative order present; `None` for the zero operator.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Membership in the algebra: every `f_j` has degree at most `j`.
    pub fn in_algebra(&self) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .all(|(j, f)| f.degree().map_or(true, |d| d <= j))
    }

    pub fn apply(&self, p: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        let mut deriv = p.clone();
        for f in &self.coeffs {
            if deriv.is_zero() {
                break;
            }
            out += &(f * &deriv);
            deriv = deriv.derivative();
        }
        out
    }

    /// Leibniz: `f D^i o g D^j = f sum_m C(i, m) g^{(m)} D^{i - m + j}`.
    pub fn compose(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Polynomial::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (j, g) in rhs.coeffs.iter().enumerate() {
            let mut g_deriv = g.clone();
            let mut derivs = Vec::with_capacity(self.coeffs.len());
            for _ in 0..self.coeffs.len() {
                derivs.push(g_deriv.clone());
                g_deriv = g_deriv.derivative();
            }
            for (i, f) in self.coeffs.iter().enumerate() {
                if f.is_zero() {
                    continue;
                }
                for (m, gm) in derivs.iter().enumerate().take(i + 1) {
                    if gm.is_zero() {
                        break;
                    }
                    let c = binomial(&int(i as i64), m);
                    out[i - m + j] += &(f * gm).scale(&c);
                }
            }
        }
        Self::new(out)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Self::new((0..len).map(|j| &self.coeff(j) + &rhs.coeff(j)).collect())
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|f| f.scale(r)).collect())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OperatorKind {
    Difference,
    Differential,
}

impl OperatorKind {
    pub fn name(self) -> &'static str {
        match self {
            Self::Difference => "difference",
            Self::Differential => "differential",
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Operator {
    Difference(DifferenceOperator),
    Differential(DifferentialOperator),
}

impl From<DifferenceOperator> for Operator {
    fn from(d: DifferenceOperator) -> Self {
        Self::Difference(d)
    }
}

impl From<DifferentialOperator> for Operator {
    fn from(d: DifferentialOperator) -> Self {
        Self::Differential(d)
    }
}

impl Operator {
    pub fn kind(&self) -> OperatorKind {
        match self {
            Self::Difference(_) => OperatorKind::Difference,
            Self::Differential(_) => OperatorKind::Differential,
        }
    }

    pub fn identity(kind: OperatorKind) -> Self {
        match kind {
            OperatorKind::Difference => DifferenceOperator::identity().into(),
            OperatorKind::Differential => DifferentialOperator::identity().into(),
        }
    }

    pub fn zero(kind: OperatorKind) -> Self {
        match kind {
            OperatorKind::Difference => DifferenceOperator::zero().into(),
            OperatorKind::Differential => DifferentialOperator::zero().into(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Self::Difference(d) => d.is_zero(),
            Self::Differential(d) => d.is_zero(),
        }
    }

    pub fn apply(&self, p: &Polynomial) -> Polynomial {
        match self {
            Self::Difference(d) => d.apply(p),
            Self::Differential(d) => d.apply(p),
        }
    }

    pub fn compose(&self, rhs: &Self) -> Result<Self> {
        match (self, rhs) {
            (Self::Difference(a), Self::Difference(b)) => Ok(a.compose(b).into()),
            (Self::Differential(a), Self::Differential(b)) => Ok(a.compose(b).into()),
            _ => Err(Error::KindMismatch(self.kind().name(), rhs.kind().name())),
        }
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        match (self, rhs) {
            (Self::Difference(a), Self::Difference(b)) => Ok(a.add(b).into()),
            (Self::Differential(a), Self::Differential(b)) => Ok(a.add(b).into()),
            _ => Err(Error::KindMismatch(self.kind().name(), rhs.kind().name())),
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        match self {
            Self::Difference(d) => d.scale(r).into(),
            Self::Differential(d) => d.scale(r).into(),
        }
    }

    /// For difference operators the genre `(s, r)` and order `r - s`; for
    /// differential operators `(0, k, k)` with `k` the highest derivative.
    pub fn genre_order(&self) -> Result<(i64, i64, i64)> {
        match self {
            Self::Difference(d) => d.genre_order(),
            Self::Differential(d) => {
                let k = d.order().ok_or(Error::UndefinedGenre)? as i64;
                Ok((0, k, k))
            }
        }
    }

    pub fn as_difference(&self) -> Option<&DifferenceOperator> {
        match self {
            Self::Difference(d) => Some(d),
            Self::Differential(_) => None,
        }
    }

    pub fn as_differential(&self) -> Option<&DifferentialOperator> {
        match self {
            Self::Differential(d) => Some(d),
            Self::Difference(_) => None,
        }
    }

    /// Membership in the operator algebra of the matching kind. Every finite
    /// difference operator with polynomial coefficients qualifies.
    pub fn in_algebra(&self) -> bool {
        match self {
            Self::Difference(_) => true,
            Self::Differential(d) => d.in_algebra(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&OperatorJson::from(self)).expect("operator serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let j: OperatorJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        j.try_into()
    }
}

/// `sum_i c_i D_i` over operators of one kind.
pub fn op_linear(ops: &[(Rational, Operator)]) -> Result<Operator> {
    let Some((_, first)) = ops.first() else {
        return Err(Error::Unsupported("empty linear combination".into()));
    };
    let mut acc = Operator::zero(first.kind());
    for (c, op) in ops {
        acc = acc.add(&op.scale(c))?;
    }
    Ok(acc)
}

/// `P(D) = sum_j a_j D^j`, evaluated by Horner's scheme on compositions.
pub fn poly_of_op(p: &Polynomial, d: &Operator) -> Operator {
    let kind = d.kind();
    let id = Operator::identity(kind);
    let mut acc = Operator::zero(kind);
    for c in p.coeffs().iter().rev() {
        acc = acc
            .compose(d)
            .and_then(|a| a.add(&id.scale(c)))
            .expect("same kind");
    }
    acc
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self {
            Self::Difference(d) => {
                for (l, c) in d.terms() {
                    parts.push(format!("({})·Sh[{l}]", c.to_pretty()));
                }
            }
            Self::Differential(d) => {
                for (j, c) in d.coeffs().iter().enumerate() {
                    if !c.is_zero() {
                        parts.push(format!("({})·D^{j}", c.to_pretty()));
                    }
                }
            }
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    #[serde(skip_serializing_if = "Option::is_none")]
    shift: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    order: Option<usize>,
    coeffs: Polynomial,
}

/// Wire form: `{"kind":"difference","terms":[{"shift":l,"coeffs":[...]}]}`
/// or `{"kind":"differential","terms":[{"order":j,"coeffs":[...]}]}`, with
/// rationals as `"num/den"` strings.
#[derive(Serialize, Deserialize)]
pub struct OperatorJson {
    kind: String,
    terms: Vec<TermJson>,
}

impl From<&Operator> for OperatorJson {
    fn from(op: &Operator) -> Self {
        let terms = match op {
            Operator::Difference(d) => d
                .terms()
                .map(|(l, c)| TermJson {
                    shift: Some(l),
                    order: None,
                    coeffs: c.clone(),
                })
                .collect(),
            Operator::Differential(d) => d
                .coeffs()
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(j, c)| TermJson {
                    shift: None,
                    order: Some(j),
                    coeffs: c.clone(),
                })
                .collect(),
        };
        Self {
            kind: op.kind().name().to_string(),
            terms,
        }
    }
}

impl TryFrom<OperatorJson> for Operator {
    type Error = Error;

    fn try_from(j: OperatorJson) -> Result<Self> {
        match j.kind.as_str() {
            "difference" => {
                let mut terms = Vec::new();
                for t in j.terms {
                    let l = t
                        .shift
                        .ok_or_else(|| Error::Parse("difference term without shift".into()))?;
                    terms.push((l, t.coeffs));
                }
                Ok(DifferenceOperator::from_terms(terms).into())
            }
            "differential" => {
                let mut coeffs: Vec<Polynomial> = Vec::new();
                for t in j.terms {
                    let o = t
                        .order
                        .ok_or_else(|| Error::Parse("differential term without order".into()))?;
                    if coeffs.len() <= o {
                        coeffs.resize(o + 1, Polynomial::zero());
                    }
                    coeffs[o] += &t.coeffs;
                }
                Ok(DifferentialOperator::new(coeffs).into())
            }
            other => Err(Error::Parse(format!("unknown operator kind {other}"))),
        }
    }
}

impl Serialize for Operator {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        OperatorJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Operator {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = OperatorJson::deserialize(d)?;
        j.try_into().map_err(serde::de::Error::custom)
    }
}

/// Convenience: a rational multiple of the identity of the given kind.
pub fn scalar(kind: OperatorKind, r: Rational) -> Operator {
    if r.is_zero() {
        Operator::zero(kind)
    } else {
        Operator::identity(kind).scale(&r)
    }
}
