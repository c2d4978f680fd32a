//! Verification reports for the command-line harness. The body of a report
//! is deterministic; timing lives in the envelope, outside the checksum.

use crate::dops::{catalog, verify_dop};
use crate::error::{Error, Result};
use crate::families::FamilySpec;
use crate::krall::{band_profile, named, verify_eigen, NamedParams, Theorem};
use crate::moments::{casorati, check_hahn_conditions, gram_check, ip_lemma_check, IpKind, IpParams};
use crate::poly::Polynomial;
use crate::rational::{as_integer, format_rational, Rational};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::fmt::Write as _;

pub const SCHEMA: &str = "krall-report/1";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    /// Witness data: failing polynomials, both sides of an identity, etc.
    pub detail: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub command: String,
    pub params: BTreeMap<String, String>,
    pub nmax: usize,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(command: &str, nmax: usize) -> Self {
        Self {
            schema: SCHEMA.to_string(),
            command: command.to_string(),
            params: BTreeMap::new(),
            nmax,
            checks: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl Into<String>) {
        self.params.insert(key.to_string(), value.into());
    }

    pub fn check(&mut self, name: impl Into<String>, pass: bool, detail: Value) {
        self.checks.push(Check {
            name: name.into(),
            pass,
            detail,
        });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    /// Hex SHA-256 of the canonical JSON body.
    pub fn digest(&self) -> String {
        let body = serde_json::to_vec(self).expect("report serializes");
        Sha256::digest(&body).iter().fold(String::new(), |mut s, b| {
            let _ = write!(s, "{b:02x}");
            s
        })
    }

    pub fn seal(self, elapsed_ms: f64) -> Envelope {
        Envelope {
            sha256: self.digest(),
            report: self,
            timing_ms: elapsed_ms,
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} ({})\n", self.command, self.schema);
        for (k, v) in &self.params {
            let _ = writeln!(out, "  {k} = {v}");
        }
        let _ = writeln!(out, "  nmax = {}", self.nmax);
        for c in &self.checks {
            let status = if c.pass { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "[{status}] {}", c.name);
            if let Some(summary) = c.detail.get("summary").and_then(|s| s.as_str()) {
                let _ = writeln!(out, "       {summary}");
            }
            if !c.pass {
                let _ = writeln!(out, "       {}", c.detail);
            }
        }
        for n in &self.notes {
            let _ = writeln!(out, "note: {n}");
        }
        let _ = writeln!(out, "{}", if self.passed() { "all checks passed" } else { "checks FAILED" });
        out
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Envelope {
    pub report: Report,
    pub sha256: String,
    pub timing_ms: f64,
}

impl Envelope {
    pub fn verify_digest(&self) -> bool {
        self.report.digest() == self.sha256
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).unwrap_or(Value::Null)
}

pub fn verify_dops_report(spec: &FamilySpec, nmax: usize) -> Result<Report> {
    let mut rep = Report::new("verify-dops", nmax);
    rep.param("family", serde_json::to_string(spec).unwrap_or_default());
    for dop in catalog(spec)? {
        let r = verify_dop(&dop, nmax);
        let summary = format!("{} = {}", r.label, r.closed_form);
        let pass = r.passed();
        let mut detail = to_value(&r);
        detail["summary"] = json!(summary);
        rep.check(format!("series = closed form for {}", dop.label), pass, detail);
    }
    Ok(rep)
}

/// Default multiplier for the banded recurrence of each theorem.
pub fn band_multiplier(theorem: Theorem, params: &NamedParams) -> Option<(Polynomial, i64)> {
    let one = Polynomial::one();
    match theorem {
        Theorem::Laguerre => {
            let k = as_integer(&params.alpha).filter(|&a| a >= 1)?;
            Some((Polynomial::x().pow(k as usize + 1), k))
        }
        Theorem::Jacobi => {
            let k = as_integer(&params.beta).filter(|&b| b >= 1)?;
            Some((Polynomial::from_ints(&[1, 1]).pow(k as usize + 1), k))
        }
        _ => {
            let k = params.k as i64;
            let m = (1..=k + 1).fold(one, |acc, i| &acc * &Polynomial::from_ints(&[i, 1]));
            Some((m, k))
        }
    }
}

/// Build a named construction and run its checks. Hypothesis failures are
/// returned as errors so the caller can map them to their own exit code.
pub fn krall_report(
    theorem: Theorem,
    params: &NamedParams,
    nmax: usize,
    ortho: bool,
    band: bool,
) -> Result<Report> {
    let mut rep = Report::new("krall", nmax);
    rep.param("theorem", theorem.name());
    for (k, v) in params.used(theorem) {
        rep.param(k, v);
    }
    let nc = named(theorem, params, nmax)?;
    let kc = &nc.construction;
    rep.notes.extend(kc.notes.iter().cloned());
    for (range, ok) in &nc.ranges {
        rep.notes.push(format!("hypothesis range [{}]: {range}", if *ok { "holds" } else { "fails" }));
    }
    if let Some(p2) = &kc.p2 {
        rep.param("P2", p2.to_pretty());
    }
    if kc.dq.is_some() {
        let e = verify_eigen(kc, nmax);
        let summary = format!(
            "order {} (expected {}), genre {} (expected {})",
            opt(&e.order),
            opt(&e.expected_order),
            pair(&e.genre),
            pair(&e.expected_genre)
        );
        rep.check(
            "D_q(q_n) = lambda_n q_n",
            e.failures.is_empty(),
            json!({ "summary": summary, "failures": to_value(&e.failures) }),
        );
        rep.check(
            "p-basis coefficients vanish beyond offset 1",
            e.p_basis_failures.is_empty(),
            json!({ "failures": e.p_basis_failures }),
        );
        rep.check(
            "order 2k+2 and genre (-k-1, k+1)",
            e.shape_ok(),
            json!({ "summary": summary }),
        );
    } else {
        rep.notes.push("no finite-order operator; eigen check skipped".into());
    }
    if ortho {
        let qs = kc.qs(nmax)?;
        let g = gram_check(&nc.measure, &qs, nmax);
        let pass = g.passed();
        let mut detail = to_value(&g);
        detail["measure"] = to_value(&nc.measure);
        detail["summary"] = json!(format!("q_0..q_{nmax} against {}", nc.measure.to_json()));
        rep.check("orthogonality under the target measure", pass, detail);
    }
    if band {
        if let Some((m, k)) = band_multiplier(theorem, params) {
            let b = band_profile(kc, &m, nmax)?;
            let within = b.within(-k - 1, k + 1);
            let mut detail = to_value(&b);
            detail["summary"] = json!(format!(
                "multiplier {}: offsets span {}",
                m.to_pretty(),
                pair(&b.span())
            ));
            rep.check(format!("band within [{}, {}]", -k - 1, k + 1), within, detail);
        } else {
            rep.notes.push("no polynomial multiplier for non-integer parameter; band skipped".into());
        }
    }
    Ok(rep)
}

fn opt(v: &Option<i64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_else(|| "-".into())
}

fn pair(v: &Option<(i64, i64)>) -> String {
    v.map(|(a, b)| format!("({a}, {b})")).unwrap_or_else(|| "-".into())
}

pub fn casorati_report(a: &Rational, k: usize, nmax: usize) -> Result<Report> {
    let mut rep = Report::new("casorati", nmax);
    rep.param("a", format_rational(a));
    rep.param("k", k.to_string());
    let spec = FamilySpec::charlier(a.clone())?;
    for n in 0..=nmax {
        let (lhs, rhs) = casorati(&spec, k, n)?;
        let summary = format!("det = {}, closed form = {}", format_rational(&lhs), format_rational(&rhs));
        rep.check(
            format!("n = {n}"),
            lhs == rhs,
            json!({ "summary": summary, "det": format_rational(&lhs), "formula": format_rational(&rhs) }),
        );
    }
    Ok(rep)
}

/// Parameter exclusions of the lemma come back as errors; everything else
/// is a check in the report.
pub fn ip_report(kind: IpKind, params: &IpParams, nmax: usize) -> Result<Report> {
    if matches!(kind, IpKind::HahnI | IpKind::HahnII) {
        check_hahn_conditions(kind, params.k, &params.alpha, &params.c, &params.big_n)?;
    }
    let mut rep = Report::new("ip-lemma", nmax);
    rep.param("kind", kind.name());
    rep.param("k", params.k.to_string());
    rep.param("a", format_rational(&params.a));
    rep.param("c", format_rational(&params.c));
    rep.param("alpha", format_rational(&params.alpha));
    rep.param("N", format_rational(&params.big_n));
    let r = ip_lemma_check(kind, params, nmax);
    if let Some(e) = &r.error {
        rep.check("lemma setup", false, json!({ "error": e }));
    }
    let mode = if r.absolute { "absolute" } else { "ratio" };
    for row in &r.rows {
        rep.check(
            format!("n = {} ({mode})", row.n),
            row.pass,
            json!({ "summary": format!("pairing {} vs formula {}", row.pairing, row.formula) }),
        );
    }
    Ok(rep)
}

/// Sequence table of a named construction: beta_n, gamma_n, lambda_n, q_n.
pub fn table(theorem: Theorem, params: &NamedParams, nmax: usize) -> Result<(String, Value)> {
    let kc = named(theorem, params, nmax)?.construction;
    let mut out = format!("{:>3}  {:>14}  {:>14}  {:>14}  q_n\n", "n", "beta_n", "gamma_n", "lambda_n");
    for n in 0..=nmax {
        let ni = n as i64;
        let (b, g) = if n == 0 {
            ("-".to_string(), "-".to_string())
        } else {
            (format_rational(&kc.beta(ni)?), format_rational(&kc.gamma(ni)?))
        };
        let _ = writeln!(
            out,
            "{n:>3}  {b:>14}  {g:>14}  {:>14}  {}",
            format_rational(&kc.lambda(ni)?),
            kc.q(n)?.to_pretty()
        );
    }
    Ok((out, kc.to_json(nmax)?))
}

/// The operator `D_q` of a named construction as JSON.
pub fn dump_operator(theorem: Theorem, params: &NamedParams) -> Result<String> {
    let kc = named(theorem, params, 1)?.construction;
    kc.dq
        .map(|d| d.to_json())
        .ok_or_else(|| Error::Unsupported(format!("{theorem}: no finite-order operator at these parameters")))
}

/// Parse the family selector used by `verify-dops`.
pub fn family_from_flags(
    family: &str,
    a: &Rational,
    c: &Rational,
    big_n: &Rational,
    alpha: &Rational,
    beta: &Rational,
) -> Result<FamilySpec> {
    match family {
        "charlier" => FamilySpec::charlier(a.clone()),
        "meixner" => FamilySpec::meixner(a.clone(), c.clone()),
        "krawtchouk" => FamilySpec::krawtchouk(a.clone(), big_n.clone()),
        "hahn" => FamilySpec::hahn(alpha.clone(), c.clone(), big_n.clone()),
        "laguerre" => FamilySpec::laguerre(alpha.clone()),
        "jacobi" => FamilySpec::jacobi(alpha.clone(), beta.clone()),
        other => Err(Error::Parse(format!("unknown family {other}"))),
    }
}

/// Exit code for a library error: 3 for a violated hypothesis, 2 otherwise.
pub fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::Hypothesis { .. } => 3,
        _ => 2,
    }
}
