//! The identity registry and the engine that checks each identity's sides
//! against one another coefficient by coefficient.

mod catalog;
pub mod kit;
mod suite;

use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use num_traits::{Signed, ToPrimitive};
use rayon::prelude::*;
use serde_json::{json, Value};
use thiserror::Error;

use crate::error::{ScalarError, SeriesError};
use crate::scalar::{format_rational, parse_rational, Rational};
use crate::series::VarSpec;
use crate::QSeries;

pub use kit::Arg;
pub use suite::{default_param_suite, full_default_suite, parse_suite_file, SuiteEntry};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum IdentityError {
    #[error("unknown identity {0:?}")]
    UnknownId(String),
    #[error("identity {id:?} has no side {side:?}")]
    UnknownSide { id: String, side: String },
    #[error("bad parameters: {0}")]
    Schema(String),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

impl From<ScalarError> for IdentityError {
    fn from(e: ScalarError) -> Self {
        IdentityError::Series(e.into())
    }
}

/// How a parameter enters an identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParamKind {
    /// A formal variable of the series. `bindable` entries also accept a
    /// rational value, for sides that stay degree-finite when it is bound.
    Formal { bindable: bool },
    Rational,
    /// A nonnegative integer in `min..=max`.
    Int { min: i64, max: i64 },
    /// A nonempty list of rationals.
    List,
}

#[derive(Clone, Debug)]
pub struct ParamSpec {
    pub name: &'static str,
    pub kind: ParamKind,
    /// Default used when a binding omits the parameter.
    pub default: &'static str,
    pub note: &'static str,
}

/// A value bound to a parameter name.
#[derive(Clone, Debug, PartialEq)]
pub enum ParamValue {
    Formal,
    Number(Rational),
    List(Vec<Rational>),
}

impl fmt::Display for ParamValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamValue::Formal => write!(f, "formal"),
            ParamValue::Number(r) => write!(f, "{}", format_rational(r)),
            ParamValue::List(v) => {
                let s: Vec<String> = v.iter().map(format_rational).collect();
                write!(f, "{}", s.join(","))
            }
        }
    }
}

impl ParamValue {
    /// Parses `formal`, a rational `p/q`, or a comma-separated list.
    pub fn parse(text: &str) -> Result<Self, ScalarError> {
        let t = text.trim();
        if t == "formal" {
            return Ok(ParamValue::Formal);
        }
        if t.contains(',') {
            let v = t
                .split(',')
                .map(parse_rational)
                .collect::<Result<Vec<_>, _>>()?;
            return Ok(ParamValue::List(v));
        }
        Ok(ParamValue::Number(parse_rational(t)?))
    }
}

/// Parameter values and truncation bounds for one check.
#[derive(Clone, Debug, PartialEq)]
pub struct ParamBinding {
    pub params: BTreeMap<String, ParamValue>,
    pub nq: u32,
    pub nt: u32,
}

impl ParamBinding {
    pub fn new(nq: u32, nt: u32) -> Self {
        ParamBinding { params: BTreeMap::new(), nq, nt }
    }

    pub fn order(n: u32) -> Self {
        Self::new(n, n)
    }

    pub fn with(mut self, name: &str, value: &str) -> Self {
        let v = ParamValue::parse(value).unwrap_or_else(|e| panic!("bad value {value:?}: {e}"));
        self.params.insert(name.to_string(), v);
        self
    }

    pub fn set(&mut self, name: &str, value: ParamValue) {
        self.params.insert(name.to_string(), value);
    }

    pub fn get(&self, name: &str) -> Option<&ParamValue> {
        self.params.get(name)
    }

    /// `name=value` pairs joined by spaces.
    pub fn describe(&self) -> String {
        let s: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        s.join(" ")
    }

    pub fn params_json(&self) -> Value {
        let m: serde_json::Map<String, Value> = self
            .params
            .iter()
            .map(|(k, v)| (k.clone(), Value::String(v.to_string())))
            .collect();
        Value::Object(m)
    }
}

type Builder = fn(&Env, &str) -> Result<QSeries, IdentityError>;

/// One registry entry.
#[derive(Clone)]
pub struct IdentityDescriptor {
    pub id: &'static str,
    pub sides: &'static [&'static str],
    pub params: Vec<ParamSpec>,
    /// The identity in compact notation.
    pub anchor: &'static str,
    /// The entry is recorded as a known discrepancy rather than a theorem.
    pub expected_fail: bool,
    pub(crate) build: Builder,
}

impl fmt::Debug for IdentityDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IdentityDescriptor")
            .field("id", &self.id)
            .field("sides", &self.sides)
            .field("params", &self.params.iter().map(|p| p.name).collect::<Vec<_>>())
            .finish()
    }
}

impl IdentityDescriptor {
    pub fn formal_params(&self) -> Vec<&'static str> {
        self.params
            .iter()
            .filter(|p| matches!(p.kind, ParamKind::Formal { .. }))
            .map(|p| p.name)
            .collect()
    }

    pub fn has_rational_alpha(&self) -> bool {
        self.params.iter().any(|p| p.name == "alpha")
    }

    /// Fills defaults and checks every value against the schema.
    pub fn normalize(&self, binding: &ParamBinding) -> Result<ParamBinding, IdentityError> {
        for k in binding.params.keys() {
            if !self.params.iter().any(|p| p.name == k) {
                return Err(IdentityError::Schema(format!("{} has no parameter {k:?}", self.id)));
            }
        }
        if binding.nq > binding.nt || binding.nt == 0 {
            return Err(IdentityError::Schema(format!(
                "bounds Nq={} Nt={} need 0 < Nq <= Nt",
                binding.nq, binding.nt
            )));
        }
        let mut out = ParamBinding::new(binding.nq, binding.nt);
        for p in &self.params {
            let v = match binding.get(p.name) {
                Some(v) => v.clone(),
                None => ParamValue::parse(p.default)?,
            };
            let bad = |why: &str| IdentityError::Schema(format!("{}: {}={v} {why}", self.id, p.name));
            match (p.kind, &v) {
                (ParamKind::Formal { .. }, ParamValue::Formal) => {}
                (ParamKind::Formal { bindable: true }, ParamValue::Number(_)) => {}
                (ParamKind::Formal { .. }, _) => return Err(bad("must stay formal")),
                (ParamKind::Rational, ParamValue::Number(_)) => {}
                (ParamKind::Int { min, max }, ParamValue::Number(x)) => {
                    let ok = x.is_integer()
                        && x.to_integer().to_i64().is_some_and(|n| (min..=max).contains(&n));
                    if !ok {
                        return Err(bad(&format!("must be an integer in {min}..={max}")));
                    }
                }
                (ParamKind::List, ParamValue::List(_)) => {}
                (ParamKind::List, ParamValue::Number(x)) => {
                    out.set(p.name, ParamValue::List(vec![x.clone()]));
                    continue;
                }
                _ => return Err(bad("has the wrong kind")),
            }
            out.set(p.name, v);
        }
        Ok(out)
    }

    /// The spec the sides live in: q followed by the parameters left formal.
    pub fn spec_for(&self, binding: &ParamBinding) -> Result<VarSpec, IdentityError> {
        let mut names = vec!["q"];
        for p in &self.params {
            if matches!(p.kind, ParamKind::Formal { .. }) && binding.get(p.name) == Some(&ParamValue::Formal) {
                names.push(p.name);
            }
        }
        Ok(VarSpec::new(&names, binding.nq, binding.nt)?)
    }
}

/// Everything a side builder sees.
pub struct Env<'a> {
    pub spec: VarSpec,
    pub qs: VarSpec,
    pub binding: &'a ParamBinding,
}

impl Env<'_> {
    fn value(&self, name: &str) -> Result<&ParamValue, IdentityError> {
        self.binding
            .get(name)
            .ok_or_else(|| IdentityError::Schema(format!("missing parameter {name:?}")))
    }

    pub fn rat(&self, name: &str) -> Result<Rational, IdentityError> {
        match self.value(name)? {
            ParamValue::Number(r) => Ok(r.clone()),
            v => Err(IdentityError::Schema(format!("{name}={v} is not a number"))),
        }
    }

    pub fn int(&self, name: &str) -> Result<u32, IdentityError> {
        let r = self.rat(name)?;
        r.to_integer()
            .to_u32()
            .filter(|_| r.is_integer() && !r.is_negative())
            .ok_or_else(|| IdentityError::Schema(format!("{name} must be a natural number")))
    }

    pub fn list(&self, name: &str) -> Result<Vec<Rational>, IdentityError> {
        match self.value(name)? {
            ParamValue::List(v) => Ok(v.clone()),
            ParamValue::Number(r) => Ok(vec![r.clone()]),
            ParamValue::Formal => Err(IdentityError::Schema(format!("{name} needs values"))),
        }
    }

    pub fn arg(&self, name: &str) -> Result<Arg, IdentityError> {
        match self.value(name)? {
            ParamValue::Formal => Ok(Arg::Formal(name.to_string())),
            ParamValue::Number(r) => Ok(Arg::Value(r.clone())),
            ParamValue::List(_) => Err(IdentityError::Schema(format!("{name} is a list"))),
        }
    }

    /// Moves a q-only series into the side's spec.
    pub fn lift(&self, s: &QSeries) -> Result<QSeries, IdentityError> {
        Ok(s.convert(&self.spec)?)
    }

    /// A nonzero rational parameter.
    pub fn nonzero(&self, name: &str) -> Result<Rational, IdentityError> {
        let v = self.rat(name)?;
        if num_traits::Zero::is_zero(&v) {
            return Err(IdentityError::Schema(format!("{name} must be nonzero")));
        }
        Ok(v)
    }
}

/// Every registered identity in a fixed order.
pub fn list_identities() -> &'static [IdentityDescriptor] {
    catalog::registry()
}

pub fn find_identity(id: &str) -> Result<&'static IdentityDescriptor, IdentityError> {
    list_identities()
        .iter()
        .find(|d| d.id == id)
        .ok_or_else(|| IdentityError::UnknownId(id.to_string()))
}

/// Builds one side of an identity.
pub fn build_side(id: &str, side: &str, binding: &ParamBinding) -> Result<QSeries, IdentityError> {
    let d = find_identity(id)?;
    if !d.sides.contains(&side) {
        return Err(IdentityError::UnknownSide { id: id.into(), side: side.into() });
    }
    let b = d.normalize(binding)?;
    let spec = d.spec_for(&b)?;
    let env = Env { qs: kit::q_spec(&spec), spec, binding: &b };
    let s = (d.build)(&env, side)?;
    if s.spec() != &env.spec {
        return Ok(s.convert(&env.spec)?);
    }
    Ok(s)
}

/// Result of comparing all sides.
#[derive(Clone, Debug, PartialEq)]
pub enum Outcome {
    Pass,
    Fail {
        /// Variable names with their exponents at the first disagreement.
        monomial: Vec<(String, u32)>,
        /// Each side's coefficient there.
        coefficients: Vec<(String, Rational)>,
    },
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub id: String,
    pub binding: ParamBinding,
    pub nq: u32,
    pub nt: u32,
    pub outcome: Outcome,
    pub expected_fail: bool,
    pub notes: Vec<String>,
    pub millis: u128,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.outcome == Outcome::Pass
    }

    /// Whether this report should count against a suite run.
    pub fn is_failure(&self) -> bool {
        !self.passed() && !self.expected_fail
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "command": "verify",
            "id": self.id,
            "params": self.binding.params_json(),
            "nq": self.nq,
            "nt": self.nt,
            "outcome": if self.passed() { "pass" } else { "fail" },
            "millis": self.millis as u64,
        });
        if let Outcome::Fail { monomial, coefficients } = &self.outcome {
            let mono: serde_json::Map<String, Value> =
                monomial.iter().map(|(n, e)| (n.clone(), json!(e))).collect();
            let cs: serde_json::Map<String, Value> = coefficients
                .iter()
                .map(|(n, c)| (n.clone(), Value::String(format_rational(c))))
                .collect();
            v["mismatch"] = json!({ "monomial": mono, "coefficients": cs });
        }
        if self.expected_fail {
            v["expected_fail"] = json!(true);
        }
        if !self.notes.is_empty() {
            v["notes"] = json!(self.notes);
        }
        v
    }

    /// One line of text.
    pub fn summary(&self) -> String {
        let status = match (&self.outcome, self.expected_fail) {
            (Outcome::Pass, false) => "PASS".to_string(),
            (Outcome::Pass, true) => "PASS (expected a mismatch; flagged for review)".to_string(),
            (Outcome::Fail { .. }, true) => "MISMATCH (expected)".to_string(),
            (Outcome::Fail { .. }, false) => "FAIL".to_string(),
        };
        let mut s = format!(
            "{:<30} {:<28} Nq={:<3} Nt={:<3} {} ({} ms)",
            self.id,
            self.binding.describe(),
            self.nq,
            self.nt,
            status,
            self.millis
        );
        if let Outcome::Fail { monomial, coefficients } = &self.outcome {
            let m: Vec<String> = monomial
                .iter()
                .filter(|(_, e)| *e > 0)
                .map(|(n, e)| format!("{n}^{e}"))
                .collect();
            let m = if m.is_empty() { "1".to_string() } else { m.join("*") };
            let cs: Vec<String> = coefficients
                .iter()
                .map(|(n, c)| format!("{n}={}", format_rational(c)))
                .collect();
            s.push_str(&format!("\n    first mismatch at {m}: {}", cs.join(", ")));
        }
        s
    }
}

/// Compares already-built sides.
pub fn compare_sides(names: &[&str], sides: &[QSeries]) -> Result<Outcome, IdentityError> {
    let refs: Vec<&QSeries> = sides.iter().collect();
    Ok(match QSeries::first_disagreement(&refs)? {
        None => Outcome::Pass,
        Some((exps, cs)) => Outcome::Fail {
            monomial: sides[0]
                .spec()
                .names()
                .iter()
                .cloned()
                .zip(exps)
                .collect(),
            coefficients: names.iter().map(|n| n.to_string()).zip(cs).collect(),
        },
    })
}

/// Builds every side and compares them.
pub fn verify_identity(id: &str, binding: &ParamBinding) -> Result<VerificationReport, IdentityError> {
    let start = Instant::now();
    let d = find_identity(id)?;
    let b = d.normalize(binding)?;
    let sides = d
        .sides
        .iter()
        .map(|s| build_side(id, s, &b))
        .collect::<Result<Vec<_>, _>>()?;
    let outcome = compare_sides(d.sides, &sides)?;
    Ok(finish_report(d, b, outcome, start))
}

/// Like [`verify_identity`] but with one side replaced by `perturbed`.
pub fn verify_with_side(
    id: &str,
    binding: &ParamBinding,
    side: &str,
    perturbed: &QSeries,
) -> Result<VerificationReport, IdentityError> {
    let start = Instant::now();
    let d = find_identity(id)?;
    let b = d.normalize(binding)?;
    if !d.sides.contains(&side) {
        return Err(IdentityError::UnknownSide { id: id.into(), side: side.into() });
    }
    let sides = d
        .sides
        .iter()
        .map(|s| if *s == side { Ok(perturbed.clone()) } else { build_side(id, s, &b) })
        .collect::<Result<Vec<_>, _>>()?;
    let outcome = compare_sides(d.sides, &sides)?;
    Ok(finish_report(d, b, outcome, start))
}

fn finish_report(d: &IdentityDescriptor, b: ParamBinding, outcome: Outcome, start: Instant) -> VerificationReport {
    let mut notes = Vec::new();
    if d.has_rational_alpha() {
        notes.push("alpha checked at a rational value only".to_string());
    }
    if d.expected_fail && outcome == Outcome::Pass {
        notes.push("no mismatch found within these bounds; entry needs review".to_string());
    }
    VerificationReport {
        id: d.id.to_string(),
        nq: b.nq,
        nt: b.nt,
        binding: b,
        outcome,
        expected_fail: d.expected_fail,
        notes,
        millis: start.elapsed().as_millis(),
    }
}

/// Runs checks in parallel; reports come back in input order.
pub fn run_checks(jobs: &[SuiteEntry]) -> Vec<Result<VerificationReport, IdentityError>> {
    jobs.par_iter()
        .map(|j| verify_identity(&j.id, &j.binding))
        .collect()
}

/// The value of a rational as `f64`, for display.
pub fn approx(r: &Rational) -> f64 {
    crate::scalar::rational_to_f64(r).unwrap_or(f64::NAN)
}
