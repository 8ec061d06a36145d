use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_traits::{One, Zero};
use serde_json::{json, Value};

use super::recurrence::{RecurrenceMode, RecurrenceState, SequenceF};
use super::StochasticError;
use crate::combinatorics::{limit_coeffs, p_poly};
use crate::cyclotomic::ExactScalar;
use crate::identities::kit::{a_over_q_sum, apply_poch, frak_s, mul_diff, times, Arg};
use crate::scalar::{format_rational, Rational};
use crate::series::{Length, ParamMonomial, Series, VarSpec};
use crate::{ExactSeries, QSeries};

pub const MAX_PERIOD: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LimitMode {
    AcsPoly,
    TwoVarPoly,
    Periodic,
    GeometricB,
    Ceiling,
}

impl LimitMode {
    pub const ALL: [LimitMode; 5] =
        [LimitMode::AcsPoly, LimitMode::TwoVarPoly, LimitMode::Periodic, LimitMode::GeometricB, LimitMode::Ceiling];

    pub fn name(self) -> &'static str {
        match self {
            LimitMode::AcsPoly => "acs-poly",
            LimitMode::TwoVarPoly => "two-var-poly",
            LimitMode::Periodic => "periodic",
            LimitMode::GeometricB => "geometric-b",
            LimitMode::Ceiling => "ceiling",
        }
    }
}

impl fmt::Display for LimitMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LimitMode {
    type Err = StochasticError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        LimitMode::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| StochasticError::Precondition(format!("unknown limit mode {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LimitConfig {
    pub mode: LimitMode,
    pub f: SequenceF,
    /// Whether `a` is formal; otherwise `a = 0`. Fixed by the poly modes.
    pub a_formal: bool,
    pub nq: u32,
    pub nt: u32,
    /// Reject `a·f(1) ≠ 0` up front.
    pub check_hypothesis: bool,
}

impl LimitConfig {
    pub fn new(mode: LimitMode, f: SequenceF, nq: u32) -> Self {
        let a_formal = mode == LimitMode::TwoVarPoly;
        LimitConfig { mode, f, a_formal, nq, nt: nq, check_hypothesis: true }
    }

    pub fn with_a_formal(mut self, yes: bool) -> Self {
        self.a_formal = yes;
        self
    }

    fn validate(&self) -> Result<(), StochasticError> {
        use LimitMode::*;
        let bad = |why: &str| Err(StochasticError::Precondition(format!("{}: {why}", self.mode)));
        match (self.mode, &self.f) {
            (AcsPoly | TwoVarPoly, SequenceF::Polynomial(c)) if !c.is_empty() => {}
            (AcsPoly | TwoVarPoly, _) => return bad("needs a nonempty polynomial f"),
            (Periodic | Ceiling, SequenceF::Periodic(p)) if !p.is_empty() && p.len() <= MAX_PERIOD => {}
            (Periodic | Ceiling, _) => return bad("needs a periodic pattern of length 1..=12"),
            (GeometricB, SequenceF::Geometric(b)) if !b.is_one() => {}
            (GeometricB, _) => return bad("needs f(n) = bⁿ with b ≠ 1"),
        }
        match self.mode {
            AcsPoly | GeometricB if self.a_formal => bad("is stated for a = 0"),
            TwoVarPoly if !self.a_formal => bad("is stated for a formal"),
            _ if self.nq == 0 || self.nq > self.nt => bad("bounds need 0 < Nq <= Nt"),
            _ => Ok(()),
        }
    }

    fn recurrence_mode(&self) -> RecurrenceMode {
        if self.a_formal {
            RecurrenceMode::TwoVar
        } else {
            RecurrenceMode::Acs
        }
    }

    fn spec(&self) -> Result<VarSpec, StochasticError> {
        let names: &[&str] = if self.a_formal { &["q", "a"] } else { &["q"] };
        Ok(VarSpec::new(names, self.nq, self.nt)?)
    }

    fn a_arg(&self) -> Arg {
        if self.a_formal {
            Arg::Formal("a".into())
        } else {
            Arg::Value(Rational::zero())
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Mismatch {
    pub monomial: Vec<(String, u32)>,
    pub limit: String,
    pub closed_form: String,
}

#[derive(Clone, Debug)]
pub struct LimitReport {
    pub config: LimitConfig,
    /// The index after which the limit expression no longer changes.
    pub stabilized_at: Option<u32>,
    pub mismatch: Option<Mismatch>,
    pub notes: Vec<String>,
    pub millis: u128,
}

impl LimitReport {
    pub fn passed(&self) -> bool {
        self.stabilized_at.is_some() && self.mismatch.is_none()
    }

    fn outcome(&self) -> &'static str {
        match (self.stabilized_at, &self.mismatch) {
            (None, _) => "unstable",
            (Some(_), None) => "pass",
            (Some(_), Some(_)) => "fail",
        }
    }

    pub fn to_json(&self) -> Value {
        let c = &self.config;
        let mut v = json!({
            "command": "limit",
            "id": c.mode.name(),
            "params": { "f": c.f.to_string(), "a": if c.a_formal { "formal" } else { "0" } },
            "nq": c.nq,
            "nt": c.nt,
            "outcome": self.outcome(),
            "stabilized_at": self.stabilized_at,
            "millis": self.millis as u64,
        });
        if let Some(m) = &self.mismatch {
            let mono: serde_json::Map<String, Value> = m.monomial.iter().map(|(n, e)| (n.clone(), json!(e))).collect();
            v["mismatch"] = json!({
                "monomial": mono,
                "coefficients": { "limit": m.limit, "closed_form": m.closed_form },
            });
        }
        if !self.notes.is_empty() {
            v["notes"] = json!(self.notes);
        }
        v
    }

    pub fn summary(&self) -> String {
        let c = &self.config;
        let mut s = format!(
            "{:<13} f={:<22} a={:<6} Nq={:<3} Nt={:<3} {} ",
            c.mode.name(),
            c.f.to_string(),
            if c.a_formal { "formal" } else { "0" },
            c.nq,
            c.nt,
            self.outcome().to_uppercase()
        );
        if let Some(l) = self.stabilized_at {
            s.push_str(&format!("(stable from l={l}, {} ms)", self.millis));
        }
        if let Some(m) = &self.mismatch {
            let mono: Vec<String> = m.monomial.iter().filter(|(_, e)| *e > 0).map(|(n, e)| format!("{n}^{e}")).collect();
            let mono = if mono.is_empty() { "1".to_string() } else { mono.join("*") };
            s.push_str(&format!("\n    first mismatch at {mono}: limit={}, closed_form={}", m.limit, m.closed_form));
        }
        for n in &self.notes {
            s.push_str(&format!("\n    note: {n}"));
        }
        s
    }
}

/// Advances the recurrence until the limit expression has stopped changing
/// for two consecutive steps and every step that could still change a
/// retained coefficient has been taken. Returns the stabilization index and
/// the stabilized expression.
pub fn stabilize(state: &mut RecurrenceState, max_ell: u32) -> Result<(Option<u32>, QSeries), StochasticError> {
    let nq = state.spec().nq();
    let mut cur = state.limit_expression()?;
    let mut last_change = 0;
    while state.ell() < max_ell {
        state.advance()?;
        let next = state.limit_expression()?;
        if next != cur {
            last_change = state.ell();
            cur = next;
        }
        let l = state.ell();
        if l >= last_change + 2 && l >= nq + 2 {
            return Ok((Some(last_change), cur));
        }
    }
    Ok((None, cur))
}

/// `c_k = (1/N) Σ_{j=1}^N f(j) ζ_N^{(1−j)k}` for `k = 0..N`.
pub fn periodic_ck(pattern: &[Rational]) -> Result<Vec<ExactScalar>, StochasticError> {
    let n = pattern.len();
    if n == 0 || n > MAX_PERIOD {
        return Err(StochasticError::Precondition(format!("period {n} outside 1..=12")));
    }
    let inv_n = ExactScalar::from(Rational::new(1.into(), (n as i64).into()));
    (0..n as i64)
        .map(|k| {
            let mut acc = ExactScalar::zero();
            for (j, f) in pattern.iter().enumerate() {
                let z = ExactScalar::zeta_pow(n as u32, -(j as i64) * k)?;
                acc = acc.checked_add(&z.checked_mul(&ExactScalar::from(f.clone()))?)?;
            }
            Ok(acc.checked_mul(&inv_n)?)
        })
        .collect()
}

/// `f(m) = Σ_k c_k ζ_N^{(m−1)k}`.
pub fn periodic_reconstruct(ck: &[ExactScalar], m: u32) -> Result<ExactScalar, StochasticError> {
    let n = ck.len() as u32;
    let mut acc = ExactScalar::zero();
    for (k, c) in ck.iter().enumerate() {
        let z = ExactScalar::zeta_pow(n, (m as i64 - 1) * k as i64)?;
        acc = acc.checked_add(&z.checked_mul(c)?)?;
    }
    Ok(acc)
}

fn lift(s: &QSeries) -> ExactSeries {
    s.map_coeffs(|c| ExactScalar::from(c.clone()))
}

/// `Σ_j h_j P_j(𝔖_{0,a}, …, 𝔖_{j−1,a})`, with `𝔖_{m,0} = S_m`.
fn poly_closed_form(cfg: &LimitConfig, c: &[Rational]) -> Result<QSeries, StochasticError> {
    let spec = cfg.spec()?;
    let a = cfg.a_arg();
    let h = limit_coeffs(c)?;
    let args: Vec<QSeries> = (0..h.len() as u32)
        .map(|m| frak_s(&spec, m, &a, &Rational::one()))
        .collect::<Result<_, _>>()?;
    let mut out = Series::zero(&spec);
    for (j, hj) in h.iter().enumerate() {
        if hj.is_zero() {
            continue;
        }
        let pj = p_poly(j as u32 + 1).eval_series(&args[..=j])?;
        out.add_scaled(&pj, hj)?;
    }
    Ok(out)
}

/// `(q)_∞ / (a)_∞`.
fn q_over_a(cfg: &LimitConfig) -> Result<QSeries, StochasticError> {
    let spec = cfg.spec()?;
    let mut s = Series::one(&spec);
    apply_poch(&mut s, &ParamMonomial::q(1), Length::Infinite, false)?;
    if cfg.a_formal {
        apply_poch(&mut s, &ParamMonomial::formal("a", 0), Length::Infinite, true)?;
    }
    Ok(s)
}

/// `c_0 𝔖_{0,a} + Σ_{k≥1} c_k/(1 − ζ^k) − (q)_∞/(a)_∞ Σ_{k≥1} c_k (aζ^k)_∞/(ζ^k)_∞`.
fn periodic_closed_form(cfg: &LimitConfig, pattern: &[Rational]) -> Result<ExactSeries, StochasticError> {
    let spec = cfg.spec()?;
    let n = pattern.len();
    let ck = periodic_ck(pattern)?;
    let mut out = lift(&frak_s(&spec, 0, &cfg.a_arg(), &Rational::one())?).scale(&ck[0]);
    let mut sum = Series::<ExactScalar>::zero(&spec);
    for (k, c) in ck.iter().enumerate().skip(1) {
        if c.is_zero() {
            continue;
        }
        let z = ExactScalar::zeta_pow(n as u32, k as i64)?;
        let inv = (ExactScalar::one() - z.clone()).checked_inv()?;
        out = out.try_add(&Series::constant(&spec, c.clone() * inv))?;
        let mut x = Series::constant(&spec, c.clone());
        for i in 0..=spec.nq() {
            if cfg.a_formal {
                x.mul_one_minus_mut(&z, &[i, 1]);
            }
            x.div_one_minus_mut(&z, &[i])?;
        }
        sum = sum.try_add(&x)?;
    }
    let pref = lift(&q_over_a(cfg)?);
    Ok(out.try_sub(&pref.try_mul(&sum)?)?)
}

/// `b/(1 − b) − b (q)_∞/(b)_∞`.
fn geometric_closed_form(cfg: &LimitConfig, b: &Rational) -> Result<QSeries, StochasticError> {
    let spec = cfg.spec()?;
    let one_minus_b = Rational::one() - b;
    let mut s = Series::constant(&spec, -b.clone());
    apply_poch(&mut s, &ParamMonomial::q(1), Length::Infinite, false)?;
    apply_poch(&mut s, &ParamMonomial::scalar(b.clone(), 0), Length::Infinite, true)?;
    Ok(s.try_add(&Series::constant(&spec, b / &one_minus_b))?)
}

fn ceil_div(x: i64, n: i64) -> i64 {
    -((-x).div_euclid(n))
}

/// `(q)_∞/(a)_∞ Σ_n (a/q)_n qⁿ/(q)_n Σ_{j=1}^N f(j) ⌈(n + 1 − j)/N⌉`.
fn ceiling_closed_form(cfg: &LimitConfig, pattern: &[Rational]) -> Result<QSeries, StochasticError> {
    let spec = cfg.spec()?;
    let nn = pattern.len() as i64;
    let w = |n: u32| {
        pattern.iter().enumerate().fold(Rational::zero(), |acc, (j, f)| {
            acc + f * Rational::from_integer(ceil_div(n as i64 - j as i64, nn).into())
        })
    };
    let s = a_over_q_sum(&spec, &cfg.a_arg(), &Rational::one(), w)?;
    Ok(s.try_mul(&q_over_a(cfg)?)?)
}

/// The closed-form side for the configured mode.
pub fn limit_closed_form(cfg: &LimitConfig) -> Result<ExactSeries, StochasticError> {
    cfg.validate()?;
    Ok(match (&cfg.mode, &cfg.f) {
        (LimitMode::AcsPoly | LimitMode::TwoVarPoly, SequenceF::Polynomial(c)) => lift(&poly_closed_form(cfg, c)?),
        (LimitMode::Periodic, SequenceF::Periodic(p)) => periodic_closed_form(cfg, p)?,
        (LimitMode::Ceiling, SequenceF::Periodic(p)) => lift(&ceiling_closed_form(cfg, p)?),
        (LimitMode::GeometricB, SequenceF::Geometric(b)) => lift(&geometric_closed_form(cfg, b)?),
        _ => unreachable!("validated"),
    })
}

/// The stabilized limit expression of the recurrence.
pub fn limit_series(cfg: &LimitConfig) -> Result<(Option<u32>, QSeries), StochasticError> {
    cfg.validate()?;
    let mut st = if cfg.check_hypothesis {
        RecurrenceState::new(cfg.recurrence_mode(), cfg.f.clone(), cfg.nq, cfg.nt)?
    } else {
        RecurrenceState::new_unchecked(cfg.recurrence_mode(), cfg.f.clone(), cfg.nq, cfg.nt)?
    };
    stabilize(&mut st, 4 * cfg.nt)
}

/// Runs the recurrence to stabilization and compares with the closed form.
pub fn limit_verify(cfg: &LimitConfig) -> Result<LimitReport, StochasticError> {
    let start = Instant::now();
    let (stable, lhs) = limit_series(cfg)?;
    let rhs = limit_closed_form(cfg)?;
    let lhs = lift(&lhs);
    let mut notes = Vec::new();
    if cfg.a_formal && !cfg.f.at(1).is_zero() {
        notes.push(format!(
            "a·f(1) = 0 fails: f(1) = {} with a formal",
            format_rational(&cfg.f.at(1))
        ));
    }
    if stable.is_none() {
        notes.push(format!("no stabilization within l <= {}", 4 * cfg.nt));
    }
    let mismatch = ExactSeries::first_disagreement(&[&lhs, &rhs])?.map(|(exps, cs)| Mismatch {
        monomial: lhs.spec().names().iter().cloned().zip(exps).collect(),
        limit: cs[0].to_string(),
        closed_form: cs[1].to_string(),
    });
    Ok(LimitReport { config: cfg.clone(), stabilized_at: stable, mismatch, notes, millis: start.elapsed().as_millis() })
}

/// `Σ_{n≥1} t_n(a, q) qⁿ` and `−Σ_{n≥1} (q/a)_n F(qⁿ) (a/q)ⁿ/(q)_n`, a formal.
pub fn t_generating_sides(f: &SequenceF, nq: u32, nt: u32) -> Result<(QSeries, QSeries), StochasticError> {
    let mut st = RecurrenceState::new_unchecked(RecurrenceMode::TwoVar, f.clone(), nq, nt)?;
    let spec = st.spec().clone();
    let mut lhs = Series::zero(&spec);
    for n in 1..=nq {
        st.advance()?;
        lhs.add_scaled(&times(st.t(), &ParamMonomial::q(n))?, &Rational::one())?;
    }
    // q^{−n} F(qⁿ) = Σ_{m≥1} f(m) q^{n(m−1)}; Π_{i<n}(a − q^{i+1}) / (q)_n built up in p
    let mut rhs = Series::zero(&spec);
    let mut p = Series::one(&spec);
    for n in 1..=nt {
        p = mul_diff(&p, &ParamMonomial::formal("a", 0), &ParamMonomial::q(n))?;
        crate::identities::kit::div_1m(&mut p, &ParamMonomial::q(n))?;
        if p.is_zero() {
            break;
        }
        let g: Vec<(Rational, Vec<u32>)> = (1..=nq / n + 1)
            .map(|m| (f.at(m), vec![n * (m - 1), 0]))
            .filter(|(c, e)| !c.is_zero() && e[0] <= nq)
            .collect();
        rhs.add_scaled(&p.mul_sparse(&g)?, &-Rational::one())?;
    }
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    fn poly(c: &[i64]) -> SequenceF {
        SequenceF::Polynomial(c.iter().map(|&x| int(x)).collect())
    }

    #[test]
    fn acs_constant_gives_divisor_series() {
        let cfg = LimitConfig::new(LimitMode::AcsPoly, poly(&[1]), 15);
        let (st, s) = limit_series(&cfg).unwrap();
        assert!(st.is_some());
        let d: Vec<Rational> = (0..=15u64)
            .map(|n| if n == 0 { int(0) } else { int((1..=n).filter(|k| n % k == 0).count() as i64) })
            .collect();
        assert_eq!(s.q_coeffs(), d);
        assert!(limit_verify(&cfg).unwrap().passed());
    }

    #[test]
    fn geometric_minus_one() {
        let cfg = LimitConfig::new(LimitMode::GeometricB, SequenceF::Geometric(int(-1)), 15);
        let rep = limit_verify(&cfg).unwrap();
        assert!(rep.passed(), "{}", rep.summary());
        let (_, s) = limit_series(&cfg).unwrap();
        let mut want = vec![int(0); 16];
        want[1] = int(-1);
        want[4] = int(1);
        want[9] = int(-1);
        assert_eq!(s.q_coeffs(), want);
    }

    #[test]
    fn ck_round_trip() {
        let c = periodic_ck(&[int(1), int(1)]).unwrap();
        assert_eq!(c, vec![ExactScalar::from(int(1)), ExactScalar::from(int(0))]);
        for pat in [vec![int(1), int(-1)], vec![int(1), int(0), int(-1)], vec![rat(1, 2), int(3), int(0), int(-2), int(5)]] {
            let c = periodic_ck(&pat).unwrap();
            for m in 1..=2 * pat.len() as u32 {
                let f = periodic_reconstruct(&c, m).unwrap();
                assert_eq!(f, ExactScalar::from(pat[(m as usize - 1) % pat.len()].clone()));
            }
        }
        assert!(periodic_ck(&[]).is_err());
    }

    #[test]
    fn two_var_needs_hypothesis() {
        let mut cfg = LimitConfig::new(LimitMode::TwoVarPoly, poly(&[1]), 8);
        assert!(limit_verify(&cfg).is_err());
        cfg.check_hypothesis = false;
        let rep = limit_verify(&cfg).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.notes.len(), 1);
        let ok = LimitConfig::new(LimitMode::TwoVarPoly, poly(&[-1, 1]), 10);
        assert!(limit_verify(&ok).unwrap().passed());
    }

    #[test]
    fn t_generating_identity() {
        for f in [poly(&[0, -1, 1]), poly(&[-1, 1]), SequenceF::Periodic(vec![int(0), int(1), int(-1)])] {
            let (l, r) = t_generating_sides(&f, 10, 10).unwrap();
            assert_eq!(l, r, "{f}");
        }
        // with f(1) ≠ 0 the sides differ by exactly −a f(1)/(1 − a)
        for f in [poly(&[1]), poly(&[0, 1]), SequenceF::Periodic(vec![int(1), int(-1)])] {
            let (l, r) = t_generating_sides(&f, 10, 10).unwrap();
            let d = r.try_sub(&l).unwrap();
            for (e, c) in d.terms() {
                assert_eq!(e[0], 0);
                assert_eq!(*c, -f.at(1), "{f}");
            }
            assert_eq!(d.nnz(), 10);
        }
    }

    #[test]
    fn validation() {
        let cfg = LimitConfig::new(LimitMode::GeometricB, SequenceF::Geometric(int(1)), 8);
        assert!(limit_verify(&cfg).is_err());
        let cfg = LimitConfig::new(LimitMode::Periodic, poly(&[1]), 8);
        assert!(limit_verify(&cfg).is_err());
        assert_eq!("ceiling".parse::<LimitMode>().unwrap(), LimitMode::Ceiling);
        assert!("nope".parse::<LimitMode>().is_err());
    }
}
