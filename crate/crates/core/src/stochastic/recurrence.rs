use std::fmt;

use num_traits::{One, Zero};

use super::StochasticError;
use crate::identities::kit::{add_mono, div_1m, mul_1m};
use crate::scalar::{format_rational, Rational};
use crate::series::{ParamMonomial, Series, VarSpec};
use crate::QSeries;

/// The sequence f(n), n ≥ 1, driving the recurrence.
#[derive(Clone, Debug, PartialEq)]
pub enum SequenceF {
    /// `f(n) = Σ c_k n^k`.
    Polynomial(Vec<Rational>),
    /// `f(n) = pattern[(n − 1) mod N]`, so the pattern lists `f(1), …, f(N)`.
    Periodic(Vec<Rational>),
    /// `f(n) = bⁿ`.
    Geometric(Rational),
}

impl SequenceF {
    pub fn at(&self, n: u32) -> Rational {
        match self {
            SequenceF::Polynomial(c) => crate::combinatorics::eval_poly_at(c, n as i64),
            SequenceF::Periodic(p) => p[(n as usize - 1) % p.len()].clone(),
            SequenceF::Geometric(b) => num_traits::pow(b.clone(), n as usize),
        }
    }
}

impl fmt::Display for SequenceF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[Rational]| v.iter().map(format_rational).collect::<Vec<_>>().join(",");
        match self {
            SequenceF::Polynomial(c) => write!(f, "poly:{}", list(c)),
            SequenceF::Periodic(p) => write!(f, "periodic:{}", list(p)),
            SequenceF::Geometric(b) => write!(f, "geometric:{}", format_rational(b)),
        }
    }
}

impl std::str::FromStr for SequenceF {
    type Err = StochasticError;

    /// Parses `poly:c0,c1,…`, `periodic:f1,…,fN` or `geometric:b`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || StochasticError::Precondition(format!("cannot parse sequence {s:?}"));
        let (kind, body) = s.split_once(':').ok_or_else(bad)?;
        let vals = body
            .split(',')
            .map(crate::scalar::parse_rational)
            .collect::<Result<Vec<_>, _>>()?;
        match kind {
            "poly" => Ok(SequenceF::Polynomial(vals)),
            "periodic" => Ok(SequenceF::Periodic(vals)),
            "geometric" if vals.len() == 1 => Ok(SequenceF::Geometric(vals[0].clone())),
            _ => Err(bad()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RecurrenceMode {
    /// `t_ℓ = f(ℓ) + (1 − q^{ℓ−1}) t_{ℓ−1}`.
    Acs,
    /// `t_ℓ = (f(ℓ) − a f(ℓ+1))/(1 − aq^ℓ) + (1 − q^{ℓ−1})/(1 − aq^ℓ) · t_{ℓ−1}`, a formal.
    TwoVar,
}

/// `t_ℓ` together with `Σ_{i≤ℓ} f(i)`.
#[derive(Clone, Debug)]
pub struct RecurrenceState {
    mode: RecurrenceMode,
    f: SequenceF,
    ell: u32,
    t: QSeries,
    partial: Rational,
}

fn a_mono(coeff: Rational, shift: u32) -> ParamMonomial<Rational> {
    ParamMonomial::scaled(coeff, "a", shift)
}

impl RecurrenceState {
    /// Starts at `t_0 = 0`. The two-variable mode needs `a·f(1) = 0`, which for
    /// a formal `a` means `f(1) = 0`.
    pub fn new(mode: RecurrenceMode, f: SequenceF, nq: u32, nt: u32) -> Result<Self, StochasticError> {
        if mode == RecurrenceMode::TwoVar && !f.at(1).is_zero() {
            return Err(StochasticError::Precondition(format!(
                "the two-variable recurrence needs a·f(1) = 0, but f(1) = {} with a formal",
                format_rational(&f.at(1))
            )));
        }
        Self::new_unchecked(mode, f, nq, nt)
    }

    /// As [`RecurrenceState::new`] without the `a·f(1) = 0` check.
    pub fn new_unchecked(mode: RecurrenceMode, f: SequenceF, nq: u32, nt: u32) -> Result<Self, StochasticError> {
        if let SequenceF::Periodic(p) = &f {
            if p.is_empty() {
                return Err(StochasticError::Precondition("empty periodic pattern".into()));
            }
        }
        let names: &[&str] = match mode {
            RecurrenceMode::Acs => &["q"],
            RecurrenceMode::TwoVar => &["q", "a"],
        };
        let spec = VarSpec::new(names, nq, nt)?;
        Ok(RecurrenceState { mode, f, ell: 0, t: Series::zero(&spec), partial: Rational::zero() })
    }

    pub fn mode(&self) -> RecurrenceMode {
        self.mode
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    pub fn t(&self) -> &QSeries {
        &self.t
    }

    pub fn spec(&self) -> &VarSpec {
        self.t.spec()
    }

    pub fn advance(&mut self) -> Result<(), StochasticError> {
        let l = self.ell + 1;
        let mut t = if l == 1 { Series::zero(self.spec()) } else { self.t.clone() };
        if l > 1 {
            mul_1m(&mut t, &ParamMonomial::q(l - 1))?;
        }
        let fl = self.f.at(l);
        add_mono(&mut t, &ParamMonomial::scalar(fl.clone(), 0))?;
        if self.mode == RecurrenceMode::TwoVar {
            add_mono(&mut t, &a_mono(-self.f.at(l + 1), 0))?;
            div_1m(&mut t, &a_mono(Rational::one(), l))?;
        }
        self.t = t;
        self.partial += fl;
        self.ell = l;
        Ok(())
    }

    /// `Σ_{i≤ℓ} f(i) − t_ℓ`, or in the two-variable mode
    /// `Σ_{i≤ℓ} f(i) − a/(1−a)·f(ℓ+1) − (1 − aq^ℓ)/(1 − a)·t_ℓ`.
    pub fn limit_expression(&self) -> Result<QSeries, StochasticError> {
        let spec = self.spec().clone();
        let mut x = self.t.clone();
        if self.mode == RecurrenceMode::TwoVar {
            mul_1m(&mut x, &a_mono(Rational::one(), self.ell))?;
            add_mono(&mut x, &a_mono(self.f.at(self.ell + 1), 0))?;
            div_1m(&mut x, &a_mono(Rational::one(), 0))?;
        }
        Ok(Series::constant(&spec, self.partial.clone()).try_sub(&x)?)
    }
}
