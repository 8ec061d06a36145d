//! Truncated multivariate power series in q and up to two auxiliary variables.

mod builders;
mod numeric;
mod space;

pub use builders::{
    basic_hypergeom, binom_expand, pochhammer, pochhammer_inverse, pochhammer_pair,
    qbinom_coeffs, qbinom_gauss, HypergeomKind, Length, ParamMonomial,
};
pub use numeric::NumericValue;
pub use space::{Exps, Layout, VarSpec, MAX_AUX};

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::SeriesError;
use crate::scalar::{format_rational, Rational, Scalar};

/// A truncated power series over the spec's variables.
///
/// Storage is dense over the admitted monomials; equality and iteration only
/// ever look at nonzero coefficients.
#[derive(Clone)]
pub struct Series<S: Scalar> {
    layout: Arc<Layout>,
    coeffs: Vec<S>,
}

/// Outcome of comparing two series.
#[derive(Clone, Debug, PartialEq)]
pub enum Comparison<S> {
    Equal,
    Mismatch { exps: Vec<u32>, left: S, right: S },
}

impl<S> Comparison<S> {
    pub fn is_equal(&self) -> bool {
        matches!(self, Comparison::Equal)
    }
}

impl<S: Scalar> Series<S> {
    pub fn zero(spec: &VarSpec) -> Self {
        let layout = Layout::get(spec);
        let coeffs = vec![S::zero(); layout.len()];
        Series { layout, coeffs }
    }

    pub fn constant(spec: &VarSpec, c: S) -> Self {
        let mut s = Self::zero(spec);
        s.coeffs[0] = c;
        s
    }

    pub fn one(spec: &VarSpec) -> Self {
        Self::constant(spec, S::one())
    }

    /// `c · Π var_i^{e_i}`; zero when the monomial is outside the bounds.
    pub fn monomial(spec: &VarSpec, exps: &[u32], c: S) -> Result<Self, SeriesError> {
        let e = to_exps(spec, exps)?;
        let mut s = Self::zero(spec);
        if let Some(i) = s.layout.index(&e) {
            s.coeffs[i] = c;
        }
        Ok(s)
    }

    /// The variable `name` itself.
    pub fn var(spec: &VarSpec, name: &str) -> Result<Self, SeriesError> {
        let i = spec.index_of(name)?;
        let mut e = vec![0u32; spec.nvars()];
        e[i] = 1;
        Self::monomial(spec, &e, S::one())
    }

    /// Builds from `(exponents, coefficient)` pairs, dropping anything out of bounds.
    pub fn from_terms<I>(spec: &VarSpec, terms: I) -> Result<Self, SeriesError>
    where
        I: IntoIterator<Item = (Vec<u32>, S)>,
    {
        let mut s = Self::zero(spec);
        for (e, c) in terms {
            let e = to_exps(spec, &e)?;
            if let Some(i) = s.layout.index(&e) {
                s.coeffs[i].add_assign_ref(&c);
            }
        }
        Ok(s)
    }

    /// A series in q alone from its coefficient list `c_0, c_1, …`.
    pub fn from_q_coeffs(spec: &VarSpec, cs: &[S]) -> Self {
        let mut s = Self::zero(spec);
        for (k, c) in cs.iter().enumerate() {
            if let Some(i) = s.layout.index(&[k as u16, 0, 0]) {
                s.coeffs[i] = c.clone();
            }
        }
        s
    }

    pub fn spec(&self) -> &VarSpec {
        &self.layout.spec
    }

    pub fn layout(&self) -> &Layout {
        &self.layout
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(S::is_zero)
    }

    /// Coefficient of a monomial; zero outside the bounds.
    pub fn coeff(&self, exps: &[u32]) -> S {
        to_exps(self.spec(), exps)
            .ok()
            .and_then(|e| self.layout.index(&e))
            .map(|i| self.coeffs[i].clone())
            .unwrap_or_else(S::zero)
    }

    pub fn set_coeff(&mut self, exps: &[u32], c: S) -> Result<(), SeriesError> {
        let e = to_exps(self.spec(), exps)?;
        let i = self
            .layout
            .index(&e)
            .ok_or_else(|| SeriesError::InvalidSpec(format!("monomial {exps:?} out of bounds")))?;
        self.coeffs[i] = c;
        Ok(())
    }

    pub fn constant_term(&self) -> &S {
        &self.coeffs[0]
    }

    /// Nonzero terms in monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (Vec<u32>, &S)> + '_ {
        let nv = self.spec().nvars();
        self.layout
            .monos
            .iter()
            .zip(&self.coeffs)
            .filter(|(_, c)| !c.is_zero())
            .map(move |(e, c)| (e[..nv].iter().map(|&x| x as u32).collect(), c))
    }

    /// Number of nonzero coefficients.
    pub fn nnz(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    /// Coefficients of q^0..q^Nq; only meaningful for a q-only series.
    pub fn q_coeffs(&self) -> Vec<S> {
        (0..=self.spec().nq())
            .map(|k| {
                self.layout
                    .index(&[k as u16, 0, 0])
                    .map(|i| self.coeffs[i].clone())
                    .unwrap_or_else(S::zero)
            })
            .collect()
    }

    fn check_same(&self, other: &Self) -> Result<(), SeriesError> {
        if Arc::ptr_eq(&self.layout, &other.layout) || self.spec() == other.spec() {
            Ok(())
        } else {
            Err(SeriesError::SpecMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_same(other)?;
        let mut out = self.clone();
        out.add_assign_series(other);
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (a, b) in out.coeffs.iter_mut().zip(&other.coeffs) {
            if !b.is_zero() {
                a.sub_assign_ref(b);
            }
        }
        Ok(out)
    }

    fn add_assign_series(&mut self, other: &Self) {
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            if !b.is_zero() {
                a.add_assign_ref(b);
            }
        }
    }

    /// `self += c · other`.
    pub fn add_scaled(&mut self, other: &Self, c: &S) -> Result<(), SeriesError> {
        self.check_same(other)?;
        if c.is_zero() {
            return Ok(());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            if !b.is_zero() {
                a.add_assign_ref(&b.mul_ref(c));
            }
        }
        Ok(())
    }

    pub fn scale(&self, c: &S) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .map(|x| if x.is_zero() { S::zero() } else { x.mul_ref(c) })
            .collect();
        Series { layout: self.layout.clone(), coeffs }
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_same(other)?;
        let l = &*self.layout;
        let nq = l.spec.nq() as u16;
        let nt = l.spec.nt() as usize;
        let mut out = vec![S::zero(); l.len()];
        let b_nz: Vec<usize> = (0..l.len()).filter(|&j| !other.coeffs[j].is_zero()).collect();
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let ei = l.monos[i];
            let room = nt - l.totals[i] as usize;
            let limit = l.deg_start[room + 1];
            for &j in b_nz.iter().take_while(|&&j| j < limit) {
                let ej = l.monos[j];
                if ei[0] + ej[0] > nq {
                    continue;
                }
                let k = l.index(&[ei[0] + ej[0], ei[1] + ej[1], ei[2] + ej[2]]).unwrap();
                out[k].add_assign_ref(&a.mul_ref(&other.coeffs[j]));
            }
        }
        Ok(Series { layout: self.layout.clone(), coeffs: out })
    }

    /// Multiplies by the monomial `c · m`.
    pub fn mul_monomial(&self, c: &S, exps: &[u32]) -> Result<Self, SeriesError> {
        let m = to_exps(self.spec(), exps)?;
        let l = &*self.layout;
        let mut out = vec![S::zero(); l.len()];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            if let Some(k) = l.shifted(i, &m) {
                out[k] = a.mul_ref(c);
            }
        }
        Ok(Series { layout: self.layout.clone(), coeffs: out })
    }

    /// Multiplies by a sparse polynomial given as `(coefficient, exponents)` terms.
    pub fn mul_sparse(&self, poly: &[(S, Vec<u32>)]) -> Result<Self, SeriesError> {
        let l = &*self.layout;
        let terms = sparse_terms(self.spec(), poly)?;
        let mut out = vec![S::zero(); l.len()];
        for (k, slot) in out.iter_mut().enumerate() {
            for (c, m) in &terms {
                if let Some(i) = l.unshifted(k, m) {
                    let a = &self.coeffs[i];
                    if !a.is_zero() {
                        slot.add_assign_ref(&a.mul_ref(c));
                    }
                }
            }
        }
        Ok(Series { layout: self.layout.clone(), coeffs: out })
    }

    /// Divides by a sparse polynomial whose constant term is a unit.
    pub fn div_sparse(&self, poly: &[(S, Vec<u32>)]) -> Result<Self, SeriesError> {
        let l = &*self.layout;
        let terms = sparse_terms(self.spec(), poly)?;
        let mut c0 = S::zero();
        let mut rest = Vec::new();
        for (c, m) in terms {
            if m == [0, 0, 0] {
                c0.add_assign_ref(&c);
            } else {
                rest.push((c, m));
            }
        }
        let inv0 = c0.try_inv().map_err(|_| SeriesError::NotInvertible)?;
        let mut out: Vec<S> = vec![S::zero(); l.len()];
        for k in 0..l.len() {
            let mut acc = self.coeffs[k].clone();
            for (c, m) in &rest {
                if let Some(i) = l.unshifted(k, m) {
                    if !out[i].is_zero() {
                        acc.sub_assign_ref(&out[i].mul_ref(c));
                    }
                }
            }
            out[k] = if acc.is_zero() { acc } else { acc.mul_ref(&inv0) };
        }
        Ok(Series { layout: self.layout.clone(), coeffs: out })
    }

    /// `self · (1 − c·m)`.
    pub fn mul_one_minus(&self, c: &S, exps: &[u32]) -> Result<Self, SeriesError> {
        self.mul_sparse(&[(S::one(), vec![]), (-c.clone(), exps.to_vec())])
    }

    /// `self / (1 − c·m)` for a non-constant monomial `m`.
    pub fn div_one_minus(&self, c: &S, exps: &[u32]) -> Result<Self, SeriesError> {
        self.div_sparse(&[(S::one(), vec![]), (-c.clone(), exps.to_vec())])
    }

    /// Multiplicative inverse; the constant term must be a unit.
    pub fn inverse(&self) -> Result<Self, SeriesError> {
        let l = &*self.layout;
        let inv0 = self.coeffs[0]
            .try_inv()
            .map_err(|_| SeriesError::NotInvertible)?;
        let nz: Vec<usize> = (1..l.len()).filter(|&j| !self.coeffs[j].is_zero()).collect();
        let mut out: Vec<S> = vec![S::zero(); l.len()];
        out[0] = inv0.clone();
        for k in 1..l.len() {
            let mut acc = S::zero();
            for &j in nz.iter().take_while(|&&j| j <= k) {
                if let Some(i) = l.unshifted(k, &l.monos[j]) {
                    if !out[i].is_zero() {
                        acc.add_assign_ref(&out[i].mul_ref(&self.coeffs[j]));
                    }
                }
            }
            out[k] = if acc.is_zero() { acc } else { -(acc.mul_ref(&inv0)) };
        }
        Ok(Series { layout: self.layout.clone(), coeffs: out })
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, SeriesError> {
        self.try_mul(&other.inverse()?)
    }

    pub fn pow(&self, e: u32) -> Result<Self, SeriesError> {
        let mut acc = Self::one(self.spec());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.try_mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.try_mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Formal partial derivative. Coefficients whose preimage lies outside
    /// the bounds come out as zero, so the result is exact only to total
    /// degree Nt − 1.
    pub fn derivative(&self, var: &str) -> Result<Self, SeriesError> {
        let v = self.spec().index_of(var)?;
        let l = &*self.layout;
        let mut m = [0u16; 3];
        m[v] = 1;
        let mut out = vec![S::zero(); l.len()];
        for (k, slot) in out.iter_mut().enumerate() {
            if let Some(i) = l.shifted(k, &m) {
                let a = &self.coeffs[i];
                if !a.is_zero() {
                    *slot = a.mul_ref(&S::from_i64(l.monos[i][v] as i64));
                }
            }
        }
        Ok(Series { layout: self.layout.clone(), coeffs: out })
    }

    /// Re-expresses the series in another spec whose variables include all
    /// variables carrying nonzero exponents here; monomials outside the new
    /// bounds are dropped.
    pub fn convert(&self, target: &VarSpec) -> Result<Self, SeriesError> {
        let src = self.spec();
        let map: Vec<Option<usize>> = src
            .names()
            .iter()
            .map(|n| target.index_of(n).ok())
            .collect();
        let mut out = Series::zero(target);
        for (e, c) in self.terms() {
            let mut t = vec![0u32; target.nvars()];
            for (i, &x) in e.iter().enumerate() {
                match map[i] {
                    Some(j) => t[j] = x,
                    None if x == 0 => {}
                    None => return Err(SeriesError::UnknownVariable(src.names()[i].clone())),
                }
            }
            let te = to_exps(target, &t)?;
            if let Some(k) = out.layout.index(&te) {
                out.coeffs[k] = c.clone();
            }
        }
        Ok(out)
    }

    /// Same variables, smaller bounds.
    pub fn restrict(&self, nq: u32, nt: u32) -> Result<Self, SeriesError> {
        self.convert(&self.spec().with_bounds(nq, nt)?)
    }

    /// Zeroes every term whose `var`-degree exceeds `d`.
    pub fn truncate_var_degree(&self, var: &str, d: u32) -> Result<Self, SeriesError> {
        let v = self.spec().index_of(var)?;
        let mut out = self.clone();
        for (k, c) in out.coeffs.iter_mut().enumerate() {
            if self.layout.monos[k][v] as u32 > d {
                *c = S::zero();
            }
        }
        Ok(out)
    }

    /// The coefficient of `var^k` as a series in the remaining variables.
    /// Its bounds are `(min(Nq, Nt − k), Nt − k)`, the range where it is complete.
    pub fn coefficient(&self, var: &str, k: u32) -> Result<Self, SeriesError> {
        let v = self.spec().index_of(var)?;
        if v == 0 {
            return Err(SeriesError::InvalidSpec("use q_coeffs for q".into()));
        }
        let nt = self.spec().nt().checked_sub(k).ok_or_else(|| {
            SeriesError::InvalidSpec(format!("{var}^{k} exceeds the total-degree bound"))
        })?;
        let target = self
            .spec()
            .without_var(var)?
            .with_bounds(self.spec().nq().min(nt), nt)?;
        let mut out = Series::<S>::zero(&target);
        for (e, c) in self.terms() {
            if e[v] != k {
                continue;
            }
            let mut t = e.clone();
            t.remove(v);
            let te = to_exps(&target, &t)?;
            if let Some(i) = out.layout.index(&te) {
                out.coeffs[i] = c.clone();
            }
        }
        Ok(out)
    }

    /// Substitutes a scalar for an auxiliary variable. The result lives in the
    /// spec without that variable and is exact only where every contributing
    /// power of the variable was retained.
    pub fn substitute(&self, var: &str, value: &S) -> Result<Self, SeriesError> {
        let v = self.spec().index_of(var)?;
        if v == 0 {
            return Err(SeriesError::InvalidSpec("cannot substitute q".into()));
        }
        let target = self.spec().without_var(var)?;
        let mut out = Series::<S>::zero(&target);
        let mut powers: Vec<S> = vec![S::one()];
        for (e, c) in self.terms() {
            let k = e[v] as usize;
            while powers.len() <= k {
                let next = powers.last().unwrap().mul_ref(value);
                powers.push(next);
            }
            let mut t = e.clone();
            t.remove(v);
            let te = to_exps(&target, &t)?;
            if let Some(i) = out.layout.index(&te) {
                out.coeffs[i].add_assign_ref(&c.mul_ref(&powers[k]));
            }
        }
        Ok(out)
    }

    /// Substitutes `q^shift · m` (a scaled monomial in the remaining variables)
    /// for variable `var`, keeping the spec.
    pub fn substitute_monomial(
        &self,
        var: &str,
        c: &S,
        exps: &[u32],
    ) -> Result<Self, SeriesError> {
        let v = self.spec().index_of(var)?;
        let m = to_exps(self.spec(), exps)?;
        if m[v] != 0 {
            return Err(SeriesError::InvalidSpec("substitution is not a monomial in the other variables".into()));
        }
        let mut out = Series::<S>::zero(self.spec());
        let mut powers: Vec<S> = vec![S::one()];
        for (e, a) in self.terms() {
            let k = e[v] as usize;
            while powers.len() <= k {
                let next = powers.last().unwrap().mul_ref(c);
                powers.push(next);
            }
            let mut t = [0u32; 3];
            for (i, &x) in e.iter().enumerate() {
                if i != v {
                    t[i] = x;
                }
                t[i] += m[i] as u32 * k as u32;
            }
            if t.iter().any(|&x| x > u16::MAX as u32) {
                continue;
            }
            let te = [t[0] as u16, t[1] as u16, t[2] as u16];
            if let Some(i) = out.layout.index(&te) {
                out.coeffs[i].add_assign_ref(&a.mul_ref(&powers[k]));
            }
        }
        Ok(out)
    }

    /// Compares coefficient-wise, reporting the first disagreement in monomial order.
    pub fn compare(&self, other: &Self) -> Result<Comparison<S>, SeriesError> {
        self.check_same(other)?;
        let nv = self.spec().nvars();
        for (k, (a, b)) in self.coeffs.iter().zip(&other.coeffs).enumerate() {
            if a != b {
                return Ok(Comparison::Mismatch {
                    exps: self.layout.monos[k][..nv].iter().map(|&x| x as u32).collect(),
                    left: a.clone(),
                    right: b.clone(),
                });
            }
        }
        Ok(Comparison::Equal)
    }

    /// First monomial, in monomial order, where not all of `sides` agree,
    /// together with each side's coefficient there.
    pub fn first_disagreement(sides: &[&Self]) -> Result<Option<(Vec<u32>, Vec<S>)>, SeriesError> {
        let Some(first) = sides.first() else {
            return Ok(None);
        };
        for s in &sides[1..] {
            first.check_same(s)?;
        }
        let nv = first.spec().nvars();
        for k in 0..first.coeffs.len() {
            let a = &first.coeffs[k];
            if sides[1..].iter().any(|s| &s.coeffs[k] != a) {
                let exps = first.layout.monos[k][..nv].iter().map(|&x| x as u32).collect();
                return Ok(Some((exps, sides.iter().map(|s| s.coeffs[k].clone()).collect())));
            }
        }
        Ok(None)
    }

    /// Applies `f` to every coefficient.
    pub fn map_coeffs<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Series<T> {
        Series {
            layout: self.layout.clone(),
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms()
            .map(|(e, c)| serde_json::json!([e, c.to_json()]))
            .collect();
        serde_json::json!({
            "vars": self.spec().names(),
            "nq": self.spec().nq(),
            "nt": self.spec().nt(),
            "terms": terms,
        })
    }
}

impl Series<Rational> {
    /// Parses the JSON form produced by [`Series::to_json`].
    pub fn from_json(v: &serde_json::Value) -> Result<Self, SeriesError> {
        let bad = |m: &str| SeriesError::InvalidSpec(format!("bad series JSON: {m}"));
        let names: Vec<String> = v["vars"]
            .as_array()
            .ok_or_else(|| bad("vars"))?
            .iter()
            .map(|x| x.as_str().map(String::from).ok_or_else(|| bad("var name")))
            .collect::<Result<_, _>>()?;
        let nq = v["nq"].as_u64().ok_or_else(|| bad("nq"))? as u32;
        let nt = v["nt"].as_u64().ok_or_else(|| bad("nt"))? as u32;
        let spec = VarSpec::new(&names, nq, nt)?;
        let mut terms = Vec::new();
        for t in v["terms"].as_array().ok_or_else(|| bad("terms"))? {
            let e: Vec<u32> = t[0]
                .as_array()
                .ok_or_else(|| bad("exponents"))?
                .iter()
                .map(|x| x.as_u64().map(|y| y as u32).ok_or_else(|| bad("exponent")))
                .collect::<Result<_, _>>()?;
            let num = t[1][0].as_str().ok_or_else(|| bad("numerator"))?;
            let den = t[1][1].as_str().ok_or_else(|| bad("denominator"))?;
            let c = crate::scalar::parse_rational(&format!("{num}/{den}"))?;
            terms.push((e, c));
        }
        Series::from_terms(&spec, terms)
    }
}

fn to_exps(spec: &VarSpec, exps: &[u32]) -> Result<Exps, SeriesError> {
    if exps.len() > spec.nvars() {
        return Err(SeriesError::InvalidSpec(format!(
            "{} exponents for {} variables",
            exps.len(),
            spec.nvars()
        )));
    }
    let mut e = [0u16; 3];
    for (i, &x) in exps.iter().enumerate() {
        e[i] = x.min(u16::MAX as u32) as u16;
    }
    Ok(e)
}

fn sparse_terms<S: Scalar>(
    spec: &VarSpec,
    poly: &[(S, Vec<u32>)],
) -> Result<Vec<(S, Exps)>, SeriesError> {
    poly.iter()
        .filter(|(c, _)| !c.is_zero())
        .map(|(c, e)| Ok((c.clone(), to_exps(spec, e)?)))
        .collect()
}

impl<S: Scalar> PartialEq for Series<S> {
    fn eq(&self, other: &Self) -> bool {
        self.spec() == other.spec() && self.coeffs == other.coeffs
    }
}

impl<S: Scalar> fmt::Debug for Series<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Series({}; {})", self.spec(), self)
    }
}

impl<S: Scalar> fmt::Display for Series<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = self.spec().names().to_vec();
        let mut first = true;
        for (e, c) in self.terms() {
            let mono: Vec<String> = e
                .iter()
                .zip(&names)
                .filter(|(&x, _)| x > 0)
                .map(|(&x, n)| if x == 1 { n.clone() } else { format!("{n}^{x}") })
                .collect();
            let cs = c.to_string();
            let (neg, body) = match cs.strip_prefix('-') {
                Some(rest) if !rest.contains(' ') => (true, rest.to_string()),
                _ => (false, cs.clone()),
            };
            let body = if body.contains(' ') { format!("({body})") } else { body };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            if mono.is_empty() {
                write!(f, "{body}")?;
            } else if body == "1" {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{body}*{}", mono.join("*"))?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

macro_rules! forward_op {
    ($tr:ident, $m:ident, $call:ident) => {
        impl<S: Scalar> $tr for Series<S> {
            type Output = Series<S>;
            fn $m(self, rhs: Self) -> Series<S> {
                self.$call(&rhs).expect("series over different specs")
            }
        }
        impl<'a, S: Scalar> $tr<&'a Series<S>> for &'a Series<S> {
            type Output = Series<S>;
            fn $m(self, rhs: &'a Series<S>) -> Series<S> {
                self.$call(rhs).expect("series over different specs")
            }
        }
    };
}

forward_op!(Add, add, try_add);
forward_op!(Sub, sub, try_sub);
forward_op!(Mul, mul, try_mul);

impl<S: Scalar> Neg for Series<S> {
    type Output = Series<S>;
    fn neg(self) -> Series<S> {
        let coeffs = self.coeffs.into_iter().map(|c| -c).collect();
        Series { layout: self.layout, coeffs }
    }
}

impl<S: Scalar> Neg for &Series<S> {
    type Output = Series<S>;
    fn neg(self) -> Series<S> {
        -(self.clone())
    }
}

/// Text form of a rational series coefficient list, used by the CLI.
pub fn format_q_coeffs(cs: &[Rational]) -> String {
    cs.iter().map(format_rational).collect::<Vec<_>>().join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    type S = Series<Rational>;

    fn q(n: u32) -> VarSpec {
        VarSpec::q_only(n)
    }

    fn qs(spec: &VarSpec, cs: &[i64]) -> S {
        S::from_q_coeffs(spec, &cs.iter().map(|&c| int(c)).collect::<Vec<_>>())
    }

    #[test]
    fn product_truncates() {
        let sp = q(5);
        let a = qs(&sp, &[1, 1]);
        let b = qs(&sp, &[1, -1]);
        assert_eq!(&a * &b, qs(&sp, &[1, 0, -1]));
        let sp1 = q(1);
        let x = S::var(&sp1, "q").unwrap();
        assert!((&x * &x).is_zero());
    }

    #[test]
    fn additive_inverse() {
        let sp = q(6);
        let d = qs(&sp, &[0, 1, 2, 2, 3, 2, 4]);
        assert!((&d + &(-&d)).is_zero());
    }

    #[test]
    fn invert_geometric() {
        let sp = q(3);
        let inv = qs(&sp, &[1, -1]).inverse().unwrap();
        assert_eq!(inv, qs(&sp, &[1, 1, 1, 1]));
        assert_eq!(
            qs(&sp, &[0, 1, 1]).inverse(),
            Err(SeriesError::NotInvertible)
        );
    }

    #[test]
    fn invert_with_formal_a() {
        let sp = VarSpec::new(&["q", "a"], 4, 4).unwrap();
        let s = S::from_terms(&sp, [(vec![0, 0], int(1)), (vec![1, 1], int(-1))]).unwrap();
        let inv = s.inverse().unwrap();
        let expect = S::from_terms(
            &sp,
            [(vec![0, 0], int(1)), (vec![1, 1], int(1)), (vec![2, 2], int(1))],
        )
        .unwrap();
        assert_eq!(inv, expect);
        assert_eq!(inv, S::one(&sp).div_one_minus(&int(1), &[1, 1]).unwrap());
        assert_eq!(&s * &inv, S::one(&sp));
    }

    #[test]
    fn spec_mismatch_is_an_error() {
        let a = S::one(&q(3));
        let b = S::one(&q(4));
        assert_eq!(a.try_add(&b), Err(SeriesError::SpecMismatch));
        assert_eq!(a.compare(&b), Err(SeriesError::SpecMismatch));
    }

    #[test]
    fn compare_reports_first_mismatch() {
        let sp = q(4);
        let a = qs(&sp, &[1, 1]);
        assert_eq!(a.compare(&a).unwrap(), Comparison::Equal);
        assert_eq!(
            a.compare(&qs(&sp, &[1, 2])).unwrap(),
            Comparison::Mismatch { exps: vec![1], left: int(1), right: int(2) }
        );
    }

    #[test]
    fn slices_and_substitution() {
        let sp = VarSpec::new(&["q", "a"], 3, 4).unwrap();
        // 1/(1 - a q) = Σ a^k q^k
        let s = S::one(&sp).div_one_minus(&int(1), &[1, 1]).unwrap();
        assert_eq!(s.coefficient("a", 0).unwrap(), S::one(&VarSpec::new(&["q"], 3, 4).unwrap()));
        let c1 = s.coefficient("a", 1).unwrap();
        assert_eq!(c1.spec().nt(), 3);
        assert_eq!(c1.q_coeffs(), vec![int(0), int(1), int(0), int(0)]);
        let sub = s.substitute("a", &rat(1, 2)).unwrap();
        assert_eq!(sub.q_coeffs(), vec![int(1), rat(1, 2), rat(1, 4), int(0)]);
        let t = s.truncate_var_degree("a", 1).unwrap();
        assert_eq!(t.nnz(), 2);
    }

    #[test]
    fn derivative_in_aux() {
        let sp = VarSpec::new(&["q", "x"], 3, 3).unwrap();
        let s = S::from_terms(&sp, [(vec![1, 2], int(3)), (vec![0, 1], int(1))]).unwrap();
        let d = s.derivative("x").unwrap();
        assert_eq!(d.coeff(&[1, 1]), int(6));
        assert_eq!(d.coeff(&[0, 0]), int(1));
    }

    #[test]
    fn json_round_trip() {
        let sp = VarSpec::new(&["q", "a"], 3, 3).unwrap();
        let s = S::from_terms(&sp, [(vec![1, 2], rat(-3, 7)), (vec![0, 0], int(1))]).unwrap();
        let back = S::from_json(&s.to_json()).unwrap();
        assert_eq!(s, back);
    }

    #[test]
    fn display_form() {
        let sp = q(3);
        assert_eq!(qs(&sp, &[1, -1, 0, 2]).to_string(), "1 - q + 2*q^3");
        assert_eq!(S::zero(&sp).to_string(), "0");
    }
}
