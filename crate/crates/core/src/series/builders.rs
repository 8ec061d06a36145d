//! q-Pochhammer products, Gaussian binomials, binomial expansions and basic
//! hypergeometric partial sums.

use num_bigint::BigInt;
use num_traits::Zero;

use super::{Series, VarSpec};
use crate::combinatorics::gen_binom;
use crate::error::SeriesError;
use crate::scalar::{Rational, Scalar};

/// `coeff · (product of formal variables) · q^shift`.
#[derive(Clone, Debug, PartialEq)]
pub struct ParamMonomial<S> {
    pub coeff: S,
    pub vars: Vec<(String, u32)>,
    pub shift: u32,
}

impl<S: Scalar> ParamMonomial<S> {
    pub fn scalar(coeff: S, shift: u32) -> Self {
        ParamMonomial { coeff, vars: vec![], shift }
    }

    pub fn formal(name: &str, shift: u32) -> Self {
        Self::scaled(S::one(), name, shift)
    }

    pub fn scaled(coeff: S, name: &str, shift: u32) -> Self {
        ParamMonomial { coeff, vars: vec![(name.to_string(), 1)], shift }
    }

    /// `q^shift`.
    pub fn q(shift: u32) -> Self {
        Self::scalar(S::one(), shift)
    }

    pub fn times_var(mut self, name: &str) -> Self {
        match self.vars.iter_mut().find(|(n, _)| n == name) {
            Some((_, e)) => *e += 1,
            None => self.vars.push((name.to_string(), 1)),
        }
        self
    }

    pub fn times_scalar(mut self, c: &S) -> Self {
        self.coeff = self.coeff.mul_ref(c);
        self
    }

    pub fn shifted(mut self, by: u32) -> Self {
        self.shift += by;
        self
    }

    /// Exponent vector in `spec`, including the q-shift.
    pub fn exps(&self, spec: &VarSpec) -> Result<Vec<u32>, SeriesError> {
        let mut e = vec![0u32; spec.nvars()];
        e[0] = self.shift;
        for (name, k) in &self.vars {
            e[spec.index_of(name)?] += k;
        }
        Ok(e)
    }

    pub fn is_constant(&self) -> bool {
        self.shift == 0 && self.vars.iter().all(|(_, k)| *k == 0)
    }

    pub fn to_series(&self, spec: &VarSpec) -> Result<Series<S>, SeriesError> {
        Series::monomial(spec, &self.exps(spec)?, self.coeff.clone())
    }
}

/// Length of a q-Pochhammer product.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Length {
    Finite(u32),
    Infinite,
}

fn in_bounds(spec: &VarSpec, e: &[u32]) -> bool {
    e[0] <= spec.nq() && e.iter().sum::<u32>() <= spec.nt()
}

impl<S: Scalar> Series<S> {
    /// In place `self ← self · (1 − c·m)`.
    pub(crate) fn mul_one_minus_mut(&mut self, c: &S, m: &[u32]) {
        if c.is_zero() {
            return;
        }
        if m.iter().all(|&x| x == 0) {
            let f = S::one() - c.clone();
            *self = self.scale(&f);
            return;
        }
        let Ok(me) = super::to_exps(self.spec(), m) else { return };
        let layout = self.layout.clone();
        for k in (0..layout.len()).rev() {
            if let Some(i) = layout.unshifted(k, &me) {
                if !self.coeffs[i].is_zero() {
                    let d = self.coeffs[i].mul_ref(c);
                    self.coeffs[k].sub_assign_ref(&d);
                }
            }
        }
    }

    /// In place `self ← self / (1 − c·m)`.
    pub(crate) fn div_one_minus_mut(&mut self, c: &S, m: &[u32]) -> Result<(), SeriesError> {
        if c.is_zero() {
            return Ok(());
        }
        if m.iter().all(|&x| x == 0) {
            let f = (S::one() - c.clone())
                .try_inv()
                .map_err(|_| SeriesError::NotInvertible)?;
            *self = self.scale(&f);
            return Ok(());
        }
        let me = super::to_exps(self.spec(), m)?;
        let layout = self.layout.clone();
        for k in 0..layout.len() {
            if let Some(i) = layout.unshifted(k, &me) {
                if !self.coeffs[i].is_zero() {
                    let d = self.coeffs[i].mul_ref(c);
                    self.coeffs[k].add_assign_ref(&d);
                }
            }
        }
        Ok(())
    }
}

/// Number of factors of `(x; q)_len` that can differ from 1 within the bounds.
fn effective_factors<S: Scalar>(
    x: &ParamMonomial<S>,
    len: Length,
    spec: &VarSpec,
) -> Result<u32, SeriesError> {
    let e = x.exps(spec)?;
    let base_total: u32 = e.iter().sum();
    let cap = if e[0] > spec.nq() || base_total > spec.nt() {
        0
    } else {
        // factor i has q-exponent e0 + i and total base_total + i
        (spec.nq() - e[0]).min(spec.nt() - base_total) + 1
    };
    Ok(match len {
        Length::Finite(n) => n.min(cap),
        Length::Infinite => {
            if base_total == 0 && cap == 0 {
                return Err(SeriesError::NonTerminating);
            }
            cap
        }
    })
}

/// `(x; q)_n = Π_{i<n} (1 − x·q^i)`, truncated; `n` may be infinite.
pub fn pochhammer<S: Scalar>(
    x: &ParamMonomial<S>,
    n: Length,
    spec: &VarSpec,
) -> Result<Series<S>, SeriesError> {
    let mut out = Series::one(spec);
    let k = effective_factors(x, n, spec)?;
    let mut e = x.exps(spec)?;
    for _ in 0..k {
        out.mul_one_minus_mut(&x.coeff, &e);
        e[0] += 1;
    }
    Ok(out)
}

/// `1 / (x; q)_n`.
pub fn pochhammer_inverse<S: Scalar>(
    x: &ParamMonomial<S>,
    n: Length,
    spec: &VarSpec,
) -> Result<Series<S>, SeriesError> {
    let mut out = Series::one(spec);
    let k = effective_factors(x, n, spec)?;
    let mut e = x.exps(spec)?;
    for _ in 0..k {
        out.div_one_minus_mut(&x.coeff, &e)?;
        e[0] += 1;
    }
    Ok(out)
}

/// `Π_{i<n} (A − B·q^i)`. This is `(B/A; q)_n · A^n` written without dividing
/// by `A`, so `A` may itself be formal.
pub fn pochhammer_pair<S: Scalar>(
    a: &ParamMonomial<S>,
    b: &ParamMonomial<S>,
    n: u32,
    spec: &VarSpec,
) -> Result<Series<S>, SeriesError> {
    let mut out = Series::one(spec);
    let ea = a.exps(spec)?;
    let mut eb = b.exps(spec)?;
    for _ in 0..n {
        if out.is_zero() {
            break;
        }
        let poly = if in_bounds(spec, &eb) {
            vec![(a.coeff.clone(), ea.clone()), (-b.coeff.clone(), eb.clone())]
        } else {
            vec![(a.coeff.clone(), ea.clone())]
        };
        out = out.mul_sparse(&poly)?;
        eb[0] += 1;
    }
    Ok(out)
}

/// Gaussian binomial coefficient `[N n]_q` as integer coefficients.
pub fn qbinom_coeffs(big_n: u32, n: u32) -> Option<Vec<BigInt>> {
    if n > big_n {
        return None;
    }
    // rows[k] = [m k] for the current m
    let mut rows: Vec<Vec<BigInt>> = vec![vec![BigInt::from(1)]];
    for m in 1..=big_n {
        let mut next: Vec<Vec<BigInt>> = Vec::with_capacity(m as usize + 1);
        for k in 0..=m.min(n) {
            // [m k] = [m-1 k-1] + q^k [m-1 k]
            let deg = (k * (m - k)) as usize;
            let mut p = vec![BigInt::zero(); deg + 1];
            if k >= 1 {
                for (i, c) in rows[k as usize - 1].iter().enumerate() {
                    p[i] += c;
                }
            }
            if k < m {
                if let Some(prev) = rows.get(k as usize) {
                    for (i, c) in prev.iter().enumerate() {
                        p[i + k as usize] += c;
                    }
                }
            }
            next.push(p);
        }
        rows = next;
    }
    Some(rows[n as usize].clone())
}

/// `[N n]_q` as a series.
pub fn qbinom_gauss<S: Scalar>(big_n: u32, n: u32, spec: &VarSpec) -> Result<Series<S>, SeriesError> {
    let cs = qbinom_coeffs(big_n, n)
        .ok_or_else(|| SeriesError::InvalidSpec(format!("n={n} exceeds N={big_n}")))?;
    let cs: Vec<S> = cs
        .into_iter()
        .map(|c| S::from_rational(&Rational::from_integer(c)))
        .collect();
    Ok(Series::from_q_coeffs(spec, &cs))
}

/// `(1 − x)^{−α} = Σ_j C(α+j−1, j) x^j` for `x` without constant term.
pub fn binom_expand<S: Scalar>(x: &Series<S>, alpha: &Rational) -> Result<Series<S>, SeriesError> {
    if !x.constant_term().is_zero() {
        return Err(SeriesError::InvalidSpec(
            "binomial expansion needs a series without constant term".into(),
        ));
    }
    let spec = x.spec().clone();
    let one = Rational::from_integer(1.into());
    let mut out = Series::one(&spec);
    let terms: Vec<_> = x.terms().collect();
    if terms.len() == 1 {
        let (e, c) = (terms[0].0.clone(), terms[0].1.clone());
        let mut cp = S::one();
        for j in 1..=spec.nt() {
            cp = cp.mul_ref(&c);
            let ej: Vec<u32> = e.iter().map(|&v| v * j).collect();
            if !in_bounds(&spec, &ej) {
                break;
            }
            let g = gen_binom(&(alpha + Rational::from_integer(j.into()) - &one), j);
            out.set_coeff(&ej, cp.mul_ref(&S::from_rational(&g)))?;
        }
        return Ok(out);
    }
    let mut power = Series::one(&spec);
    for j in 1..=spec.nt() {
        power = power.try_mul(x)?;
        if power.is_zero() {
            break;
        }
        let g = gen_binom(&(alpha + Rational::from_integer(j.into()) - &one), j);
        out.add_scaled(&power, &S::from_rational(&g))?;
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HypergeomKind {
    TwoPhiOne,
    ThreePhiTwo,
}

/// Partial sum `Σ_{n≤terms} (u_1)_n⋯(u_r)_n zⁿ / ((l_1)_n⋯(l_s)_n (q)_n)`.
pub fn basic_hypergeom<S: Scalar>(
    kind: HypergeomKind,
    upper: &[ParamMonomial<S>],
    lower: &[ParamMonomial<S>],
    z: &ParamMonomial<S>,
    terms: u32,
    spec: &VarSpec,
) -> Result<Series<S>, SeriesError> {
    let (nu, nl) = match kind {
        HypergeomKind::TwoPhiOne => (2, 1),
        HypergeomKind::ThreePhiTwo => (3, 2),
    };
    if upper.len() != nu || lower.len() != nl {
        return Err(SeriesError::InvalidSpec(format!(
            "{kind:?} takes {nu} upper and {nl} lower parameters"
        )));
    }
    let ez = z.exps(spec)?;
    let mut term = Series::one(spec);
    let mut sum = term.clone();
    for n in 1..=terms {
        for u in upper {
            let mut e = u.exps(spec)?;
            e[0] += n - 1;
            if in_bounds(spec, &e) {
                term.mul_one_minus_mut(&u.coeff, &e);
            }
        }
        term = term.mul_monomial(&z.coeff, &ez)?;
        for l in lower {
            let mut e = l.exps(spec)?;
            e[0] += n - 1;
            if in_bounds(spec, &e) {
                term.div_one_minus_mut(&l.coeff, &e)?;
            }
        }
        if n <= spec.nq() {
            term.div_one_minus_mut(&S::one(), &[n])?;
        }
        if term.is_zero() {
            break;
        }
        sum = sum.try_add(&term)?;
    }
    Ok(sum)
}
