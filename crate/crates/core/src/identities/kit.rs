//! Building blocks shared by the identity sides.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::combinatorics::{binomial, gen_binom, polylog_neg};
use crate::error::SeriesError;
use crate::scalar::{Rational, Scalar};
use crate::series::{Length, ParamMonomial, Series, VarSpec};
use crate::QSeries;

type R<T> = Result<T, SeriesError>;

/// A parameter that is either a formal variable or a bound value.
#[derive(Clone, Debug, PartialEq)]
pub enum Arg {
    Formal(String),
    Value(Rational),
}

impl Arg {
    /// `coeff · arg^d · q^shift`.
    pub fn mono(&self, coeff: Rational, d: u32, shift: u32) -> ParamMonomial<Rational> {
        match self {
            Arg::Formal(n) => ParamMonomial {
                coeff,
                vars: if d > 0 { vec![(n.clone(), d)] } else { vec![] },
                shift,
            },
            Arg::Value(v) => ParamMonomial::scalar(coeff * num_traits::pow(v.clone(), d as usize), shift),
        }
    }

    pub fn is_formal(&self) -> bool {
        matches!(self, Arg::Formal(_))
    }
}

pub fn r(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn rb(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

pub fn sign(n: u32) -> Rational {
    if n % 2 == 0 {
        r(1)
    } else {
        r(-1)
    }
}

pub fn choose(n: i64, k: i64) -> Rational {
    rb(binomial(n, k))
}

pub fn in_bounds(spec: &VarSpec, e: &[u32]) -> bool {
    e[0] <= spec.nq() && e.iter().sum::<u32>() <= spec.nt()
}

/// Only q, with the same bounds.
pub fn q_spec(spec: &VarSpec) -> VarSpec {
    VarSpec::new(&["q"], spec.nq(), spec.nt()).expect("q-only spec")
}

/// `s += m` when `m` is inside the bounds.
pub fn add_mono(s: &mut QSeries, m: &ParamMonomial<Rational>) -> R<()> {
    let e = m.exps(s.spec())?;
    if in_bounds(s.spec(), &e) && !m.coeff.is_zero() {
        let c = s.coeff(&e) + &m.coeff;
        s.set_coeff(&e, c)?;
    }
    Ok(())
}

/// Sparse-polynomial form of a list of monomials, dropping those out of bounds.
pub fn poly(spec: &VarSpec, ms: &[ParamMonomial<Rational>]) -> R<Vec<(Rational, Vec<u32>)>> {
    let mut out = Vec::new();
    for m in ms {
        let e = m.exps(spec)?;
        if in_bounds(spec, &e) && !m.coeff.is_zero() {
            out.push((m.coeff.clone(), e));
        }
    }
    Ok(out)
}

/// `s ← s · m`.
pub fn times(s: &QSeries, m: &ParamMonomial<Rational>) -> R<QSeries> {
    let e = m.exps(s.spec())?;
    if !in_bounds(s.spec(), &e) {
        return Ok(Series::zero(s.spec()));
    }
    s.mul_monomial(&m.coeff, &e)
}

/// `s ← s · (1 − m)`.
pub fn mul_1m(s: &mut QSeries, m: &ParamMonomial<Rational>) -> R<()> {
    let e = m.exps(s.spec())?;
    if in_bounds(s.spec(), &e) {
        s.mul_one_minus_mut(&m.coeff, &e);
    }
    Ok(())
}

/// `s ← s / (1 − m)`.
pub fn div_1m(s: &mut QSeries, m: &ParamMonomial<Rational>) -> R<()> {
    let e = m.exps(s.spec())?;
    if in_bounds(s.spec(), &e) {
        s.div_one_minus_mut(&m.coeff, &e)?;
    }
    Ok(())
}

/// `s ← s · (A − B)`.
pub fn mul_diff(s: &QSeries, a: &ParamMonomial<Rational>, b: &ParamMonomial<Rational>) -> R<QSeries> {
    let neg_b = ParamMonomial { coeff: -b.coeff.clone(), ..b.clone() };
    s.mul_sparse(&poly(s.spec(), &[a.clone(), neg_b])?)
}

/// Applies the factors of `(x; q)_len`, or their inverses, to `s` in place.
pub fn apply_poch(s: &mut QSeries, x: &ParamMonomial<Rational>, len: Length, inverse: bool) -> R<()> {
    let spec = s.spec().clone();
    let mut e = x.exps(&spec)?;
    let mut i = 0u32;
    loop {
        if let Length::Finite(n) = len {
            if i >= n {
                break;
            }
        }
        let constant = e.iter().all(|&v| v == 0);
        if !constant && !in_bounds(&spec, &e) {
            break;
        }
        if inverse {
            s.div_one_minus_mut(&x.coeff, &e)?;
        } else {
            s.mul_one_minus_mut(&x.coeff, &e);
        }
        e[0] += 1;
        i += 1;
    }
    Ok(())
}

/// Terms of `(1 − x)^{−α}` for a monomial `x` without constant part.
pub fn binom_terms(spec: &VarSpec, x: &ParamMonomial<Rational>, alpha: &Rational) -> R<Vec<(Rational, Vec<u32>)>> {
    let e = x.exps(spec)?;
    assert!(e.iter().any(|&v| v > 0), "binomial expansion needs a non-constant monomial");
    let mut out = vec![(r(1), vec![0; spec.nvars()])];
    let mut cp = r(1);
    for j in 1u32.. {
        let ej: Vec<u32> = e.iter().map(|&v| v * j).collect();
        if !in_bounds(spec, &ej) {
            break;
        }
        cp *= &x.coeff;
        let g = gen_binom(&(alpha + r(j as i64 - 1)), j);
        out.push((&cp * g, ej));
    }
    Ok(out)
}

/// `(q^{n+1}; q)_∞` for `n = 0..=Nq`, in q alone.
pub fn tails(qs: &VarSpec) -> Vec<QSeries> {
    let nq = qs.nq() as usize;
    let mut out = vec![Series::one(qs); nq + 1];
    for n in (0..nq).rev() {
        let mut t = out[n + 1].clone();
        t.mul_one_minus_mut(&r(1), &[n as u32 + 1]);
        out[n] = t;
    }
    out
}

/// `Σ_{n≥start} w(n) cⁿ qⁿ (q^{n+1})_∞` in q alone.
pub fn uchimura_sum(qs: &VarSpec, start: u32, w: impl Fn(u32) -> Rational, c: &Rational) -> R<QSeries> {
    let tl = tails(qs);
    let mut out = Series::zero(qs);
    let mut cn = num_traits::pow(c.clone(), start as usize);
    for n in start..=qs.nq() {
        let coeff = w(n) * &cn;
        if !coeff.is_zero() {
            let t = tl[n as usize].mul_monomial(&coeff, &[n])?;
            out.add_scaled(&t, &r(1))?;
        }
        cn *= c;
    }
    Ok(out)
}

/// `Σ_n σ_{m, c·x}(n) qⁿ`, where `x` may be formal.
pub fn divisor_series(spec: &VarSpec, m: u32, x: &Arg, c: &Rational) -> R<QSeries> {
    let mut out = Series::zero(spec);
    for d in 1..=spec.nq() {
        let w = num_traits::pow(r(d as i64), m as usize) * num_traits::pow(c.clone(), d as usize);
        if w.is_zero() {
            continue;
        }
        for k in 1..=spec.nq() / d {
            add_mono(&mut out, &x.mono(w.clone(), d, d * k))?;
        }
    }
    Ok(out)
}

/// `Li_{−m}(c·x) = Σ_k k^m (cx)^k`.
pub fn polylog_series(spec: &VarSpec, m: u32, x: &Arg, c: &Rational) -> R<QSeries> {
    match x {
        Arg::Value(v) => {
            let val = polylog_neg(m, &(c * v))?;
            Ok(Series::constant(spec, val))
        }
        Arg::Formal(_) => {
            let mut out = Series::zero(spec);
            for k in 1..=spec.nt() {
                let w = num_traits::pow(r(k as i64), m as usize) * num_traits::pow(c.clone(), k as usize);
                add_mono(&mut out, &x.mono(w, k, 0))?;
            }
            Ok(out)
        }
    }
}

/// `𝔖_{m,a,c} = S_{m,c} − Li_{−m}(ac) − Σ σ_{m,ac}(n) qⁿ`.
pub fn frak_s(spec: &VarSpec, m: u32, a: &Arg, c: &Rational) -> R<QSeries> {
    let s = divisor_series(spec, m, &Arg::Value(r(1)), c)?;
    let li = polylog_series(spec, m, a, c)?;
    let sa = divisor_series(spec, m, a, c)?;
    s.try_sub(&li)?.try_sub(&sa)
}

/// `Σ_{n≥1} w(n) cⁿ qⁿ (a/q)_n / (q)_n`, built as `(q − a) Σ w(n) cⁿ q^{n−1} (a)_{n−1}/(q)_n`.
pub fn a_over_q_sum(spec: &VarSpec, a: &Arg, c: &Rational, w: impl Fn(u32) -> Rational) -> R<QSeries> {
    let mut out = Series::zero(spec);
    let mut t = Series::one(spec);
    for n in 1..=spec.nt() + 1 {
        if n == 1 {
            t = t.scale(c);
        } else {
            t = times(&t, &ParamMonomial::scalar(c.clone(), 1))?;
            mul_1m(&mut t, &a.mono(r(1), 1, n - 2))?;
        }
        div_1m(&mut t, &ParamMonomial::q(n))?;
        if t.is_zero() {
            break;
        }
        let wn = w(n);
        if !wn.is_zero() {
            out.add_scaled(&t, &wn)?;
        }
    }
    mul_diff(&out, &ParamMonomial::q(1), &a.mono(r(1), 1, 0))
}

/// `(q)_∞ / (c q)_∞`.
pub fn ratio_prefactor(s: &mut QSeries, c: &Rational) -> R<()> {
    apply_poch(s, &ParamMonomial::q(1), Length::Infinite, false)?;
    apply_poch(s, &ParamMonomial::scalar(c.clone(), 1), Length::Infinite, true)
}

/// `T_{r,a,c}(x, q)` with `x = 1 + y` when `y` is given, else at `x = 1`:
/// `Σ_{n≥1} c^r q^{nr}/(1 − x c qⁿ)^r − Σ_{n≥0} a^r c^r q^{nr}/(1 − x a c qⁿ)^r`.
pub fn t_function(spec: &VarSpec, rr: u32, a: &Arg, c: &Rational, y: Option<&str>) -> R<QSeries> {
    let yi = y.map(|n| spec.index_of(n)).transpose()?;
    let mut out = Series::zero(spec);
    let push = |out: &mut QSeries, m: &ParamMonomial<Rational>, k: u32| -> R<bool> {
        // w · m · (1 + y)^k
        let e = m.exps(spec)?;
        if !in_bounds(spec, &e) {
            return Ok(false);
        }
        match yi {
            None => add_mono(out, m)?,
            Some(vi) => {
                for j in 0..=k {
                    let mut ej = e.clone();
                    ej[vi] += j;
                    if !in_bounds(spec, &ej) {
                        break;
                    }
                    let c = out.coeff(&ej) + &m.coeff * choose(k as i64, j as i64);
                    out.set_coeff(&ej, c)?;
                }
            }
        }
        Ok(true)
    };
    let one = Arg::Value(r(1));
    // first sum: Σ_k C(r+k−1, k) c^{r+k} q^{n(r+k)} (1+y)^k
    for n in 1..=spec.nq() {
        if n * rr > spec.nq() {
            break;
        }
        for k in 0.. {
            let w = choose((rr + k) as i64 - 1, k as i64) * num_traits::pow(c.clone(), (rr + k) as usize);
            let m = one.mono(w, 0, n * (rr + k));
            if !push(&mut out, &m, k)? {
                break;
            }
        }
    }
    // second sum
    for n in 0..=spec.nq() {
        if n * rr > spec.nq() {
            break;
        }
        if n == 0 {
            if let Arg::Value(av) = a {
                // (ac)^r (1 − ac(1+y))^{−r}; y^j part is C(r+j−1, j)(ac)^{r+j}/(1−ac)^{r+j}
                let v = av * c;
                let inv = (r(1) - &v).try_inv()?;
                for j in 0..=spec.nt() {
                    if yi.is_none() && j > 0 {
                        break;
                    }
                    let w = -choose((rr + j) as i64 - 1, j as i64)
                        * num_traits::pow(&v * &inv, (rr + j) as usize);
                    let mut e = vec![0u32; spec.nvars()];
                    if let Some(vi) = yi {
                        e[vi] = j;
                    }
                    if !in_bounds(spec, &e) {
                        break;
                    }
                    let cur = out.coeff(&e) + w;
                    out.set_coeff(&e, cur)?;
                }
                continue;
            }
        }
        for k in 0.. {
            let w = -choose((rr + k) as i64 - 1, k as i64) * num_traits::pow(c.clone(), (rr + k) as usize);
            let m = a.mono(w, rr + k, n * (rr + k));
            if !push(&mut out, &m, k)? {
                break;
            }
            if m.exps(spec)?.iter().all(|&v| v == 0) {
                break;
            }
        }
    }
    Ok(out)
}

/// `G(1 + y) = ((1+y) a c)_∞ / ((1+y) c q)_∞` in a spec containing `y`.
pub fn g_product(spec: &VarSpec, a: &Arg, c: &Rational, y: &str) -> R<QSeries> {
    let yi = spec.index_of(y)?;
    let mut out = Series::one(spec);
    let factor = |m: ParamMonomial<Rational>| -> R<Vec<(Rational, Vec<u32>)>> {
        let e = m.exps(spec)?;
        let mut ey = e.clone();
        ey[yi] += 1;
        let mut p = vec![(r(1), vec![0; spec.nvars()])];
        for t in [e, ey] {
            if in_bounds(spec, &t) {
                p.push((-m.coeff.clone(), t));
            }
        }
        Ok(p)
    };
    for i in 0..=spec.nq() {
        let m = a.mono(c.clone(), 1, i);
        if !in_bounds(spec, &m.exps(spec)?) {
            break;
        }
        out = out.mul_sparse(&factor(m)?)?;
    }
    for i in 1..=spec.nq() {
        out = out.div_sparse(&factor(ParamMonomial::scalar(c.clone(), i))?)?;
    }
    Ok(out)
}

pub fn factorial_r(n: u32) -> Rational {
    rb(crate::combinatorics::factorial(n))
}

pub fn one() -> Rational {
    Rational::one()
}
