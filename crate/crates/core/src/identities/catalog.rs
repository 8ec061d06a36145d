use std::sync::OnceLock;

use num_traits::Zero;

use super::kit::*;
use super::{Env, IdentityDescriptor, IdentityError, ParamKind, ParamSpec};
use crate::combinatorics::{bell_poly, eulerian_coeffs, gen_binom, n_poly, p_poly, q_coef, coeff_a, coeff_small_a};
use crate::scalar::Rational;
use crate::series::{basic_hypergeom, qbinom_gauss, HypergeomKind, Length, ParamMonomial, Series, VarSpec};
use crate::QSeries;

type Res = Result<QSeries, IdentityError>;

fn formal(name: &'static str) -> ParamSpec {
    ParamSpec { name, kind: ParamKind::Formal { bindable: false }, default: "formal", note: "formal variable" }
}

fn formal_or_bound(name: &'static str) -> ParamSpec {
    ParamSpec {
        name,
        kind: ParamKind::Formal { bindable: true },
        default: "formal",
        note: "formal variable, or a rational value",
    }
}

fn rational(name: &'static str, default: &'static str, note: &'static str) -> ParamSpec {
    ParamSpec { name, kind: ParamKind::Rational, default, note }
}

fn int(name: &'static str, min: i64, max: i64, default: &'static str) -> ParamSpec {
    ParamSpec { name, kind: ParamKind::Int { min, max }, default, note: "natural number" }
}

fn unknown(id: &str, side: &str) -> IdentityError {
    IdentityError::UnknownSide { id: id.into(), side: side.into() }
}

fn q(shift: u32) -> ParamMonomial<Rational> {
    ParamMonomial::q(shift)
}

fn sc(c: &Rational, shift: u32) -> ParamMonomial<Rational> {
    ParamMonomial::scalar(c.clone(), shift)
}

fn tri(n: u32) -> u32 {
    n * (n + 1) / 2
}

fn pow(c: &Rational, n: u32) -> Rational {
    num_traits::pow(c.clone(), n as usize)
}

fn ipow(n: u32, m: u32) -> Rational {
    num_traits::pow(r(n as i64), m as usize)
}

// ---------------------------------------------------------------- shared sums

/// `Σ_{n≥1} (−1)^{n−1} cⁿ q^{n(n+1)/2} / ((1−qⁿ)(cq)_n)`; δ(n) = n(n+1)/2.
fn entry4_sum(qs: &VarSpec, c: &Rational) -> Res {
    let mut out = Series::zero(qs);
    let mut d = Series::one(qs);
    for n in 1.. {
        if tri(n) > qs.nq() {
            break;
        }
        div_1m(&mut d, &sc(c, n))?;
        let mut t = times(&d, &sc(&(sign(n - 1) * pow(c, n)), tri(n)))?;
        div_1m(&mut t, &q(n))?;
        out.add_scaled(&t, &one())?;
    }
    Ok(out)
}

/// `Σ_{n≥1} (−1)^{n−1} q^{C(n,2)+nr} / ((1−qⁿ)^α (q)_n)`; δ(n) = C(n,2)+nr.
fn v_sum(qs: &VarSpec, alpha: &Rational, rr: u32) -> Res {
    let mut out = Series::zero(qs);
    let mut d = Series::one(qs);
    for n in 1.. {
        let e = n * (n - 1) / 2 + n * rr;
        if e > qs.nq() {
            break;
        }
        div_1m(&mut d, &q(n))?;
        let t = times(&d, &sc(&sign(n - 1), e))?;
        let t = t.mul_sparse(&binom_terms(qs, &q(n), alpha)?)?;
        out.add_scaled(&t, &one())?;
    }
    Ok(out)
}

/// `Σ_n n^m cⁿ qⁿ (q^{n+1})_∞`.
fn moment(qs: &VarSpec, m: u32, c: &Rational) -> Res {
    Ok(uchimura_sum(qs, 1, |n| ipow(n, m), c)?)
}

/// `K_{j,c} = Σ σ_{j−1,c}(n) qⁿ` for `j = 1..=m`.
fn cumulants(qs: &VarSpec, m: u32, c: &Rational) -> Result<Vec<QSeries>, IdentityError> {
    (1..=m)
        .map(|j| Ok(divisor_series(qs, j - 1, &Arg::Value(one()), c)?))
        .collect()
}

/// `Y_m(K_{1,c}, …, K_{m,c})`.
fn bell_of_cumulants(qs: &VarSpec, m: u32, c: &Rational) -> Res {
    Ok(bell_poly(m).eval_series(&cumulants(qs, m, c)?)?)
}

/// `P_k(x_0, …, x_{k−1})` at the given series.
fn p_at(k: u32, args: &[QSeries]) -> Res {
    Ok(p_poly(k).eval_series(args)?)
}

/// `Σ_{r=1}^k C(k−1, k−r)/r! · N_r(T_1, …, T_r)`.
fn n_chain(k: u32, ts: &[QSeries]) -> Res {
    let spec = ts[0].spec().clone();
    let mut out = Series::zero(&spec);
    for rr in 1..=k {
        let w = choose(k as i64 - 1, (k - rr) as i64) / factorial_r(rr);
        let v = n_poly(rr).eval_series(&ts[..rr as usize])?;
        out.add_scaled(&v, &w)?;
    }
    Ok(out)
}

/// `s · (q)_∞ (ac)_∞ / ((cq)_∞ (a)_∞)`.
fn two_var_prefactor(s: &mut QSeries, a: &Arg, c: &Rational) -> Result<(), IdentityError> {
    apply_poch(s, &q(1), Length::Infinite, false)?;
    apply_poch(s, &a.mono(c.clone(), 1, 0), Length::Infinite, false)?;
    apply_poch(s, &sc(c, 1), Length::Infinite, true)?;
    apply_poch(s, &a.mono(one(), 1, 0), Length::Infinite, true)?;
    Ok(())
}

/// `Σ_{n≥1} (q/a)_n aⁿ / ((1−cqⁿ)^{k+1} (q)_{n−1})`; δ(n) = n.
fn gk2_lhs(spec: &VarSpec, a: &Arg, c: &Rational, k: u32) -> Res {
    let mut out = Series::zero(spec);
    let am = a.mono(one(), 1, 0);
    let mut t = mul_diff(&Series::one(spec), &am, &q(1))?;
    for n in 1..=spec.nt() {
        if n > 1 {
            t = mul_diff(&t, &am, &q(n))?;
            div_1m(&mut t, &q(n - 1))?;
        }
        if t.is_zero() {
            break;
        }
        let mut term = t.clone();
        for _ in 0..=k {
            div_1m(&mut term, &sc(c, n))?;
        }
        out.add_scaled(&term, &one())?;
    }
    Ok(out)
}

/// `−Σ_{n≥1} (q/a)_n aⁿ / ((1−qⁿ)^k (q)_n)`; δ(n) = n.
fn gk_lhs(spec: &VarSpec, a: &Arg, k: u32) -> Res {
    let mut out = Series::zero(spec);
    let am = a.mono(one(), 1, 0);
    let mut t = Series::one(spec);
    for n in 1..=spec.nt() {
        t = mul_diff(&t, &am, &q(n))?;
        div_1m(&mut t, &q(n))?;
        if t.is_zero() {
            break;
        }
        let mut term = t.clone();
        for _ in 0..k {
            div_1m(&mut term, &q(n))?;
        }
        out.add_scaled(&term, &r(-1))?;
    }
    Ok(out)
}

fn frak_list(spec: &VarSpec, k: u32, a: &Arg, c: &Rational) -> Result<Vec<QSeries>, IdentityError> {
    (0..k).map(|m| Ok(frak_s(spec, m, a, c)?)).collect()
}

fn t_list(spec: &VarSpec, k: u32, a: &Arg, c: &Rational) -> Result<Vec<QSeries>, IdentityError> {
    (1..=k).map(|rr| Ok(t_function(spec, rr, a, c, None)?)).collect()
}

/// `Σ_{n≥1} (−1)^{n−1} q^{C(n+1,2)} / ((1−cqⁿ)^{k+1} (q)_{n−1})`; δ(n) = C(n+1,2).
fn gk2_c_sum(qs: &VarSpec, c: &Rational, k: u32) -> Res {
    let mut out = Series::zero(qs);
    let mut d = Series::one(qs);
    for n in 1.. {
        if tri(n) > qs.nq() {
            break;
        }
        if n > 1 {
            div_1m(&mut d, &q(n - 1))?;
        }
        let mut t = times(&d, &sc(&sign(n - 1), tri(n)))?;
        for _ in 0..=k {
            div_1m(&mut t, &sc(c, n))?;
        }
        out.add_scaled(&t, &one())?;
    }
    Ok(out)
}

/// `(1/c)·(q)_∞/(cq)_∞ · P_k(S_{0,c}, …, S_{k−1,c})`.
fn gk2_c_poly(qs: &VarSpec, c: &Rational, k: u32) -> Res {
    let s: Vec<QSeries> = (0..k)
        .map(|m| divisor_series(qs, m, &Arg::Value(one()), c))
        .collect::<Result<_, _>>()?;
    let mut p = p_at(k, &s)?.scale(&c.recip());
    ratio_prefactor(&mut p, c)?;
    Ok(p)
}

/// `U_{m,i} = Σ_{n≥i} n^m qⁿ (q^{n+1})_∞`.
fn u_tail(qs: &VarSpec, m: u32, i: u32) -> Res {
    Ok(uchimura_sum(qs, i.max(1), |n| ipow(n, m), &one())?)
}

/// `Σ_n Π_{i<n}(A − Bqⁱ)` style partial products `term_n` with `term_0 = start`,
/// `term_n = term_{n−1} · step(n)`; sums `weight(n, term_n)` while `n ≤ limit`.
fn incremental_sum(
    start: QSeries,
    limit: u32,
    mut step: impl FnMut(u32, &QSeries) -> Res,
    mut weight: impl FnMut(u32, &QSeries) -> Res,
) -> Res {
    let spec = start.spec().clone();
    let mut out = Series::zero(&spec);
    let mut t = start;
    for n in 0..=limit {
        if n > 0 {
            t = step(n, &t)?;
        }
        if t.is_zero() {
            break;
        }
        let w = weight(n, &t)?;
        out.add_scaled(&w, &one())?;
    }
    Ok(out)
}

// ---------------------------------------------------------------- builders

fn b_entry4(env: &Env, side: &str) -> Res {
    let c = env.rat("c")?;
    match side {
        "ramanujan" => entry4_sum(&env.qs, &c),
        "divisor" => Ok(divisor_series(&env.qs, 0, &Arg::Value(one()), &c)?),
        _ => Err(unknown("ramanujan-entry4", side)),
    }
}

fn b_kluyver(env: &Env, side: &str) -> Res {
    match side {
        "ramanujan" => entry4_sum(&env.qs, &one()),
        "divisor" => Ok(divisor_series(&env.qs, 0, &Arg::Value(one()), &one())?),
        _ => Err(unknown("kluyver", side)),
    }
}

fn b_uchimura3(env: &Env, side: &str) -> Res {
    match side {
        "uchimura" => moment(&env.qs, 1, &one()),
        "ramanujan" => entry4_sum(&env.qs, &one()),
        "divisor" => Ok(divisor_series(&env.qs, 0, &Arg::Value(one()), &one())?),
        _ => Err(unknown("uchimura-3way", side)),
    }
}

fn b_uchimura_bell(env: &Env, side: &str) -> Res {
    let m = env.int("m")?;
    match side {
        "uchimura" => moment(&env.qs, m, &one()),
        "bell" => bell_of_cumulants(&env.qs, m, &one()),
        _ => Err(unknown("uchimura-bell", side)),
    }
}

fn b_abem_bell(env: &Env, side: &str) -> Res {
    let m = env.int("m")?;
    let c = env.rat("c")?;
    match side {
        "uchimura" => moment(&env.qs, m, &c),
        "bell" => {
            let mut y = bell_of_cumulants(&env.qs, m, &c)?;
            ratio_prefactor(&mut y, &c)?;
            Ok(y)
        }
        _ => Err(unknown("abem-bell", side)),
    }
}

const EXP_ORDER: u32 = 5;

fn b_exp_cumulant(env: &Env, side: &str) -> Res {
    let c = env.rat("c")?;
    let spec = &env.spec;
    let t = Arg::Formal("t".into());
    let mut pref = Series::one(spec);
    ratio_prefactor(&mut pref, &c)?;
    let out = match side {
        "generating" => {
            let ks = cumulants(&env.qs, EXP_ORDER, &c)?;
            let mut x = Series::zero(spec);
            for (i, k) in ks.iter().enumerate() {
                let m = i as u32 + 1;
                let term = times(&env.lift(k)?, &t.mono(factorial_r(m).recip(), m, 0))?;
                x.add_scaled(&term, &one())?;
            }
            // exp(x) with x divisible by t
            let mut e = Series::one(spec);
            let mut p = Series::one(spec);
            for j in 1..=EXP_ORDER {
                p = p.try_mul(&x)?.truncate_var_degree("t", EXP_ORDER)?;
                e.add_scaled(&p, &factorial_r(j).recip())?;
            }
            pref.try_mul(&e)?
        }
        "moments" => {
            let mut out = pref;
            for m in 1..=EXP_ORDER {
                let mm = env.lift(&moment(&env.qs, m, &c)?)?;
                let term = times(&mm, &t.mono(factorial_r(m).recip(), m, 0))?;
                out.add_scaled(&term, &one())?;
            }
            out
        }
        _ => return Err(unknown("exp-cumulant", side)),
    };
    Ok(out.truncate_var_degree("t", EXP_ORDER)?)
}

fn b_dilcher1(env: &Env, side: &str) -> Res {
    let k = env.int("k")?;
    let qs = &env.qs;
    match side {
        "uchimura" => Ok(uchimura_sum(qs, k, |n| choose(n as i64, k as i64), &one())?),
        "ramanujan" => v_sum(qs, &r(k as i64), k),
        "divisor" => {
            // Σ_{j_1 ≥ … ≥ j_k ≥ 1} Π q^{j}/(1−q^{j})
            let nq = qs.nq() as usize;
            let mut prev = vec![Series::one(qs); nq + 1];
            for _ in 0..k {
                let mut cur = vec![Series::zero(qs); nq + 1];
                let mut acc = Series::zero(qs);
                for j in 1..=nq {
                    let mut g = times(&prev[j], &q(j as u32))?;
                    div_1m(&mut g, &q(j as u32))?;
                    acc.add_scaled(&g, &one())?;
                    cur[j] = acc.clone();
                }
                prev = cur;
            }
            Ok(prev[nq].clone())
        }
        _ => Err(unknown("dilcher-1", side)),
    }
}

fn b_acs_lemma(env: &Env, side: &str) -> Res {
    let k = env.int("k")?;
    let qs = &env.qs;
    match side {
        "uchimura" => {
            // (q)_∞ Σ_n qⁿ/(q)_n C(k+n−1, k)
            let mut out = incremental_sum(
                Series::one(qs),
                qs.nq(),
                |n, t| {
                    let mut t = times(t, &q(1))?;
                    div_1m(&mut t, &q(n))?;
                    Ok(t)
                },
                |n, t| Ok(t.scale(&choose((k + n) as i64 - 1, k as i64))),
            )?;
            apply_poch(&mut out, &q(1), Length::Infinite, false)?;
            Ok(out)
        }
        "ramanujan" => v_sum(qs, &r(k as i64), 1),
        _ => Err(unknown("acs-lemma", side)),
    }
}

fn b_dixit_maji(env: &Env, side: &str) -> Res {
    let spec = &env.spec;
    let (a, b) = (env.arg("a")?, env.arg("b")?);
    let c = env.rat("c")?;
    let am = a.mono(one(), 1, 0);
    match side {
        // Σ_{n≥1} (b/a)_n aⁿ / ((1−cqⁿ)(b)_n); δ(n) = n
        "lhs" => incremental_sum(
            Series::one(spec),
            spec.nt(),
            |n, t| {
                let mut t = mul_diff(t, &am, &b.mono(one(), 1, n - 1))?;
                div_1m(&mut t, &b.mono(one(), 1, n - 1))?;
                Ok(t)
            },
            |n, t| {
                if n == 0 {
                    return Ok(Series::zero(spec));
                }
                let mut t = t.clone();
                div_1m(&mut t, &sc(&c, n))?;
                Ok(t)
            },
        ),
        // Σ_{m≥0} (b/c)_m c^m/(b)_m (aq^m/(1−aq^m) − bq^m/(1−bq^m)); δ(m) = m
        "rhs" => incremental_sum(
            Series::one(spec),
            spec.nq(),
            |m, t| {
                let mut t = mul_diff(t, &sc(&c, 0), &b.mono(one(), 1, m - 1))?;
                div_1m(&mut t, &b.mono(one(), 1, m - 1))?;
                Ok(t)
            },
            |m, t| {
                let mut x = times(t, &a.mono(one(), 1, m))?;
                div_1m(&mut x, &a.mono(one(), 1, m))?;
                let mut y = times(t, &b.mono(one(), 1, m))?;
                div_1m(&mut y, &b.mono(one(), 1, m))?;
                Ok(x.try_sub(&y)?)
            },
        ),
        _ => Err(unknown("dixit-maji", side)),
    }
}

fn b_gupta_kumar_alpha(env: &Env, side: &str) -> Res {
    let spec = &env.spec;
    let a = env.arg("a")?;
    let alpha = env.rat("alpha")?;
    match side {
        // Σ_{n≥1} (q/a)_n aⁿ / ((1−qⁿ)^α (q)_n); δ(n) = n
        "lhs" => incremental_sum(
            Series::one(spec),
            spec.nt(),
            |n, t| {
                let mut t = mul_diff(t, &a.mono(one(), 1, 0), &q(n))?;
                div_1m(&mut t, &q(n))?;
                Ok(t)
            },
            |n, t| {
                if n == 0 {
                    return Ok(Series::zero(spec));
                }
                Ok(t.mul_sparse(&binom_terms(spec, &q(n), &alpha)?)?)
            },
        ),
        "rhs" => {
            let mut s = a_over_q_sum(spec, &a, &one(), |n| gen_binom(&(&alpha + r(n as i64 - 1)), n - 1))?;
            apply_poch(&mut s, &q(1), Length::Infinite, false)?;
            apply_poch(&mut s, &a.mono(one(), 1, 0), Length::Infinite, true)?;
            Ok(s.scale(&r(-1)))
        }
        _ => Err(unknown("gupta-kumar-alpha", side)),
    }
}

/// `Σ_{n≥0} (b/a)_n aⁿ/(d)_n · F_n` with `F_n` a sparse polynomial; δ(n) = n.
fn ba_sum(spec: &VarSpec, a: &Arg, b: &Arg, d: &Rational, f: impl Fn(u32) -> Result<Vec<(Rational, Vec<u32>)>, IdentityError>) -> Res {
    incremental_sum(
        Series::one(spec),
        spec.nt(),
        |n, t| {
            let mut t = mul_diff(t, &a.mono(one(), 1, 0), &b.mono(one(), 1, n - 1))?;
            div_1m(&mut t, &sc(d, n - 1))?;
            Ok(t)
        },
        |n, t| Ok(t.mul_sparse(&f(n)?)?),
    )
}

/// `Σ_{n≥0} (ad/b)_n (−b)ⁿ q^{C(n,2)+jn} / ((d)_n (aq^j)_{n+1})`; δ(n) = n.
fn inner_j(spec: &VarSpec, a: &Arg, b: &Arg, d: &Rational, j: u32) -> Res {
    let mut start = Series::one(spec);
    div_1m(&mut start, &a.mono(one(), 1, j))?;
    incremental_sum(
        start,
        spec.nt(),
        |n, t| {
            let mut t = mul_diff(t, &a.mono(d.clone(), 1, n - 1), &b.mono(one(), 1, 0))?;
            t = times(&t, &q(n - 1 + j))?;
            div_1m(&mut t, &sc(d, n - 1))?;
            div_1m(&mut t, &a.mono(one(), 1, j + n))?;
            Ok(t)
        },
        |_, t| Ok(t.clone()),
    )
}

fn b_general_f(env: &Env, side: &str) -> Res {
    let spec = &env.spec;
    let (a, b) = (env.arg("a")?, env.arg("b")?);
    let c = env.rat("c")?;
    let d = env.rat("d")?;
    let lambda = env.list("lambda")?;
    match side {
        "lhs" => ba_sum(spec, &a, &b, &d, |n| {
            // f(cqⁿ) = Σ λ_j c^j q^{jn}
            let ms: Vec<_> = lambda
                .iter()
                .enumerate()
                .map(|(j, l)| sc(&(l * pow(&c, j as u32)), j as u32 * n))
                .collect();
            Ok(poly(spec, &ms)?)
        }),
        "rhs" => {
            let mut out = Series::zero(spec);
            for (j, l) in lambda.iter().enumerate() {
                let w = l * pow(&c, j as u32);
                if w.is_zero() {
                    continue;
                }
                out.add_scaled(&inner_j(spec, &a, &b, &d, j as u32)?, &w)?;
            }
            Ok(out)
        }
        _ => Err(unknown("general-f", side)),
    }
}

fn b_rr_alpha(env: &Env, side: &str) -> Res {
    let spec = &env.spec;
    let (a, b) = (env.arg("a")?, env.arg("b")?);
    let c = env.rat("c")?;
    let d = env.rat("d")?;
    let alpha = env.rat("alpha")?;
    // the identity is taken at c·q
    match side {
        "lhs" => ba_sum(spec, &a, &b, &d, |n| Ok(binom_terms(spec, &sc(&c, n + 1), &alpha)?)),
        "rhs" => {
            let mut out = Series::zero(spec);
            if c.is_zero() {
                return inner_j(spec, &a, &b, &d, 0);
            }
            for j in 0..=spec.nq() {
                let w = pow(&c, j) * gen_binom(&(&alpha + r(j as i64 - 1)), j);
                if w.is_zero() {
                    continue;
                }
                let inner = inner_j(spec, &a, &b, &d, j)?;
                out.add_scaled(&times(&inner, &q(j))?, &w)?;
            }
            Ok(out)
        }
        _ => Err(unknown("rr-alpha", side)),
    }
}

fn b_cor_2var_rr(env: &Env, side: &str) -> Res {
    let spec = &env.spec;
    let (a, b) = (env.arg("a")?, env.arg("b")?);
    let c = env.rat("c")?;
    let alpha = env.rat("alpha")?;
    // the identity is taken at c·q
    match side {
        "lhs" => incremental_sum(
            Series::one(spec),
            spec.nt(),
            |n, t| {
                let mut t = mul_diff(t, &a.mono(one(), 1, 0), &b.mono(one(), 1, n - 1))?;
                div_1m(&mut t, &q(n))?;
                Ok(t)
            },
            |n, t| Ok(t.mul_sparse(&binom_terms(spec, &sc(&c, n + 1), &alpha)?)?),
        ),
        "rhs" => {
            // Σ_n (cq)ⁿ C(α+n−1, n) (bqⁿ)_∞/(aqⁿ)_∞, built from the top index down
            let mut z = Series::one(spec);
            let mut out = Series::zero(spec);
            for n in (0..=spec.nq()).rev() {
                mul_1m(&mut z, &b.mono(one(), 1, n))?;
                div_1m(&mut z, &a.mono(one(), 1, n))?;
                let w = pow(&c, n) * gen_binom(&(&alpha + r(n as i64 - 1)), n);
                if !w.is_zero() {
                    out.add_scaled(&times(&z, &q(n))?, &w)?;
                }
            }
            Ok(out)
        }
        _ => Err(unknown("cor-2var-rr", side)),
    }
}

fn b_uchimura_2var(env: &Env, side: &str) -> Res {
    let alpha = env.rat("alpha")?;
    let rr = env.int("r")?;
    match side {
        "ramanujan" => v_sum(&env.qs, &alpha, rr),
        "uchimura" => Ok(uchimura_sum(
            &env.qs,
            rr,
            |j| gen_binom(&(&alpha + r((j - rr) as i64)), j - rr),
            &one(),
        )?),
        _ => Err(unknown("uchimura-2var", side)),
    }
}

fn b_dilcher_corrected(env: &Env, side: &str) -> Res {
    let k = env.int("k")?;
    let rr = env.int("r")?;
    let qs = &env.qs;
    match side {
        "lhs" => v_sum(qs, &r(k as i64), rr),
        "rhs" => {
            let mut out = Series::zero(qs);
            for t in 1..=k {
                for j in 0..=k - t {
                    let w = choose(k as i64 - 1, (j + t) as i64 - 1) * coeff_a(j + t, rr as i64, t);
                    if !w.is_zero() {
                        out.add_scaled(&u_tail(qs, t, rr + j + t - 1)?, &w)?;
                    }
                }
            }
            for j in 1..=k {
                let w = choose(k as i64 - 1, j as i64 - 1) * coeff_a(j, rr as i64, 0);
                if !w.is_zero() {
                    out.add_scaled(&u_tail(qs, 0, rr + j - 1)?, &w)?;
                }
            }
            Ok(out)
        }
        _ => Err(unknown("dilcher-corrected", side)),
    }
}

fn b_dilcher_original(env: &Env, side: &str) -> Res {
    let k = env.int("k")?;
    let qs = &env.qs;
    match side {
        "lhs" => v_sum(qs, &r(k as i64), 1),
        "rhs" => {
            let mut out = Series::zero(qs);
            for t in 1..=k {
                out.add_scaled(&u_tail(qs, t, 1)?, &coeff_small_a(k, t))?;
            }
            Ok(out)
        }
        _ => Err(unknown("dilcher-original-discrepancy", side)),
    }
}

fn b_acs_pk(env: &Env, side: &str) -> Res {
    let k = env.int("k")?;
    let qs = &env.qs;
    match side {
        "ramanujan" => v_sum(qs, &r(k as i64), 1),
        "polynomial" => {
            let s: Vec<QSeries> = (0..k)
                .map(|m| divisor_series(qs, m, &Arg::Value(one()), &one()))
                .collect::<Result<_, _>>()?;
            p_at(k, &s)
        }
        "a0-slice" => {
            let spec = VarSpec::new(&["q", "a"], qs.nq(), qs.nt())?;
            let full = gk_lhs(&spec, &Arg::Formal("a".into()), k)?;
            Ok(full.coefficient("a", 0)?)
        }
        _ => Err(unknown("acs-pk", side)),
    }
}

fn b_gk_pk(env: &Env, side: &str) -> Res {
    let k = env.int("k")?;
    let a = env.arg("a")?;
    match side {
        "lhs" => gk_lhs(&env.spec, &a, k),
        "polynomial" => p_at(k, &frak_list(&env.spec, k, &a, &one())?),
        _ => Err(unknown("gk-pk", side)),
    }
}

fn b_gk_pk_2var(env: &Env, side: &str) -> Res {
    let k = env.int("k")?;
    let a = env.arg("a")?;
    let c = env.nonzero("c")?;
    let spec = &env.spec;
    let mut rhs = match side {
        "lhs" => return gk2_lhs(spec, &a, &c, k),
        "polynomial" => p_at(k, &frak_list(spec, k, &a, &c)?)?,
        "constructive" => n_chain(k, &t_list(spec, k, &a, &c)?)?,
        _ => return Err(unknown("gk-pk-2var", side)),
    };
    two_var_prefactor(&mut rhs, &a, &c)?;
    Ok(rhs.scale(&(-c.recip())))
}

fn b_gk_pk_2var_c(env: &Env, side: &str) -> Res {
    let k = env.int("k")?;
    let c = env.nonzero("c")?;
    let qs = &env.qs;
    match side {
        "ramanujan" => gk2_c_sum(qs, &c, k),
        "polynomial" => gk2_c_poly(qs, &c, k),
        "a0-slice" => {
            let spec = VarSpec::new(&["q", "a"], qs.nq(), qs.nt())?;
            let full = gk2_lhs(&spec, &Arg::Formal("a".into()), &c, k)?;
            Ok(full.coefficient("a", 0)?.scale(&r(-1)))
        }
        _ => Err(unknown("gk-pk-2var-c", side)),
    }
}

fn b_eulerian3(env: &Env, side: &str) -> Res {
    let m = env.int("m")?;
    let c = env.rat("c")?;
    let qs = &env.qs;
    match side {
        "uchimura" => moment(qs, m, &c),
        "ramanujan" => {
            // Σ (−1)^{n−1} q^{C(n,2)} cqⁿ A_m(cqⁿ) / ((1−cqⁿ)^{m+1} (q)_{n−1}); δ(n) = C(n+1,2)
            let eul = eulerian_coeffs(m);
            let mut out = Series::zero(qs);
            let mut d = Series::one(qs);
            for n in 1.. {
                if tri(n) > qs.nq() {
                    break;
                }
                if n > 1 {
                    div_1m(&mut d, &q(n - 1))?;
                }
                let base = n * (n - 1) / 2;
                let ms: Vec<_> = eul
                    .iter()
                    .enumerate()
                    .map(|(kk, e)| {
                        let kk = kk as u32;
                        sc(&(sign(n - 1) * rb(e.clone()) * pow(&c, kk + 1)), base + n * (kk + 1))
                    })
                    .collect();
                let mut t = d.mul_sparse(&poly(qs, &ms)?)?;
                for _ in 0..=m {
                    div_1m(&mut t, &sc(&c, n))?;
                }
                out.add_scaled(&t, &one())?;
            }
            Ok(out)
        }
        "divisor" => {
            let mut y = bell_of_cumulants(qs, m, &c)?;
            ratio_prefactor(&mut y, &c)?;
            Ok(y)
        }
        _ => Err(unknown("eulerian-3way", side)),
    }
}

fn b_entry4_uchimura(env: &Env, side: &str) -> Res {
    let c = env.rat("c")?;
    let qs = &env.qs;
    match side {
        "uchimura" => {
            let mut s = moment(qs, 1, &c)?;
            apply_poch(&mut s, &sc(&c, 1), Length::Infinite, false)?;
            apply_poch(&mut s, &q(1), Length::Infinite, true)?;
            Ok(s)
        }
        "ramanujan" => entry4_sum(qs, &c),
        "divisor" => Ok(divisor_series(qs, 0, &Arg::Value(one()), &c)?),
        _ => Err(unknown("entry4-uchimura-type", side)),
    }
}

fn b_uchimura_mm(env: &Env, side: &str) -> Res {
    let m = env.int("m")?;
    let qs = &env.qs;
    match side {
        "uchimura" => moment(qs, m, &one()),
        "ramanujan" => {
            // Σ (−1)^{n−1} q^{C(n,2)+n} A_m(qⁿ) / ((1−qⁿ)^m (q)_n); δ(n) = C(n+1,2)
            let eul = eulerian_coeffs(m);
            let mut out = Series::zero(qs);
            let mut d = Series::one(qs);
            for n in 1.. {
                if tri(n) > qs.nq() {
                    break;
                }
                div_1m(&mut d, &q(n))?;
                let ms: Vec<_> = eul
                    .iter()
                    .enumerate()
                    .map(|(kk, e)| sc(&(sign(n - 1) * rb(e.clone())), tri(n) + n * kk as u32))
                    .collect();
                let mut t = d.mul_sparse(&poly(qs, &ms)?)?;
                for _ in 0..m {
                    div_1m(&mut t, &q(n))?;
                }
                out.add_scaled(&t, &one())?;
            }
            Ok(out)
        }
        "divisor" => bell_of_cumulants(qs, m, &one()),
        _ => Err(unknown("uchimura-mm-3way", side)),
    }
}

/// `i! · [yⁱ] G(1+y)`.
fn g_derivative(env: &Env, a: &Arg, c: &Rational, i: u32) -> Res {
    let spec = env.spec.with_var("y")?.with_bounds(env.spec.nq(), env.spec.nt() + i)?;
    let g = g_product(&spec, a, c, "y")?;
    Ok(g.coefficient("y", i)?.scale(&factorial_r(i)))
}

fn b_lemma5(env: &Env, side: &str) -> Res {
    let a = env.arg("a")?;
    let c = env.rat("c")?;
    let rr = env.int("r")?;
    match side {
        "derivative" => g_derivative(env, &a, &c, rr),
        "series" => Ok(a_over_q_sum(&env.spec, &a, &c, |n| choose(n as i64, rr as i64))?.scale(&factorial_r(rr))),
        _ => Err(unknown("lemma5", side)),
    }
}

fn b_lemma6(env: &Env, side: &str) -> Res {
    let a = env.arg("a")?;
    let c = env.rat("c")?;
    let i = env.int("i")?;
    match side {
        "derivative" => g_derivative(env, &a, &c, i),
        "product" => {
            let mut g = n_poly(i).eval_series(&t_list(&env.spec, i, &a, &c)?)?;
            apply_poch(&mut g, &a.mono(c.clone(), 1, 0), Length::Infinite, false)?;
            apply_poch(&mut g, &sc(&c, 1), Length::Infinite, true)?;
            Ok(g)
        }
        _ => Err(unknown("lemma6", side)),
    }
}

fn b_lemma7(env: &Env, side: &str) -> Res {
    let a = env.arg("a")?;
    let c = env.rat("c")?;
    let rr = env.int("r")?;
    match side {
        "t-function" => Ok(t_function(&env.spec, rr, &a, &c, None)?),
        "divisor" => {
            let mut out = Series::zero(&env.spec);
            for h in 0..rr {
                out.add_scaled(&frak_s(&env.spec, h, &a, &c)?, &q_coef(h, rr))?;
            }
            Ok(out)
        }
        _ => Err(unknown("lemma7", side)),
    }
}

fn b_t_deriv(env: &Env, side: &str) -> Res {
    let a = env.arg("a")?;
    let c = env.rat("c")?;
    let rr = env.int("r")?;
    let spec = &env.spec;
    match side {
        "derivative" => {
            let wide = spec.with_bounds(spec.nq(), spec.nt() + 1)?;
            let t = t_function(&wide, rr, &a, &c, Some("y"))?;
            Ok(t.derivative("y")?.restrict(spec.nq(), spec.nt())?)
        }
        "shifted" => Ok(t_function(spec, rr + 1, &a, &c, Some("y"))?.scale(&r(rr as i64))),
        _ => Err(unknown("t-deriv", side)),
    }
}

fn b_qbinomial(env: &Env, side: &str) -> Res {
    let qs = &env.qs;
    let big_a = env.rat("A")?;
    let z = env.rat("z")?;
    match side {
        "sum" => incremental_sum(
            Series::one(qs),
            qs.nq(),
            |n, t| {
                let mut t = times(t, &sc(&z, 1))?;
                mul_1m(&mut t, &sc(&big_a, n - 1))?;
                div_1m(&mut t, &q(n))?;
                Ok(t)
            },
            |_, t| Ok(t.clone()),
        ),
        "product" => {
            let mut s = Series::one(qs);
            apply_poch(&mut s, &sc(&(&big_a * &z), 1), Length::Infinite, false)?;
            apply_poch(&mut s, &sc(&z, 1), Length::Infinite, true)?;
            Ok(s)
        }
        _ => Err(unknown("prelim-qbinomial", side)),
    }
}

fn b_fine(env: &Env, side: &str) -> Res {
    let spec = &env.spec;
    let b = env.arg("b")?;
    let big_a = env.rat("A")?;
    let c = env.rat("c")?;
    let z = env.rat("z")?;
    match side {
        // 2φ1(A, b; cq; zq)
        "lhs" => incremental_sum(
            Series::one(spec),
            spec.nt(),
            |n, t| {
                let mut t = times(t, &sc(&z, 1))?;
                mul_1m(&mut t, &sc(&big_a, n - 1))?;
                mul_1m(&mut t, &b.mono(one(), 1, n - 1))?;
                div_1m(&mut t, &sc(&c, n))?;
                div_1m(&mut t, &q(n))?;
                Ok(t)
            },
            |_, t| Ok(t.clone()),
        ),
        "rhs" => {
            let mut s = incremental_sum(
                Series::one(spec),
                spec.nt(),
                |n, t| {
                    let mut t = mul_diff(t, &b.mono(one(), 1, 0), &sc(&c, n))?;
                    mul_1m(&mut t, &sc(&z, n))?;
                    div_1m(&mut t, &sc(&(&big_a * &z), n))?;
                    div_1m(&mut t, &q(n))?;
                    Ok(t)
                },
                |_, t| Ok(t.clone()),
            )?;
            apply_poch(&mut s, &sc(&(&big_a * &z), 1), Length::Infinite, false)?;
            apply_poch(&mut s, &b.mono(one(), 1, 0), Length::Infinite, false)?;
            apply_poch(&mut s, &sc(&z, 1), Length::Infinite, true)?;
            apply_poch(&mut s, &sc(&c, 1), Length::Infinite, true)?;
            Ok(s)
        }
        _ => Err(unknown("prelim-fine", side)),
    }
}

fn b_qgauss(env: &Env, side: &str) -> Res {
    let qs = &env.qs;
    let big_a = env.nonzero("A")?;
    let big_b = env.nonzero("B")?;
    let c = env.rat("c")?;
    let ab = &big_a * &big_b;
    match side {
        "sum" => Ok(basic_hypergeom(
            HypergeomKind::TwoPhiOne,
            &[sc(&big_a, 0), sc(&big_b, 0)],
            &[sc(&c, 1)],
            &sc(&(&c / &ab), 1),
            qs.nq(),
            qs,
        )?),
        "product" => {
            let mut s = Series::one(qs);
            apply_poch(&mut s, &sc(&(&c / &big_a), 1), Length::Infinite, false)?;
            apply_poch(&mut s, &sc(&(&c / &big_b), 1), Length::Infinite, false)?;
            apply_poch(&mut s, &sc(&c, 1), Length::Infinite, true)?;
            apply_poch(&mut s, &sc(&(&c / &ab), 1), Length::Infinite, true)?;
            Ok(s)
        }
        _ => Err(unknown("prelim-qgauss", side)),
    }
}

fn b_3phi2(env: &Env, side: &str) -> Res {
    let qs = &env.qs;
    let big_a = env.nonzero("A")?;
    let big_b = env.nonzero("B")?;
    let big_c = env.nonzero("C")?;
    let d = env.rat("d")?;
    let e = env.rat("e")?;
    let de = &d * &e;
    let abc = &big_a * &big_b * &big_c;
    let bc = &big_b * &big_c;
    match side {
        "lhs" => Ok(basic_hypergeom(
            HypergeomKind::ThreePhiTwo,
            &[sc(&big_a, 0), sc(&big_b, 0), sc(&big_c, 0)],
            &[sc(&d, 1), sc(&e, 1)],
            &sc(&(&de / &abc), 2),
            qs.nq(),
            qs,
        )?),
        "rhs" => {
            let mut s = basic_hypergeom(
                HypergeomKind::ThreePhiTwo,
                &[sc(&big_a, 0), sc(&(&d / &big_b), 1), sc(&(&d / &big_c), 1)],
                &[sc(&d, 1), sc(&(&de / &bc), 2)],
                &sc(&(&e / &big_a), 1),
                qs.nq(),
                qs,
            )?;
            apply_poch(&mut s, &sc(&(&e / &big_a), 1), Length::Infinite, false)?;
            apply_poch(&mut s, &sc(&(&de / &bc), 2), Length::Infinite, false)?;
            apply_poch(&mut s, &sc(&e, 1), Length::Infinite, true)?;
            apply_poch(&mut s, &sc(&(&de / &abc), 2), Length::Infinite, true)?;
            Ok(s)
        }
        _ => Err(unknown("prelim-3phi2", side)),
    }
}

fn b_chu_vandermonde(env: &Env, side: &str) -> Res {
    let k = env.int("k")?;
    let qs = &env.qs;
    let cs: Vec<Rational> = match side {
        "binomial" => (0..=qs.nq()).map(|n| choose((k + n) as i64 - 1, k as i64)).collect(),
        "convolution" => (0..=qs.nq())
            .map(|n| {
                (1..=k).fold(Rational::zero(), |acc, rr| {
                    acc + choose(n as i64, rr as i64) * choose(k as i64 - 1, (k - rr) as i64)
                })
            })
            .collect(),
        _ => return Err(unknown("chu-vandermonde", side)),
    };
    Ok(Series::from_q_coeffs(qs, &cs))
}

fn b_finite_uchimura(env: &Env, side: &str) -> Res {
    let big_n = env.int("N")?;
    let qs = &env.qs;
    let mut out = Series::zero(qs);
    match side {
        "uchimura" => {
            // Σ n qⁿ (q^{n+1})_{N−1} − Σ n q^{n+N} (q^{n+1})_{N−1}
            for n in 1..=qs.nq() {
                let mut t = Series::one(qs);
                apply_poch(&mut t, &q(n + 1), Length::Finite(big_n - 1), false)?;
                let t1 = times(&t, &sc(&r(n as i64), n))?;
                let t2 = times(&t, &sc(&r(n as i64), n + big_n))?;
                out.add_scaled(&t1, &one())?;
                out.add_scaled(&t2, &r(-1))?;
            }
        }
        "ramanujan" => {
            for n in 1..=big_n {
                let g: QSeries = qbinom_gauss(big_n, n, qs)?;
                let mut t = times(&g, &sc(&sign(n - 1), tri(n)))?;
                div_1m(&mut t, &q(n))?;
                out.add_scaled(&t, &one())?;
            }
        }
        "divisor" => {
            for n in 1..=big_n {
                let mut t = q(n).to_series(qs)?;
                div_1m(&mut t, &q(n))?;
                out.add_scaled(&t, &one())?;
            }
        }
        _ => return Err(unknown("finite-uchimura", side)),
    }
    Ok(out)
}

fn b_u_tails(env: &Env, side: &str) -> Res {
    let m = env.int("m")?;
    let i = env.int("i")?;
    let qs = &env.qs;
    match side {
        "moment" => moment(qs, m, &one()),
        "tail-1" => u_tail(qs, m, 1),
        "telescoped" => {
            let mut out = u_tail(qs, m, i)?;
            for j in 1..i {
                let mut t = Series::one(qs);
                apply_poch(&mut t, &q(j + 1), Length::Infinite, false)?;
                out.add_scaled(&times(&t, &q(j))?, &ipow(j, m))?;
            }
            Ok(out)
        }
        _ => Err(unknown("u-tails", side)),
    }
}

// ---------------------------------------------------------------- registry

fn d(
    id: &'static str,
    sides: &'static [&'static str],
    params: Vec<ParamSpec>,
    anchor: &'static str,
    build: super::Builder,
) -> IdentityDescriptor {
    IdentityDescriptor { id, sides, params, anchor, expected_fail: false, build }
}

pub(super) fn registry() -> &'static [IdentityDescriptor] {
    static REG: OnceLock<Vec<IdentityDescriptor>> = OnceLock::new();
    REG.get_or_init(build_registry)
}

fn build_registry() -> Vec<IdentityDescriptor> {
    let c = |default| rational("c", default, "|c| < 1");
    let mut v = vec![
        d(
            "ramanujan-entry4",
            &["ramanujan", "divisor"],
            vec![c("1/2")],
            "Σ(−1)^{n−1} cⁿ q^{n(n+1)/2}/((1−qⁿ)(cq)_n) = Σ σ_{0,c}(n) qⁿ",
            b_entry4,
        ),
        d(
            "kluyver",
            &["ramanujan", "divisor"],
            vec![],
            "Σ(−1)^{n−1} q^{n(n+1)/2}/((1−qⁿ)(q)_n) = Σ d(n) qⁿ",
            b_kluyver,
        ),
        d(
            "uchimura-3way",
            &["uchimura", "ramanujan", "divisor"],
            vec![],
            "Σ n qⁿ(q^{n+1})_∞ = Σ(−1)^{n−1} q^{n(n+1)/2}/((1−qⁿ)(q)_n) = Σ d(n) qⁿ",
            b_uchimura3,
        ),
        d(
            "uchimura-bell",
            &["uchimura", "bell"],
            vec![int("m", 1, 5, "2")],
            "M_m = Y_m(K_1, …, K_m)",
            b_uchimura_bell,
        ),
        d(
            "abem-bell",
            &["uchimura", "bell"],
            vec![int("m", 1, 5, "2"), c("1/2")],
            "Σ n^m cⁿ qⁿ(q^{n+1})_∞ = (q)_∞/(cq)_∞ · Y_m(K_{1,c}, …, K_{m,c})",
            b_abem_bell,
        ),
        d(
            "exp-cumulant",
            &["generating", "moments"],
            vec![c("1/2"), formal("t")],
            "(q)_∞/(cq)_∞ · exp(Σ K_{m,c} t^m/m!) = (q)_∞/(cq)_∞ + Σ M_{m,c} t^m/m!  (t-order ≤ 5)",
            b_exp_cumulant,
        ),
        d(
            "dilcher-1",
            &["uchimura", "ramanujan", "divisor"],
            vec![int("k", 1, 8, "2")],
            "Σ_{n≥k} C(n,k) qⁿ(q^{n+1})_∞ = Σ(−1)^{n−1} q^{C(n,2)+nk}/((1−qⁿ)^k(q)_n) = Σ_{j_1≥…≥j_k≥1} Π q^{j_i}/(1−q^{j_i})",
            b_dilcher1,
        ),
        d(
            "acs-lemma",
            &["uchimura", "ramanujan"],
            vec![int("k", 1, 8, "2")],
            "(q)_∞ Σ C(k+n−1,k) qⁿ/(q)_n = Σ(−1)^{n−1} q^{C(n+1,2)}/((1−qⁿ)^k(q)_n)",
            b_acs_lemma,
        ),
        d(
            "dixit-maji",
            &["lhs", "rhs"],
            vec![formal("a"), formal("b"), c("1/2")],
            "Σ_{n≥1} (b/a)_n aⁿ/((1−cqⁿ)(b)_n) = Σ_{m≥0} (b/c)_m c^m/(b)_m · (aq^m/(1−aq^m) − bq^m/(1−bq^m))",
            b_dixit_maji,
        ),
        d(
            "gupta-kumar-alpha",
            &["lhs", "rhs"],
            vec![formal("a"), rational("alpha", "2", "rational sample of a complex α")],
            "Σ_{n≥1} (q/a)_n aⁿ/((1−qⁿ)^α(q)_n) = −(q)_∞/(a)_∞ Σ_{n≥1} C(α+n−1, α) qⁿ (a/q)_n/(q)_n",
            b_gupta_kumar_alpha,
        ),
        d(
            "general-f",
            &["lhs", "rhs"],
            vec![
                formal("a"),
                formal("b"),
                c("1/2"),
                rational("d", "1/3", "d ≠ q^{-i}"),
                ParamSpec { name: "lambda", kind: ParamKind::List, default: "1,1", note: "f(z) = Σ λ_j z^j" },
            ],
            "Σ (b/a)_n aⁿ f(cqⁿ)/(d)_n = Σ_j λ_j c^j Σ_n (ad/b)_n(−b)ⁿ q^{C(n,2)+jn}/((d)_n(aq^j)_{n+1})",
            b_general_f,
        ),
        d(
            "rr-alpha",
            &["lhs", "rhs"],
            vec![
                formal("a"),
                formal("b"),
                rational("c", "1/2", "the identity is taken at c·q"),
                rational("d", "1/3", "d ≠ q^{-i}"),
                rational("alpha", "2", "rational sample of a complex α"),
            ],
            "Σ (b/a)_n aⁿ/((1−cqⁿ)^α(d)_n) = Σ_j c^j C(α+j−1, j) Σ_n (ad/b)_n(−b)ⁿ q^{C(n,2)+jn}/((d)_n(aq^j)_{n+1})",
            b_rr_alpha,
        ),
        d(
            "cor-2var-rr",
            &["lhs", "rhs"],
            vec![
                formal("a"),
                formal("b"),
                rational("c", "1/2", "the identity is taken at c·q"),
                rational("alpha", "2", "rational sample of a complex α"),
            ],
            "Σ (b/a)_n aⁿ/((1−cqⁿ)^α(q)_n) = Σ cⁿ C(α+n−1, n) (bqⁿ)_∞/(aqⁿ)_∞",
            b_cor_2var_rr,
        ),
        d(
            "uchimura-2var",
            &["ramanujan", "uchimura"],
            vec![rational("alpha", "1", "rational sample of a complex α"), int("r", 1, 8, "1")],
            "Σ(−1)^{n−1} q^{C(n,2)+nr}/((1−qⁿ)^α(q)_n) = Σ_{j≥r} C(α+j−r, α) q^j (q^{j+1})_∞",
            b_uchimura_2var,
        ),
        d(
            "dilcher-corrected",
            &["lhs", "rhs"],
            vec![int("k", 1, 8, "2"), int("r", 1, 8, "1")],
            "Σ(−1)^{n−1} q^{C(n,2)+nr}/((1−qⁿ)^k(q)_n) = Σ_t Σ_j C(k−1,j+t−1) A(j+t,r,t) U_{t,r+j+t−1} + Σ_j C(k−1,j−1) A(j,r,0) U_{0,r+j−1}",
            b_dilcher_corrected,
        ),
        IdentityDescriptor {
            expected_fail: true,
            ..d(
                "dilcher-original-discrepancy",
                &["lhs", "rhs"],
                vec![int("k", 1, 8, "2")],
                "Σ(−1)^{n−1} q^{C(n+1,2)}/((1−qⁿ)^k(q)_n) vs Σ_t a(k,t) U_t with untruncated U_t",
                b_dilcher_original,
            )
        },
        d(
            "acs-pk",
            &["ramanujan", "polynomial", "a0-slice"],
            vec![int("k", 1, 6, "2")],
            "Σ(−1)^{n−1} q^{C(n+1,2)}/((1−qⁿ)^k(q)_n) = P_k(S_0, …, S_{k−1})",
            b_acs_pk,
        ),
        d(
            "gk-pk",
            &["lhs", "polynomial"],
            vec![formal("a"), int("k", 1, 5, "2")],
            "−Σ (q/a)_n aⁿ/((1−qⁿ)^k(q)_n) = P_k(𝔖_{0,a}, …, 𝔖_{k−1,a})",
            b_gk_pk,
        ),
        d(
            "gk-pk-2var",
            &["lhs", "polynomial", "constructive"],
            vec![formal("a"), rational("c", "1/3", "nonzero, |c| < 1"), int("k", 1, 5, "2")],
            "Σ (q/a)_n aⁿ/((1−cqⁿ)^{k+1}(q)_{n−1}) = −(1/c)(q)_∞(ac)_∞/((cq)_∞(a)_∞) · P_k(𝔖_{0,a,c}, …, 𝔖_{k−1,a,c})",
            b_gk_pk_2var,
        ),
        d(
            "gk-pk-2var-c",
            &["ramanujan", "polynomial", "a0-slice"],
            vec![rational("c", "1/3", "nonzero, |c| < 1"), int("k", 1, 5, "2")],
            "Σ(−1)^{n−1} q^{C(n+1,2)}/((1−cqⁿ)^{k+1}(q)_{n−1}) = (1/c)(q)_∞/(cq)_∞ · P_k(S_{0,c}, …, S_{k−1,c})",
            b_gk_pk_2var_c,
        ),
        d(
            "eulerian-3way",
            &["uchimura", "ramanujan", "divisor"],
            vec![int("m", 1, 6, "2"), c("1/2")],
            "Σ n^m cⁿ qⁿ(q^{n+1})_∞ = Σ(−1)^{n−1} q^{C(n,2)} cqⁿ A_m(cqⁿ)/((1−cqⁿ)^{m+1}(q)_{n−1}) = (q)_∞/(cq)_∞ Y_m(K_{1,c}, …)",
            b_eulerian3,
        ),
        d(
            "entry4-uchimura-type",
            &["uchimura", "ramanujan", "divisor"],
            vec![c("1/2")],
            "(cq)_∞/(q)_∞ Σ n cⁿ qⁿ(q^{n+1})_∞ = Σ(−1)^{n−1} cⁿ q^{n(n+1)/2}/((1−qⁿ)(cq)_n) = Σ cⁿqⁿ/(1−qⁿ)",
            b_entry4_uchimura,
        ),
        d(
            "uchimura-mm-3way",
            &["uchimura", "ramanujan", "divisor"],
            vec![int("m", 1, 6, "2")],
            "Σ n^m qⁿ(q^{n+1})_∞ = Σ(−1)^{n−1} q^{C(n,2)+n} A_m(qⁿ)/((1−qⁿ)^m(q)_n) = Y_m(K_1, …, K_m)",
            b_uchimura_mm,
        ),
        d(
            "lemma5",
            &["derivative", "series"],
            vec![formal_or_bound("a"), c("1/2"), int("r", 1, 6, "1")],
            "d^r/dx^r [(xac)_∞/(xcq)_∞]_{x=1} = r! Σ C(n,r) (a/q)_n cⁿqⁿ/(q)_n",
            b_lemma5,
        ),
        d(
            "lemma6",
            &["derivative", "product"],
            vec![formal_or_bound("a"), c("1/2"), int("i", 1, 6, "2")],
            "d^i/dx^i [(xac)_∞/(xcq)_∞]_{x=1} = (ac)_∞/(cq)_∞ · N_i(T_1(1), …, T_i(1))",
            b_lemma6,
        ),
        d(
            "lemma7",
            &["t-function", "divisor"],
            vec![formal_or_bound("a"), c("1/2"), int("r", 1, 8, "2")],
            "T_{r,a,c}(1,q) = Σ_{h<r} Q_{h,r} 𝔖_{h,a,c}",
            b_lemma7,
        ),
        d(
            "t-deriv",
            &["derivative", "shifted"],
            vec![formal_or_bound("a"), formal("y"), c("1/2"), int("r", 1, 6, "1")],
            "d/dx T_{r,a,c}(x,q) = r T_{r+1,a,c}(x,q), x = 1 + y",
            b_t_deriv,
        ),
        d(
            "prelim-qbinomial",
            &["sum", "product"],
            vec![rational("A", "1/2", "any rational"), rational("z", "1/3", "the identity is taken at z·q")],
            "Σ (A)_n zⁿ/(q)_n = (Az)_∞/(z)_∞",
            b_qbinomial,
        ),
        d(
            "prelim-fine",
            &["lhs", "rhs"],
            vec![
                rational("A", "1/2", "any rational"),
                formal("b"),
                rational("c", "1", "C = c·q"),
                rational("z", "1", "the identity is taken at z·q"),
            ],
            "2φ1(A,B;C;z) = (Az)_∞(B)_∞/((z)_∞(C)_∞) · 2φ1(C/B, z; Az; B)",
            b_fine,
        ),
        d(
            "prelim-qgauss",
            &["sum", "product"],
            vec![
                rational("A", "1/2", "nonzero"),
                rational("B", "1/3", "nonzero"),
                rational("c", "1", "C = c·q"),
            ],
            "2φ1(A,B;C;C/(AB)) = (C/A)_∞(C/B)_∞/((C)_∞(C/(AB))_∞)",
            b_qgauss,
        ),
        d(
            "prelim-3phi2",
            &["lhs", "rhs"],
            vec![
                rational("A", "1/2", "nonzero"),
                rational("B", "1/3", "nonzero"),
                rational("C", "2", "nonzero"),
                rational("d", "1", "D = d·q"),
                rational("e", "1/5", "E = e·q"),
            ],
            "3φ2(A,B,C;D,E;DE/(ABC)) = (E/A)_∞(DE/(BC))_∞/((E)_∞(DE/(ABC))_∞) · 3φ2(A, D/B, D/C; D, DE/(BC); E/A)",
            b_3phi2,
        ),
        d(
            "chu-vandermonde",
            &["binomial", "convolution"],
            vec![int("k", 1, 12, "3")],
            "C(k+n−1, k) = Σ_{r=1}^k C(n,r) C(k−1, k−r), as Σ_n (·) qⁿ",
            b_chu_vandermonde,
        ),
        d(
            "finite-uchimura",
            &["uchimura", "ramanujan", "divisor"],
            vec![int("N", 1, 10, "2")],
            "Σ n qⁿ(q^{n+1})_{N−1}(1−q^N) = Σ_{n≤N}(−1)^{n−1} q^{n(n+1)/2}[N n]/(1−qⁿ) = Σ_{n≤N} qⁿ/(1−qⁿ)",
            b_finite_uchimura,
        ),
        d(
            "u-tails",
            &["moment", "tail-1", "telescoped"],
            vec![int("m", 0, 6, "1"), int("i", 1, 10, "3")],
            "U_{m,1} = M_m and U_{m,i} − U_{m,i+1} = i^m q^i (q^{i+1})_∞",
            b_u_tails,
        ),
    ];
    v.shrink_to_fit();
    v
}
