use num_traits::Zero;

use super::numbers::{binomial, factorial, stirling2_row};
use crate::error::SeriesError;
use crate::scalar::{Rational, Scalar};
use crate::series::{Series, VarSpec};

/// `d_m = Σ_{k≥m} c_k · S(k,m) · m!` for `m ≥ 1`, and `d_0 = c_0`.
pub fn d_coeffs(c: &[Rational]) -> Vec<Rational> {
    let k_max = c.len().saturating_sub(1);
    let rows: Vec<_> = (0..=k_max as u32).map(stirling2_row).collect();
    (0..=k_max)
        .map(|m| {
            if m == 0 {
                return c.first().cloned().unwrap_or_else(Rational::zero);
            }
            let mut acc = Rational::zero();
            for k in m..=k_max {
                let s = &rows[k][m];
                if !s.is_zero() && !c[k].is_zero() {
                    acc += &c[k] * Rational::from_integer(s.clone());
                }
            }
            acc * Rational::from_integer(factorial(m as u32))
        })
        .collect()
}

/// `e_{m,j} = (−1)^j C(m−1, j)`.
pub fn e_coeff(m: u32, j: u32) -> Rational {
    let b = Rational::from_integer(binomial(m as i64 - 1, j as i64));
    if j % 2 == 0 {
        b
    } else {
        -b
    }
}

/// `h_1..h_{K+2}` for `f(n) = Σ_{k≤K} c_k n^k`.
pub fn limit_coeffs(c: &[Rational]) -> Result<Vec<Rational>, SeriesError> {
    if c.is_empty() {
        return Err(SeriesError::InvalidSpec("empty coefficient list".into()));
    }
    let k_max = c.len() - 1;
    let d = d_coeffs(c);
    let mut h = vec![c[0].clone()];
    for j in 2..=k_max + 2 {
        let mut acc = Rational::zero();
        for (i, di) in d.iter().enumerate().skip(j - 1) {
            if di.is_zero() {
                continue;
            }
            let b = Rational::from_integer(binomial(i as i64 - 1, j as i64 - 2));
            let term = b * di;
            if (i + 1 - j) % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        h.push(acc);
    }
    Ok(h)
}

/// `f(n) = Σ c_k n^k`.
pub fn eval_poly_at(c: &[Rational], n: i64) -> Rational {
    let x = Rational::from_integer(n.into());
    c.iter().rev().fold(Rational::zero(), |acc, ck| acc * &x + ck)
}

/// `F(x) = Σ_m d_m Σ_j e_{m,j} x/(1−x)^{m+1−j} + c_0 x/(1−x)` with `x` the
/// monomial `q^shift` in a q-only spec.
pub fn generating_function<S: Scalar>(
    c: &[Rational],
    shift: u32,
    spec: &VarSpec,
) -> Result<Series<S>, SeriesError> {
    let d = d_coeffs(c);
    let x = Series::monomial(spec, &[shift], S::one())?;
    let max_pow = d.len() + 1;
    // powers[p] = x / (1−x)^p
    let mut powers = vec![x.clone()];
    for _ in 1..=max_pow {
        let next = powers.last().unwrap().div_one_minus(&S::one(), &[shift])?;
        powers.push(next);
    }
    let mut out = powers[1].scale(&S::from_rational(&d[0]));
    for (m, dm) in d.iter().enumerate().skip(1) {
        if dm.is_zero() {
            continue;
        }
        for j in 0..m {
            let w = dm * e_coeff(m as u32, j as u32);
            out.add_scaled(&powers[m + 1 - j], &S::from_rational(&w))?;
        }
    }
    Ok(out)
}

/// Numerators of `Σ_n f(n) x^n` directly, for cross-checks.
pub fn direct_generating_function<S: Scalar>(c: &[Rational], spec: &VarSpec) -> Series<S> {
    let cs: Vec<S> = (0..=spec.nq() as i64)
        .map(|n| {
            if n == 0 {
                S::zero()
            } else {
                S::from_rational(&eval_poly_at(c, n))
            }
        })
        .collect();
    Series::from_q_coeffs(spec, &cs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    #[test]
    fn constant_f() {
        let h = limit_coeffs(&[int(1)]).unwrap();
        assert_eq!(h, vec![int(1), int(0)]);
        assert!(limit_coeffs(&[]).is_err());
    }

    #[test]
    fn linear_f() {
        // f(n) = n: d_1 = 1, so h_2 = 1 and the rest vanish
        let h = limit_coeffs(&[int(0), int(1)]).unwrap();
        assert_eq!(h, vec![int(0), int(1), int(0)]);
    }

    #[test]
    fn reconstructs_generating_function() {
        let sp = VarSpec::q_only(20);
        for c in [vec![int(0), int(0), int(1)], vec![int(2), int(1)], vec![int(-1), int(3), int(0), int(2)]] {
            let f: Series<Rational> = generating_function(&c, 1, &sp).unwrap();
            assert_eq!(f, direct_generating_function(&c, &sp), "{c:?}");
        }
    }
}
