use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::ScalarError;
use crate::scalar::{Rational, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StirlingKind {
    /// Signed, with Σ_k s(n,k) x^k = x(x−1)⋯(x−n+1).
    First,
    Second,
}

/// Stirling number of the given kind; zero when `k > n`.
pub fn stirling(kind: StirlingKind, n: u32, k: u32) -> BigInt {
    match kind {
        StirlingKind::First => stirling1_row(n).get(k as usize).cloned().unwrap_or_default(),
        StirlingKind::Second => stirling2_row(n).get(k as usize).cloned().unwrap_or_default(),
    }
}

pub fn stirling1(n: u32, k: u32) -> BigInt {
    stirling(StirlingKind::First, n, k)
}

pub fn stirling2(n: u32, k: u32) -> BigInt {
    stirling(StirlingKind::Second, n, k)
}

/// Row `s(n, 0..=n)` of signed Stirling numbers of the first kind.
pub fn stirling1_row(n: u32) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for m in 0..n {
        // s(m+1,k) = s(m,k-1) - m s(m,k)
        let mut next = vec![BigInt::zero(); row.len() + 1];
        for (k, v) in row.iter().enumerate() {
            next[k + 1] += v;
            next[k] -= v * m;
        }
        row = next;
    }
    row
}

/// Row `S(n, 0..=n)` of Stirling numbers of the second kind.
pub fn stirling2_row(n: u32) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for _ in 0..n {
        // S(m+1,k) = k S(m,k) + S(m,k-1)
        let mut next = vec![BigInt::zero(); row.len() + 1];
        for (k, v) in row.iter().enumerate() {
            next[k] += v * k;
            next[k + 1] += v;
        }
        row = next;
    }
    row
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// Ordinary binomial coefficient for integer arguments; zero outside `0 ≤ k ≤ n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `α(α−1)⋯(α−n+1)/n!` for rational α.
pub fn gen_binom(alpha: &Rational, n: u32) -> Rational {
    let mut num = Rational::one();
    for i in 0..n {
        num *= alpha - Rational::from_integer(i.into());
    }
    num / Rational::from_integer(factorial(n))
}

/// Eulerian numbers `E(m, 0..m)`; for m = 0 the single entry 1.
pub fn eulerian_coeffs(m: u32) -> Vec<BigInt> {
    if m == 0 {
        return vec![BigInt::one()];
    }
    let mut row = vec![BigInt::one()];
    for n in 2..=m {
        let mut next = vec![BigInt::zero(); n as usize];
        for k in 0..n as usize {
            if k < row.len() {
                next[k] += &row[k] * (k + 1);
            }
            if k >= 1 && k - 1 < row.len() {
                next[k] += &row[k - 1] * (n as usize - k);
            }
        }
        row = next;
    }
    row
}

/// `σ_{m,c}(n) = Σ_{d|n} d^m c^d`.
pub fn divisor_sigma<S: Scalar>(m: u32, c: &S, n: u64) -> Result<S, ScalarError> {
    if n == 0 {
        return Err(ScalarError::Parse("divisor sum needs n >= 1".into()));
    }
    let mut acc = S::zero();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            acc.add_assign_ref(&divisor_term(m, c, d));
            let e = n / d;
            if e != d {
                acc.add_assign_ref(&divisor_term(m, c, e));
            }
        }
        d += 1;
    }
    Ok(acc)
}

fn divisor_term<S: Scalar>(m: u32, c: &S, d: u64) -> S {
    let dm = S::from_rational(&Rational::from_integer(BigInt::from(d).pow(m)));
    dm.mul_ref(&c.pow_u32(d as u32))
}

/// `Li_{−m}(x) = x·A_m(x)/(1−x)^{m+1}`.
pub fn polylog_neg<S: Scalar>(m: u32, x: &S) -> Result<S, ScalarError> {
    let denom = (S::one() - x.clone()).pow_u32(m + 1);
    let inv = denom.try_inv()?;
    let mut a = S::zero();
    for c in eulerian_coeffs(m).iter().rev() {
        a = a.mul_ref(x) + S::from_rational(&Rational::from_integer(c.clone()));
    }
    Ok(x.mul_ref(&a).mul_ref(&inv))
}
