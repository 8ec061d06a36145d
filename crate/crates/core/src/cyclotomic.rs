//! Cyclotomic fields Q(ζ_N) for small N, and the [`ExactScalar`] union of
//! rationals and cyclotomic values.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::ScalarError;
use crate::scalar::{format_rational, int, Rational, Scalar};

/// Largest supported order.
pub const MAX_ORDER: u32 = 12;

/// Integer coefficients of the N-th cyclotomic polynomial, lowest degree first.
pub fn cyclotomic_poly(n: u32) -> Vec<i64> {
    assert!(n >= 1);
    // x^n - 1 divided by Φ_d for every proper divisor d.
    let mut p = vec![0i64; n as usize + 1];
    p[0] = -1;
    p[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            p = exact_div_monic(&p, &cyclotomic_poly(d));
        }
    }
    p
}

fn exact_div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let nd = rem.len() - 1;
    let mut quo = vec![0i64; nd - dd + 1];
    for k in (0..=nd - dd).rev() {
        let c = rem[k + dd];
        quo[k] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[k + j] -= c * dj;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quo
}

pub fn euler_phi(n: u32) -> usize {
    (1..=n).filter(|k| k.gcd(&n) == 1).count()
}

/// An element of Q(ζ_N), stored as the residue modulo Φ_N (length φ(N)).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    order: u32,
    coeffs: Vec<Rational>,
}

impl Cyclotomic {
    fn check_order(n: u32) -> Result<(), ScalarError> {
        if n == 0 || n > MAX_ORDER {
            Err(ScalarError::UnsupportedOrder(n))
        } else {
            Ok(())
        }
    }

    /// Reduces an arbitrary polynomial in ζ modulo Φ_N.
    pub fn from_poly(order: u32, poly: &[Rational]) -> Result<Self, ScalarError> {
        Self::check_order(order)?;
        let phi = cyclotomic_poly(order);
        let deg = phi.len() - 1;
        let mut r: Vec<Rational> = poly.to_vec();
        if r.len() < deg {
            r.resize(deg, Rational::zero());
        }
        for k in (deg..r.len()).rev() {
            let c = std::mem::take(&mut r[k]);
            if !c.is_zero() {
                for (j, &pj) in phi.iter().enumerate().take(deg) {
                    if pj != 0 {
                        r[k - deg + j] -= &c * int(pj);
                    }
                }
            }
        }
        r.truncate(deg);
        Ok(Cyclotomic { order, coeffs: r })
    }

    pub fn from_rational(order: u32, r: Rational) -> Result<Self, ScalarError> {
        Self::from_poly(order, &[r])
    }

    /// ζ_N^k.
    pub fn zeta_pow(order: u32, k: i64) -> Result<Self, ScalarError> {
        Self::check_order(order)?;
        let e = k.rem_euclid(order as i64) as usize;
        let mut poly = vec![Rational::zero(); e + 1];
        poly[e] = Rational::one();
        Self::from_poly(order, &poly)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The value as a rational, if it lies in Q.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.coeffs.iter().skip(1).all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    fn same_order(&self, other: &Self) -> Result<(), ScalarError> {
        if self.order == other.order {
            Ok(())
        } else {
            Err(ScalarError::OrderMismatch(self.order, other.order))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, ScalarError> {
        self.same_order(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Cyclotomic { order: self.order, coeffs })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, ScalarError> {
        self.same_order(other)?;
        let d = self.coeffs.len();
        let mut prod = vec![Rational::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        Self::from_poly(self.order, &prod)
    }

    pub fn neg(&self) -> Self {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in Q[x].
    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let phi: Vec<Rational> = cyclotomic_poly(self.order).into_iter().map(int).collect();
        // Invariant: s_i * self ≡ r_i (mod Φ).
        let mut r0 = phi;
        let mut r1 = trim(self.coeffs.clone());
        let mut s0: Vec<Rational> = vec![];
        let mut s1: Vec<Rational> = vec![Rational::one()];
        while r1.len() > 1 {
            let (q, r) = poly_divmod(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r1 is a nonzero constant since Φ is irreducible.
        let c = r1[0].recip();
        let s: Vec<Rational> = s1.iter().map(|x| x * &c).collect();
        Self::from_poly(self.order, &s)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Cyclotomic::from_rational(self.order, Rational::one()).unwrap();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.checked_mul(&base).unwrap();
            }
            e >>= 1;
            if e > 0 {
                base = base.checked_mul(&base).unwrap();
            }
        }
        acc
    }
}

fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(Rational::zero);
            let y = b.get(i).cloned().unwrap_or_else(Rational::zero);
            x - y
        })
        .collect();
    trim(out)
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_divmod(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    if r.len() < b.len() {
        return (vec![], r);
    }
    let lead = b.last().unwrap().recip();
    let mut q = vec![Rational::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() && !r.is_empty() {
        let k = r.len() - b.len();
        let c = r.last().unwrap() * &lead;
        for (j, bj) in b.iter().enumerate() {
            r[k + j] -= &c * bj;
        }
        q[k] = c;
        r = trim(r);
    }
    (trim(q), r)
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{}", format_rational(c))?,
                1 => write!(f, "({})*z{}", format_rational(c), self.order)?,
                _ => write!(f, "({})*z{}^{}", format_rational(c), self.order, i)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// A rational number or an element of some Q(ζ_N).
///
/// Results of arithmetic are canonical: a value lying in Q is always held as
/// the `Rational` variant, so structural comparison agrees with field equality.
#[derive(Clone, Debug)]
pub enum ExactScalar {
    Rational(Rational),
    Cyclotomic(Cyclotomic),
}

impl ExactScalar {
    pub fn zeta_pow(order: u32, k: i64) -> Result<Self, ScalarError> {
        Ok(Self::from_cyclotomic(Cyclotomic::zeta_pow(order, k)?))
    }

    /// Embeds a rational into Q(ζ_N) without collapsing it back to Q.
    pub fn embed(r: Rational, order: u32) -> Result<Self, ScalarError> {
        Ok(ExactScalar::Cyclotomic(Cyclotomic::from_rational(order, r)?))
    }

    pub fn from_cyclotomic(c: Cyclotomic) -> Self {
        match c.as_rational() {
            Some(r) => ExactScalar::Rational(r),
            None => ExactScalar::Cyclotomic(c),
        }
    }

    pub fn as_rational(&self) -> Option<Rational> {
        match self {
            ExactScalar::Rational(r) => Some(r.clone()),
            ExactScalar::Cyclotomic(c) => c.as_rational(),
        }
    }

    pub fn order(&self) -> Option<u32> {
        match self {
            ExactScalar::Rational(_) => None,
            ExactScalar::Cyclotomic(c) => Some(c.order()),
        }
    }

    fn lift_pair(&self, other: &Self) -> Result<Option<(Cyclotomic, Cyclotomic)>, ScalarError> {
        use ExactScalar::*;
        Ok(match (self, other) {
            (Rational(_), Rational(_)) => None,
            (Cyclotomic(a), Cyclotomic(b)) => {
                a.same_order(b)?;
                Some((a.clone(), b.clone()))
            }
            (Cyclotomic(a), Rational(r)) => {
                Some((a.clone(), crate::cyclotomic::Cyclotomic::from_rational(a.order, r.clone())?))
            }
            (Rational(r), Cyclotomic(b)) => {
                Some((crate::cyclotomic::Cyclotomic::from_rational(b.order, r.clone())?, b.clone()))
            }
        })
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, ScalarError> {
        Ok(match self.lift_pair(other)? {
            None => ExactScalar::Rational(self.rat_unchecked() + other.rat_unchecked()),
            Some((a, b)) => Self::from_cyclotomic(a.checked_add(&b)?),
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, ScalarError> {
        self.checked_add(&other.clone().neg())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, ScalarError> {
        use ExactScalar::*;
        Ok(match (self, other) {
            (Rational(a), Rational(b)) => Rational(a * b),
            (Cyclotomic(c), Rational(r)) | (Rational(r), Cyclotomic(c)) => {
                let coeffs = c.coeffs.iter().map(|x| x * r).collect();
                Self::from_cyclotomic(self::Cyclotomic { order: c.order, coeffs })
            }
            (Cyclotomic(a), Cyclotomic(b)) => Self::from_cyclotomic(a.checked_mul(b)?),
        })
    }

    pub fn checked_inv(&self) -> Result<Self, ScalarError> {
        match self {
            ExactScalar::Rational(r) => r.try_inv().map(ExactScalar::Rational),
            ExactScalar::Cyclotomic(c) => Ok(Self::from_cyclotomic(c.inv()?)),
        }
    }

    fn rat_unchecked(&self) -> &Rational {
        match self {
            ExactScalar::Rational(r) => r,
            ExactScalar::Cyclotomic(_) => unreachable!(),
        }
    }
}

impl From<Rational> for ExactScalar {
    fn from(r: Rational) -> Self {
        ExactScalar::Rational(r)
    }
}

impl PartialEq for ExactScalar {
    fn eq(&self, other: &Self) -> bool {
        match (self.as_rational(), other.as_rational()) {
            (Some(a), Some(b)) => a == b,
            (None, None) => match (self, other) {
                (ExactScalar::Cyclotomic(a), ExactScalar::Cyclotomic(b)) => a == b,
                _ => false,
            },
            _ => false,
        }
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactScalar::Rational(r) => write!(f, "{}", format_rational(r)),
            ExactScalar::Cyclotomic(c) => write!(f, "{c}"),
        }
    }
}

impl Add for ExactScalar {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.checked_add(&rhs).expect("cyclotomic order mismatch")
    }
}

impl Sub for ExactScalar {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.checked_sub(&rhs).expect("cyclotomic order mismatch")
    }
}

impl Mul for ExactScalar {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.checked_mul(&rhs).expect("cyclotomic order mismatch")
    }
}

impl Neg for ExactScalar {
    type Output = Self;
    fn neg(self) -> Self {
        match self {
            ExactScalar::Rational(r) => ExactScalar::Rational(-r),
            ExactScalar::Cyclotomic(c) => ExactScalar::Cyclotomic(c.neg()),
        }
    }
}

impl Zero for ExactScalar {
    fn zero() -> Self {
        ExactScalar::Rational(Rational::zero())
    }
    fn is_zero(&self) -> bool {
        match self {
            ExactScalar::Rational(r) => r.is_zero(),
            ExactScalar::Cyclotomic(c) => c.is_zero(),
        }
    }
}

impl One for ExactScalar {
    fn one() -> Self {
        ExactScalar::Rational(Rational::one())
    }
}

impl Scalar for ExactScalar {
    fn from_rational(r: &Rational) -> Self {
        ExactScalar::Rational(r.clone())
    }

    fn try_inv(&self) -> Result<Self, ScalarError> {
        self.checked_inv()
    }

    fn to_f64(&self) -> Option<f64> {
        self.as_rational().and_then(|r| r.to_f64())
    }

    fn mul_ref(&self, other: &Self) -> Self {
        self.checked_mul(other).expect("cyclotomic order mismatch")
    }

    fn add_assign_ref(&mut self, other: &Self) {
        if let (ExactScalar::Rational(a), ExactScalar::Rational(b)) = (&mut *self, other) {
            *a += b;
            return;
        }
        *self = self.checked_add(other).expect("cyclotomic order mismatch");
    }

    fn to_json(&self) -> serde_json::Value {
        match self {
            ExactScalar::Rational(r) => r.to_json(),
            ExactScalar::Cyclotomic(c) => serde_json::json!({
                "order": c.order,
                "coeffs": c.coeffs.iter().map(|x| x.to_json()).collect::<Vec<_>>(),
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(cyclotomic_poly(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_poly(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_poly(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_poly(12), vec![1, 0, -1, 0, 1]);
        for n in 1..=MAX_ORDER {
            assert_eq!(cyclotomic_poly(n).len() - 1, euler_phi(n));
        }
    }

    #[test]
    fn zeta3_sum_is_minus_one() {
        let z = ExactScalar::zeta_pow(3, 1).unwrap();
        let z2 = ExactScalar::zeta_pow(3, 2).unwrap();
        assert_eq!(z.clone() + z2.clone(), ExactScalar::from(int(-1)));
        assert_eq!(z.clone() * z2, ExactScalar::one());
        assert_eq!(z.pow_u32(3), ExactScalar::one());
    }

    #[test]
    fn embedding_equality() {
        let half = ExactScalar::embed(rat(1, 2), 4).unwrap();
        assert_eq!(half, ExactScalar::from(rat(1, 2)));
    }

    #[test]
    fn mismatched_orders() {
        let a = ExactScalar::zeta_pow(3, 1).unwrap();
        let b = ExactScalar::zeta_pow(4, 1).unwrap();
        assert_eq!(a.checked_add(&b), Err(ScalarError::OrderMismatch(3, 4)));
        assert!(Cyclotomic::zeta_pow(13, 1).is_err());
    }

    #[test]
    fn inverses_in_every_order() {
        for n in 2..=MAX_ORDER {
            for k in 0..n as i64 {
                let x = ExactScalar::zeta_pow(n, k).unwrap() + ExactScalar::from(rat(2, 7));
                let y = x.try_inv().unwrap();
                assert_eq!(x * y, ExactScalar::one(), "order {n}, k {k}");
            }
            let one_minus = ExactScalar::one() - ExactScalar::zeta_pow(n, 1).unwrap();
            assert_eq!(one_minus.clone() * one_minus.try_inv().unwrap(), ExactScalar::one());
        }
        assert!(ExactScalar::zero().try_inv().is_err());
    }

    #[test]
    fn roots_of_unity_sum_to_zero() {
        for n in 2..=MAX_ORDER {
            let s = (0..n as i64)
                .map(|k| ExactScalar::zeta_pow(n, k).unwrap())
                .fold(ExactScalar::zero(), |a, b| a + b);
            assert!(s.is_zero());
        }
    }
}
