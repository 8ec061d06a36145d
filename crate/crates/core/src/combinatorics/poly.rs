use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::numbers::{binomial, factorial};
use crate::error::SeriesError;
use crate::scalar::{format_rational, Rational, Scalar};
use crate::series::Series;

/// Values a [`PolyOverQ`] can be evaluated at.
pub trait PolyRing: Clone {
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn scale(&self, c: &Rational) -> Self;
    fn is_zero_value(&self) -> bool;
}

impl PolyRing for Rational {
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, c: &Rational) -> Self {
        self * c
    }
    fn is_zero_value(&self) -> bool {
        self.is_zero()
    }
}

impl<S: Scalar> PolyRing for Series<S> {
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, c: &Rational) -> Self {
        Series::scale(self, &S::from_rational(c))
    }
    fn is_zero_value(&self) -> bool {
        self.is_zero()
    }
}

impl PolyRing for PolyOverQ {
    fn add(&self, other: &Self) -> Self {
        PolyOverQ::add(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        PolyOverQ::mul(self, other)
    }
    fn scale(&self, c: &Rational) -> Self {
        PolyOverQ::scale(self, c)
    }
    fn is_zero_value(&self) -> bool {
        self.terms.is_empty()
    }
}

/// A polynomial with rational coefficients in `nvars` variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyOverQ {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl PolyOverQ {
    pub fn zero(nvars: usize) -> Self {
        PolyOverQ { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    /// The variable `x_i` (0-based).
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(e, Rational::one());
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, Rational)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, mut e: Vec<u32>, c: Rational) {
        assert!(e.len() <= self.nvars, "too many exponents");
        e.resize(self.nvars, 0);
        let entry = self.terms.entry(e.clone()).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    /// Same polynomial viewed in `n ≥ nvars` variables.
    pub fn widen(&self, n: usize) -> Self {
        assert!(n >= self.nvars);
        Self::from_terms(n, self.terms.iter().map(|(e, c)| (e.clone(), c.clone())))
    }

    fn common(&self, other: &Self) -> (Self, Self) {
        let n = self.nvars.max(other.nvars);
        (self.widen(n), other.widen(n))
    }

    pub fn add(&self, other: &Self) -> Self {
        let (mut a, b) = self.common(other);
        for (e, c) in b.terms {
            a.add_term(e, c);
        }
        a
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = self.common(other);
        let mut out = Self::zero(a.nvars);
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let e = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_terms(self.nvars, self.terms.iter().map(|(e, x)| (e.clone(), x * c)))
    }

    /// Total degree; zero for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    /// Applies the derivation with `D(x_i) = w_i(x)` through the product rule.
    pub fn derive(&self, images: &[PolyOverQ]) -> Self {
        let n = images.iter().map(|p| p.nvars).max().unwrap_or(0).max(self.nvars);
        let mut out = Self::zero(n);
        for (e, c) in &self.terms {
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let mut rest = e.clone();
                rest[i] -= 1;
                let mono = Self::from_terms(n, [(rest, c * Rational::from_integer(k.into()))]);
                out = out.add(&mono.mul(&images[i]));
            }
        }
        out
    }

    /// Evaluates at `args` (one per variable); `one` is the unit of the target ring.
    pub fn eval<T: PolyRing>(&self, args: &[T], one: &T) -> T {
        assert!(args.len() >= self.nvars, "not enough arguments");
        let maxe: Vec<u32> = (0..self.nvars)
            .map(|i| self.terms.keys().map(|e| e[i]).max().unwrap_or(0))
            .collect();
        let powers: Vec<Vec<T>> = (0..self.nvars)
            .map(|i| {
                let mut v = vec![one.clone()];
                for _ in 0..maxe[i] {
                    let next = v.last().unwrap().mul(&args[i]);
                    v.push(next);
                }
                v
            })
            .collect();
        let mut acc: Option<T> = None;
        for (e, c) in &self.terms {
            let mut t = one.scale(c);
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t = t.mul(&powers[i][k as usize]);
                }
            }
            acc = Some(match acc {
                None => t,
                Some(a) => a.add(&t),
            });
        }
        acc.unwrap_or_else(|| one.scale(&Rational::zero()))
    }

    /// Evaluates at series arguments.
    pub fn eval_series<S: Scalar>(&self, args: &[Series<S>]) -> Result<Series<S>, SeriesError> {
        let spec = args
            .first()
            .map(|s| s.spec().clone())
            .ok_or_else(|| SeriesError::InvalidSpec("no arguments".into()))?;
        if args.iter().any(|a| a.spec() != &spec) {
            return Err(SeriesError::SpecMismatch);
        }
        Ok(self.eval(args, &Series::one(&spec)))
    }
}

impl fmt::Display for PolyOverQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // highest total degree first
        let mut ts: Vec<_> = self.terms.iter().collect();
        ts.sort_by(|a, b| {
            let da: u32 = a.0.iter().sum();
            let db: u32 = b.0.iter().sum();
            db.cmp(&da).then(b.0.cmp(a.0))
        });
        for (n, (e, c)) in ts.into_iter().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { format!("x{}", i + 1) } else { format!("x{}^{k}", i + 1) })
                .collect();
            let neg = c < &Rational::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            if n == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            match (mono.is_empty(), abs.is_one()) {
                (true, _) => write!(f, "{}", format_rational(&abs))?,
                (false, true) => write!(f, "{}", mono.join("*"))?,
                (false, false) => write!(f, "{}*{}", format_rational(&abs), mono.join("*"))?,
            }
        }
        Ok(())
    }
}

/// Eulerian polynomial `A_m(x)`.
pub fn eulerian_poly(m: u32) -> PolyOverQ {
    PolyOverQ::from_terms(
        1,
        super::numbers::eulerian_coeffs(m)
            .into_iter()
            .enumerate()
            .map(|(k, c)| (vec![k as u32], Rational::from_integer(c))),
    )
}

/// All multiplicity vectors `(k_1..k_m)` with `Σ i·k_i = m`.
fn partition_multiplicities(m: u32) -> Vec<Vec<u32>> {
    fn rec(part: u32, remaining: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if part == 0 {
            if remaining == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for k in 0..=remaining / part {
            cur[part as usize - 1] = k;
            rec(part - 1, remaining - k * part, cur, out);
        }
        cur[part as usize - 1] = 0;
    }
    let mut out = Vec::new();
    let mut cur = vec![0; m as usize];
    rec(m, m, &mut cur, &mut out);
    out
}

/// Complete exponential Bell polynomial `Y_m` as a sum over partitions of `m`.
pub fn bell_poly(m: u32) -> PolyOverQ {
    if m == 0 {
        return PolyOverQ::constant(0, Rational::one());
    }
    let mf = factorial(m);
    let mut p = PolyOverQ::zero(m as usize);
    for ks in partition_multiplicities(m) {
        let mut den = BigInt::one();
        for (i, &k) in ks.iter().enumerate() {
            den *= factorial(k) * factorial(i as u32 + 1).pow(k);
        }
        p.add_term(ks, Rational::new(mf.clone(), den));
    }
    p
}

/// `Y_m` from the recurrence `Y_{m+1} = Σ_i C(m,i) Y_{m−i} u_{i+1}`.
pub fn bell_poly_recurrence(m: u32) -> PolyOverQ {
    let n = m as usize;
    let mut ys = vec![PolyOverQ::constant(n, Rational::one())];
    for k in 0..m {
        let mut next = PolyOverQ::zero(n);
        for i in 0..=k {
            let term = ys[(k - i) as usize]
                .mul(&PolyOverQ::var(n, i as usize))
                .scale(&Rational::from_integer(binomial(k as i64, i as i64)));
            next = next.add(&term);
        }
        ys.push(next);
    }
    ys.pop().unwrap()
}

/// `N_i` with `N_1 = x_1` and `N_{i+1} = x_1·N_i + D(N_i)`, `D(x_r) = r·x_{r+1}`.
pub fn n_poly(i: u32) -> PolyOverQ {
    assert!(i >= 1);
    let n = i as usize;
    let images: Vec<PolyOverQ> = (0..n)
        .map(|r| {
            if r + 1 < n {
                PolyOverQ::var(n, r + 1).scale(&Rational::from_integer((r as i64 + 1).into()))
            } else {
                PolyOverQ::zero(n)
            }
        })
        .collect();
    let mut p = PolyOverQ::var(n, 0);
    for _ in 1..i {
        p = PolyOverQ::var(n, 0).mul(&p).add(&p.derive(&images));
    }
    p
}

/// `P_k(x_0..x_{k−1}) = Σ_r C(k−1, k−r)/r! · N_r(L_1..L_r)`, `L_r = Σ_h Q_{h,r} x_h`.
pub fn p_poly(k: u32) -> PolyOverQ {
    assert!(k >= 1);
    let n = k as usize;
    let ls: Vec<PolyOverQ> = (1..=k)
        .map(|r| {
            let mut l = PolyOverQ::zero(n);
            for h in 0..r {
                l = l.add(&PolyOverQ::var(n, h as usize).scale(&super::dilcher::q_coef(h, r)));
            }
            l
        })
        .collect();
    let one = PolyOverQ::constant(n, Rational::one());
    let mut p = PolyOverQ::zero(n);
    for r in 1..=k {
        let w = Rational::new(binomial(k as i64 - 1, (k - r) as i64), factorial(r));
        p = p.add(&n_poly(r).eval(&ls[..r as usize], &one).scale(&w));
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn poly(n: usize, ts: &[(&[u32], i64)]) -> PolyOverQ {
        PolyOverQ::from_terms(n, ts.iter().map(|(e, c)| (e.to_vec(), int(*c))))
    }

    #[test]
    fn eulerian_polys() {
        assert_eq!(eulerian_poly(1), poly(1, &[(&[0], 1)]));
        assert_eq!(eulerian_poly(2), poly(1, &[(&[0], 1), (&[1], 1)]));
        assert_eq!(eulerian_poly(3), poly(1, &[(&[0], 1), (&[1], 4), (&[2], 1)]));
    }

    #[test]
    fn bell_examples() {
        assert_eq!(bell_poly(1), poly(1, &[(&[1], 1)]));
        assert_eq!(bell_poly(2), poly(2, &[(&[2, 0], 1), (&[0, 1], 1)]));
        assert_eq!(
            bell_poly(3),
            poly(3, &[(&[3, 0, 0], 1), (&[1, 1, 0], 3), (&[0, 0, 1], 1)])
        );
    }

    #[test]
    fn bell_definitions_agree() {
        for m in 1..=7 {
            assert_eq!(bell_poly(m), bell_poly_recurrence(m), "m = {m}");
        }
    }

    #[test]
    fn n_polys() {
        assert_eq!(n_poly(1), poly(1, &[(&[1], 1)]));
        assert_eq!(n_poly(2), poly(2, &[(&[2, 0], 1), (&[0, 1], 1)]));
        assert_eq!(
            n_poly(3),
            poly(3, &[(&[3, 0, 0], 1), (&[1, 1, 0], 3), (&[0, 0, 1], 2)])
        );
    }

    #[test]
    fn p_one_is_identity() {
        assert_eq!(p_poly(1), poly(1, &[(&[1], 1)]));
        assert_eq!(p_poly(3).degree(), 3);
    }

    #[test]
    fn evaluation() {
        let p = poly(2, &[(&[2, 0], 1), (&[0, 1], 3), (&[0, 0], -1)]);
        assert_eq!(p.eval(&[int(2), int(5)], &int(1)), int(18));
        assert_eq!(p.to_string(), "x1^2 + 3*x2 - 1");
    }
}
