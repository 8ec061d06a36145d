use num_traits::{One, Zero};

use super::numbers::{binomial, factorial, stirling1_row};
use crate::scalar::Rational;

fn ri(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// `A(j,r,t) = Σ_{l=t}^{j} s(j,l)/j! · C(l,t) · (1−r)^{l−t}`.
pub fn coeff_a(j: u32, r: i64, t: u32) -> Rational {
    if t > j {
        return Rational::zero();
    }
    let row = stirling1_row(j);
    let base = ri(1 - r);
    let mut acc = Rational::zero();
    let mut pw = Rational::one();
    for l in t..=j {
        let s = &row[l as usize];
        if !s.is_zero() {
            acc += Rational::from_integer(s * binomial(l as i64, t as i64)) * &pw;
        }
        pw *= &base;
    }
    acc / Rational::from_integer(factorial(j))
}

/// `C(k,r,t) = Σ_{j=0}^{k−t} C(k−1, j+t−1) · A(j+t,r,t)`; for `t = 0` this is
/// `Σ_{j=1}^{k} C(k−1, j−1) · A(j,r,0)`.
pub fn coeff_c(k: u32, r: i64, t: u32) -> Rational {
    if t > k {
        return Rational::zero();
    }
    let mut acc = Rational::zero();
    for j in 0..=k - t {
        let b = binomial(k as i64 - 1, (j + t) as i64 - 1);
        if !b.is_zero() {
            acc += Rational::from_integer(b) * coeff_a(j + t, r, t);
        }
    }
    acc
}

/// Dilcher's `a(k,t) = C(k,1,t)`.
pub fn coeff_small_a(k: u32, t: u32) -> Rational {
    coeff_c(k, 1, t)
}

/// `Q_{h,r} = Σ_{j=0}^{r−h−1} (−1)^{r+h−1}/(r−j−1)! · C(r−1,j) · s(r−j−1,h)`.
pub fn q_coef(h: u32, r: u32) -> Rational {
    assert!(h < r, "Q_{{h,r}} needs h < r");
    let sign = if (r + h - 1) % 2 == 0 { 1 } else { -1 };
    let mut acc = Rational::zero();
    for j in 0..r - h {
        let m = r - j - 1;
        let s = stirling1_row(m).get(h as usize).cloned().unwrap_or_default();
        if s.is_zero() {
            continue;
        }
        acc += Rational::new(s * binomial(r as i64 - 1, j as i64), factorial(m));
    }
    acc * ri(sign)
}

/// Tabulated `A(j,r,t)`, `C(k,r,t)` for `0 ≤ t ≤ j,k ≤ max_j`, `1 ≤ r ≤ max_r`.
#[derive(Clone, Debug)]
pub struct DilcherTable {
    max_j: u32,
    max_r: u32,
    a: Vec<Rational>,
    c: Vec<Rational>,
}

impl DilcherTable {
    pub const DEFAULT_BOUND: u32 = 8;

    pub fn new(max_j: u32, max_r: u32) -> Self {
        assert!(max_j >= 1 && max_r >= 1, "table bounds must be positive");
        let mut a = Vec::new();
        let mut c = Vec::new();
        for r in 1..=max_r {
            for j in 0..=max_j {
                for t in 0..=max_j {
                    a.push(coeff_a(j, r as i64, t));
                    c.push(coeff_c(j, r as i64, t));
                }
            }
        }
        DilcherTable { max_j, max_r, a, c }
    }

    pub fn max_j(&self) -> u32 {
        self.max_j
    }

    pub fn max_r(&self) -> u32 {
        self.max_r
    }

    fn slot(&self, j: u32, r: u32, t: u32) -> usize {
        assert!(j <= self.max_j && t <= self.max_j && (1..=self.max_r).contains(&r), "index outside table");
        let w = (self.max_j + 1) as usize;
        ((r - 1) as usize * w + j as usize) * w + t as usize
    }

    pub fn a(&self, j: u32, r: u32, t: u32) -> &Rational {
        &self.a[self.slot(j, r, t)]
    }

    pub fn c(&self, k: u32, r: u32, t: u32) -> &Rational {
        &self.c[self.slot(k, r, t)]
    }

    /// Dilcher's `a(k,t)`.
    pub fn small_a(&self, k: u32, t: u32) -> &Rational {
        self.c(k, 1, t)
    }
}

impl Default for DilcherTable {
    fn default() -> Self {
        Self::new(Self::DEFAULT_BOUND, Self::DEFAULT_BOUND)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::numbers::stirling1;
    use crate::scalar::{int, rat};

    #[test]
    fn examples() {
        assert_eq!(coeff_small_a(1, 1), int(1));
        assert_eq!(coeff_small_a(2, 1), rat(1, 2));
        assert_eq!(coeff_small_a(2, 2), rat(1, 2));
        for j in 0..6 {
            for t in 0..=j {
                assert_eq!(
                    coeff_a(j, 1, t),
                    Rational::new(stirling1(j, t), factorial(j))
                );
            }
        }
    }

    #[test]
    fn diagonal() {
        let tab = DilcherTable::default();
        for k in 1..=8 {
            for r in 1..=8 {
                let d = Rational::new(1.into(), factorial(k));
                assert_eq!(tab.a(k, r, k), &d);
                assert_eq!(tab.c(k, r, k), &d);
            }
        }
    }

    #[test]
    fn q_coefs() {
        assert_eq!(q_coef(0, 1), int(1));
        for r in 1..8 {
            assert_eq!(q_coef(0, r), int(if r % 2 == 1 { 1 } else { -1 }));
        }
        assert_eq!(q_coef(1, 2), int(1));
    }
}
