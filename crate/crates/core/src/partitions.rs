//! Partitions into distinct parts and the weighted divisor sums over them.

use std::fmt;

use num_traits::One;

use crate::error::ScalarError;
use crate::scalar::{Rational, Scalar};

/// A partition into strictly decreasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DistinctPartition {
    parts: Vec<u32>,
}

impl DistinctPartition {
    /// Fails unless `parts` is nonempty, positive and strictly decreasing.
    pub fn new(parts: Vec<u32>) -> Option<Self> {
        let ok = !parts.is_empty()
            && parts.last().is_some_and(|&p| p > 0)
            && parts.windows(2).all(|w| w[0] > w[1]);
        ok.then_some(DistinctPartition { parts })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// `#(π)`.
    pub fn count(&self) -> usize {
        self.parts.len()
    }

    /// `s(π)`.
    pub fn smallest(&self) -> u32 {
        *self.parts.last().unwrap()
    }

    /// `ℓ(π)`.
    pub fn largest(&self) -> u32 {
        self.parts[0]
    }

    pub fn total(&self) -> u32 {
        self.parts.iter().sum()
    }
}

impl fmt::Display for DistinctPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "[{}]", s.join(","))
    }
}

/// Lexicographically largest distinct partition of `r` with all parts `< bound`.
fn greedy_fill(mut r: u32, mut bound: u32, out: &mut Vec<u32>) -> bool {
    while r > 0 {
        if bound <= 1 {
            return false;
        }
        let x = (bound - 1).min(r);
        if (r - x) as u64 > (x as u64) * (x as u64 - 1) / 2 {
            return false;
        }
        out.push(x);
        r -= x;
        bound = x;
    }
    true
}

/// Distinct partitions of `n` in lexicographically descending order.
#[derive(Clone, Debug)]
pub struct DistinctPartitions {
    next: Option<Vec<u32>>,
}

impl Iterator for DistinctPartitions {
    type Item = DistinctPartition;

    fn next(&mut self) -> Option<DistinctPartition> {
        let cur = self.next.take()?;
        let mut tail = 0u32;
        for i in (0..cur.len()).rev() {
            tail += cur[i];
            let v = cur[i] - 1;
            let rest = tail - cur[i] + 1;
            if v == 0 {
                continue;
            }
            let mut cand = cur[..i].to_vec();
            cand.push(v);
            if greedy_fill(rest, v, &mut cand) {
                self.next = Some(cand);
                break;
            }
        }
        Some(DistinctPartition { parts: cur })
    }
}

/// Streams every partition of `n` into distinct parts exactly once.
pub fn distinct_partitions(n: u32) -> Result<DistinctPartitions, ScalarError> {
    if n == 0 {
        return Err(ScalarError::Parse("distinct partitions need n >= 1".into()));
    }
    Ok(DistinctPartitions { next: Some(vec![n]) })
}

/// `Σ_{π∈D(n)} (−1)^{#π−1} Σ_{j=1}^{s(π)} (ℓ(π)−s(π)+j)^m c^{ℓ(π)−s(π)+j}`.
///
/// Negative `m` is accepted; every weight stays rational.
pub fn partition_divisor_sum<S: Scalar>(n: u32, m: i32, c: &S) -> Result<S, ScalarError> {
    let parts = distinct_partitions(n)?;
    // weight[e] = e^m c^e for 1 ≤ e ≤ n
    let mut weights = vec![S::zero()];
    let mut cp = S::one();
    for e in 1..=n {
        cp = cp.mul_ref(c);
        let base = Rational::from_integer(e.into());
        let em = if m >= 0 {
            num_traits::pow(base, m as usize)
        } else {
            Rational::one() / num_traits::pow(base, m.unsigned_abs() as usize)
        };
        weights.push(S::from_rational(&em).mul_ref(&cp));
    }
    // prefix[e] = Σ_{x ≤ e} weight[x]
    let mut prefix = vec![S::zero()];
    for w in weights.iter().skip(1) {
        let next = prefix.last().unwrap().clone() + w.clone();
        prefix.push(next);
    }
    let mut acc = S::zero();
    for p in parts {
        let (l, s) = (p.largest() as usize, p.smallest() as usize);
        // e runs over l−s+1 ..= l
        let block = prefix[l].clone() - prefix[l - s].clone();
        if block.is_zero() {
            continue;
        }
        if p.count() % 2 == 1 {
            acc.add_assign_ref(&block);
        } else {
            acc.sub_assign_ref(&block);
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};
    use num_traits::Zero;
    use std::collections::HashSet;

    fn all(n: u32) -> Vec<Vec<u32>> {
        distinct_partitions(n).unwrap().map(|p| p.parts().to_vec()).collect()
    }

    #[test]
    fn small_cases() {
        assert_eq!(all(3), vec![vec![3], vec![2, 1]]);
        assert_eq!(all(6), vec![vec![6], vec![5, 1], vec![4, 2], vec![3, 2, 1]]);
        assert_eq!(all(10).len(), 10);
        assert_eq!(all(1), vec![vec![1]]);
        assert!(distinct_partitions(0).is_err());
    }

    #[test]
    fn structure_and_order() {
        // q-product oracle for the counts: Π (1 + q^k)
        let mut counts = vec![0u64; 41];
        counts[0] = 1;
        for k in 1..=40 {
            for n in (k..=40).rev() {
                counts[n] += counts[n - k];
            }
        }
        for n in 1..=40u32 {
            let ps = all(n);
            assert_eq!(ps.len() as u64, counts[n as usize], "n = {n}");
            let set: HashSet<_> = ps.iter().cloned().collect();
            assert_eq!(set.len(), ps.len());
            for w in ps.windows(2) {
                assert!(w[0] > w[1]);
            }
            for p in &ps {
                let d = DistinctPartition::new(p.clone()).unwrap();
                assert_eq!(d.total(), n);
            }
        }
    }

    #[test]
    fn divisor_examples() {
        assert_eq!(partition_divisor_sum(6, 0, &int(1)).unwrap(), int(4));
        assert_eq!(partition_divisor_sum(1, 3, &rat(2, 7)).unwrap(), rat(2, 7));
        assert_eq!(partition_divisor_sum(3, 1, &rat(1, 2)).unwrap(), rat(7, 8));
    }

    #[test]
    fn negative_exponent() {
        for n in 1..=15 {
            let lhs = partition_divisor_sum(n, -2, &rat(1, 3)).unwrap();
            let mut rhs = Rational::zero();
            for d in 1..=n {
                if n % d == 0 {
                    rhs += rat(1, (d * d) as i64) * num_traits::pow(rat(1, 3), d as usize);
                }
            }
            assert_eq!(lhs, rhs);
        }
    }
}
