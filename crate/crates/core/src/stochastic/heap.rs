use num_traits::Float;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{SampleStats, StochasticError};

fn check_q<F: Float>(q: F) -> Result<(), StochasticError> {
    if !(q > F::zero() && q < F::one()) {
        return Err(StochasticError::QOutOfRange(q.to_f64().unwrap_or(f64::NAN)));
    }
    Ok(())
}

fn eps<F: Float>() -> F {
    F::from(1e-16).unwrap_or_else(F::epsilon)
}

/// `Pr(X = n) = qⁿ (q^{n+1}; q)_∞`; the product stops once factors are within
/// 1e−16 of 1.
pub fn heap_pmf<F: Float>(q: F, n: u32) -> Result<F, StochasticError> {
    check_q(q)?;
    let mut qi = q.powi(n as i32 + 1);
    let mut prod = F::one();
    while qi > eps() {
        prod = prod * (F::one() - qi);
        qi = qi * q;
    }
    Ok(q.powi(n as i32) * prod)
}

/// The pmf of X tabulated until the residual mass is negligible.
#[derive(Clone, Debug)]
pub struct HeapDistribution<F> {
    pub q: F,
    pub pmf: Vec<F>,
    pub residual: F,
}

impl<F: Float> HeapDistribution<F> {
    pub fn new(q: F) -> Result<Self, StochasticError> {
        check_q(q)?;
        // Pr(X ≥ n) = qⁿ, so stop once qⁿ is below the tolerance.
        let tol = F::from(1e-15).unwrap_or_else(F::epsilon);
        let mut pmf = Vec::new();
        let mut n = 0u32;
        while q.powi(n as i32) > tol {
            pmf.push(heap_pmf(q, n)?);
            n += 1;
        }
        let mass = pmf.iter().fold(F::zero(), |a, &p| a + p);
        let residual = (F::one() - mass).max(F::zero());
        Ok(HeapDistribution { q, pmf, residual })
    }

    /// `E(X^m)` from the tabulated pmf.
    pub fn moment(&self, m: u32) -> F {
        self.pmf
            .iter()
            .enumerate()
            .fold(F::zero(), |acc, (n, &p)| acc + F::from(n).unwrap().powi(m as i32) * p)
    }

    /// The first three cumulants from the tabulated pmf.
    pub fn cumulants(&self) -> [F; 3] {
        let m1 = self.moment(1);
        let m2 = self.moment(2);
        let m3 = self.moment(3);
        let two = F::from(2).unwrap();
        let three = F::from(3).unwrap();
        [m1, m2 - m1 * m1, m3 - three * m1 * m2 + two * m1 * m1 * m1]
    }

    fn cdf(&self) -> Vec<f64> {
        let mut acc = 0.0;
        self.pmf
            .iter()
            .map(|p| {
                acc += p.to_f64().unwrap_or(0.0);
                acc
            })
            .collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct HeapSample {
    pub q: f64,
    pub seed: u64,
    pub samples: Vec<u32>,
    pub stats: SampleStats,
}

/// Inverse-CDF sampling of X with a ChaCha8 stream seeded by `seed`.
pub fn heap_sample(q: f64, seed: u64, count: usize) -> Result<HeapSample, StochasticError> {
    let dist = HeapDistribution::new(q)?;
    let cdf = dist.cdf();
    let last = cdf.len() as u32 - 1;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let samples: Vec<u32> = (0..count)
        .map(|_| {
            let u: f64 = rng.gen();
            let i = cdf.partition_point(|&c| c <= u) as u32;
            i.min(last)
        })
        .collect();
    let xs: Vec<f64> = samples.iter().map(|&s| s as f64).collect();
    Ok(HeapSample { q, seed, stats: SampleStats::from_values(&xs), samples })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pmf_at_zero_is_euler_product() {
        let q = 0.5f64;
        let mut prod = 1.0;
        for i in 1..200 {
            prod *= 1.0 - q.powi(i);
        }
        assert!((heap_pmf(q, 0).unwrap() - prod).abs() < 1e-15);
    }

    #[test]
    fn normalized() {
        let d = HeapDistribution::new(0.5f64).unwrap();
        let s: f64 = d.pmf.iter().sum();
        assert!((s - 1.0).abs() < 1e-10);
        assert!((s + d.residual - 1.0).abs() < 1e-12);
        assert!(d.pmf.iter().all(|&p| p >= 0.0));
    }

    #[test]
    fn works_in_f32() {
        let p: f32 = heap_pmf(0.5f32, 2).unwrap();
        assert!((p - heap_pmf(0.5f64, 2).unwrap() as f32).abs() < 1e-6);
    }

    #[test]
    fn rejects_bad_q() {
        assert!(heap_pmf(1.0f64, 0).is_err());
        assert!(heap_pmf(0.0f64, 0).is_err());
        assert!(HeapDistribution::new(-0.2f64).is_err());
    }

    #[test]
    fn same_seed_same_stream() {
        let a = heap_sample(0.4, 7, 1000).unwrap();
        let b = heap_sample(0.4, 7, 1000).unwrap();
        assert_eq!(a.samples, b.samples);
        let c = heap_sample(0.4, 8, 1000).unwrap();
        assert_ne!(a.samples, c.samples);
    }
}
