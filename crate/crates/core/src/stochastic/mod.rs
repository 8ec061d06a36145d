//! The heap-of-coins distribution, the random-DAG reachability model, and the
//! limit recurrences whose stabilized values are divisor-type series.

mod dag;
mod heap;
mod limit;
mod recurrence;

use serde::Serialize;
use thiserror::Error;

use crate::error::{ScalarError, SeriesError};
use crate::identities::kit::{divisor_series, Arg};
use crate::scalar::int;
use crate::series::VarSpec;
use num_traits::Float;

pub use dag::{
    dag_enumerate_exact, dag_mean_deficit, dag_pmf_exact, dag_pmf_table, dag_sample, DagModel, DagTrialBatch,
    MAX_ENUMERATE, MAX_SAMPLE,
};
pub use heap::{heap_pmf, heap_sample, HeapDistribution, HeapSample};
pub use limit::{
    limit_closed_form, limit_series, limit_verify, periodic_ck, periodic_reconstruct, stabilize,
    t_generating_sides, LimitConfig, LimitMode, LimitReport, Mismatch, MAX_PERIOD,
};
pub use recurrence::{RecurrenceMode, RecurrenceState, SequenceF};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StochasticError {
    #[error("q must lie in (0, 1), got {0}")]
    QOutOfRange(f64),
    #[error("p must lie in (0, 1), got {0}")]
    ProbabilityOutOfRange(String),
    #[error("height {h} outside 1..={n}")]
    HeightOutOfRange { h: u32, n: u32 },
    #[error("n = {n} exceeds the limit {max}")]
    TooLarge { n: u32, max: u32 },
    #[error("{0}")]
    Precondition(String),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// `K_m(q) = Σ σ_{m−1}(n) qⁿ` evaluated numerically, truncated once the
/// terms fall below 1e−18.
pub fn cumulant_limit<F: Float>(m: u32, q: F) -> Result<F, StochasticError> {
    if m == 0 || !(q > F::zero() && q < F::one()) {
        return Err(StochasticError::QOutOfRange(q.to_f64().unwrap_or(f64::NAN)));
    }
    let qf = q.to_f64().unwrap_or(0.5);
    let mut nq = 8u32;
    while nq < 2000 && (nq as f64).powi(m as i32 + 1) * qf.powi(nq as i32) > 1e-18 {
        nq += 8;
    }
    let s = divisor_series(&VarSpec::q_only(nq), m - 1, &Arg::Value(int(1)), &int(1))?;
    Ok(s.eval_numeric(&[("q", q)])?.value)
}

/// Sample mean, variance and third cumulant with standard errors.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SampleStats {
    pub count: u64,
    pub mean: f64,
    pub variance: f64,
    pub k3: f64,
    pub se_mean: f64,
    pub se_variance: f64,
    pub se_k3: f64,
}

impl SampleStats {
    pub fn from_values(xs: &[f64]) -> Self {
        let ones = vec![1u64; xs.len()];
        Self::from_histogram(xs, &ones)
    }

    /// Statistics of a sample where `values[i]` occurs `counts[i]` times.
    pub fn from_histogram(values: &[f64], counts: &[u64]) -> Self {
        let n: u64 = counts.iter().sum();
        if n == 0 {
            return SampleStats { count: 0, mean: f64::NAN, variance: f64::NAN, k3: f64::NAN, se_mean: f64::NAN, se_variance: f64::NAN, se_k3: f64::NAN };
        }
        let nf = n as f64;
        let mean = values.iter().zip(counts).map(|(v, &c)| v * c as f64).sum::<f64>() / nf;
        let mut mu = [0.0f64; 7];
        for (v, &c) in values.iter().zip(counts) {
            let d = v - mean;
            let mut p = 1.0;
            for m in mu.iter_mut() {
                *m += p * c as f64;
                p *= d;
            }
        }
        mu.iter_mut().for_each(|m| *m /= nf);
        let (m2, m3, m4, m6) = (mu[2], mu[3], mu[4], mu[6]);
        let variance = if n > 1 { m2 * nf / (nf - 1.0) } else { 0.0 };
        let k3 = if n > 2 { m3 * nf * nf / ((nf - 1.0) * (nf - 2.0)) } else { 0.0 };
        SampleStats {
            count: n,
            mean,
            variance,
            k3,
            se_mean: (variance / nf).sqrt(),
            se_variance: ((m4 - m2 * m2).max(0.0) / nf).sqrt(),
            se_k3: ((m6 - m3 * m3 - 6.0 * m4 * m2 + 9.0 * m2 * m2 * m2).max(0.0) / nf).sqrt(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn heap_cumulants_match_limits() {
        for q in [0.3f64, 0.5] {
            let d = HeapDistribution::new(q).unwrap();
            let k = d.cumulants();
            for m in 1..=3 {
                let want = cumulant_limit(m, q).unwrap();
                assert!((k[m as usize - 1] - want).abs() < 1e-8, "q={q} m={m}");
            }
        }
        assert!(cumulant_limit(0, 0.5f64).is_err());
    }

    #[test]
    fn stats_of_small_sample() {
        let s = SampleStats::from_values(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(s.count, 4);
        assert!((s.mean - 2.5).abs() < 1e-15);
        assert!((s.variance - 5.0 / 3.0).abs() < 1e-14);
        assert!(s.k3.abs() < 1e-14);
        let h = SampleStats::from_histogram(&[1.0, 2.0, 3.0, 4.0], &[1, 1, 1, 1]);
        assert_eq!(s, h);
    }
}
