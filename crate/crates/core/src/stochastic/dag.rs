use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use super::{SampleStats, StochasticError};
use crate::scalar::{format_rational, rational_to_f64, Rational};

pub const MAX_ENUMERATE: u32 = 5;
pub const MAX_SAMPLE: u32 = 64;
const BLOCK: u64 = 4096;

/// The G_{n,p} random acyclic digraph on vertices 1..n, edges i→j for i<j.
#[derive(Clone, Debug, PartialEq)]
pub struct DagModel {
    pub n: u32,
    pub p: Rational,
}

impl DagModel {
    pub fn new(n: u32, p: Rational) -> Result<Self, StochasticError> {
        if n == 0 {
            return Err(StochasticError::Precondition("need at least one vertex".into()));
        }
        if !(p > Rational::zero() && p < Rational::one()) {
            return Err(StochasticError::ProbabilityOutOfRange(format_rational(&p)));
        }
        Ok(DagModel { n, p })
    }

    pub fn q(&self) -> Rational {
        Rational::one() - &self.p
    }
}

/// `Pr(γ = h) = q^{n−h} Π_{j=1}^{h−1} (1 − q^{n−j})`.
pub fn dag_pmf_exact(model: &DagModel, h: u32) -> Result<Rational, StochasticError> {
    let n = model.n;
    if h == 0 || h > n {
        return Err(StochasticError::HeightOutOfRange { h, n });
    }
    let q = model.q();
    let mut out = num_traits::pow(q.clone(), (n - h) as usize);
    for j in 1..h {
        out *= Rational::one() - num_traits::pow(q.clone(), (n - j) as usize);
    }
    Ok(out)
}

/// `Pr(γ = h)` for `h = 1..=n`, at index `h − 1`.
pub fn dag_pmf_table(model: &DagModel) -> Vec<Rational> {
    (1..=model.n).map(|h| dag_pmf_exact(model, h).expect("h in range")).collect()
}

/// `E(n − γ)` from the exact pmf.
pub fn dag_mean_deficit(model: &DagModel) -> Rational {
    dag_pmf_table(model)
        .iter()
        .enumerate()
        .fold(Rational::zero(), |acc, (i, p)| acc + p * Rational::from_integer((model.n as i64 - 1 - i as i64).into()))
}

/// Number of vertices reachable from vertex 0, given out-neighbour bitmasks.
fn reach(adj: &[u64]) -> u32 {
    let mut seen: u64 = 1;
    let mut stack = vec![0usize];
    while let Some(v) = stack.pop() {
        let mut fresh = adj[v] & !seen;
        seen |= fresh;
        while fresh != 0 {
            let w = fresh.trailing_zeros() as usize;
            fresh &= fresh - 1;
            stack.push(w);
        }
    }
    seen.count_ones()
}

fn pairs(n: u32) -> Vec<(usize, usize)> {
    let n = n as usize;
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
}

/// The exact pmf by running over every edge subset.
pub fn dag_enumerate_exact(model: &DagModel) -> Result<Vec<Rational>, StochasticError> {
    if model.n > MAX_ENUMERATE {
        return Err(StochasticError::TooLarge { n: model.n, max: MAX_ENUMERATE });
    }
    let ps = pairs(model.n);
    let q = model.q();
    let mut table = vec![Rational::zero(); model.n as usize];
    for mask in 0u64..(1 << ps.len()) {
        let mut adj = vec![0u64; model.n as usize];
        for (b, &(i, j)) in ps.iter().enumerate() {
            if mask >> b & 1 == 1 {
                adj[i] |= 1 << j;
            }
        }
        let e = mask.count_ones() as usize;
        let w = num_traits::pow(model.p.clone(), e) * num_traits::pow(q.clone(), ps.len() - e);
        table[reach(&adj) as usize - 1] += w;
    }
    Ok(table)
}

/// Histogram of γ over independent trials; `histogram[h − 1]` counts γ = h.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DagTrialBatch {
    pub n: u32,
    pub p: f64,
    pub seed: u64,
    pub trials: u64,
    pub histogram: Vec<u64>,
}

impl DagTrialBatch {
    /// Statistics of `n − γ`.
    pub fn deficit_stats(&self) -> SampleStats {
        let values: Vec<f64> = (0..self.n).map(|i| (self.n - 1 - i) as f64).collect();
        SampleStats::from_histogram(&values, &self.histogram)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "p": self.p,
            "seed": self.seed,
            "trials": self.trials,
            "histogram": self.histogram,
        })
    }
}

/// Monte Carlo over `trials` graphs. Trials run in blocks of 4096, block `b`
/// drawing from ChaCha8 stream `b` of `seed`, so results do not depend on the
/// thread count.
pub fn dag_sample(model: &DagModel, seed: u64, trials: u64) -> Result<DagTrialBatch, StochasticError> {
    if model.n > MAX_SAMPLE {
        return Err(StochasticError::TooLarge { n: model.n, max: MAX_SAMPLE });
    }
    let p = rational_to_f64(&model.p).unwrap_or(f64::NAN);
    let n = model.n as usize;
    let ps = pairs(model.n);
    let blocks = trials.div_ceil(BLOCK);
    let histogram = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(b);
            let mut hist = vec![0u64; n];
            let count = BLOCK.min(trials - b * BLOCK);
            let mut adj = vec![0u64; n];
            for _ in 0..count {
                adj.iter_mut().for_each(|a| *a = 0);
                for &(i, j) in &ps {
                    if rng.gen::<f64>() < p {
                        adj[i] |= 1 << j;
                    }
                }
                hist[reach(&adj) as usize - 1] += 1;
            }
            hist
        })
        .reduce(
            || vec![0u64; n],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    Ok(DagTrialBatch { n: model.n, p, seed, trials, histogram })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    #[test]
    fn small_cases() {
        let m = DagModel::new(1, rat(1, 3)).unwrap();
        assert_eq!(dag_pmf_exact(&m, 1).unwrap(), int(1));
        let m = DagModel::new(2, rat(1, 3)).unwrap();
        assert_eq!(dag_pmf_table(&m), vec![rat(2, 3), rat(1, 3)]);
        assert_eq!(dag_enumerate_exact(&m).unwrap(), vec![rat(2, 3), rat(1, 3)]);
    }

    #[test]
    fn matches_enumeration() {
        for n in 1..=4 {
            for p in [rat(1, 2), rat(1, 3), rat(3, 7)] {
                let m = DagModel::new(n, p).unwrap();
                assert_eq!(dag_pmf_table(&m), dag_enumerate_exact(&m).unwrap());
            }
        }
    }

    #[test]
    fn errors() {
        let m = DagModel::new(3, rat(1, 2)).unwrap();
        assert!(dag_pmf_exact(&m, 0).is_err());
        assert!(dag_pmf_exact(&m, 4).is_err());
        assert!(DagModel::new(3, int(1)).is_err());
        assert!(DagModel::new(0, rat(1, 2)).is_err());
        assert!(dag_enumerate_exact(&DagModel::new(6, rat(1, 2)).unwrap()).is_err());
    }

    #[test]
    fn single_vertex_samples() {
        let b = dag_sample(&DagModel::new(1, rat(1, 2)).unwrap(), 3, 100).unwrap();
        assert_eq!(b.histogram, vec![100]);
    }

    #[test]
    fn deterministic_batches() {
        let m = DagModel::new(8, rat(1, 2)).unwrap();
        let a = dag_sample(&m, 11, 10_000).unwrap();
        let b = dag_sample(&m, 11, 10_000).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.histogram.iter().sum::<u64>(), 10_000);
        assert_ne!(a, dag_sample(&m, 12, 10_000).unwrap());
    }
}
