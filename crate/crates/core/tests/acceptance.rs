//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the lines always show:
//! `cargo test -p qdivisor --test acceptance`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestError, TestRng, TestRunner};

use qdivisor::combinatorics::{coeff_a, coeff_c, coeff_small_a, divisor_sigma};
use qdivisor::identities::{
    build_side, find_identity, full_default_suite, run_checks, verify_with_side, Outcome,
    ParamBinding, SuiteEntry,
};
use qdivisor::partitions::partition_divisor_sum;
use qdivisor::scalar::{int, rat, rational_to_f64};
use qdivisor::stochastic::{
    dag_enumerate_exact, dag_mean_deficit, dag_pmf_table, dag_sample, heap_sample, limit_series, limit_verify,
    DagModel, HeapDistribution, LimitConfig, LimitMode, SequenceF,
};
use qdivisor::{QSeries, Rational};

const SUITE_ORDER: u32 = 30;
const SUITE_BUDGET: Duration = Duration::from_secs(300);
const PARTITION_BUDGET: Duration = Duration::from_secs(60);
const CHAIN_ORDER: u32 = 25;
const LIMIT_ORDER: u32 = 25;
const GEOMETRIC_ORDER: u32 = 15;
const EXACT_GAP_TOL: f64 = 1e-6;
const DAG_N: u32 = 12;
const DAG_TRIALS: u64 = 200_000;
const DAG_SEED: u64 = 7;
const MEAN_BAND: f64 = 4.0;
const VAR_BAND: f64 = 5.0;
const HEAP_TRIALS: usize = 1_000_000;
const HEAP_SEED: u64 = 1;
const HEAP_BAND: f64 = 5.0;
const PERTURBATIONS: u32 = 50;
const PERTURB_ORDER: u32 = 10;

type Check = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn binding(order: u32, kv: &[(&str, &str)]) -> ParamBinding {
    kv.iter().fold(ParamBinding::order(order), |b, (k, v)| b.with(k, v))
}

fn run_all(jobs: &[SuiteEntry]) -> Result<usize, String> {
    let mut n = 0;
    for (job, r) in jobs.iter().zip(run_checks(jobs)) {
        let rep = r.map_err(|e| format!("{} {}: {e}", job.id, job.binding.describe()))?;
        if !rep.expected_fail {
            ensure(rep.passed(), || rep.summary())?;
            n += 1;
        }
    }
    Ok(n)
}

fn entries(id: &str, order: u32, bindings: &[Vec<(&str, String)>]) -> Vec<SuiteEntry> {
    bindings
        .iter()
        .map(|kv| {
            let b = kv.iter().fold(ParamBinding::order(order), |b, (k, v)| b.with(k, v));
            SuiteEntry { id: id.to_string(), binding: b }
        })
        .collect()
}

fn ints(name: &'static str, range: std::ops::RangeInclusive<u32>) -> Vec<Vec<(&'static str, String)>> {
    range.map(|k| vec![(name, k.to_string())]).collect()
}

fn c1() -> Check {
    let start = Instant::now();
    let mut jobs = full_default_suite();
    for j in &mut jobs {
        j.binding.nq = SUITE_ORDER;
        j.binding.nt = SUITE_ORDER;
    }
    jobs.dedup();
    let n = run_all(&jobs)?;
    let t = start.elapsed();
    ensure(t < SUITE_BUDGET, || format!("suite took {t:?}"))?;
    Ok(format!("{n} checks at Nq=Nt={SUITE_ORDER} in {:.1} s", t.as_secs_f64()))
}

fn c2() -> Check {
    let cs = |name| vec![vec![(name, "1/2".to_string())], vec![(name, "-1/3".to_string())]];
    let mut jobs = entries("uchimura-3way", SUITE_ORDER, &[vec![]]);
    jobs.extend(entries("dilcher-1", SUITE_ORDER, &ints("k", 1..=5)));
    for c in ["1/2", "-1/3"] {
        let b: Vec<_> = (1..=5).map(|m| vec![("m", m.to_string()), ("c", c.to_string())]).collect();
        jobs.extend(entries("eulerian-3way", SUITE_ORDER, &b));
    }
    jobs.extend(entries("entry4-uchimura-type", SUITE_ORDER, &cs("c")));
    jobs.extend(entries("uchimura-mm-3way", SUITE_ORDER, &ints("m", 1..=5)));
    jobs.extend(entries("finite-uchimura", SUITE_ORDER, &ints("N", 1..=10)));
    let n = run_all(&jobs)?;
    Ok(format!("{n} multi-sided checks, all sides equal to Nq={SUITE_ORDER}"))
}

fn same_side(a: (&str, &str, &ParamBinding), b: (&str, &str, &ParamBinding)) -> Result<(), String> {
    let x = build_side(a.0, a.1, a.2).map_err(|e| e.to_string())?;
    let y = build_side(b.0, b.1, b.2).map_err(|e| e.to_string())?;
    ensure(x == y, || format!("{}/{} differs from {}/{}", a.0, a.1, b.0, b.1))
}

fn c3() -> Check {
    let n = SUITE_ORDER;
    let u = binding(n, &[("alpha", "1"), ("r", "1")]);
    let plain = ParamBinding::order(n);
    for side in ["ramanujan", "uchimura"] {
        same_side(("uchimura-2var", side, &u), ("uchimura-3way", side, &plain))?;
    }
    for k in 1..=4u32 {
        let ks = k.to_string();
        let u = binding(n, &[("alpha", &ks), ("r", &ks)]);
        let d = binding(n, &[("k", &ks)]);
        for side in ["ramanujan", "uchimura"] {
            same_side(("uchimura-2var", side, &u), ("dilcher-1", side, &d))?;
        }
    }
    Ok("(1,1) and (k,k), k <= 4: both sides coefficient-identical".into())
}

/// Brute-force `Σ_{d|n} d^m c^d`.
fn sigma_oracle(m: u32, c: &Rational, n: u32) -> Rational {
    (1..=n)
        .filter(|d| n % d == 0)
        .map(|d| num_traits::pow(int(d as i64), m as usize) * num_traits::pow(c.clone(), d as usize))
        .fold(Rational::zero(), |a, b| a + b)
}

fn c4() -> Check {
    let start = Instant::now();
    let mut count = 0;
    for c in [int(1), rat(1, 2), rat(-1, 3)] {
        for m in 0..=4u32 {
            for n in 1..=40u32 {
                let p = partition_divisor_sum(n, m as i32, &c).map_err(|e| e.to_string())?;
                let s = divisor_sigma(m, &c, n as u64).map_err(|e| e.to_string())?;
                ensure(p == s && s == sigma_oracle(m, &c, n), || format!("n={n} m={m} c={c}: {p} vs {s}"))?;
                count += 1;
            }
        }
    }
    let t = start.elapsed();
    ensure(t < PARTITION_BUDGET, || format!("took {t:?}"))?;
    Ok(format!("{count} (n, m, c) triples in {:.1} s", t.as_secs_f64()))
}

/// Signed Stirling numbers of the first kind from `s(n+1,k) = s(n,k−1) − n s(n,k)`.
fn stirling_oracle(max: usize) -> Vec<Vec<BigInt>> {
    let mut s = vec![vec![BigInt::zero(); max + 1]; max + 1];
    s[0][0] = BigInt::one();
    for n in 0..max {
        for k in 0..=n + 1 {
            let prev = if k > 0 { s[n][k - 1].clone() } else { BigInt::zero() };
            s[n + 1][k] = prev - BigInt::from(n) * &s[n][k];
        }
    }
    s
}

fn fact(n: u32) -> Rational {
    (1..=n).fold(int(1), |a, i| a * int(i as i64))
}

fn c5() -> Check {
    const MAX: u32 = 8;
    let st = stirling_oracle(MAX as usize);
    for r in 1..=6i64 {
        for j in 0..=MAX {
            for t in 0..=j {
                // definition, from an independent Stirling table
                let mut want = Rational::zero();
                for l in t..=j {
                    let b = fact(l) / (fact(t) * fact(l - t));
                    want += Rational::from_integer(st[j as usize][l as usize].clone()) / fact(j)
                        * b
                        * num_traits::pow(int(1 - r), (l - t) as usize);
                }
                ensure(coeff_a(j, r, t) == want, || format!("A({j},{r},{t})"))?;
                if j < MAX {
                    let rhs = int(j as i64 + 1) * coeff_a(j + 1, r, t + 1) + int(r + j as i64 - 1) * coeff_a(j, r, t + 1);
                    ensure(coeff_a(j, r, t) == rhs, || format!("A recurrence at ({j},{r},{t})"))?;
                }
            }
        }
        for k in 1..MAX {
            for t in 0..=k {
                let kk = int(k as i64 + 1);
                let rhs = (int(k as i64 + 1 - r) / &kk) * coeff_c(k, r, t + 1) + coeff_c(k, r, t) / &kk;
                ensure(coeff_c(k + 1, r, t + 1) == rhs, || format!("C recurrence at ({k},{r},{t})"))?;
            }
        }
        for j in 1..=MAX {
            let sum: Rational = (1..=j).map(|t| coeff_a(j, r, t)).fold(Rational::zero(), |a, b| a + b);
            let prod = (0..j as i64 - 1).fold(int(1), |a, i| a * int(r - 1 + i));
            let want = if j % 2 == 1 { prod } else { -prod } / fact(j - 1);
            ensure(sum == want, || format!("A row sum j={j} r={r}: {sum} vs {want}"))?;
            let sum: Rational = (1..=j).map(|t| coeff_c(j, r, t)).fold(Rational::zero(), |a, b| a + b);
            let prod = (2..=j as i64).fold(int(1), |a, i| a * int(r - i));
            let want = if j % 2 == 1 { prod } else { -prod } / fact(j - 1);
            ensure(sum == want, || format!("C row sum k={j} r={r}: {sum} vs {want}"))?;
            ensure(coeff_c(j, r, j) == int(1) / fact(j), || format!("C({j},{r},{j})"))?;
        }
    }
    for k in 1..=MAX {
        let s: Rational = (1..=k).map(|t| coeff_small_a(k, t)).fold(Rational::zero(), |a, b| a + b);
        ensure(s.is_one(), || format!("sum_t a({k},t) = {s}"))?;
    }
    for j in 2..=MAX as usize {
        let s: BigInt = st[j].iter().sum();
        ensure(s.is_zero(), || format!("sum_t s({j},t) = {s}"))?;
    }
    Ok(format!("indices <= {MAX}, r <= 6"))
}

fn c6() -> Check {
    let o = CHAIN_ORDER;
    let mut jobs = Vec::new();
    let with = |extra: Vec<(&'static str, String)>, base: &[(&'static str, &str)]| {
        let mut v: Vec<(&str, String)> = base.iter().map(|(k, x)| (*k, x.to_string())).collect();
        v.extend(extra);
        v
    };
    let formal_a = [("a", "formal"), ("c", "1/2")];
    jobs.extend(entries("lemma5", o, &(1..=6).map(|r| with(vec![("r", r.to_string())], &formal_a)).collect::<Vec<_>>()));
    jobs.extend(entries("lemma6", o, &(1..=5).map(|i| with(vec![("i", i.to_string())], &formal_a)).collect::<Vec<_>>()));
    jobs.extend(entries("lemma7", o, &(1..=6).map(|r| with(vec![("r", r.to_string())], &formal_a)).collect::<Vec<_>>()));
    jobs.extend(entries("t-deriv", o, &(1..=4).map(|r| with(vec![("r", r.to_string())], &formal_a)).collect::<Vec<_>>()));
    for c in ["1/3", "-1/4"] {
        let b: Vec<_> = (1..=4).map(|k| vec![("a", "formal".to_string()), ("c", c.to_string()), ("k", k.to_string())]).collect();
        jobs.extend(entries("gk-pk-2var", o, &b));
        let b: Vec<_> = (1..=4).map(|k| vec![("c", c.to_string()), ("k", k.to_string())]).collect();
        jobs.extend(entries("gk-pk-2var-c", o, &b));
    }
    jobs.extend(entries("acs-pk", o, &ints("k", 1..=4)));
    jobs.extend(entries("gk-pk", o, &(1..=4).map(|k| vec![("a", "formal".to_string()), ("k", k.to_string())]).collect::<Vec<_>>()));
    let n = run_all(&jobs)?;
    Ok(format!("{n} checks at Nq=Nt={o}, including the a -> 0 and c = 1 slices"))
}

fn c7() -> Check {
    for n in 1..=4 {
        for p in [rat(1, 2), rat(1, 3), rat(3, 7)] {
            let m = DagModel::new(n, p.clone()).map_err(|e| e.to_string())?;
            let e = dag_enumerate_exact(&m).map_err(|e| e.to_string())?;
            ensure(dag_pmf_table(&m) == e, || format!("n={n} p={p}"))?;
        }
    }
    for n in 1..=30 {
        for p in [rat(1, 2), rat(1, 3), rat(3, 7)] {
            let m = DagModel::new(n, p.clone()).map_err(|e| e.to_string())?;
            let s: Rational = dag_pmf_table(&m).into_iter().fold(Rational::zero(), |a, b| a + b);
            ensure(s.is_one(), || format!("pmf sum n={n} p={p}: {s}"))?;
        }
    }
    Ok("closed form = enumeration for n <= 4; pmf sums to 1 for n <= 30".into())
}

/// `Σ_k k^{m−1} q^k/(1 − q^k)`, summed directly.
fn lambert(m: u32, q: f64) -> f64 {
    (1..4000).map(|k| (k as f64).powi(m as i32 - 1) * q.powi(k) / (1.0 - q.powi(k))).sum()
}

fn c8() -> Check {
    let k1 = lambert(1, 0.5);
    let k2 = lambert(2, 0.5);
    let exact = rational_to_f64(&dag_mean_deficit(&DagModel::new(30, rat(1, 2)).unwrap())).unwrap();
    ensure((exact - k1).abs() < EXACT_GAP_TOL, || format!("E(30 - gamma) = {exact}, limit {k1}"))?;

    let model = DagModel::new(DAG_N, rat(1, 2)).unwrap();
    let s = dag_sample(&model, DAG_SEED, DAG_TRIALS).map_err(|e| e.to_string())?.deficit_stats();
    let zm = (s.mean - k1) / s.se_mean;
    let zv = (s.variance - k2) / s.se_variance;
    ensure(zm.abs() <= MEAN_BAND && zv.abs() <= VAR_BAND, || format!("dag z(mean) = {zm:.2}, z(var) = {zv:.2}"))?;

    let mut zs = Vec::new();
    for q in [0.3, 0.5] {
        let h = heap_sample(q, HEAP_SEED, HEAP_TRIALS).map_err(|e| e.to_string())?.stats;
        let est = [(h.mean, h.se_mean), (h.variance, h.se_variance), (h.k3, h.se_k3)];
        let tab = HeapDistribution::new(q).unwrap().cumulants();
        for (m, (v, se)) in est.into_iter().enumerate() {
            let km = lambert(m as u32 + 1, q);
            ensure((tab[m] - km).abs() < 1e-8, || format!("heap pmf cumulant {} at q={q}", m + 1))?;
            let z = (v - km) / se;
            ensure(z.abs() <= HEAP_BAND, || format!("heap q={q} K_{}: z = {z:.2}", m + 1))?;
            zs.push(z.abs());
        }
    }
    let zmax = zs.iter().cloned().fold(0.0, f64::max);
    Ok(format!("gap at n=30 {:.1e}; dag z = {zm:.2}/{zv:.2}; heap max |z| = {zmax:.2}", (exact - k1).abs()))
}

fn poly(c: &[i64]) -> SequenceF {
    SequenceF::Polynomial(c.iter().map(|&x| int(x)).collect())
}

fn periodic(c: &[i64]) -> SequenceF {
    SequenceF::Periodic(c.iter().map(|&x| int(x)).collect())
}

fn c9() -> Check {
    let mut cfgs = Vec::new();
    for f in [poly(&[1]), poly(&[0, 1]), poly(&[0, 0, 1])] {
        cfgs.push(LimitConfig::new(LimitMode::AcsPoly, f.clone(), LIMIT_ORDER));
        cfgs.push(LimitConfig::new(LimitMode::TwoVarPoly, f, LIMIT_ORDER));
    }
    for b in [int(-1), rat(1, 2)] {
        cfgs.push(LimitConfig::new(LimitMode::GeometricB, SequenceF::Geometric(b), LIMIT_ORDER));
    }
    for f in [periodic(&[1, -1]), periodic(&[1, 0, -1])] {
        for mode in [LimitMode::Periodic, LimitMode::Ceiling] {
            for a in [false, true] {
                cfgs.push(LimitConfig::new(mode, f.clone(), LIMIT_ORDER).with_a_formal(a));
            }
        }
    }
    let mut relaxed = 0;
    for mut cfg in cfgs {
        // the closed forms hold without a·f(1) = 0; only the intermediate T(a,q,q) step needs it
        if cfg.a_formal && !cfg.f.at(1).is_zero() {
            cfg.check_hypothesis = false;
            relaxed += 1;
        }
        let rep = limit_verify(&cfg).map_err(|e| format!("{} {}: {e}", cfg.mode, cfg.f))?;
        ensure(rep.passed(), || rep.summary())?;
    }
    let cfg = LimitConfig::new(LimitMode::GeometricB, SequenceF::Geometric(int(-1)), GEOMETRIC_ORDER);
    let (_, s) = limit_series(&cfg).map_err(|e| e.to_string())?;
    let want: Vec<Rational> = (0..=GEOMETRIC_ORDER)
        .map(|n| {
            let r = (n as f64).sqrt() as u32;
            if n > 0 && r * r == n {
                int(if r % 2 == 1 { -1 } else { 1 })
            } else {
                int(0)
            }
        })
        .collect();
    ensure(s.q_coeffs() == want, || format!("b = -1 gives {s}"))?;
    // f(n) = (−1)ⁿ as a periodic pattern with a formal, a-degree 0, against b = −1
    let per = LimitConfig::new(LimitMode::Periodic, periodic(&[-1, 1]), GEOMETRIC_ORDER).with_a_formal(true);
    let per = LimitConfig { check_hypothesis: false, ..per };
    let (_, s2) = limit_series(&per).map_err(|e| e.to_string())?;
    let slice: QSeries = s2.coefficient("a", 0).map_err(|e| e.to_string())?;
    ensure(slice.q_coeffs() == want, || "periodic a^0 slice differs from b = -1".into())?;
    Ok(format!("all modes exact to Nq={LIMIT_ORDER}; {relaxed} formal-a runs with f(1) != 0"))
}

fn admitted(names: usize, nq: u32, nt: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for e0 in 0..=nq {
        match names {
            1 => out.push(vec![e0]),
            2 => (0..=nt - e0).for_each(|e1| out.push(vec![e0, e1])),
            _ => {
                for e1 in 0..=nt - e0 {
                    (0..=nt - e0 - e1).for_each(|e2| out.push(vec![e0, e1, e2]));
                }
            }
        }
    }
    out
}

fn c10() -> Check {
    let jobs: Vec<SuiteEntry> = {
        let mut v: Vec<SuiteEntry> = full_default_suite()
            .into_iter()
            .filter(|j| !find_identity(&j.id).unwrap().expected_fail)
            .map(|mut j| {
                j.binding.nq = PERTURB_ORDER;
                j.binding.nt = PERTURB_ORDER;
                j
            })
            .collect();
        v.dedup();
        v
    };
    let config = Config { cases: PERTURBATIONS, failure_persistence: None, ..Config::default() };
    let mut runner = TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha));
    let strategy = (0..jobs.len(), 0usize..3, any::<prop::sample::Index>(), -5i64..=5, 1i64..=4)
        .prop_filter("nonzero shift", |t| t.3 != 0);
    let result = runner.run(&strategy, |(j, side, at, num, den)| {
        let job = &jobs[j];
        let d = find_identity(&job.id).unwrap();
        let side = d.sides[side % d.sides.len()];
        let mut s = build_side(&job.id, side, &job.binding).unwrap();
        let spec = s.spec().clone();
        let monos = admitted(spec.nvars(), spec.nq(), spec.nt());
        let e = at.get(&monos).clone();
        let c = s.coeff(&e) + rat(num, den);
        s.set_coeff(&e, c).unwrap();
        let rep = verify_with_side(&job.id, &job.binding, side, &s).unwrap();
        let want: Vec<(String, u32)> = spec.names().iter().cloned().zip(e.iter().copied()).collect();
        match rep.outcome {
            Outcome::Fail { monomial, .. } => prop_assert_eq!(monomial, want, "{} {}", job.id, side),
            Outcome::Pass => prop_assert!(false, "{} {} missed the perturbation at {:?}", job.id, side, e),
        }
        Ok(())
    });
    match result {
        Ok(()) => Ok(format!("{PERTURBATIONS} random one-coefficient perturbations localized exactly")),
        Err(TestError::Fail(why, case)) => Err(format!("{why} at {case:?}")),
        Err(e) => Err(e.to_string()),
    }
}

fn main() -> ExitCode {
    let criteria: [(u32, &str, fn() -> Check); 10] = [
        (1, "identity regression", c1),
        (2, "three-way consistency", c2),
        (3, "unification", c3),
        (4, "partition-divisor family", c4),
        (5, "coefficient tables", c5),
        (6, "constructive P_k chain", c6),
        (7, "DAG exactness", c7),
        (8, "stochastic limits", c8),
        (9, "limit theorems", c9),
        (10, "error localization", c10),
    ];
    let mut failed = 0;
    for (n, name, f) in criteria {
        let start = Instant::now();
        let r = f();
        let secs = start.elapsed().as_secs_f64();
        match r {
            Ok(detail) => println!("criterion {n:>2} {name:<26} PASS  {detail} [{secs:.1} s]"),
            Err(why) => {
                failed += 1;
                println!("criterion {n:>2} {name:<26} FAIL  {why} [{secs:.1} s]");
            }
        }
    }
    println!("{} of 10 criteria passed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
