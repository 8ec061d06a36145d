use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use qdivisor::combinatorics::divisor_sigma;
use qdivisor::identities::{
    build_side, default_param_suite, find_identity, list_identities, parse_suite_file, run_checks, IdentityError,
    ParamBinding, ParamValue, SuiteEntry,
};
use qdivisor::partitions::partition_divisor_sum;
use qdivisor::scalar::{format_rational, parse_rational, rational_to_f64};
use qdivisor::stochastic::{
    cumulant_limit, dag_pmf_table, dag_sample, heap_sample, limit_verify, DagModel, HeapDistribution, LimitConfig,
    LimitMode, SampleStats, SequenceF,
};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_IO: u8 = 3;

#[derive(Parser)]
#[command(name = "qdivisor", version, about = "Exact checks of divisor-generating q-series identities")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Verify identities over their default suites or a suite file.
    Verify(VerifyArgs),
    /// Print the coefficients of one side, given as `id/side`.
    Series(SeriesArgs),
    /// Run a Monte Carlo model against its exact and limiting values.
    Simulate(SimulateArgs),
    /// Compare partition sums with divisor sums over a grid.
    Partitions(PartitionsArgs),
    /// Run a limit recurrence to stabilization and check its closed form.
    Limit(LimitArgs),
    /// Merge JSON reports into one array and summarize them.
    Report(ReportArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Identity ids, or `all`.
    #[arg(long, num_args = 1.., default_value = "all")]
    suite: Vec<String>,
    /// Suite file with one `id key=value ... nq=N nt=N` check per line.
    #[arg(long)]
    file: Option<PathBuf>,
    /// Sets Nq = Nt for every check.
    #[arg(long)]
    order: Option<u32>,
    /// Overrides Nt after --order.
    #[arg(long)]
    nt: Option<u32>,
    /// `key=value` bindings; replaces the default suite with one check per id.
    #[arg(long, num_args = 1..)]
    params: Vec<String>,
    /// Also write the JSON records to this file
    #[arg(long)]
    json: Option<PathBuf>,
    /// Only print failures and the summary line.
    #[arg(long)]
    quiet: bool,
}

#[derive(Args)]
struct SeriesArgs {
    /// `id/side`, e.g. `kluyver/divisor`.
    target: String,
    #[arg(long, default_value_t = 10)]
    order: u32,
    #[arg(long)]
    nt: Option<u32>,
    #[arg(long, num_args = 1..)]
    params: Vec<String>,
    /// Also write the JSON records to this file
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct SimulateArgs {
    /// `dag` or `heap`.
    kind: String,
    #[arg(long, default_value_t = 12)]
    n: u32,
    /// Edge probability for `dag`, as `p/q` or a decimal.
    #[arg(long, default_value = "1/2")]
    p: String,
    /// Heap parameter in (0, 1).
    #[arg(long, default_value = "1/2")]
    q: String,
    #[arg(long, default_value_t = 100_000)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Also write the JSON records to this file
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct PartitionsArgs {
    #[arg(long, default_value_t = 40)]
    max_n: u32,
    #[arg(long, default_value_t = 4)]
    max_m: u32,
    /// Comma-separated values of c.
    #[arg(long, default_value = "1,1/2,-1/3", allow_hyphen_values = true)]
    c: String,
    /// Also write the JSON records to this file
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct LimitArgs {
    /// acs-poly, two-var-poly, periodic, geometric-b or ceiling.
    mode: String,
    /// `poly:c0,c1,...`, `periodic:f1,...,fN` or `geometric:b`.
    #[arg(long, allow_hyphen_values = true)]
    f: String,
    /// `formal` or `0`; defaults to formal only for two-var-poly.
    #[arg(long)]
    a: Option<String>,
    #[arg(long, default_value_t = 20)]
    order: u32,
    /// Skip the a·f(1) = 0 check.
    #[arg(long)]
    unchecked: bool,
    /// Also write the JSON records to this file
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct ReportArgs {
    inputs: Vec<PathBuf>,
    /// Also write the JSON records to this file
    #[arg(long)]
    json: Option<PathBuf>,
}

enum Failure {
    Usage(String),
    Io(String),
}

impl From<IdentityError> for Failure {
    fn from(e: IdentityError) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Res<T> = Result<T, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn write_json(path: &Option<PathBuf>, records: &[Value]) -> Res<()> {
    if let Some(p) = path {
        let text = serde_json::to_string_pretty(records).expect("json");
        fs::write(p, text + "\n").map_err(|e| Failure::Io(format!("{}: {e}", p.display())))?;
    }
    Ok(())
}

fn parse_params(items: &[String], nq: u32, nt: u32) -> Res<ParamBinding> {
    let mut b = ParamBinding::new(nq, nt);
    for item in items {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| usage(format!("expected key=value, got `{item}`")))?;
        let v = ParamValue::parse(v).map_err(|e| usage(format!("{k}: {e}")))?;
        b.set(k, v);
    }
    Ok(b)
}

fn selected_ids(suite: &[String]) -> Res<Vec<String>> {
    if suite.iter().any(|s| s == "all") {
        return Ok(list_identities().iter().map(|d| d.id.to_string()).collect());
    }
    for id in suite {
        find_identity(id)?;
    }
    Ok(suite.to_vec())
}

fn plan_verify(a: &VerifyArgs) -> Res<Vec<SuiteEntry>> {
    let mut jobs = if let Some(path) = &a.file {
        let text = fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
        parse_suite_file(&text)?
    } else {
        let ids = selected_ids(&a.suite)?;
        let mut jobs = Vec::new();
        for id in ids {
            if a.params.is_empty() {
                jobs.extend(default_param_suite(&id)?);
            } else {
                let b = parse_params(&a.params, 20, 20)?;
                jobs.push(SuiteEntry { id, binding: b });
            }
        }
        jobs
    };
    for j in &mut jobs {
        if let Some(n) = a.order {
            j.binding.nq = n;
            j.binding.nt = n;
        }
        if let Some(n) = a.nt {
            j.binding.nt = n;
        }
        j.binding = find_identity(&j.id)?.normalize(&j.binding)?;
    }
    // stable sort keeps binding order within an id; overrides can make bindings coincide
    jobs.sort_by(|x, y| x.id.cmp(&y.id));
    jobs.dedup();
    Ok(jobs)
}

fn cmd_verify(a: VerifyArgs) -> Res<u8> {
    let jobs = plan_verify(&a)?;
    let start = Instant::now();
    let results = run_checks(&jobs);
    let mut records = Vec::new();
    let (mut pass, mut fail, mut info) = (0, 0, 0);
    for (job, r) in jobs.iter().zip(results) {
        match r {
            Ok(rep) => {
                if rep.expected_fail {
                    info += 1;
                } else if rep.passed() {
                    pass += 1;
                } else {
                    fail += 1;
                }
                if !a.quiet || rep.is_failure() {
                    println!("{}", rep.summary());
                }
                records.push(rep.to_json());
            }
            Err(e) => {
                fail += 1;
                println!("{:<30} {:<28} ERROR {e}", job.id, job.binding.describe());
                records.push(json!({
                    "command": "verify",
                    "id": job.id,
                    "params": job.binding.params_json(),
                    "nq": job.binding.nq,
                    "nt": job.binding.nt,
                    "outcome": "error",
                    "error": e.to_string(),
                    "millis": 0,
                }));
            }
        }
    }
    println!(
        "{} checks: {pass} passed, {fail} failed, {info} informational ({:.1} s)",
        jobs.len(),
        start.elapsed().as_secs_f64()
    );
    write_json(&a.json, &records)?;
    Ok(if fail == 0 { 0 } else { EXIT_FAIL })
}

fn cmd_series(a: SeriesArgs) -> Res<u8> {
    let (id, side) = a
        .target
        .split_once('/')
        .ok_or_else(|| usage("target must be id/side"))?;
    let b = parse_params(&a.params, a.order, a.nt.unwrap_or(a.order))?;
    let start = Instant::now();
    let s = build_side(id, side, &b)?;
    println!("{s}");
    let b = find_identity(id)?.normalize(&b)?;
    write_json(
        &a.json,
        &[json!({
            "command": "series",
            "id": id,
            "side": side,
            "params": b.params_json(),
            "nq": b.nq,
            "nt": b.nt,
            "outcome": "ok",
            "series": s.to_json(),
            "millis": start.elapsed().as_millis() as u64,
        })],
    )?;
    Ok(0)
}

struct Row {
    name: &'static str,
    empirical: f64,
    se: f64,
    exact: f64,
    limit: f64,
    band: f64,
}

impl Row {
    fn z(&self) -> f64 {
        (self.empirical - self.exact) / self.se
    }

    fn ok(&self) -> bool {
        self.z().abs() <= self.band
    }

    fn print(&self) {
        println!(
            "{:<10} {:>12.6} {:>10.6} {:>12.6} {:>7.2} {:>5} {:>12.6} {:>10.2e}",
            self.name,
            self.empirical,
            self.se,
            self.exact,
            self.z(),
            if self.ok() { "ok" } else { "OUT" },
            self.limit,
            self.exact - self.limit
        );
    }

    fn json(&self) -> Value {
        json!({
            "empirical": self.empirical,
            "se": self.se,
            "exact": self.exact,
            "z": self.z(),
            "band": self.band,
            "limit": self.limit,
        })
    }
}

fn header() {
    println!(
        "{:<10} {:>12} {:>10} {:>12} {:>7} {:>5} {:>12} {:>10}",
        "statistic", "empirical", "se", "exact", "z", "band", "limit", "exact-lim"
    );
}

fn stat_rows(s: &SampleStats, exact: [f64; 3], limit: [f64; 3]) -> Vec<Row> {
    vec![
        Row { name: "mean", empirical: s.mean, se: s.se_mean, exact: exact[0], limit: limit[0], band: 4.0 },
        Row { name: "variance", empirical: s.variance, se: s.se_variance, exact: exact[1], limit: limit[1], band: 5.0 },
        Row { name: "k3", empirical: s.k3, se: s.se_k3, exact: exact[2], limit: limit[2], band: 5.0 },
    ]
}

fn cumulants_of(values: &[f64], probs: &[f64]) -> [f64; 3] {
    let m = |k: i32| values.iter().zip(probs).map(|(v, p)| v.powi(k) * p).sum::<f64>();
    let (m1, m2, m3) = (m(1), m(2), m(3));
    [m1, m2 - m1 * m1, m3 - 3.0 * m1 * m2 + 2.0 * m1 * m1 * m1]
}

fn limits(q: f64) -> Res<[f64; 3]> {
    let k = |m| cumulant_limit(m, q).map_err(|e| usage(e.to_string()));
    Ok([k(1)?, k(2)?, k(3)?])
}

fn cmd_simulate(a: SimulateArgs) -> Res<u8> {
    let start = Instant::now();
    let (rows, mut record) = match a.kind.as_str() {
        "dag" => {
            let p = parse_rational(&a.p).or_else(|_| decimal(&a.p)).map_err(|_| usage("bad --p"))?;
            let model = DagModel::new(a.n, p).map_err(|e| usage(e.to_string()))?;
            let batch = dag_sample(&model, a.seed, a.trials).map_err(|e| usage(e.to_string()))?;
            let values: Vec<f64> = (0..a.n).map(|i| (a.n - 1 - i) as f64).collect();
            let probs: Vec<f64> = dag_pmf_table(&model).iter().map(|r| rational_to_f64(r).unwrap_or(f64::NAN)).collect();
            let q = 1.0 - batch.p;
            println!("dag n={} p={} seed={} trials={}; statistics of n - gamma", a.n, format_rational(&model.p), a.seed, a.trials);
            let rows = stat_rows(&batch.deficit_stats(), cumulants_of(&values, &probs), limits(q)?);
            let rec = json!({
                "command": "simulate",
                "id": "dag",
                "params": { "n": a.n, "p": format_rational(&model.p), "seed": a.seed, "trials": a.trials },
                "histogram": batch.histogram,
            });
            (rows, rec)
        }
        "heap" => {
            let q = parse_rational(&a.q)
                .ok()
                .and_then(|r| rational_to_f64(&r))
                .or_else(|| a.q.parse::<f64>().ok())
                .ok_or_else(|| usage("bad --q"))?;
            let dist = HeapDistribution::new(q).map_err(|e| usage(e.to_string()))?;
            let sample = heap_sample(q, a.seed, a.trials as usize).map_err(|e| usage(e.to_string()))?;
            println!("heap q={q} seed={} trials={}", a.seed, a.trials);
            let lim = limits(q)?;
            let rows = stat_rows(&sample.stats, dist.cumulants(), lim);
            let mut hist = vec![0u64; dist.pmf.len()];
            for &s in &sample.samples {
                hist[s as usize] += 1;
            }
            let rec = json!({
                "command": "simulate",
                "id": "heap",
                "params": { "q": q, "seed": a.seed, "trials": a.trials },
                "histogram": hist,
            });
            (rows, rec)
        }
        other => return Err(usage(format!("unknown model {other:?}; expected dag or heap"))),
    };
    header();
    rows.iter().for_each(Row::print);
    let ok = rows.iter().all(Row::ok);
    println!("{}", if ok { "all statistics within their bands" } else { "some statistics outside their bands" });
    record["nq"] = Value::Null;
    record["nt"] = Value::Null;
    record["outcome"] = json!(if ok { "pass" } else { "fail" });
    record["statistics"] = rows.iter().map(|r| (r.name.to_string(), r.json())).collect::<serde_json::Map<_, _>>().into();
    record["millis"] = json!(start.elapsed().as_millis() as u64);
    write_json(&a.json, &[record])?;
    Ok(if ok { 0 } else { EXIT_FAIL })
}

/// Exact value of a finite decimal such as `0.25`.
fn decimal(text: &str) -> Result<qdivisor::Rational, ()> {
    let (int, frac) = text.trim().split_once('.').ok_or(())?;
    if !frac.chars().all(|c| c.is_ascii_digit()) {
        return Err(());
    }
    let digits = format!("{int}{frac}");
    let den = format!("1{}", "0".repeat(frac.len()));
    parse_rational(&format!("{digits}/{den}")).map_err(|_| ())
}

fn cmd_partitions(a: PartitionsArgs) -> Res<u8> {
    let cs = a
        .c
        .split(',')
        .map(parse_rational)
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| usage(format!("--c: {e}")))?;
    let mut records = Vec::new();
    let mut bad = 0;
    for c in &cs {
        for m in 0..=a.max_m {
            let start = Instant::now();
            let mut mismatch = None;
            for n in 1..=a.max_n {
                let lhs = partition_divisor_sum(n, m as i32, c).map_err(|e| usage(e.to_string()))?;
                let rhs = divisor_sigma(m, c, n as u64).map_err(|e| usage(e.to_string()))?;
                if lhs != rhs {
                    mismatch = Some((n, lhs, rhs));
                    break;
                }
            }
            let millis = start.elapsed().as_millis() as u64;
            let mut rec = json!({
                "command": "partitions",
                "id": "partition-divisor",
                "params": { "m": m, "c": format_rational(c), "max_n": a.max_n },
                "nq": a.max_n,
                "nt": a.max_n,
                "outcome": if mismatch.is_none() { "pass" } else { "fail" },
                "millis": millis,
            });
            match &mismatch {
                None => println!("m={m} c={:<6} n<={}: PASS", format_rational(c), a.max_n),
                Some((n, l, r)) => {
                    bad += 1;
                    println!("m={m} c={:<6} FAIL at n={n}: partitions={}, divisors={}", format_rational(c), format_rational(l), format_rational(r));
                    rec["mismatch"] = json!({
                        "monomial": { "q": n },
                        "coefficients": { "partitions": format_rational(l), "divisors": format_rational(r) },
                    });
                }
            }
            records.push(rec);
        }
    }
    write_json(&a.json, &records)?;
    Ok(if bad == 0 { 0 } else { EXIT_FAIL })
}

fn cmd_limit(a: LimitArgs) -> Res<u8> {
    let mode: LimitMode = a.mode.parse().map_err(|e: qdivisor::stochastic::StochasticError| usage(e.to_string()))?;
    let f: SequenceF = a.f.parse().map_err(|e: qdivisor::stochastic::StochasticError| usage(e.to_string()))?;
    let mut cfg = LimitConfig::new(mode, f, a.order);
    match a.a.as_deref() {
        None => {}
        Some("formal") => cfg = cfg.with_a_formal(true),
        Some("0") => cfg = cfg.with_a_formal(false),
        Some(x) => return Err(usage(format!("--a must be formal or 0, got {x:?}"))),
    }
    cfg.check_hypothesis = !a.unchecked;
    let rep = limit_verify(&cfg).map_err(|e| usage(e.to_string()))?;
    println!("{}", rep.summary());
    write_json(&a.json, &[rep.to_json()])?;
    Ok(if rep.mismatch.is_none() { 0 } else { EXIT_FAIL })
}

fn read_records(path: &Path) -> Res<Vec<Value>> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    let v: Value = serde_json::from_str(&text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    match v {
        Value::Array(items) => Ok(items),
        obj @ Value::Object(_) => Ok(vec![obj]),
        _ => Err(Failure::Io(format!("{}: expected a JSON array", path.display()))),
    }
}

fn cmd_report(a: ReportArgs) -> Res<u8> {
    if a.inputs.is_empty() {
        return Err(usage("report needs at least one input"));
    }
    let mut all = Vec::new();
    for p in &a.inputs {
        all.extend(read_records(p)?);
    }
    let mut fails = 0;
    let mut by_outcome = std::collections::BTreeMap::<String, usize>::new();
    for r in &all {
        let o = r["outcome"].as_str().unwrap_or("unknown").to_string();
        let expected = r["expected_fail"].as_bool().unwrap_or(false);
        if (o == "fail" || o == "error") && !expected {
            fails += 1;
            let id = r["id"].as_str().unwrap_or("?");
            println!("failing: {} {} {}", r["command"].as_str().unwrap_or("?"), id, r["params"]);
        }
        *by_outcome.entry(o).or_default() += 1;
    }
    let parts: Vec<String> = by_outcome.iter().map(|(k, v)| format!("{v} {k}")).collect();
    println!("{} records: {}", all.len(), parts.join(", "));
    write_json(&a.json, &all)?;
    Ok(if fails == 0 { 0 } else { EXIT_FAIL })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let r = match cli.cmd {
        Cmd::Verify(a) => cmd_verify(a),
        Cmd::Series(a) => cmd_series(a),
        Cmd::Simulate(a) => cmd_simulate(a),
        Cmd::Partitions(a) => cmd_partitions(a),
        Cmd::Limit(a) => cmd_limit(a),
        Cmd::Report(a) => cmd_report(a),
    };
    match r {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Io(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_IO)
        }
    }
}
