//! Run records, the CSV table and the run metadata file.

use std::cmp::Ordering;
use std::fmt::Write as _;

use serde::Deserialize;
use sha2::{Digest, Sha256};

use crate::config::Config;
use crate::BenchError;

pub const HEADER: [&str; 14] = [
    "experiment",
    "graph_class",
    "n",
    "seed",
    "weight_type",
    "alpha",
    "beta",
    "k",
    "algorithm",
    "num_interventions",
    "total_weight",
    "generalized_cost",
    "phases",
    "wall_time_ms",
];

#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct RunRecord {
    pub experiment: String,
    pub graph_class: String,
    pub n: usize,
    pub seed: u64,
    pub weight_type: String,
    pub alpha: f64,
    pub beta: f64,
    pub k: usize,
    pub algorithm: String,
    pub num_interventions: usize,
    pub total_weight: f64,
    pub generalized_cost: f64,
    pub phases: usize,
    pub wall_time_ms: f64,
}

/// Sort key: experiment, n, seed, algorithm, then the remaining run
/// parameters so the order is total.
pub fn row_order(a: &RunRecord, b: &RunRecord) -> Ordering {
    a.experiment
        .cmp(&b.experiment)
        .then(a.n.cmp(&b.n))
        .then(a.seed.cmp(&b.seed))
        .then(a.algorithm.cmp(&b.algorithm))
        .then(a.weight_type.cmp(&b.weight_type))
        .then(a.alpha.total_cmp(&b.alpha))
        .then(a.beta.total_cmp(&b.beta))
        .then(a.k.cmp(&b.k))
}

/// `printf("%g")`: six significant digits, trailing zeros dropped,
/// exponent form below 1e-4 and from 1e6 on.
pub fn fmt_g(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    let sci = format!("{x:.5e}");
    let (mant, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..6).contains(&exp) {
        let mant = trim_zeros(mant);
        let sign = if exp < 0 { '-' } else { '+' };
        return format!("{mant}e{sign}{:02}", exp.abs());
    }
    trim_zeros(&format!("{x:.*}", (5 - exp) as usize))
}

fn trim_zeros(s: &str) -> String {
    if !s.contains('.') {
        return s.to_string();
    }
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

fn fields(r: &RunRecord) -> [String; 14] {
    [
        r.experiment.clone(),
        r.graph_class.clone(),
        r.n.to_string(),
        r.seed.to_string(),
        r.weight_type.clone(),
        fmt_g(r.alpha),
        fmt_g(r.beta),
        r.k.to_string(),
        r.algorithm.clone(),
        r.num_interventions.to_string(),
        fmt_g(r.total_weight),
        fmt_g(r.generalized_cost),
        r.phases.to_string(),
        fmt_g(r.wall_time_ms),
    ]
}

/// The CSV text. Without `with_time` the last column is dropped, which is
/// the form the determinism hash is taken over.
pub fn to_csv(rows: &[RunRecord], with_time: bool) -> Result<String, BenchError> {
    let keep = if with_time { 14 } else { 13 };
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&HEADER[..keep])?;
    for r in rows {
        w.write_record(&fields(r)[..keep])?;
    }
    let bytes = w.into_inner().map_err(|e| BenchError::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv fields are utf-8"))
}

pub fn read_csv(text: &str) -> Result<Vec<RunRecord>, BenchError> {
    let mut rd = csv::Reader::from_reader(text.as_bytes());
    let header: Vec<String> = rd.headers()?.iter().map(str::to_string).collect();
    if header != HEADER {
        return Err(BenchError::Config("unexpected CSV header".into()));
    }
    rd.deserialize().map(|r| r.map_err(BenchError::from)).collect()
}

/// Hex SHA-256 of the CSV without its time column.
pub fn determinism_hash(rows: &[RunRecord]) -> Result<String, BenchError> {
    let digest = Sha256::digest(to_csv(rows, false)?.as_bytes());
    Ok(digest.iter().map(|b| format!("{b:02x}")).collect())
}

/// Metadata: the config, seeds, the fixed knobs of the artifact and the
/// determinism hash, as `key = value` lines.
pub fn metadata(cfg: &Config, rows: &[RunRecord], threads: Option<usize>) -> Result<String, BenchError> {
    let mut s = String::new();
    let _ = writeln!(s, "# run configuration");
    s.push_str(&cfg.to_kv());
    let _ = writeln!(s, "# artifact");
    let _ = writeln!(s, "version = {}", env!("CARGO_PKG_VERSION"));
    let _ = writeln!(s, "rows = {}", rows.len());
    let _ = writeln!(s, "threads = {}", threads.map_or("all".to_string(), |t| t.to_string()));
    let _ = writeln!(s, "csv_sha256_without_time = {}", determinism_hash(rows)?);
    let _ = writeln!(s, "rng = splitmix64, state = seed");
    let _ = writeln!(s, "instance_seed = mix(mix(mix(base_seed, experiment), n), index)");
    let _ = writeln!(s, "weight_seed = mix(instance_seed, 1)");
    let _ = writeln!(s, "random_baseline_seed = mix(instance_seed, 2)");
    let _ = writeln!(s, "type1_weights = exponential, rate n^2 (mean 1/n^2), inverse cdf");
    let _ = writeln!(s, "type2_weights = ceil(p n) vertices weigh n^2, rest 1");
    let _ = writeln!(s, "tie_break = lowest vertex id");
    let _ = writeln!(s, "generalized_partition = sorted id chunks of size k");
    let _ = writeln!(s, "separator = clique tree walk, component bound floor(n/2)");
    let _ = writeln!(s, "atomic_only_algorithms_run_at = k 1");
    let _ = writeln!(
        s,
        "lower_bound_family = empty, singletons, pairs if n <= 10, all subsets if n <= 10 and 2^n <= budget"
    );
    let _ = writeln!(s, "lower_bound_is = under-approximation of the max over all atomic intervention sets");
    let _ = writeln!(s, "plot_log_floor = 1e-3");
    let _ = writeln!(s, "path_phase_cap = {}", crate::PATH_PHASE_CAP);
    let _ = writeln!(s, "path_intervention_cap = {}", crate::PATH_INTERVENTION_CAP);
    let _ = writeln!(
        s,
        "path_reference_run = {} phases, {} interventions",
        crate::PATH_REFERENCE.0,
        crate::PATH_REFERENCE.1
    );
    Ok(s)
}
