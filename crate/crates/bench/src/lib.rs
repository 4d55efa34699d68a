//! Experiment harness: instance matrices, the algorithm roster, CSV tables,
//! a metadata record and SVG charts.

pub mod config;
pub mod plot;
pub mod table;

use std::time::Instant;

use rayon::prelude::*;
use thiserror::Error;
use wcdag::gen::{gen_er_moral, gen_tree_like, weights_type1, weights_type2};
use wcdag::rng::{mix_seed, Rng};
use wcdag::search::{
    blackbox_combine, generalized_search, naive_search, random_baseline, separator_baseline, weighted_search,
    SearchReport,
};
use wcdag::verify::is_verifying_set;
use wcdag::{Dag, Simulator, WeightedInstance};

pub use config::{Algorithm, Config, GraphClass, WeightType};
pub use table::RunRecord;

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("config error: {0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] wcdag::Error),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("run failed for {context}: {source}")]
    Run { context: String, source: wcdag::Error },
}

/// Phase cap and intervention cap asserted for `weighted_search` on the
/// unit path with 1024 vertices.
pub const PATH_PHASE_CAP: usize = 22;
pub const PATH_INTERVENTION_CAP: usize = 100;
/// Phases and interventions of the reference run the caps were set from.
pub const PATH_REFERENCE: (usize, usize) = (10, 10);

/// Seed of the `index`-th instance with `n` vertices in experiment `label`.
pub fn instance_seed(base: u64, label: &str, n: usize, index: usize) -> u64 {
    let tag = label.bytes().fold(0u64, |h, b| h.wrapping_mul(31).wrapping_add(b as u64));
    mix_seed(mix_seed(mix_seed(base, tag), n as u64), index as u64)
}

/// Weights for an instance drawn with `seed`; shares the derivation used by
/// `bench gen` so both produce the same numbers.
pub fn weights_for(kind: WeightType, n: usize, p: f64, seed: u64) -> Result<Vec<f64>, BenchError> {
    let ws = mix_seed(seed, 1);
    Ok(match kind {
        WeightType::Type1 => weights_type1(n, ws),
        WeightType::Type2 => weights_type2(n, p, ws)?,
        WeightType::Unit => vec![1.0; n],
    })
}

/// Skeleton DAG of the configured class.
pub fn graph_for(cfg: &Config, n: usize, seed: u64) -> Result<Dag, BenchError> {
    Ok(match cfg.class {
        GraphClass::Er => gen_er_moral(n, cfg.rho, seed)?,
        GraphClass::Tree => gen_tree_like(n, cfg.degree, cfg.emin, cfg.emax, seed)?,
    })
}

/// Runs `algo` on a fresh simulator. `seed` drives the random baseline.
pub fn run_algorithm(algo: Algorithm, sim: &mut Simulator, seed: u64) -> wcdag::Result<SearchReport> {
    match algo {
        Algorithm::Weighted => weighted_search(sim),
        Algorithm::Generalized => generalized_search(sim),
        Algorithm::Separator => separator_baseline(sim),
        Algorithm::Naive => naive_search(sim),
        Algorithm::Random => random_baseline(sim, &mut Rng::new(mix_seed(seed, 2))),
        Algorithm::Blackbox => blackbox_combine(sim, weighted_search),
    }
}

struct Job {
    n: usize,
    seed: u64,
    weight_type: WeightType,
    alpha: f64,
    beta: f64,
    k: usize,
    algorithm: Algorithm,
}

/// Every row of the matrix, computed on a pool of `threads` workers (all
/// cores when `None`) and sorted by the table's key. Each row's ledger is
/// replayed against the ground truth before it is accepted.
pub fn run_experiment(cfg: &Config, threads: Option<usize>) -> Result<Vec<RunRecord>, BenchError> {
    cfg.validate()?;
    let mut jobs = Vec::new();
    for &n in &cfg.ns {
        for i in 0..cfg.seeds {
            let seed = instance_seed(cfg.base_seed, &cfg.experiment, n, i);
            for &weight_type in &cfg.weights {
                for &alpha in &cfg.alphas {
                    for &beta in &cfg.betas {
                        for &algorithm in &cfg.algorithms {
                            let ks: Vec<usize> = if algorithm.uses_k() { cfg.ks.clone() } else { vec![1] };
                            for k in ks {
                                jobs.push(Job { n, seed, weight_type, alpha, beta, k, algorithm });
                            }
                        }
                    }
                }
            }
        }
    }
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = threads {
        builder = builder.num_threads(t);
    }
    let pool = builder.build().map_err(|e| BenchError::Config(format!("thread pool: {e}")))?;
    let rows: Result<Vec<RunRecord>, BenchError> = pool.install(|| jobs.par_iter().map(|j| run_job(cfg, j)).collect());
    let mut rows = rows?;
    rows.sort_by(table::row_order);
    Ok(rows)
}

fn run_job(cfg: &Config, job: &Job) -> Result<RunRecord, BenchError> {
    let context = format!(
        "experiment {} n = {} seed = {} {} alpha = {} beta = {} k = {} {}",
        cfg.experiment,
        job.n,
        job.seed,
        job.weight_type.name(),
        job.alpha,
        job.beta,
        job.k,
        job.algorithm
    );
    let dag = graph_for(cfg, job.n, job.seed).map_err(|e| BenchError::Config(format!("{context}: {e}")))?;
    let w = weights_for(job.weight_type, job.n, cfg.p, job.seed)?;
    let inst = WeightedInstance::new(dag, w)?;
    let fail = |source| BenchError::Run { context: context.clone(), source };

    let mut sim = Simulator::new(inst.clone(), job.alpha, job.beta, job.k).map_err(fail)?;
    let start = Instant::now();
    let report = run_algorithm(job.algorithm, &mut sim, job.seed).map_err(fail)?;
    let wall = start.elapsed().as_secs_f64() * 1e3;

    if !sim.matches_truth() || !is_verifying_set(inst.dag(), &report.interventions) {
        let dump = wcdag::format::write_instance(&inst);
        return Err(fail(wcdag::Error::Invariant(format!("ledger does not verify; instance:\n{dump}"))));
    }
    Ok(RunRecord {
        experiment: cfg.experiment.clone(),
        graph_class: cfg.class.name().to_string(),
        n: job.n,
        seed: job.seed,
        weight_type: job.weight_type.name().to_string(),
        alpha: job.alpha,
        beta: job.beta,
        k: job.k,
        algorithm: job.algorithm.name().to_string(),
        num_interventions: sim.num_interventions(),
        total_weight: sim.total_weight(),
        generalized_cost: sim.total_cost(),
        phases: report.phases,
        wall_time_ms: wall,
    })
}

/// Thread count from `BENCH_THREADS`, if set to a positive integer.
pub fn threads_from_env() -> Option<usize> {
    std::env::var("BENCH_THREADS").ok()?.trim().parse().ok().filter(|&t| t > 0)
}

/// Median of a nonempty sample (mean of the middle pair for even sizes).
pub fn median(xs: &[f64]) -> Option<f64> {
    if xs.is_empty() {
        return None;
    }
    let mut v = xs.to_vec();
    v.sort_by(f64::total_cmp);
    let m = v.len() / 2;
    Some(if v.len() % 2 == 1 { v[m] } else { 0.5 * (v[m - 1] + v[m]) })
}
