use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use wcdag::format::{parse_instance, write_instance};
use wcdag::gen::{path_instance, star_instance};
use wcdag::verify::{atomic_verification_numbers, benchmark_max, lower_bound, zeta_terms};
use wcdag::{InterventionSet, WeightedInstance};
use wcdag_bench::plot::all_charts;
use wcdag_bench::table::{fmt_g, metadata, read_csv, to_csv};
use wcdag_bench::{
    graph_for, run_experiment, threads_from_env, weights_for, BenchError, Config, GraphClass, WeightType,
};

#[derive(Parser)]
#[command(
    name = "bench",
    version,
    about = "Instance generation, search experiments and bounds for weighted causal DAGs"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Write one instance in the wcdag/1 text format.
    Gen(GenArgs),
    /// Run an experiment matrix; writes results.csv, metadata.txt and charts.
    Run(Box<RunArgs>),
    /// Print verification numbers and the lower bound of an instance.
    Verify(VerifyArgs),
    /// Print the per-component lower-bound terms of an instance.
    Lb(LbArgs),
    /// Redraw charts from a results CSV.
    Plot(PlotArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum ClassArg {
    Er,
    Tree,
    Star,
    Path,
}

#[derive(Clone, Copy, ValueEnum)]
enum WeightArg {
    Type1,
    Type2,
    Unit,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    class: ClassArg,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0.1)]
    rho: f64,
    #[arg(long, default_value_t = 4)]
    degree: usize,
    #[arg(long, default_value_t = 2)]
    emin: usize,
    #[arg(long, default_value_t = 5)]
    emax: usize,
    #[arg(long, value_enum, default_value = "unit")]
    weights: WeightArg,
    #[arg(long, default_value_t = 0.1)]
    p: f64,
    /// Center weight of the star.
    #[arg(long, default_value_t = 1e9)]
    heavy: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RunArgs {
    /// Flat key = value config; flags below override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Preset 1 to 5, or a free label with --class and friends.
    #[arg(long)]
    experiment: Option<String>,
    #[arg(long)]
    class: Option<String>,
    /// Comma separated sizes.
    #[arg(long)]
    n: Option<String>,
    #[arg(long)]
    rho: Option<String>,
    #[arg(long)]
    seeds: Option<String>,
    #[arg(long)]
    base_seed: Option<String>,
    /// Comma separated weight types.
    #[arg(long)]
    weights: Option<String>,
    #[arg(long)]
    alpha: Option<String>,
    #[arg(long)]
    beta: Option<String>,
    #[arg(long)]
    k: Option<String>,
    #[arg(long)]
    algorithms: Option<String>,
    #[arg(long)]
    out: PathBuf,
    /// Linear instead of log10 cost axis.
    #[arg(long)]
    linear: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value_t = 1 << 12)]
    budget: usize,
}

#[derive(Args)]
struct LbArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value_t = 1.0)]
    alpha: f64,
    #[arg(long, default_value_t = 0.0)]
    beta: f64,
    #[arg(long, default_value_t = 1)]
    k: usize,
    #[arg(long, default_value_t = 1 << 12)]
    budget: usize,
}

#[derive(Args)]
struct PlotArgs {
    #[arg(long)]
    csv: PathBuf,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    linear: bool,
}

fn main() -> ExitCode {
    match run(Cli::parse().cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn run(cmd: Cmd) -> Result<(), BenchError> {
    match cmd {
        Cmd::Gen(a) => gen(a),
        Cmd::Run(a) => run_matrix(*a),
        Cmd::Verify(a) => verify(a),
        Cmd::Lb(a) => lb(a),
        Cmd::Plot(a) => plot(a),
    }
}

fn gen(a: GenArgs) -> Result<(), BenchError> {
    let inst = match a.class {
        ClassArg::Star => star_instance(a.n, a.heavy)?,
        ClassArg::Path => path_instance(a.n)?,
        ClassArg::Er | ClassArg::Tree => {
            let class = if matches!(a.class, ClassArg::Er) { GraphClass::Er } else { GraphClass::Tree };
            let cfg = Config { class, rho: a.rho, degree: a.degree, emin: a.emin, emax: a.emax, ..Config::preset(1)? };
            let kind = match a.weights {
                WeightArg::Type1 => WeightType::Type1,
                WeightArg::Type2 => WeightType::Type2,
                WeightArg::Unit => WeightType::Unit,
            };
            let dag = graph_for(&cfg, a.n, a.seed)?;
            WeightedInstance::new(dag, weights_for(kind, a.n, a.p, a.seed)?)?
        }
    };
    let text = write_instance(&inst);
    match a.out {
        Some(p) => fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn run_matrix(a: RunArgs) -> Result<(), BenchError> {
    let mut cfg = match &a.config {
        Some(p) => Config::parse(&fs::read_to_string(p)?)?,
        None => match a.experiment.as_deref().map(str::parse::<u32>) {
            Some(Ok(id)) => Config::preset(id)?,
            _ => Config::preset(1)?,
        },
    };
    let overrides = [
        ("experiment", &a.experiment),
        ("class", &a.class),
        ("n", &a.n),
        ("rho", &a.rho),
        ("seeds", &a.seeds),
        ("base_seed", &a.base_seed),
        ("weights", &a.weights),
        ("alpha", &a.alpha),
        ("beta", &a.beta),
        ("k", &a.k),
        ("algorithms", &a.algorithms),
    ];
    for (key, value) in overrides {
        if let Some(v) = value {
            cfg.set(key, v)?;
        }
    }
    let threads = threads_from_env();
    let rows = run_experiment(&cfg, threads)?;
    fs::create_dir_all(&a.out)?;
    fs::write(a.out.join("results.csv"), to_csv(&rows, true)?)?;
    fs::write(a.out.join("metadata.txt"), metadata(&cfg, &rows, threads)?)?;
    write_charts(&a.out, &rows, !a.linear)?;
    eprintln!("{} rows written to {}", rows.len(), a.out.display());
    Ok(())
}

fn write_charts(dir: &Path, rows: &[wcdag_bench::RunRecord], log_y: bool) -> Result<(), BenchError> {
    for (name, svg) in all_charts(rows, log_y)? {
        fs::write(dir.join(name), svg)?;
    }
    Ok(())
}

fn load(path: &Path) -> Result<WeightedInstance, BenchError> {
    Ok(parse_instance(&fs::read_to_string(path)?)?)
}

fn verify(a: VerifyArgs) -> Result<(), BenchError> {
    let inst = load(&a.input)?;
    let v = atomic_verification_numbers(&inst);
    let (nu_max, nu_w_max) = benchmark_max(&inst)?;
    let lb = lower_bound(inst.dag(), inst.weights(), 1.0, 0.0, 1, a.budget)?;
    println!("nu_1 = {}", v.nu);
    println!("nu_1_weighted = {}", fmt_g(v.nu_weighted));
    println!("nu_1_max = {nu_max}");
    println!("nu_1_weighted_max = {}", fmt_g(nu_w_max));
    println!("lower_bound = {}", fmt_g(lb.value));
    println!("lower_bound_exhaustive = {}", lb.exhaustive);
    Ok(())
}

fn lb(a: LbArgs) -> Result<(), BenchError> {
    let inst = load(&a.input)?;
    for r in zeta_terms(inst.dag(), inst.weights(), &InterventionSet::atomic(), a.alpha, a.beta, a.k)? {
        let ids: Vec<String> = r.component.iter().map(ToString::to_string).collect();
        let z: Vec<String> = r.zeta.iter().enumerate().map(|(i, z)| format!("zeta{} = {}", i + 1, fmt_g(*z))).collect();
        println!("component {{{}}}: {}", ids.join(" "), z.join(", "));
    }
    let lb = lower_bound(inst.dag(), inst.weights(), a.alpha, a.beta, a.k, a.budget)?;
    println!("lower_bound = {}", fmt_g(lb.value));
    println!("candidates = {}", lb.candidates);
    println!("exhaustive = {}", lb.exhaustive);
    Ok(())
}

fn plot(a: PlotArgs) -> Result<(), BenchError> {
    let rows = read_csv(&fs::read_to_string(&a.csv)?)?;
    fs::create_dir_all(&a.out)?;
    write_charts(&a.out, &rows, !a.linear)
}
