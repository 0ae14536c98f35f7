//! Command-line front end.
//!
//! Exit codes: 0 success, 1 numeric or IO failure, 2 usage error, 3 a
//! requested check failed (its report is still written).

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use sa2gd_core::analysis::{run_ivt_campaign, run_rate_experiment, IvtCampaign, RateSpec};
use sa2gd_core::pareto::{front_metrics, sweep, Reference, SweepConfig};
use sa2gd_core::prelude::*;

use crate::catalog;
use crate::config::{BudgetArg, ExperimentConfig, MethodArg, PatternArg, ScheduleArg};
use crate::exec::Rayon;
use crate::io;
use crate::report::RateSummary;
use crate::svg;

pub const OUT_DIR_ENV: &str = "SA2GD_OUT_DIR";

#[derive(Debug, Parser)]
#[command(name = "sa2gd", version, about = "Stochastic alternating bi-objective gradient descent experiments")]
pub struct Cli {
    /// TOML file with defaults for any command; flags take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// One run; writes the trajectory CSV.
    Solve(SolveArgs),
    /// Effort sweep over n_a = 0..=n_total; writes the front CSV and SVG plots.
    Sweep(SweepArgs),
    /// Empirical rate against the theoretical bound on a synthetic problem.
    Rate(RateArgs),
    /// Randomized check of the convex-combination witness construction.
    IvtCheck(IvtArgs),
    /// Known problems.
    Problems {
        #[command(subcommand)]
        what: ProblemsCommand,
    },
}

#[derive(Debug, Subcommand)]
pub enum ProblemsCommand {
    List,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long)]
    pub problem: Option<String>,
    #[arg(long)]
    pub na: Option<usize>,
    #[arg(long)]
    pub nb: Option<usize>,
    /// Outer iterations.
    #[arg(long = "T", visible_alias = "iterations")]
    pub iterations: Option<usize>,
    /// sc-decay[:c], inverse-t:gamma, sqrt-decay:alpha_bar or fixed:alpha.
    #[arg(long)]
    pub schedule: Option<ScheduleArg>,
    #[arg(long)]
    pub sigma: Option<f64>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub replication: Option<u64>,
    #[arg(long, value_enum)]
    pub pattern: Option<PatternArg>,
    /// Comma-separated starting point.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub x0: Option<Vec<f64>>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub problem: Option<String>,
    #[arg(long)]
    pub n_total: Option<usize>,
    #[arg(long = "T", visible_alias = "iterations")]
    pub iterations: Option<usize>,
    #[arg(long)]
    pub step: Option<ScheduleArg>,
    #[arg(long, value_enum)]
    pub method: Option<MethodArg>,
    #[arg(long)]
    pub sigma: Option<f64>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Runs per cell.
    #[arg(long)]
    pub replications: Option<usize>,
    #[arg(long, value_enum)]
    pub pattern: Option<PatternArg>,
    /// Combined steps per iteration for the weighted-sum baseline.
    #[arg(long, value_enum)]
    pub ws_budget: Option<BudgetArg>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn parse_regime(s: &str) -> Result<String, String> {
    match Regime::parse(s) {
        Ok(Regime::NonconvexBenchmark) | Err(_) => {
            Err("expected one of smooth-sc, nonsmooth-sc, smooth-convex, nonsmooth-convex".to_string())
        }
        Ok(r) => Ok(r.as_str().to_string()),
    }
}

#[derive(Debug, Args)]
pub struct RateArgs {
    #[arg(long, value_parser = parse_regime)]
    pub regime: Option<String>,
    #[arg(long)]
    pub na: Option<usize>,
    #[arg(long)]
    pub nb: Option<usize>,
    #[arg(long)]
    pub sigma: Option<f64>,
    /// Comma-separated horizons.
    #[arg(long, value_delimiter = ',')]
    pub horizons: Option<Vec<usize>>,
    #[arg(long)]
    pub replications: Option<usize>,
    #[arg(long)]
    pub alpha_bar: Option<f64>,
    #[arg(long, value_enum)]
    pub pattern: Option<PatternArg>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct IvtArgs {
    #[arg(long)]
    pub instances: Option<usize>,
    #[arg(long)]
    pub max_points: Option<usize>,
    #[arg(long)]
    pub max_dim: Option<usize>,
    #[arg(long)]
    pub degree: Option<u32>,
    /// Relative residual tolerance.
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Numeric(String),
    Check(String),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Numeric(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Check(_) => 3,
        }
    }
}

fn is_usage(e: &sa2gd_core::Error) -> bool {
    match e {
        sa2gd_core::Error::InvalidInput(_) => true,
        sa2gd_core::Error::SweepCell { source, .. } => is_usage(source),
        _ => false,
    }
}

impl From<sa2gd_core::Error> for Failure {
    fn from(e: sa2gd_core::Error) -> Self {
        if is_usage(&e) {
            Failure::Usage(e.to_string())
        } else {
            Failure::Numeric(e.to_string())
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Numeric(format!("{e:#}"))
    }
}

fn out_dir(flag: Option<PathBuf>, cfg: &ExperimentConfig) -> PathBuf {
    flag.or_else(|| cfg.out_dir.clone())
        .or_else(|| std::env::var_os(OUT_DIR_ENV).filter(|v| !v.is_empty()).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("out"))
}

fn require_problem(p: Option<String>) -> Result<String, Failure> {
    p.ok_or_else(|| Failure::Usage("--problem is required (or set `problem` in the config file)".into()))
}

fn write(path: &Path, bytes: &[u8]) -> Result<(), Failure> {
    io::write_atomic(path, bytes)?;
    println!("wrote {}", path.display());
    Ok(())
}

fn safe_name(s: &str) -> String {
    s.chars().map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '_' { c } else { '_' }).collect()
}

fn cmd_solve(a: SolveArgs, mut cfg: ExperimentConfig) -> Result<(), Failure> {
    let s = &mut cfg.solve;
    s.problem = a.problem.or(s.problem.take());
    s.n_a = a.na.unwrap_or(s.n_a);
    s.n_b = a.nb.unwrap_or(s.n_b);
    s.iterations = a.iterations.unwrap_or(s.iterations);
    s.schedule = a.schedule.unwrap_or(s.schedule);
    s.sigma = a.sigma.unwrap_or(s.sigma);
    s.replication = a.replication.unwrap_or(s.replication);
    s.pattern = a.pattern.unwrap_or(s.pattern);
    s.x0 = a.x0.or(s.x0.take());
    cfg.master_seed = a.seed.unwrap_or(cfg.master_seed);
    let out = out_dir(a.out, &cfg);
    let s = &cfg.solve;

    let name = require_problem(s.problem.clone())?;
    let problem = attach_noise(&catalog::resolve_problem(&name)?, s.sigma)?;
    let constants = compute_constants(&problem, s.sigma)?;
    let alternation = AlternationSpec::new(s.n_a, s.n_b, s.pattern.into())?;
    let schedule = s.schedule.resolve(alternation.n_total(), &constants)?;
    let mut run = RunConfig::new(s.iterations, schedule, alternation)
        .with_seed(cfg.master_seed)
        .with_replication(s.replication);
    if let Some(x0) = &s.x0 {
        run = run.with_initial_point(Point::new(x0.clone())?);
    }
    let traj = run_sa2gd(&run, &problem)?;
    let path = out.join(format!("trajectory_{}_rep{}.csv", safe_name(&name), s.replication));
    write(&path, &io::trajectory_csv(&traj)?)?;
    let t = traj.len();
    println!("problem {name}, lambda_* = {}, T = {t}", traj.lambda);
    println!("x_T = {:?}", traj.final_iterate().as_slice());
    println!("f_a = {}, f_b = {}, S = {}", traj.f_a[t], traj.f_b[t], traj.s_values[t]);
    Ok(())
}

fn cmd_sweep(a: SweepArgs, mut cfg: ExperimentConfig) -> Result<(), Failure> {
    let s = &mut cfg.sweep;
    s.problem = a.problem.or(s.problem.take());
    s.n_total = a.n_total.unwrap_or(s.n_total);
    s.iterations = a.iterations.unwrap_or(s.iterations);
    s.step = a.step.unwrap_or(s.step);
    s.method = a.method.unwrap_or(s.method);
    s.sigma = a.sigma.unwrap_or(s.sigma);
    s.replications = a.replications.unwrap_or(s.replications);
    s.pattern = a.pattern.unwrap_or(s.pattern);
    s.ws_budget = a.ws_budget.unwrap_or(s.ws_budget);
    cfg.master_seed = a.seed.unwrap_or(cfg.master_seed);
    let out = out_dir(a.out, &cfg);
    let s = &cfg.sweep;

    let name = require_problem(s.problem.clone())?;
    if s.n_total == 0 {
        return Err(Failure::Usage("--n-total must be >= 1".into()));
    }
    let problem = attach_noise(&catalog::resolve_problem(&name)?, s.sigma)?;
    let constants = compute_constants(&problem, s.sigma)?;
    let schedule = s.step.resolve(s.n_total, &constants)?;
    let analytic = problem.analytic_pareto_set();
    let mut outcomes = Vec::new();
    for method in s.method.methods() {
        let mut sc = SweepConfig::new(s.n_total, s.iterations, schedule, method).with_seed(cfg.master_seed);
        sc.replications = s.replications;
        sc.pattern = s.pattern.into();
        sc.weighted_sum_budget = s.ws_budget.into();
        let o = sweep(&problem, &sc, &Rayon)?;
        let reference = analytic.as_ref().map_or(Reference::None, Reference::Analytic);
        let m = front_metrics(&o.front, reference)?;
        print!(
            "{}: {} cells, {} front points, f_a extent {}, max f_a gap {}",
            method.as_str(),
            o.raw.len(),
            m.cardinality,
            m.extent_f_a,
            m.max_gap_f_a
        );
        match m.max_distance {
            Some(d) => println!(", max distance to Pareto set {d}"),
            None => println!(),
        }
        outcomes.push((method, o));
    }
    let base = safe_name(&name);
    let refs: Vec<_> = outcomes.iter().map(|(_, o)| o).collect();
    write(&out.join(format!("front_{base}.csv")), &io::front_csv(&refs)?)?;
    for (method, o) in &outcomes {
        let colour = match method {
            sa2gd_core::pareto::Method::Sa2gd => "#1f77b4",
            sa2gd_core::pareto::Method::WeightedSum => "#d62728",
        };
        let series = svg::Series {
            label: method.as_str(),
            colour,
            points: o.front.points.iter().map(|p| (p.f_a, p.f_b)).collect(),
        };
        let title = format!("{name}: {} front, n_total = {}, T = {}", method.as_str(), s.n_total, s.iterations);
        write(&out.join(format!("front_{base}_{}.svg", method.as_str())), svg::scatter(&title, &[series]).as_bytes())?;
    }
    Ok(())
}

fn cmd_rate(a: RateArgs, mut cfg: ExperimentConfig) -> Result<(), Failure> {
    let r = &mut cfg.rate;
    r.regime = a.regime.unwrap_or(std::mem::take(&mut r.regime));
    r.n_a = a.na.unwrap_or(r.n_a);
    r.n_b = a.nb.unwrap_or(r.n_b);
    r.sigma = a.sigma.unwrap_or(r.sigma);
    r.horizons = a.horizons.unwrap_or(std::mem::take(&mut r.horizons));
    r.replications = a.replications.unwrap_or(r.replications);
    r.alpha_bar = a.alpha_bar.unwrap_or(r.alpha_bar);
    r.pattern = a.pattern.unwrap_or(r.pattern);
    cfg.master_seed = a.seed.unwrap_or(cfg.master_seed);
    let out = out_dir(a.out, &cfg);
    let r = &cfg.rate;

    let regime = Regime::parse(&parse_regime(&r.regime).map_err(Failure::Usage)?)?;
    if r.replications == 0 {
        return Err(Failure::Usage("--replications must be >= 1".into()));
    }
    if r.horizons.len() < 3 {
        return Err(Failure::Usage("at least 3 horizons are needed for the slope fit".into()));
    }
    let spec = RateSpec {
        regime,
        n_a: r.n_a,
        n_b: r.n_b,
        sigma: r.sigma,
        horizons: r.horizons.clone(),
        replications: r.replications,
        master_seed: cfg.master_seed,
        alpha_bar: r.alpha_bar,
        pattern: r.pattern.into(),
    };
    let report = run_rate_experiment(&spec, &Rayon)?;
    let base = format!("rate_{}", regime.as_str());
    write(&out.join(format!("{base}.csv")), &io::rate_csv(&report)?)?;
    let summary = RateSummary::from_report(&report);
    write(&out.join(format!("{base}.json")), summary.to_json().map_err(anyhow::Error::from)?.as_bytes())?;
    println!("{:>6} {:>14} {:>12} {:>14}  ok", "T", "gap", "std_err", "bound");
    let sr = &report.series;
    for i in 0..sr.horizons.len() {
        println!(
            "{:>6} {:>14.6e} {:>12.3e} {:>14.6e}  {}",
            sr.horizons[i], sr.gaps[i], sr.std_errs[i], report.bounds[i], report.bound_ok[i]
        );
    }
    let (lo, hi) = spec.slope_window();
    println!("slope {:.4} (window [{lo}, {hi}]) ok = {}", report.slope, report.slope_ok);
    println!("aggregated iterate at T = {}: ok = {}", sr.horizons[sr.horizons.len() - 1], report.aggregated_ok);
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Check(format!("rate checks failed for {}", regime.as_str())))
    }
}

fn cmd_ivt(a: IvtArgs, mut cfg: ExperimentConfig) -> Result<(), Failure> {
    let v = &mut cfg.ivt;
    v.instances = a.instances.unwrap_or(v.instances);
    v.max_points = a.max_points.unwrap_or(v.max_points);
    v.max_dim = a.max_dim.unwrap_or(v.max_dim);
    v.degree = a.degree.unwrap_or(v.degree);
    v.tol = a.tol.unwrap_or(v.tol);
    cfg.master_seed = a.seed.unwrap_or(cfg.master_seed);
    let v = &cfg.ivt;
    let campaign = IvtCampaign {
        instances: v.instances,
        max_points: v.max_points,
        max_dim: v.max_dim,
        degree: v.degree,
        tol: v.tol,
        seed: cfg.master_seed,
    };
    let report = run_ivt_campaign(&campaign)?;
    println!("passed {}/{}", report.passed, report.instances);
    println!("max relative residual {:e}", report.max_relative_residual);
    if report.all_passed() {
        Ok(())
    } else {
        let shown: Vec<String> = report.failures.iter().take(10).map(|i| i.to_string()).collect();
        Err(Failure::Check(format!("{} instances failed (first: {})", report.failures.len(), shown.join(", "))))
    }
}

fn cmd_problems_list() -> Result<(), Failure> {
    for (name, family, dim, source) in catalog::listing()? {
        println!("{name:<10} {family:<15} dim {dim}  {source}");
    }
    Ok(())
}

pub fn execute(cli: Cli) -> Result<(), Failure> {
    let cfg = match &cli.config {
        Some(p) => ExperimentConfig::load(p).map_err(|e| Failure::Usage(format!("{e:#}")))?,
        None => ExperimentConfig::default(),
    };
    match cli.command {
        Command::Solve(a) => cmd_solve(a, cfg),
        Command::Sweep(a) => cmd_sweep(a, cfg),
        Command::Rate(a) => cmd_rate(a, cfg),
        Command::IvtCheck(a) => cmd_ivt(a, cfg),
        Command::Problems { what: ProblemsCommand::List } => cmd_problems_list(),
    }
}

/// Parses `args` and runs the command, returning the process exit code.
pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code() as u8;
        }
    };
    match execute(cli) {
        Ok(()) => 0,
        Err(f) => {
            let msg = match &f {
                Failure::Usage(m) | Failure::Numeric(m) | Failure::Check(m) => m,
            };
            eprintln!("error: {msg}");
            f.code()
        }
    }
}
