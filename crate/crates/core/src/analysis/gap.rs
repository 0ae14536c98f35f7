//! Replicated optimality-gap measurement and log-log slope fitting.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::exec::{Executor, Sequential};
use crate::math;
use crate::oracle::combine;
use crate::problems::BiObjectiveProblem;
use crate::solver::{run_sa2gd, AggregationMode, RunConfig, RunningAggregate};

/// `min_{t=1..T} E[S(x_t)] - S(x_*)` at each horizon `T`, with the mean
/// taken over replications before the minimum over `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct GapSeries {
    pub horizons: Vec<usize>,
    pub gaps: Vec<f64>,
    /// Standard error of the replication mean at the minimizing `t`.
    pub std_errs: Vec<f64>,
    /// The minimizing `t` for each horizon.
    pub argmin: Vec<usize>,
    pub replications: usize,
    /// `S(x_*, lambda)`.
    pub optimum: f64,
    pub aggregation: AggregationMode,
    /// `E[S(x_bar_T)] - S(x_*)` at each horizon.
    pub aggregated_gaps: Vec<f64>,
    pub aggregated_std_errs: Vec<f64>,
}

impl GapSeries {
    /// A bare series for slope fitting; statistics fields are zeroed.
    pub fn from_values(horizons: Vec<usize>, gaps: Vec<f64>) -> Self {
        let n = gaps.len();
        GapSeries {
            horizons,
            gaps,
            std_errs: vec![0.0; n],
            argmin: vec![0; n],
            replications: 1,
            optimum: 0.0,
            aggregation: AggregationMode::UniformMean,
            aggregated_gaps: vec![0.0; n],
            aggregated_std_errs: vec![0.0; n],
        }
    }
}

/// Triangular weights for strongly convex regimes, the plain mean otherwise.
pub fn default_aggregation(problem: &BiObjectiveProblem) -> AggregationMode {
    if problem.regime.is_strongly_convex() {
        AggregationMode::TriangularWeights
    } else {
        AggregationMode::UniformMean
    }
}

pub fn optimality_gap_series(
    problem: &BiObjectiveProblem,
    template: &RunConfig,
    lambda_star: f64,
    horizons: &[usize],
    replications: usize,
) -> Result<GapSeries> {
    optimality_gap_series_with(
        problem,
        template,
        lambda_star,
        horizons,
        replications,
        default_aggregation(problem),
        &Sequential,
    )
}

struct Replicate {
    /// `S(x_t) - S_*` for `t = 0..=T`.
    gaps: Vec<f64>,
    /// Aggregated-iterate gap at each horizon.
    aggregated: Vec<f64>,
}

fn mean_se(values: impl Iterator<Item = f64> + Clone, k: usize) -> (f64, f64) {
    let kf = k as f64;
    let mean = values.clone().sum::<f64>() / kf;
    if k < 2 {
        return (mean, 0.0);
    }
    let var = values.map(|v| (v - mean) * (v - mean)).sum::<f64>() / (kf - 1.0);
    (mean, math::sqrt(var / kf))
}

/// Replication `i` runs `template` with replication id
/// `template.replication + i` to the largest horizon.
pub fn optimality_gap_series_with<E: Executor>(
    problem: &BiObjectiveProblem,
    template: &RunConfig,
    lambda_star: f64,
    horizons: &[usize],
    replications: usize,
    aggregation: AggregationMode,
    exec: &E,
) -> Result<GapSeries> {
    if replications == 0 {
        return Err(Error::invalid("replications must be >= 1"));
    }
    if horizons.is_empty() || horizons[0] == 0 || horizons.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::invalid("horizons must be strictly increasing and >= 1"));
    }
    let x_star = problem
        .analytic_weighted_minimizer(lambda_star)
        .ok_or_else(|| Error::invalid("problem has no analytic weighted-sum minimizer"))?;
    let optimum = problem.weighted_value(lambda_star, &x_star);
    let t_max = *horizons.last().unwrap();

    let runs = exec.map(replications, |i| -> Result<Replicate> {
        let mut cfg = template.clone();
        cfg.iterations = t_max;
        cfg.replication = template.replication + i as u64;
        cfg.record_intermediates = false;
        let traj = run_sa2gd(&cfg, problem)?;
        let gaps = traj
            .f_a
            .iter()
            .zip(&traj.f_b)
            .map(|(fa, fb)| combine(lambda_star, *fa, *fb) - optimum)
            .collect();
        let mut agg = RunningAggregate::new(problem.dim());
        let mut aggregated = Vec::with_capacity(horizons.len());
        let mut next = 0;
        for (t, x) in traj.iterates.iter().enumerate().skip(1) {
            agg.push(x);
            if next < horizons.len() && horizons[next] == t {
                let xbar = agg.current(aggregation).expect("at least one iterate");
                aggregated.push(problem.weighted_value(lambda_star, &xbar) - optimum);
                next += 1;
            }
        }
        Ok(Replicate { gaps, aggregated })
    });
    let runs = runs.into_iter().collect::<Result<Vec<_>>>()?;

    let stats: Vec<(f64, f64)> = (0..=t_max).map(|t| mean_se(runs.iter().map(|r| r.gaps[t]), replications)).collect();
    let mut out = GapSeries {
        horizons: horizons.to_vec(),
        gaps: Vec::new(),
        std_errs: Vec::new(),
        argmin: Vec::new(),
        replications,
        optimum,
        aggregation,
        aggregated_gaps: Vec::new(),
        aggregated_std_errs: Vec::new(),
    };
    let (mut best, mut best_t) = (f64::INFINITY, 0);
    let mut next = 0;
    for t in 1..=t_max {
        if stats[t].0 < best {
            best = stats[t].0;
            best_t = t;
        }
        if horizons[next] == t {
            out.gaps.push(best);
            out.std_errs.push(stats[best_t].1);
            out.argmin.push(best_t);
            let (m, se) = mean_se(runs.iter().map(|r| r.aggregated[next]), replications);
            out.aggregated_gaps.push(m);
            out.aggregated_std_errs.push(se);
            next += 1;
        }
    }
    Ok(out)
}

/// Least-squares slope of `ln(gap)` against `ln(T)`.
pub fn fit_loglog_slope(series: &GapSeries) -> Result<f64> {
    loglog_slope(&series.horizons, &series.gaps)
}

pub fn loglog_slope(horizons: &[usize], values: &[f64]) -> Result<f64> {
    if horizons.len() != values.len() {
        return Err(Error::invalid("horizon and value counts differ"));
    }
    if horizons.len() < 3 {
        return Err(Error::invalid("at least 3 horizons are needed for a slope fit"));
    }
    if let Some(v) = values.iter().find(|v| !(**v > 0.0 && v.is_finite())) {
        return Err(Error::invalid(alloc::format!("gap values must be positive to take logs, got {v}")));
    }
    if horizons.contains(&0) {
        return Err(Error::invalid("horizons must be >= 1"));
    }
    let xs: Vec<f64> = horizons.iter().map(|&t| math::ln(t as f64)).collect();
    let ys: Vec<f64> = values.iter().map(|&v| math::ln(v)).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    if sxx == 0.0 {
        return Err(Error::invalid("horizons must not all be equal"));
    }
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    Ok(sxy / sxx)
}
