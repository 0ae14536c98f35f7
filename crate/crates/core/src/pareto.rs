//! Dominance filtering, the effort sweep and front summaries.

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::{Error, Result};
use crate::exec::Executor;
use crate::math;
use crate::point::Point;
use crate::problems::{BiObjectiveProblem, ParetoSet};
use crate::schedule::StepSchedule;
use crate::solver::{run_sa2gd, run_weighted_sum_sgd, AlternationSpec, Pattern, RunConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Sa2gd,
    WeightedSum,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Sa2gd => "sa2gd",
            Method::WeightedSum => "weighted-sum",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FrontPoint {
    pub x: Point,
    pub f_a: f64,
    pub f_b: f64,
    pub n_a: usize,
    pub n_b: usize,
    /// `n_a / (n_a + n_b)`; for the weighted-sum baseline, the weight used.
    pub lambda_star: f64,
    pub method: Method,
    /// Key of the starting point draw.
    pub seed: u64,
}

impl FrontPoint {
    pub fn objectives(&self) -> (f64, f64) {
        (self.f_a, self.f_b)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepParams {
    pub n_total: usize,
    pub iterations: usize,
    pub schedule: StepSchedule,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Front {
    pub points: Vec<FrontPoint>,
    pub problem: String,
    pub params: Option<SweepParams>,
}

impl Front {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Weak dominance: `u <= v` componentwise and `u != v`.
pub fn dominates(u: (f64, f64), v: (f64, f64)) -> bool {
    u.0 <= v.0 && u.1 <= v.1 && u != v
}

fn lex(p: (f64, f64), q: (f64, f64)) -> Ordering {
    p.0.total_cmp(&q.0).then(p.1.total_cmp(&q.1))
}

/// Indices of the non-dominated pairs, ascending by `f_a`. Of several equal
/// pairs only the first one in input order is returned.
pub fn nondominated_indices(values: &[(f64, f64)]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    // stable: equal pairs keep input order, so the first-seen one survives
    idx.sort_by(|&i, &j| lex(values[i], values[j]));
    let mut best_b = f64::INFINITY;
    let mut kept = Vec::new();
    for i in idx {
        let fb = values[i].1;
        if fb < best_b {
            best_b = fb;
            kept.push(i);
        }
    }
    kept
}

pub fn nondominated_filter(points: &[FrontPoint]) -> Front {
    let values: Vec<_> = points.iter().map(FrontPoint::objectives).collect();
    let points = nondominated_indices(&values).into_iter().map(|i| points[i].clone()).collect();
    Front { points, problem: String::new(), params: None }
}

/// Steps given to the weighted-sum baseline in each outer iteration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightedSumBudget {
    /// One combined projected step.
    Single,
    /// `n_total` combined projected steps, the same gradient-evaluation
    /// count per iteration as the alternating solver.
    MatchEffort,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub n_total: usize,
    pub iterations: usize,
    pub schedule: StepSchedule,
    pub pattern: Pattern,
    pub master_seed: u64,
    /// Runs per cell; each contributes one final iterate.
    pub replications: usize,
    pub method: Method,
    pub weighted_sum_budget: WeightedSumBudget,
}

impl SweepConfig {
    pub fn new(n_total: usize, iterations: usize, schedule: StepSchedule, method: Method) -> Self {
        SweepConfig {
            n_total,
            iterations,
            schedule,
            pattern: Pattern::BlockAThenB,
            master_seed: 0,
            replications: 1,
            method,
            weighted_sum_budget: WeightedSumBudget::MatchEffort,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.master_seed = seed;
        self
    }

    pub fn cells(&self) -> usize {
        self.n_total + 1
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepOutcome {
    /// Every final iterate, in cell order.
    pub raw: Vec<FrontPoint>,
    /// `kept[i]` tells whether `raw[i]` survived the filter.
    pub kept: Vec<bool>,
    pub front: Front,
}

fn run_cell(problem: &BiObjectiveProblem, cfg: &SweepConfig, cell: usize, rep: usize) -> Result<FrontPoint> {
    let n_a = cell;
    let n_b = cfg.n_total - cell;
    let replication = (cell * cfg.replications + rep) as u64;
    let wrap = |e: Error| Error::SweepCell { n_a, n_b, source: Box::new(e) };
    let alternation = AlternationSpec::new(n_a, n_b, cfg.pattern).map_err(wrap)?;
    let mut run = RunConfig::new(cfg.iterations, cfg.schedule, alternation)
        .with_seed(cfg.master_seed)
        .with_replication(replication);
    let lambda = alternation.lambda_star();
    let traj = match cfg.method {
        Method::Sa2gd => run_sa2gd(&run, problem),
        Method::WeightedSum => {
            run.weighted_sum_steps = match cfg.weighted_sum_budget {
                WeightedSumBudget::Single => 1,
                WeightedSumBudget::MatchEffort => cfg.n_total,
            };
            run_weighted_sum_sgd(&run, lambda, problem)
        }
    }
    .map_err(wrap)?;
    let last = traj.iterates.len() - 1;
    Ok(FrontPoint {
        x: traj.iterates[last].clone(),
        f_a: traj.f_a[last],
        f_b: traj.f_b[last],
        n_a,
        n_b,
        lambda_star: lambda,
        method: cfg.method,
        seed: run.noise().start_key(replication).0,
    })
}

/// Runs one solver per effort split `n_a = 0..=n_total` (or weight
/// `lambda = n_a / n_total` for the baseline) from a random feasible start
/// and filters the final iterates.
pub fn sweep<E: Executor>(problem: &BiObjectiveProblem, cfg: &SweepConfig, exec: &E) -> Result<SweepOutcome> {
    if cfg.n_total == 0 {
        return Err(Error::invalid("n_total must be >= 1"));
    }
    if cfg.replications == 0 {
        return Err(Error::invalid("replications must be >= 1"));
    }
    let per = cfg.replications;
    let results = exec.map(cfg.cells() * per, |i| run_cell(problem, cfg, i / per, i % per));
    let raw = results.into_iter().collect::<Result<Vec<_>>>()?;
    let values: Vec<_> = raw.iter().map(FrontPoint::objectives).collect();
    let idx = nondominated_indices(&values);
    let mut kept = alloc::vec![false; raw.len()];
    for &i in &idx {
        kept[i] = true;
    }
    let front = Front {
        points: idx.iter().map(|&i| raw[i].clone()).collect(),
        problem: problem.name.clone(),
        params: Some(SweepParams { n_total: cfg.n_total, iterations: cfg.iterations, schedule: cfg.schedule }),
    };
    Ok(SweepOutcome { raw, kept, front })
}

#[derive(Debug, Clone, Copy)]
pub enum Reference<'a> {
    None,
    Analytic(&'a ParetoSet),
    /// Distances are measured to the nearest decision vector of this front.
    Front(&'a Front),
}

#[derive(Debug, Clone, PartialEq)]
pub struct FrontMetrics {
    pub cardinality: usize,
    pub extent_f_a: f64,
    pub extent_f_b: f64,
    /// Largest gap between consecutive `f_a` values.
    pub max_gap_f_a: f64,
    /// Largest distance from a front decision vector to the reference.
    pub max_distance: Option<f64>,
}

pub fn front_metrics(front: &Front, reference: Reference<'_>) -> Result<FrontMetrics> {
    if front.is_empty() {
        return Err(Error::invalid("front is empty"));
    }
    let mut fa: Vec<f64> = front.points.iter().map(|p| p.f_a).collect();
    fa.sort_by(f64::total_cmp);
    let spread = |v: &mut dyn Iterator<Item = f64>| {
        let (lo, hi) = v.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), x| (lo.min(x), hi.max(x)));
        hi - lo
    };
    let extent_f_a = spread(&mut fa.iter().copied());
    let extent_f_b = spread(&mut front.points.iter().map(|p| p.f_b));
    let max_gap_f_a = fa.windows(2).map(|w| w[1] - w[0]).fold(0.0, f64::max);
    let max_distance = match reference {
        Reference::None => None,
        Reference::Analytic(set) => Some(front.points.iter().map(|p| set.distance(&p.x)).fold(0.0, f64::max)),
        Reference::Front(r) => {
            if r.is_empty() {
                return Err(Error::invalid("reference front is empty"));
            }
            Some(
                front
                    .points
                    .iter()
                    .map(|p| r.points.iter().map(|q| math::dist(&p.x, &q.x)).fold(f64::INFINITY, f64::min))
                    .fold(0.0, f64::max),
            )
        }
    };
    Ok(FrontMetrics { cardinality: front.len(), extent_f_a, extent_f_b, max_gap_f_a, max_distance })
}
