//! Rate experiments on the canonical synthetic problem of each regime.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::bounds::{theoretical_bound, RateBoundInputs};
use super::gap::{default_aggregation, fit_loglog_slope, optimality_gap_series_with, GapSeries};
use crate::error::{Error, Result};
use crate::exec::Executor;
use crate::point::Point;
use crate::problems::{attach_noise, compute_constants, nonsmooth_pair, quadratic_pair, BiObjectiveProblem, ProblemConstants, Regime};
use crate::region::FeasibleRegion;
use crate::schedule::StepSchedule;
use crate::solver::{AlternationSpec, Pattern, RunConfig};

#[derive(Debug, Clone, PartialEq)]
pub struct RateSpec {
    pub regime: Regime,
    pub n_a: usize,
    pub n_b: usize,
    pub sigma: f64,
    pub horizons: Vec<usize>,
    pub replications: usize,
    pub master_seed: u64,
    /// Step constant of the square-root schedule.
    pub alpha_bar: f64,
    pub pattern: Pattern,
}

impl RateSpec {
    /// `n_a = 3`, `n_b = 1`, `sigma = 0.1`, 100 replications,
    /// horizons `16, 32, ..., 1024`.
    pub fn new(regime: Regime) -> Self {
        RateSpec {
            regime,
            n_a: 3,
            n_b: 1,
            sigma: 0.1,
            horizons: default_horizons(),
            replications: 100,
            master_seed: 0,
            alpha_bar: 1.0,
            pattern: Pattern::BlockAThenB,
        }
    }

    /// Accepted range of the fitted log-log slope.
    pub fn slope_window(&self) -> (f64, f64) {
        if self.regime.is_strongly_convex() {
            (-1.3, -0.7)
        } else {
            (-0.8, -0.3)
        }
    }
}

pub fn default_horizons() -> Vec<usize> {
    (4..=10).map(|k| 1usize << k).collect()
}

fn canonical_box(dim: usize) -> FeasibleRegion {
    let mut lower = vec![-0.5; dim];
    let mut upper = vec![0.5; dim];
    lower[0] = -1.0;
    upper[0] = 3.0;
    FeasibleRegion::new_box(lower, upper).expect("valid box")
}

fn canonical_centres(dim: usize) -> (Point, Point) {
    let mut b = vec![0.0; dim];
    b[0] = 2.0;
    (Point::zeros(dim).expect("dim >= 1"), Point::new(b).expect("finite"))
}

/// Dimension of the canonical problem for each regime.
pub fn canonical_dim(regime: Regime) -> usize {
    if regime.is_smooth() {
        16
    } else {
        4
    }
}

/// Centres `a = 0` and `b = 2 e_1` in the box `[-1, 3] x [-0.5, 0.5]^{d-1}`:
/// unit-curvature quadratics for smooth regimes, `l1` objectives with
/// modulus 1 or 0 for the nonsmooth ones, with additive noise `sigma`.
pub fn canonical_problem(regime: Regime, sigma: f64) -> Result<BiObjectiveProblem> {
    let dim = canonical_dim(regime);
    let (a, b) = canonical_centres(dim);
    let region = canonical_box(dim);
    let base = match regime {
        Regime::SmoothStronglyConvex => quadratic_pair(a, b, 1.0, 1.0, region)?,
        Regime::SmoothConvex => quadratic_pair(a, b, 1.0, 1.0, region)?.with_regime(Regime::SmoothConvex)?,
        Regime::NonsmoothStronglyConvex => nonsmooth_pair(a, b, 1.0, region)?,
        Regime::NonsmoothConvex => nonsmooth_pair(a, b, 0.0, region)?,
        Regime::NonconvexBenchmark => return Err(Error::invalid("rate experiments need a convex regime")),
    };
    attach_noise(&base, sigma)
}

/// The schedule each bound is stated for.
pub fn canonical_schedule(spec: &RateSpec, constants: &ProblemConstants) -> Result<StepSchedule> {
    let n = spec.n_a + spec.n_b;
    match spec.regime {
        Regime::SmoothStronglyConvex => {
            StepSchedule::strongly_convex_decay(constants.c().ok_or_else(|| Error::invalid("missing c"))?, n)
        }
        Regime::NonsmoothStronglyConvex => {
            StepSchedule::strongly_convex_decay(constants.c_hat().ok_or_else(|| Error::invalid("missing c_hat"))?, n)
        }
        Regime::SmoothConvex | Regime::NonsmoothConvex => StepSchedule::convex_sqrt_decay(spec.alpha_bar, n),
        Regime::NonconvexBenchmark => Err(Error::invalid("rate experiments need a convex regime")),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RateReport {
    pub spec: RateSpec,
    pub constants: ProblemConstants,
    pub schedule: StepSchedule,
    pub series: GapSeries,
    pub bounds: Vec<f64>,
    /// `gap <= bound + 3 SE` per horizon.
    pub bound_ok: Vec<bool>,
    pub slope: f64,
    pub slope_ok: bool,
    /// Aggregated-iterate gap within the bound (+ 3 SE) at the last horizon.
    pub aggregated_ok: bool,
}

impl RateReport {
    pub fn passed(&self) -> bool {
        self.bound_ok.iter().all(|b| *b) && self.slope_ok
    }
}

pub fn run_rate_experiment<E: Executor>(spec: &RateSpec, exec: &E) -> Result<RateReport> {
    if spec.replications == 0 {
        return Err(Error::invalid("replications must be >= 1"));
    }
    let problem = canonical_problem(spec.regime, spec.sigma)?;
    let constants = compute_constants(&problem, spec.sigma)?;
    let schedule = canonical_schedule(spec, &constants)?;
    let alternation = AlternationSpec::new(spec.n_a, spec.n_b, spec.pattern)?;
    let lambda = alternation.lambda_star();
    let template = RunConfig::new(1, schedule, alternation).with_seed(spec.master_seed).with_uniform_start();
    let series = optimality_gap_series_with(
        &problem,
        &template,
        lambda,
        &spec.horizons,
        spec.replications,
        default_aggregation(&problem),
        exec,
    )?;
    let inputs = RateBoundInputs::new(constants.clone(), spec.n_a, spec.n_b, spec.regime).with_alpha_bar(spec.alpha_bar);
    let bounds = spec.horizons.iter().map(|&t| theoretical_bound(&inputs, t)).collect::<Result<Vec<_>>>()?;
    let bound_ok = series
        .gaps
        .iter()
        .zip(&series.std_errs)
        .zip(&bounds)
        .map(|((g, se), b)| *g <= b + 3.0 * se)
        .collect();
    let slope = fit_loglog_slope(&series).map_err(|e| Error::invalid(format!("slope fit failed: {e}")))?;
    let (lo, hi) = spec.slope_window();
    let last = series.gaps.len() - 1;
    let aggregated_ok = series.aggregated_gaps[last] <= bounds[last] + 3.0 * series.aggregated_std_errs[last];
    Ok(RateReport {
        spec: spec.clone(),
        constants,
        schedule,
        series,
        bounds,
        bound_ok,
        slope,
        slope_ok: (lo..=hi).contains(&slope),
        aggregated_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exec::Sequential;

    #[test]
    fn canonical_problems_have_minimizers() {
        for r in [
            Regime::SmoothStronglyConvex,
            Regime::SmoothConvex,
            Regime::NonsmoothStronglyConvex,
            Regime::NonsmoothConvex,
        ] {
            let p = canonical_problem(r, 0.1).unwrap();
            assert_eq!(p.regime, r);
            assert!(p.analytic_weighted_minimizer(0.75).is_some());
            assert!(p.region.diameter() <= 6.0);
        }
        assert!(canonical_problem(Regime::NonconvexBenchmark, 0.1).is_err());
    }

    #[test]
    fn small_smooth_sc_run_respects_bound() {
        let spec = RateSpec { replications: 10, horizons: vec![16, 32, 64, 128], ..RateSpec::new(Regime::SmoothStronglyConvex) };
        let r = run_rate_experiment(&spec, &Sequential).unwrap();
        assert!(r.bound_ok.iter().all(|b| *b), "{r:?}");
        assert!(r.slope < 0.0);
    }
}
