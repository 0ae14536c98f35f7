//! Stochastic alternating bi-objective gradient and subgradient descent.
//!
//! The crate is `no_std` (with `alloc`) and contains only pure numerics:
//! feasible regions and their projections, step-size schedules, a
//! counter-based noise stream, gradient oracles, the alternating solver and
//! its weighted-sum baseline, synthetic and benchmark problems, Pareto
//! filtering and sweeps, and the convergence-rate harness. File formats, the
//! CLI and parallel execution live in the `sa2gd` companion crate.
//!
//! A minimal run:
//!
//! ```
//! use sa2gd_core::prelude::*;
//!
//! let region = FeasibleRegion::interval(-10.0, 10.0).unwrap();
//! let problem = quadratic_pair(
//!     Point::scalar(0.0).unwrap(),
//!     Point::scalar(2.0).unwrap(),
//!     1.0,
//!     1.0,
//!     region,
//! )
//! .unwrap();
//! let config = RunConfig::new(
//!     500,
//!     StepSchedule::strongly_convex_decay(1.0, 2).unwrap(),
//!     AlternationSpec::block(1, 1).unwrap(),
//! )
//! .with_initial_point(Point::scalar(5.0).unwrap());
//! let traj = run_sa2gd(&config, &problem).unwrap();
//! assert!((traj.final_iterate()[0] - 1.0).abs() < 1e-2);
//! ```
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod analysis;
pub mod error;
pub mod exec;
pub(crate) mod math;
pub mod oracle;
pub mod pareto;
pub mod point;
pub mod problems;
pub mod region;
pub mod rng;
pub mod schedule;
pub mod solver;

pub use error::{Error, Result};

pub mod prelude {
    pub use crate::analysis::{
        fit_loglog_slope, optimality_gap_series, theoretical_bound_convex,
        theoretical_bound_iterate, theoretical_bound_nonsmooth_sc, theoretical_bound_smooth_sc,
        verify_ivt, GapSeries, IvtWitness, RateBoundInputs,
    };
    pub use crate::error::{Error, Result};
    pub use crate::exec::{Executor, Sequential};
    pub use crate::oracle::{sample_gradient, GradientOracle, Smoothness, WeightedSum};
    pub use crate::pareto::{dominates, nondominated_filter, sweep, Front, FrontPoint, Method};
    pub use crate::point::Point;
    pub use crate::problems::{
        attach_noise, benchmark_problem, compute_constants, nonsmooth_pair, quadratic_pair,
        BenchmarkName, BiObjectiveProblem, ProblemConstants, Regime,
    };
    pub use crate::region::FeasibleRegion;
    pub use crate::rng::{NoiseKey, NoiseStream};
    pub use crate::schedule::{lambda_star, StepSchedule};
    pub use crate::solver::{
        aggregate_iterates, run_sa2gd, run_weighted_sum_sgd, AggregationMode, AlternationSpec,
        InitialPoint, Pattern, RunConfig, Trajectory,
    };
}
