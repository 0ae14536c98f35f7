//! The alternating solver, its weighted-sum baseline, step orderings and
//! iterate aggregation.

mod order;
mod run;
mod trajectory;

pub use order::{alternation_order, AlternationSpec, Pattern, Tag};
pub use run::{run_sa2gd, run_weighted_sum_sgd, sa2gd_iteration, InitialPoint, RunConfig};
pub use trajectory::{
    aggregate_iterates, AggregatedIterate, AggregationMode, IterationRecord, RunningAggregate, Trajectory,
};
