use alloc::vec;
use alloc::vec::Vec;

use super::order::Tag;
use crate::error::{Error, Result};
use crate::point::Point;

/// Inner steps of one outer iteration: the tag of each step and the point
/// reached after it (before the final projection).
#[derive(Debug, Clone, PartialEq)]
pub struct IterationRecord {
    pub order: Vec<Tag>,
    pub points: Vec<Vec<f64>>,
}

/// Recorded run. Index `t` of `iterates`, `f_a`, `f_b` and `s_values`
/// refers to `x_t`, `t = 0..=T`; `step_sizes[t]` is the step used to go
/// from `x_t` to `x_{t+1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    /// Weight of the scalarization tracked in `s_values`.
    pub lambda: f64,
    pub iterates: Vec<Point>,
    pub f_a: Vec<f64>,
    pub f_b: Vec<f64>,
    pub s_values: Vec<f64>,
    pub step_sizes: Vec<f64>,
    pub intermediates: Option<Vec<IterationRecord>>,
}

impl Trajectory {
    /// Number of outer iterations `T`.
    pub fn len(&self) -> usize {
        self.step_sizes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.step_sizes.is_empty()
    }

    pub fn final_iterate(&self) -> &Point {
        self.iterates.last().expect("trajectory always holds x_0")
    }

    pub fn dim(&self) -> usize {
        self.iterates[0].dim()
    }

    /// `min_{t=1..T} S(x_t)`, or `None` when `T = 0`.
    pub fn best_value(&self) -> Option<f64> {
        self.s_values.iter().skip(1).copied().reduce(f64::min)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AggregationMode {
    /// `sum_t t x_t / sum_t t` (strongly convex regimes).
    TriangularWeights,
    /// `sum_t x_t / T` (convex regimes).
    UniformMean,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AggregatedIterate {
    pub mode: AggregationMode,
    pub point: Point,
}

/// Convex combination of `x_1..x_T` by the direct formula.
pub fn aggregate_iterates(traj: &Trajectory, mode: AggregationMode) -> Result<AggregatedIterate> {
    let t_max = traj.len();
    if t_max == 0 {
        return Err(Error::invalid("aggregation needs at least one iteration"));
    }
    let n = traj.dim();
    let mut acc = vec![0.0; n];
    let mut total = 0.0;
    for (t, x) in traj.iterates.iter().enumerate().skip(1) {
        let w = match mode {
            AggregationMode::TriangularWeights => t as f64,
            AggregationMode::UniformMean => 1.0,
        };
        total += w;
        for (a, xi) in acc.iter_mut().zip(x.iter()) {
            *a += w * xi;
        }
    }
    for a in acc.iter_mut() {
        *a /= total;
    }
    Ok(AggregatedIterate { mode, point: Point::from_vec_unchecked(acc) })
}

/// Streaming form of [`aggregate_iterates`] for both modes at once.
#[derive(Debug, Clone)]
pub struct RunningAggregate {
    weighted: Vec<f64>,
    plain: Vec<f64>,
    weight_total: f64,
    count: usize,
}

impl RunningAggregate {
    pub fn new(dim: usize) -> Self {
        RunningAggregate { weighted: vec![0.0; dim], plain: vec![0.0; dim], weight_total: 0.0, count: 0 }
    }

    /// Adds `x_t`; callers push `x_1, x_2, ...` in order.
    pub fn push(&mut self, x: &[f64]) {
        self.count += 1;
        let w = self.count as f64;
        self.weight_total += w;
        for ((wa, pa), xi) in self.weighted.iter_mut().zip(self.plain.iter_mut()).zip(x) {
            *wa += w * xi;
            *pa += xi;
        }
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn current(&self, mode: AggregationMode) -> Option<Vec<f64>> {
        if self.count == 0 {
            return None;
        }
        Some(match mode {
            AggregationMode::TriangularWeights => self.weighted.iter().map(|v| v / self.weight_total).collect(),
            AggregationMode::UniformMean => self.plain.iter().map(|v| v / self.count as f64).collect(),
        })
    }
}
