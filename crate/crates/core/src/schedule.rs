use alloc::format;

use crate::error::{Error, Result};
use crate::math;

/// Step-size rules.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StepSchedule {
    /// `alpha_t = 2 / (c (t + 1) n_total)`, `t >= 0`.
    StronglyConvexDecay { c: f64, n_total: usize },
    /// `alpha_t = gamma / t`, `t >= 1`.
    InverseT { gamma: f64 },
    /// `alpha_t = alpha_bar / (sqrt(t) n_total)`, `t >= 1`.
    ConvexSqrtDecay { alpha_bar: f64, n_total: usize },
    Fixed { alpha: f64 },
}

fn positive(name: &str, v: f64) -> Result<f64> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(Error::invalid(format!("{name} must be positive and finite, got {v}")))
    }
}

fn nonzero(n_total: usize) -> Result<usize> {
    if n_total == 0 {
        Err(Error::invalid("n_total must be >= 1"))
    } else {
        Ok(n_total)
    }
}

impl StepSchedule {
    pub fn strongly_convex_decay(c: f64, n_total: usize) -> Result<Self> {
        Ok(StepSchedule::StronglyConvexDecay { c: positive("c", c)?, n_total: nonzero(n_total)? })
    }

    pub fn inverse_t(gamma: f64) -> Result<Self> {
        Ok(StepSchedule::InverseT { gamma: positive("gamma", gamma)? })
    }

    pub fn convex_sqrt_decay(alpha_bar: f64, n_total: usize) -> Result<Self> {
        Ok(StepSchedule::ConvexSqrtDecay {
            alpha_bar: positive("alpha_bar", alpha_bar)?,
            n_total: nonzero(n_total)?,
        })
    }

    pub fn fixed(alpha: f64) -> Result<Self> {
        Ok(StepSchedule::Fixed { alpha: positive("alpha", alpha)? })
    }

    /// Smallest admissible index `t`.
    pub fn first_index(&self) -> u64 {
        match self {
            StepSchedule::InverseT { .. } | StepSchedule::ConvexSqrtDecay { .. } => 1,
            _ => 0,
        }
    }

    pub fn step_size(&self, t: u64) -> Result<f64> {
        if t < self.first_index() {
            return Err(Error::invalid(format!("schedule {self:?} is defined for t >= 1, got t = {t}")));
        }
        let tf = t as f64;
        Ok(match *self {
            StepSchedule::StronglyConvexDecay { c, n_total } => 2.0 / (c * (tf + 1.0) * n_total as f64),
            StepSchedule::InverseT { gamma } => gamma / tf,
            StepSchedule::ConvexSqrtDecay { alpha_bar, n_total } => {
                alpha_bar / (math::sqrt(tf) * n_total as f64)
            }
            StepSchedule::Fixed { alpha } => alpha,
        })
    }

    /// Step used by the solver in outer iteration `t = 0, 1, ...`.
    ///
    /// Schedules indexed from 1 are shifted so that iteration 0 uses `alpha_1`.
    pub fn iteration_step(&self, t: usize) -> f64 {
        self.step_size(t as u64 + self.first_index())
            .expect("shifted index is always admissible")
    }
}

/// `n_a / (n_a + n_b)`.
pub fn lambda_star(n_a: usize, n_b: usize) -> Result<f64> {
    let n = n_a + n_b;
    if n == 0 {
        return Err(Error::invalid("lambda_star needs n_a + n_b >= 1"));
    }
    Ok(n_a as f64 / n as f64)
}
