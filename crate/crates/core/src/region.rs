//! Compact convex feasible regions with exact Euclidean projections.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math;
use crate::point::Point;
use crate::rng::KeyStream;

#[derive(Debug, Clone, PartialEq)]
pub enum FeasibleRegion {
    /// Axis-aligned box `lower <= x <= upper`.
    Box { lower: Vec<f64>, upper: Vec<f64> },
    /// Closed Euclidean ball.
    Ball { center: Vec<f64>, radius: f64 },
    /// Scaled probability simplex `{x >= 0, sum(x) = scale}` in `R^dim`.
    Simplex { dim: usize, scale: f64 },
}

impl FeasibleRegion {
    pub fn new_box(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.is_empty() || lower.len() != upper.len() {
            return Err(Error::invalid(format!(
                "box bounds must be non-empty and of equal length (got {} and {})",
                lower.len(),
                upper.len()
            )));
        }
        for (i, (l, u)) in lower.iter().zip(&upper).enumerate() {
            if !l.is_finite() || !u.is_finite() || l > u {
                return Err(Error::invalid(format!("box coordinate {i}: need finite lower <= upper, got [{l}, {u}]")));
            }
        }
        Ok(FeasibleRegion::Box { lower, upper })
    }

    pub fn interval(lower: f64, upper: f64) -> Result<Self> {
        Self::new_box(vec![lower], vec![upper])
    }

    pub fn ball(center: Vec<f64>, radius: f64) -> Result<Self> {
        if center.is_empty() || center.iter().any(|c| !c.is_finite()) {
            return Err(Error::invalid("ball center must be a finite non-empty vector"));
        }
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::invalid(format!("ball radius must be positive, got {radius}")));
        }
        Ok(FeasibleRegion::Ball { center, radius })
    }

    pub fn simplex(dim: usize, scale: f64) -> Result<Self> {
        if dim == 0 {
            return Err(Error::invalid("simplex dimension must be >= 1"));
        }
        if !(scale > 0.0 && scale.is_finite()) {
            return Err(Error::invalid(format!("simplex scale must be positive, got {scale}")));
        }
        Ok(FeasibleRegion::Simplex { dim, scale })
    }

    pub fn dim(&self) -> usize {
        match self {
            FeasibleRegion::Box { lower, .. } => lower.len(),
            FeasibleRegion::Ball { center, .. } => center.len(),
            FeasibleRegion::Simplex { dim, .. } => *dim,
        }
    }

    fn check_dim(&self, n: usize) -> Result<()> {
        if n != self.dim() {
            return Err(Error::invalid(format!(
                "dimension mismatch: region has dimension {}, point has {n}",
                self.dim()
            )));
        }
        Ok(())
    }

    /// Euclidean projection onto the region.
    pub fn project(&self, x: &Point) -> Result<Point> {
        self.check_dim(x.dim())?;
        let mut y = x.as_slice().to_vec();
        self.project_in_place(&mut y);
        Ok(Point::from_vec_unchecked(y))
    }

    /// Projects a raw coordinate buffer whose length already matches.
    pub(crate) fn project_in_place(&self, y: &mut [f64]) {
        match self {
            FeasibleRegion::Box { lower, upper } => {
                for ((yi, l), u) in y.iter_mut().zip(lower).zip(upper) {
                    *yi = yi.clamp(*l, *u);
                }
            }
            FeasibleRegion::Ball { center, radius } => {
                let d = math::dist(y, center);
                if d > *radius {
                    let s = radius / d;
                    for (yi, c) in y.iter_mut().zip(center) {
                        *yi = c + (*yi - c) * s;
                    }
                }
            }
            FeasibleRegion::Simplex { scale, .. } => project_simplex(y, *scale),
        }
    }

    /// Membership up to an absolute tolerance.
    pub fn contains(&self, x: &[f64], tol: f64) -> bool {
        if x.len() != self.dim() {
            return false;
        }
        match self {
            FeasibleRegion::Box { lower, upper } => x
                .iter()
                .zip(lower.iter().zip(upper))
                .all(|(v, (l, u))| *v >= l - tol && *v <= u + tol),
            FeasibleRegion::Ball { center, radius } => math::dist(x, center) <= radius + tol,
            FeasibleRegion::Simplex { scale, .. } => {
                let sum: f64 = x.iter().sum();
                x.iter().all(|v| *v >= -tol) && (sum - scale).abs() <= tol * x.len() as f64
            }
        }
    }

    /// Exact diameter: the largest distance between two points of the region.
    pub fn diameter(&self) -> f64 {
        match self {
            FeasibleRegion::Box { lower, upper } => math::dist(lower, upper),
            FeasibleRegion::Ball { radius, .. } => 2.0 * radius,
            FeasibleRegion::Simplex { dim, scale } => {
                if *dim == 1 {
                    0.0
                } else {
                    scale * core::f64::consts::SQRT_2
                }
            }
        }
    }

    /// `max_{x in region} ||x - p||`, exact for every variant.
    pub fn farthest_distance(&self, p: &[f64]) -> f64 {
        match self {
            FeasibleRegion::Box { lower, upper } => {
                let s: f64 = p
                    .iter()
                    .zip(lower.iter().zip(upper))
                    .map(|(pi, (l, u))| {
                        let m = (pi - l).abs().max((u - pi).abs());
                        m * m
                    })
                    .sum();
                math::sqrt(s)
            }
            FeasibleRegion::Ball { center, radius } => math::dist(p, center) + radius,
            FeasibleRegion::Simplex { dim, scale } => {
                // a convex function attains its maximum over a polytope at a vertex
                let base = math::norm_sq(p);
                let sq = (0..*dim)
                    .map(|i| base - p[i] * p[i] + (p[i] - scale) * (p[i] - scale))
                    .fold(0.0_f64, f64::max);
                math::sqrt(sq)
            }
        }
    }

    /// Draws a point uniformly distributed in the region.
    pub fn sample_uniform(&self, stream: &mut KeyStream) -> Point {
        let coords = match self {
            FeasibleRegion::Box { lower, upper } => lower
                .iter()
                .zip(upper)
                .map(|(l, u)| l + (u - l) * stream.next_f64())
                .collect(),
            FeasibleRegion::Ball { center, radius } => {
                let n = center.len();
                let mut dir: Vec<f64> = (0..n).map(|_| stream.next_gaussian()).collect();
                let norm = math::norm(&dir);
                let r = radius * math::powf(stream.next_f64(), 1.0 / n as f64);
                let s = if norm > 0.0 { r / norm } else { 0.0 };
                for (d, c) in dir.iter_mut().zip(center) {
                    *d = c + *d * s;
                }
                dir
            }
            FeasibleRegion::Simplex { dim, scale } => {
                let e: Vec<f64> = (0..*dim).map(|_| -math::ln(1.0 - stream.next_f64())).collect();
                let total: f64 = e.iter().sum();
                if total > 0.0 {
                    e.iter().map(|v| scale * v / total).collect()
                } else {
                    vec![scale / *dim as f64; *dim]
                }
            }
        };
        Point::from_vec_unchecked(coords)
    }

    /// Corner points used for boundedness checks; boxes only list up to 2^10 corners.
    pub fn vertices(&self) -> Vec<Vec<f64>> {
        match self {
            FeasibleRegion::Box { lower, upper } => {
                let n = lower.len().min(10);
                (0..(1usize << n))
                    .map(|mask| {
                        lower
                            .iter()
                            .zip(upper)
                            .enumerate()
                            .map(|(i, (l, u))| if i < n && mask & (1 << i) != 0 { *u } else { *l })
                            .collect()
                    })
                    .collect()
            }
            FeasibleRegion::Ball { center, radius } => {
                let mut out = Vec::new();
                for i in 0..center.len() {
                    for s in [-1.0, 1.0] {
                        let mut v = center.clone();
                        v[i] += s * radius;
                        out.push(v);
                    }
                }
                out
            }
            FeasibleRegion::Simplex { dim, scale } => (0..*dim)
                .map(|i| {
                    let mut v = vec![0.0; *dim];
                    v[i] = *scale;
                    v
                })
                .collect(),
        }
    }
}

/// Sort-based exact projection onto `{x >= 0, sum(x) = scale}`.
fn project_simplex(y: &mut [f64], scale: f64) {
    let mut u = y.to_vec();
    u.sort_unstable_by(|a, b| b.total_cmp(a));
    let mut cumsum = 0.0;
    let mut theta = 0.0;
    for (j, uj) in u.iter().enumerate() {
        cumsum += uj;
        let t = (cumsum - scale) / (j + 1) as f64;
        if uj - t > 0.0 {
            theta = t;
        }
    }
    for yi in y.iter_mut() {
        *yi = (*yi - theta).max(0.0);
    }
}
