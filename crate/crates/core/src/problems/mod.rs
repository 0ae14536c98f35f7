//! Bi-objective problem definitions: analytic synthetic families, the
//! benchmark set, noise attachment and closed-form assumption constants.

mod benchmarks;
mod constants;
pub mod objectives;

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

pub use benchmarks::{BenchmarkName, BenchmarkObjective, GaussianBumps, MANIFEST};
pub use constants::{compute_constants, Pair, ProblemConstants};

use crate::error::{Error, Result};
use crate::math;
use crate::oracle::{combine, Noisy, SharedOracle};
use crate::point::Point;
use crate::region::FeasibleRegion;
use objectives::{L1Quadratic, Quadratic};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    SmoothStronglyConvex,
    SmoothConvex,
    NonsmoothStronglyConvex,
    NonsmoothConvex,
    NonconvexBenchmark,
}

impl Regime {
    pub fn as_str(&self) -> &'static str {
        match self {
            Regime::SmoothStronglyConvex => "smooth-sc",
            Regime::SmoothConvex => "smooth-convex",
            Regime::NonsmoothStronglyConvex => "nonsmooth-sc",
            Regime::NonsmoothConvex => "nonsmooth-convex",
            Regime::NonconvexBenchmark => "nonconvex-benchmark",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        [
            Regime::SmoothStronglyConvex,
            Regime::SmoothConvex,
            Regime::NonsmoothStronglyConvex,
            Regime::NonsmoothConvex,
            Regime::NonconvexBenchmark,
        ]
        .into_iter()
        .find(|r| r.as_str() == s)
        .ok_or_else(|| Error::invalid(format!("unknown regime {s:?}")))
    }

    pub fn is_smooth(&self) -> bool {
        matches!(self, Regime::SmoothStronglyConvex | Regime::SmoothConvex)
    }

    pub fn is_strongly_convex(&self) -> bool {
        matches!(self, Regime::SmoothStronglyConvex | Regime::NonsmoothStronglyConvex)
    }
}

/// Analytic description of how a problem was built.
#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    QuadraticPair { a: Vec<f64>, b: Vec<f64>, curvature_a: f64, curvature_b: f64 },
    NonsmoothPair { a: Vec<f64>, b: Vec<f64>, modulus: f64 },
    Benchmark(BenchmarkName),
}

/// Known Pareto set in decision space.
#[derive(Debug, Clone, PartialEq)]
pub enum ParetoSet {
    Segment { a: Vec<f64>, b: Vec<f64> },
}

impl ParetoSet {
    pub fn distance(&self, x: &[f64]) -> f64 {
        match self {
            ParetoSet::Segment { a, b } => {
                let ab: Vec<f64> = b.iter().zip(a).map(|(bi, ai)| bi - ai).collect();
                let len_sq = math::norm_sq(&ab);
                let s = if len_sq > 0.0 {
                    let ax: Vec<f64> = x.iter().zip(a).map(|(xi, ai)| xi - ai).collect();
                    (math::dot(&ax, &ab) / len_sq).clamp(0.0, 1.0)
                } else {
                    0.0
                };
                let proj: Vec<f64> = a.iter().zip(&ab).map(|(ai, d)| ai + s * d).collect();
                math::dist(x, &proj)
            }
        }
    }
}

/// `min F(x) = (f_a(x), f_b(x))` over a feasible region.
#[derive(Debug, Clone)]
pub struct BiObjectiveProblem {
    pub name: String,
    pub region: FeasibleRegion,
    pub oracle_a: SharedOracle,
    pub oracle_b: SharedOracle,
    pub regime: Regime,
    pub family: Family,
    base_a: SharedOracle,
    base_b: SharedOracle,
    sigma: f64,
}

impl BiObjectiveProblem {
    fn from_parts(
        name: String,
        region: FeasibleRegion,
        a: SharedOracle,
        b: SharedOracle,
        regime: Regime,
        family: Family,
    ) -> Self {
        BiObjectiveProblem {
            name,
            region,
            oracle_a: a.clone(),
            oracle_b: b.clone(),
            regime,
            family,
            base_a: a,
            base_b: b,
            sigma: 0.0,
        }
    }

    pub fn dim(&self) -> usize {
        self.region.dim()
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn f_a(&self, x: &[f64]) -> f64 {
        self.oracle_a.value(x)
    }

    pub fn f_b(&self, x: &[f64]) -> f64 {
        self.oracle_b.value(x)
    }

    pub fn weighted_value(&self, lambda: f64, x: &[f64]) -> f64 {
        combine(lambda, self.f_a(x), self.f_b(x))
    }

    /// Re-declares the regime. Only weakenings compatible with the
    /// construction are accepted (e.g. strongly convex to convex).
    pub fn with_regime(mut self, regime: Regime) -> Result<Self> {
        let ok = match (&self.family, regime) {
            (Family::QuadraticPair { .. }, Regime::SmoothStronglyConvex | Regime::SmoothConvex) => true,
            (Family::NonsmoothPair { modulus, .. }, Regime::NonsmoothStronglyConvex) => *modulus > 0.0,
            (Family::NonsmoothPair { .. }, Regime::NonsmoothConvex) => true,
            (Family::Benchmark(_), Regime::NonconvexBenchmark) => true,
            _ => false,
        };
        if !ok {
            return Err(Error::invalid(format!(
                "regime {} is not compatible with problem {}",
                regime.as_str(),
                self.name
            )));
        }
        self.regime = regime;
        Ok(self)
    }

    /// Constrained minimizer of `S(., lambda)` when it is known in closed form.
    pub fn analytic_weighted_minimizer(&self, lambda: f64) -> Option<Point> {
        if !(0.0..=1.0).contains(&lambda) {
            return None;
        }
        match &self.family {
            Family::QuadraticPair { a, b, curvature_a, curvature_b } => {
                // S is isotropic around its unconstrained minimizer, so the
                // constrained minimizer is the projection of it
                let wa = lambda * curvature_a;
                let wb = (1.0 - lambda) * curvature_b;
                let mut p: Vec<f64> = a.iter().zip(b).map(|(ai, bi)| (wa * ai + wb * bi) / (wa + wb)).collect();
                self.region.project_in_place(&mut p);
                Some(Point::from_vec_unchecked(p))
            }
            Family::NonsmoothPair { a, b, modulus } => match &self.region {
                FeasibleRegion::Box { lower, upper } => {
                    let coords = (0..a.len())
                        .map(|i| separable_l1_minimizer(lambda, a[i], b[i], *modulus, lower[i], upper[i]))
                        .collect();
                    Some(Point::from_vec_unchecked(coords))
                }
                _ => None,
            },
            Family::Benchmark(_) => None,
        }
    }

    pub fn analytic_pareto_set(&self) -> Option<ParetoSet> {
        match &self.family {
            Family::QuadraticPair { a, b, .. } => {
                if self.region.contains(a, 0.0) && self.region.contains(b, 0.0) {
                    Some(ParetoSet::Segment { a: a.clone(), b: b.clone() })
                } else {
                    None
                }
            }
            _ => None,
        }
    }
}

/// Minimizer over `[lo, hi]` of
/// `lambda ((m/2)(x-a)^2 + |x-a|) + (1-lambda) ((m/2)(x-b)^2 + |x-b|)`.
///
/// The function is convex and piecewise quadratic, so its minimum over the
/// interval is attained at a breakpoint, an endpoint or a piece's stationary point.
fn separable_l1_minimizer(lambda: f64, a: f64, b: f64, m: f64, lo: f64, hi: f64) -> f64 {
    let h = |x: f64| {
        lambda * (0.5 * m * (x - a) * (x - a) + (x - a).abs())
            + (1.0 - lambda) * (0.5 * m * (x - b) * (x - b) + (x - b).abs())
    };
    let mut candidates: Vec<f64> = alloc::vec![a, b, lo, hi];
    if m > 0.0 {
        let centre = lambda * a + (1.0 - lambda) * b;
        for sa in [-1.0, 1.0] {
            for sb in [-1.0, 1.0] {
                candidates.push(centre - (lambda * sa + (1.0 - lambda) * sb) / m);
            }
        }
    }
    let mut best = f64::NAN;
    let mut best_val = f64::INFINITY;
    for c in candidates {
        let c = c.clamp(lo, hi);
        let v = h(c);
        if v < best_val {
            best_val = v;
            best = c;
        }
    }
    best
}

fn check_pair_dims(a: &Point, b: &Point, region: &FeasibleRegion) -> Result<()> {
    if a.dim() != b.dim() || a.dim() != region.dim() {
        return Err(Error::invalid(format!(
            "dimension mismatch: a has {}, b has {}, region has {}",
            a.dim(),
            b.dim(),
            region.dim()
        )));
    }
    Ok(())
}

/// `f_a = (c_a/2)||x-a||^2`, `f_b = (c_b/2)||x-b||^2`.
pub fn quadratic_pair(
    a: Point,
    b: Point,
    curvature_a: f64,
    curvature_b: f64,
    region: FeasibleRegion,
) -> Result<BiObjectiveProblem> {
    check_pair_dims(&a, &b, &region)?;
    for (name, c) in [("curvature_a", curvature_a), ("curvature_b", curvature_b)] {
        if !(c > 0.0 && c.is_finite()) {
            return Err(Error::invalid(format!("{name} must be positive, got {c}")));
        }
    }
    let (a, b) = (a.into_vec(), b.into_vec());
    let oa: SharedOracle = Arc::new(Quadratic::new(a.clone(), curvature_a));
    let ob: SharedOracle = Arc::new(Quadratic::new(b.clone(), curvature_b));
    Ok(BiObjectiveProblem::from_parts(
        format!("quadratic-pair-{}d", a.len()),
        region,
        oa,
        ob,
        Regime::SmoothStronglyConvex,
        Family::QuadraticPair { a, b, curvature_a, curvature_b },
    ))
}

/// `f_i = (modulus/2)||x-p_i||^2 + ||x-p_i||_1`; `modulus = 0` is the plain convex case.
pub fn nonsmooth_pair(a: Point, b: Point, modulus: f64, region: FeasibleRegion) -> Result<BiObjectiveProblem> {
    check_pair_dims(&a, &b, &region)?;
    if !(modulus >= 0.0 && modulus.is_finite()) {
        return Err(Error::invalid(format!("modulus must be nonnegative, got {modulus}")));
    }
    let (a, b) = (a.into_vec(), b.into_vec());
    let oa: SharedOracle = Arc::new(L1Quadratic::new(a.clone(), modulus));
    let ob: SharedOracle = Arc::new(L1Quadratic::new(b.clone(), modulus));
    let regime = if modulus > 0.0 { Regime::NonsmoothStronglyConvex } else { Regime::NonsmoothConvex };
    Ok(BiObjectiveProblem::from_parts(
        format!("nonsmooth-pair-{}d", a.len()),
        region,
        oa,
        ob,
        regime,
        Family::NonsmoothPair { a, b, modulus },
    ))
}

pub fn benchmark_problem(name: &str) -> Result<BiObjectiveProblem> {
    let which = BenchmarkName::parse(name)?;
    let (fa, fb) = which.objectives();
    Ok(BiObjectiveProblem::from_parts(
        benchmarks::display_name(which),
        which.region(),
        Arc::new(fa),
        Arc::new(fb),
        Regime::NonconvexBenchmark,
        Family::Benchmark(which),
    ))
}

/// Additive Gaussian gradient noise of scale `sigma` on both objectives.
/// Replaces any noise attached earlier; `sigma = 0` leaves gradients exact.
pub fn attach_noise(problem: &BiObjectiveProblem, sigma: f64) -> Result<BiObjectiveProblem> {
    if !(sigma >= 0.0 && sigma.is_finite()) {
        return Err(Error::invalid(format!("sigma must be nonnegative, got {sigma}")));
    }
    let mut p = problem.clone();
    p.sigma = sigma;
    if sigma == 0.0 {
        p.oracle_a = p.base_a.clone();
        p.oracle_b = p.base_b.clone();
    } else {
        p.oracle_a = Arc::new(Noisy::new(p.base_a.clone(), sigma));
        p.oracle_b = Arc::new(Noisy::new(p.base_b.clone(), sigma));
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn pt(v: &[f64]) -> Point {
        Point::new(v.to_vec()).unwrap()
    }

    fn grid_argmin(f: impl Fn(f64) -> f64, lo: f64, hi: f64, n: usize) -> f64 {
        (0..=n)
            .map(|i| lo + (hi - lo) * i as f64 / n as f64)
            .min_by(|x, y| f(*x).total_cmp(&f(*y)))
            .unwrap()
    }

    #[test]
    fn quadratic_minimizer_examples() {
        let box1 = FeasibleRegion::interval(-10.0, 10.0).unwrap();
        let p = quadratic_pair(pt(&[0.0]), pt(&[2.0]), 1.0, 1.0, box1).unwrap();
        assert!((p.analytic_weighted_minimizer(0.75).unwrap()[0] - 0.5).abs() < 1e-15);
        assert_eq!(p.analytic_weighted_minimizer(1.0).unwrap()[0], 0.0);

        let box2 = FeasibleRegion::new_box(vec![-1.0, -1.0], vec![3.0, 1.0]).unwrap();
        let p = quadratic_pair(pt(&[0.0, 0.0]), pt(&[2.0, 0.0]), 1.0, 3.0, box2).unwrap();
        let m = p.analytic_weighted_minimizer(0.5).unwrap();
        assert!((m[0] - 1.5).abs() < 1e-15 && m[1] == 0.0);
        // 2-D grid oracle
        let n = 400;
        let mut best = (f64::INFINITY, [0.0, 0.0]);
        for i in 0..=n {
            for j in 0..=n {
                let x = [-1.0 + 4.0 * i as f64 / n as f64, -1.0 + 2.0 * j as f64 / n as f64];
                let v = p.weighted_value(0.5, &x);
                if v < best.0 {
                    best = (v, x);
                }
            }
        }
        assert!((best.1[0] - 1.5).abs() <= 0.01 && best.1[1].abs() <= 0.005);
    }

    #[test]
    fn zero_curvature_rejected() {
        let r = FeasibleRegion::interval(-1.0, 1.0).unwrap();
        assert!(quadratic_pair(pt(&[0.0]), pt(&[1.0]), 0.0, 1.0, r.clone()).is_err());
        assert!(quadratic_pair(pt(&[0.0, 0.0]), pt(&[1.0]), 1.0, 1.0, r).is_err());
    }

    #[test]
    fn nonsmooth_examples() {
        let r = FeasibleRegion::interval(-10.0, 10.0).unwrap();
        let p = nonsmooth_pair(pt(&[0.0]), pt(&[2.0]), 0.0, r.clone()).unwrap();
        assert_eq!(p.regime, Regime::NonsmoothConvex);
        assert_eq!(p.oracle_a.deterministic_gradient(&[2.0]), vec![1.0]);
        let p = nonsmooth_pair(pt(&[0.0]), pt(&[2.0]), 1.0, r).unwrap();
        assert_eq!(p.regime, Regime::NonsmoothStronglyConvex);
        assert_eq!(p.f_a(&[-3.0]), 7.5);
        let m = p.analytic_weighted_minimizer(0.5).unwrap()[0];
        let g = grid_argmin(|x| p.weighted_value(0.5, &[x]), -10.0, 10.0, 200_000);
        assert!((m - 1.0).abs() < 1e-12);
        assert!((g - 1.0).abs() <= 1e-4);
    }

    #[test]
    fn nonsmooth_minimizer_matches_grid_for_many_lambdas() {
        let r = FeasibleRegion::interval(-1.0, 3.0).unwrap();
        for modulus in [0.0, 0.3, 1.0, 4.0] {
            let p = nonsmooth_pair(pt(&[0.0]), pt(&[2.0]), modulus, r.clone()).unwrap();
            for k in 0..=10 {
                let lambda = k as f64 / 10.0;
                let m = p.analytic_weighted_minimizer(lambda).unwrap();
                let grid_best = (0..=40_000)
                    .map(|i| p.weighted_value(lambda, &[-1.0 + 4.0 * i as f64 / 40_000.0]))
                    .fold(f64::INFINITY, f64::min);
                assert!(p.weighted_value(lambda, &m) <= grid_best + 1e-12, "m={modulus} l={lambda}");
            }
        }
    }

    #[test]
    fn benchmark_lookup() {
        let p = benchmark_problem("MOP1").unwrap();
        assert_eq!(p.f_a(&[1.0]), 1.0);
        assert_eq!(p.f_b(&[1.0]), 1.0);
        match benchmark_problem("nosuch") {
            Err(Error::InvalidInput(msg)) => {
                for n in ["MOP1", "IM1", "MOP3", "FAR1"] {
                    assert!(msg.contains(n));
                }
            }
            other => panic!("{other:?}"),
        }
        for name in BenchmarkName::ALL {
            let p = benchmark_problem(name.as_str()).unwrap();
            for v in p.region.vertices() {
                assert!(p.f_a(&v).is_finite() && p.f_b(&v).is_finite(), "{name}");
            }
        }
    }

    #[test]
    fn noise_attachment() {
        let r = FeasibleRegion::interval(-1.0, 3.0).unwrap();
        let p = quadratic_pair(pt(&[0.0]), pt(&[2.0]), 1.0, 1.0, r).unwrap();
        let q = attach_noise(&p, 0.0).unwrap();
        let key = crate::rng::NoiseKey(99);
        assert_eq!(q.oracle_a.stochastic_gradient(&[0.7], key), q.oracle_a.deterministic_gradient(&[0.7]));
        let noisy = attach_noise(&p, 0.1).unwrap();
        assert_ne!(noisy.oracle_a.stochastic_gradient(&[0.7], key), noisy.oracle_a.deterministic_gradient(&[0.7]));
        // re-attaching replaces rather than stacks
        let again = attach_noise(&noisy, 0.2).unwrap();
        assert_eq!(again.oracle_a.noise_sigma(), 0.2);
        assert!(attach_noise(&p, -1.0).is_err());
    }

    #[test]
    fn regime_redeclaration() {
        let r = FeasibleRegion::interval(-1.0, 3.0).unwrap();
        let p = quadratic_pair(pt(&[0.0]), pt(&[2.0]), 1.0, 1.0, r.clone()).unwrap();
        assert_eq!(p.clone().with_regime(Regime::SmoothConvex).unwrap().regime, Regime::SmoothConvex);
        assert!(p.with_regime(Regime::NonsmoothConvex).is_err());
        let n = nonsmooth_pair(pt(&[0.0]), pt(&[2.0]), 0.0, r).unwrap();
        assert!(n.with_regime(Regime::NonsmoothStronglyConvex).is_err());
    }

    #[test]
    fn segment_distance() {
        let s = ParetoSet::Segment { a: vec![0.0, 0.0], b: vec![2.0, 0.0] };
        assert_eq!(s.distance(&[1.0, 1.0]), 1.0);
        assert_eq!(s.distance(&[3.0, 0.0]), 1.0);
        assert_eq!(s.distance(&[0.5, 0.0]), 0.0);
    }
}
