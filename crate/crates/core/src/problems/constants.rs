//! Closed-form constants of the convergence assumptions.

use alloc::vec;

use super::{BiObjectiveProblem, Family};
use crate::error::{Error, Result};
use crate::math;
use crate::oracle::GradientOracle;
use crate::region::FeasibleRegion;
use crate::rng::NoiseStream;

/// A per-objective constant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pair {
    pub a: f64,
    pub b: f64,
}

impl Pair {
    pub fn new(a: f64, b: f64) -> Self {
        Pair { a, b }
    }

    pub fn max(&self) -> f64 {
        self.a.max(self.b)
    }

    pub fn min(&self) -> f64 {
        self.a.min(self.b)
    }
}

/// Constants entering the theoretical rate bounds.
///
/// Fields that do not apply to a problem family are `None`. `estimated`
/// marks results obtained by sampling rather than in closed form.
#[derive(Debug, Clone, PartialEq)]
pub struct ProblemConstants {
    /// Diameter of the feasible region.
    pub theta: f64,
    /// Gradient Lipschitz constants `L_i`.
    pub grad_lipschitz: Option<Pair>,
    /// Strong convexity moduli `c_i` (smooth case).
    pub strong_convexity: Option<Pair>,
    /// Bounds `M_i >= ||grad f_i(x)||^2` over the region.
    pub grad_norm_sq: Option<Pair>,
    /// Second moment `E||g||^2 <= G + G_bar ||grad f||^2`.
    pub g: f64,
    pub g_bar: f64,
    /// Function Lipschitz constants `L^_i`.
    pub fn_lipschitz: Option<Pair>,
    /// Subgradient second-moment bounds `L~_i` (`E||g||^2 <= L~_i^2`).
    pub subgrad_bound: Option<Pair>,
    /// Strong convexity moduli `c^_i` (nonsmooth case).
    pub nonsmooth_strong_convexity: Option<Pair>,
    pub sigma: f64,
    pub estimated: bool,
}

impl ProblemConstants {
    pub fn l(&self) -> Option<f64> {
        self.grad_lipschitz.map(|p| p.max())
    }

    pub fn c(&self) -> Option<f64> {
        self.strong_convexity.map(|p| p.min())
    }

    pub fn m_nabla(&self) -> Option<f64> {
        self.grad_norm_sq.map(|p| p.max())
    }

    /// `sqrt(G + G_bar M_nabla)`.
    pub fn g_hat(&self) -> Option<f64> {
        self.m_nabla().map(|m| math::sqrt(self.g + self.g_bar * m))
    }

    pub fn l_hat(&self) -> Option<f64> {
        self.fn_lipschitz.map(|p| p.max())
    }

    pub fn l_tilde(&self) -> Option<f64> {
        self.subgrad_bound.map(|p| p.max())
    }

    pub fn c_hat(&self) -> Option<f64> {
        self.nonsmooth_strong_convexity.map(|p| p.min())
    }
}

/// `sup_{x in region} ||m (x - p) + sign(x - p)||^2`; exact on boxes,
/// `(m R + sqrt(n))^2` elsewhere.
fn l1_quadratic_subgrad_sup_sq(region: &FeasibleRegion, p: &[f64], m: f64) -> f64 {
    match region {
        FeasibleRegion::Box { lower, upper } => p
            .iter()
            .zip(lower.iter().zip(upper))
            .map(|(pi, (l, u))| {
                let reach = (pi - l).abs().max((u - pi).abs());
                if reach > 0.0 {
                    (m * reach + 1.0) * (m * reach + 1.0)
                } else {
                    0.0
                }
            })
            .sum(),
        _ => {
            let r = region.farthest_distance(p);
            let v = m * r + math::sqrt(p.len() as f64);
            v * v
        }
    }
}

pub fn compute_constants(problem: &BiObjectiveProblem, sigma: f64) -> Result<ProblemConstants> {
    if !(sigma >= 0.0 && sigma.is_finite()) {
        return Err(Error::invalid(alloc::format!("sigma must be nonnegative, got {sigma}")));
    }
    let n = problem.dim() as f64;
    let region = &problem.region;
    let g = n * sigma * sigma;
    let mut out = ProblemConstants {
        theta: region.diameter(),
        grad_lipschitz: None,
        strong_convexity: None,
        grad_norm_sq: None,
        g,
        g_bar: 1.0,
        fn_lipschitz: None,
        subgrad_bound: None,
        nonsmooth_strong_convexity: None,
        sigma,
        estimated: false,
    };
    match &problem.family {
        Family::QuadraticPair { a, b, curvature_a, curvature_b } => {
            let ra = region.farthest_distance(a);
            let rb = region.farthest_distance(b);
            let curv = Pair::new(*curvature_a, *curvature_b);
            let msq = Pair::new(curvature_a * curvature_a * ra * ra, curvature_b * curvature_b * rb * rb);
            out.grad_lipschitz = Some(curv);
            out.strong_convexity = Some(curv);
            out.nonsmooth_strong_convexity = Some(curv);
            out.grad_norm_sq = Some(msq);
            out.fn_lipschitz = Some(Pair::new(curvature_a * ra, curvature_b * rb));
            out.subgrad_bound = Some(Pair::new(math::sqrt(msq.a + g), math::sqrt(msq.b + g)));
        }
        Family::NonsmoothPair { a, b, modulus } => {
            let sa = l1_quadratic_subgrad_sup_sq(region, a, *modulus);
            let sb = l1_quadratic_subgrad_sup_sq(region, b, *modulus);
            out.fn_lipschitz = Some(Pair::new(math::sqrt(sa), math::sqrt(sb)));
            out.subgrad_bound = Some(Pair::new(math::sqrt(sa + g), math::sqrt(sb + g)));
            if *modulus > 0.0 {
                out.nonsmooth_strong_convexity = Some(Pair::new(*modulus, *modulus));
            }
        }
        Family::Benchmark(_) => {
            let (la, lha) = estimate_lipschitz(problem.oracle_a.as_ref(), region);
            let (lb, lhb) = estimate_lipschitz(problem.oracle_b.as_ref(), region);
            out.grad_lipschitz = Some(Pair::new(la, lb));
            out.fn_lipschitz = Some(Pair::new(lha, lhb));
            out.estimated = true;
        }
    }
    Ok(out)
}

/// Sampled estimates of the gradient and function Lipschitz constants,
/// with gradients taken by central differences.
fn estimate_lipschitz(f: &dyn GradientOracle, region: &FeasibleRegion) -> (f64, f64) {
    let n = f.dim();
    let scale = region.diameter().max(1.0);
    let h = 1e-6 * scale;
    let fd = |x: &[f64]| {
        let mut g = vec![0.0; n];
        let mut xp = x.to_vec();
        for i in 0..n {
            let xi = xp[i];
            xp[i] = xi + h;
            let up = f.value(&xp);
            xp[i] = xi - h;
            let dn = f.value(&xp);
            xp[i] = xi;
            g[i] = (up - dn) / (2.0 * h);
        }
        g
    };
    let mut stream = NoiseStream::new(0x1a9).start_key(0).stream();
    let (mut grad_l, mut fn_l) = (0.0_f64, 0.0_f64);
    for _ in 0..2000 {
        let x = region.sample_uniform(&mut stream);
        let y = region.sample_uniform(&mut stream);
        let (gx, gy) = (fd(&x), fd(&y));
        fn_l = fn_l.max(math::norm(&gx)).max(math::norm(&gy));
        let d = math::dist(&x, &y);
        if d > 1e-9 * scale {
            grad_l = grad_l.max(math::dist(&gx, &gy) / d);
        }
    }
    (grad_l, fn_l)
}
