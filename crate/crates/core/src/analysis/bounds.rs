//! Closed-form theoretical rate bounds.

use alloc::format;

use crate::error::{Error, Result};
use crate::math;
use crate::problems::{ProblemConstants, Regime};

#[derive(Debug, Clone, PartialEq)]
pub struct RateBoundInputs {
    pub constants: ProblemConstants,
    pub n_a: usize,
    pub n_b: usize,
    pub regime: Regime,
    /// Step constant of the square-root schedule (convex regimes).
    pub alpha_bar: Option<f64>,
}

impl RateBoundInputs {
    pub fn new(constants: ProblemConstants, n_a: usize, n_b: usize, regime: Regime) -> Self {
        RateBoundInputs { constants, n_a, n_b, regime, alpha_bar: None }
    }

    pub fn with_alpha_bar(mut self, alpha_bar: f64) -> Self {
        self.alpha_bar = Some(alpha_bar);
        self
    }

    pub fn n_total(&self) -> usize {
        self.n_a + self.n_b
    }
}

fn positive(name: &str, v: Option<f64>) -> Result<f64> {
    match v {
        Some(x) if x > 0.0 && x.is_finite() => Ok(x),
        Some(x) => Err(Error::invalid(format!("constant {name} must be positive and finite, got {x}"))),
        None => Err(Error::invalid(format!("constant {name} is not available for this problem"))),
    }
}

fn nonneg(name: &str, v: Option<f64>) -> Result<f64> {
    match v {
        Some(x) if x >= 0.0 && x.is_finite() => Ok(x),
        Some(x) => Err(Error::invalid(format!("constant {name} must be nonnegative and finite, got {x}"))),
        None => Err(Error::invalid(format!("constant {name} is not available for this problem"))),
    }
}

fn check_horizon(t: usize) -> Result<f64> {
    if t == 0 {
        Err(Error::invalid("horizon T must be >= 1"))
    } else {
        Ok(t as f64)
    }
}

fn check_regime(inputs: &RateBoundInputs, smooth: bool, strongly_convex: bool) -> Result<()> {
    let r = inputs.regime;
    if r.is_smooth() != smooth || (strongly_convex && !r.is_strongly_convex()) || r == Regime::NonconvexBenchmark {
        return Err(Error::invalid(format!("bound does not apply to regime {}", r.as_str())));
    }
    Ok(())
}

/// `4 / (c (T + 1)) * (G_hat^2 + L Theta G_hat)`.
pub fn theoretical_bound_smooth_sc(inputs: &RateBoundInputs, t: usize) -> Result<f64> {
    check_regime(inputs, true, true)?;
    let t = check_horizon(t)?;
    let k = &inputs.constants;
    let c = positive("c", k.c())?;
    let l = nonneg("L", k.l())?;
    let g_hat = nonneg("G_hat", k.g_hat())?;
    let theta = nonneg("Theta", Some(k.theta))?;
    Ok(4.0 / (c * (t + 1.0)) * (g_hat * g_hat + l * theta * g_hat))
}

/// `4 / (c_hat (T + 1)) * (2 L~^2 + L^ L~ + c_hat Theta L~)`.
pub fn theoretical_bound_nonsmooth_sc(inputs: &RateBoundInputs, t: usize) -> Result<f64> {
    check_regime(inputs, false, true)?;
    let t = check_horizon(t)?;
    let k = &inputs.constants;
    let c_hat = positive("c_hat", k.c_hat())?;
    let l_hat = nonneg("L_hat", k.l_hat())?;
    let l_tilde = nonneg("L_tilde", k.l_tilde())?;
    let theta = nonneg("Theta", Some(k.theta))?;
    Ok(4.0 / (c_hat * (t + 1.0)) * (2.0 * l_tilde * l_tilde + l_hat * l_tilde + c_hat * theta * l_tilde))
}

/// Square-root-schedule bounds:
/// nonsmooth `(Theta^2 / (2 a) + 4 a L~^2 + 2 a L~ L^) / sqrt(T)`,
/// smooth `(Theta^2 / (2 a) + 2 a G_hat^2 + 2 a L Theta G_hat) / sqrt(T)`.
pub fn theoretical_bound_convex(inputs: &RateBoundInputs, t: usize, smooth: bool) -> Result<f64> {
    check_regime(inputs, smooth, false)?;
    let t = check_horizon(t)?;
    let k = &inputs.constants;
    let a = positive("alpha_bar", inputs.alpha_bar)?;
    let theta = nonneg("Theta", Some(k.theta))?;
    let head = theta * theta / (2.0 * a);
    let tail = if smooth {
        let g_hat = nonneg("G_hat", k.g_hat())?;
        let l = nonneg("L", k.l())?;
        2.0 * a * g_hat * g_hat + 2.0 * a * l * theta * g_hat
    } else {
        let l_tilde = nonneg("L_tilde", k.l_tilde())?;
        let l_hat = nonneg("L_hat", k.l_hat())?;
        4.0 * a * l_tilde * l_tilde + 2.0 * a * l_tilde * l_hat
    };
    Ok((head + tail) / math::sqrt(t))
}

/// Expected squared iterate error under `alpha_t = gamma / t`:
/// `max{2 gamma^2 M / (2 c n gamma - 1), ||x_0 - x_*||^2} / T` with
/// `M = 2 n^2 (G_hat^2 + L Theta G_hat)`. Needs `gamma > 1 / (2 n c)`.
pub fn theoretical_bound_iterate(inputs: &RateBoundInputs, gamma: f64, x0_dist_sq: f64, t: usize) -> Result<f64> {
    check_regime(inputs, true, true)?;
    let t = check_horizon(t)?;
    let k = &inputs.constants;
    let c = positive("c", k.c())?;
    let l = nonneg("L", k.l())?;
    let g_hat = nonneg("G_hat", k.g_hat())?;
    let n = inputs.n_total() as f64;
    if n == 0.0 {
        return Err(Error::invalid("n_a + n_b must be >= 1"));
    }
    let threshold = 1.0 / (2.0 * n * c);
    if !(gamma > threshold) {
        return Err(Error::invalid(format!("gamma = {gamma} must exceed 1 / (2 n c) = {threshold}")));
    }
    if !(x0_dist_sq >= 0.0) {
        return Err(Error::invalid("initial squared error must be nonnegative"));
    }
    let m = 2.0 * n * n * (g_hat * g_hat + l * k.theta * g_hat);
    let lead = 2.0 * gamma * gamma * m / (2.0 * c * n * gamma - 1.0);
    Ok(lead.max(x0_dist_sq) / t)
}

/// The bound matching `inputs.regime`.
pub fn theoretical_bound(inputs: &RateBoundInputs, t: usize) -> Result<f64> {
    match inputs.regime {
        Regime::SmoothStronglyConvex => theoretical_bound_smooth_sc(inputs, t),
        Regime::NonsmoothStronglyConvex => theoretical_bound_nonsmooth_sc(inputs, t),
        Regime::SmoothConvex => theoretical_bound_convex(inputs, t, true),
        Regime::NonsmoothConvex => theoretical_bound_convex(inputs, t, false),
        Regime::NonconvexBenchmark => Err(Error::invalid("no rate bound for nonconvex benchmarks")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::point::Point;
    use crate::problems::Pair;
    use crate::problems::{compute_constants, nonsmooth_pair, quadratic_pair};
    use crate::region::FeasibleRegion;

    fn unit() -> ProblemConstants {
        let one = Some(Pair::new(1.0, 1.0));
        ProblemConstants {
            theta: 1.0,
            grad_lipschitz: one,
            strong_convexity: one,
            // G_hat = sqrt(0 + 1 * 1) = 1
            grad_norm_sq: one,
            g: 0.0,
            g_bar: 1.0,
            fn_lipschitz: one,
            subgrad_bound: one,
            nonsmooth_strong_convexity: one,
            sigma: 0.0,
            estimated: false,
        }
    }

    fn inputs(regime: Regime) -> RateBoundInputs {
        RateBoundInputs::new(unit(), 1, 1, regime).with_alpha_bar(1.0)
    }

    #[test]
    fn smooth_sc_examples() {
        let i = inputs(Regime::SmoothStronglyConvex);
        assert_eq!(theoretical_bound_smooth_sc(&i, 1).unwrap(), 4.0);
        assert_eq!(theoretical_bound_smooth_sc(&i, 3).unwrap(), 2.0);
        assert!(theoretical_bound_smooth_sc(&i, 0).is_err());
        assert!(theoretical_bound_smooth_sc(&inputs(Regime::SmoothConvex), 3).is_err());
    }

    #[test]
    fn smooth_sc_scaling_law() {
        let i = inputs(Regime::SmoothStronglyConvex);
        for t in [1usize, 7, 100, 12345] {
            let r = theoretical_bound_smooth_sc(&i, 2 * t).unwrap() / theoretical_bound_smooth_sc(&i, t).unwrap();
            let want = (t as f64 + 1.0) / (2.0 * t as f64 + 1.0);
            assert!((r - want).abs() < 1e-14);
        }
    }

    #[test]
    fn nonsmooth_sc_examples() {
        let i = inputs(Regime::NonsmoothStronglyConvex);
        assert_eq!(theoretical_bound_nonsmooth_sc(&i, 1).unwrap(), 8.0);
        let mut prev = f64::INFINITY;
        for t in 1..2000 {
            let b = theoretical_bound_nonsmooth_sc(&i, t).unwrap();
            assert!(b < prev);
            prev = b;
        }
        assert!(prev < 0.01);
    }

    #[test]
    fn convex_examples() {
        let ns = inputs(Regime::NonsmoothConvex);
        let sm = inputs(Regime::SmoothConvex);
        assert_eq!(theoretical_bound_convex(&ns, 1, false).unwrap(), 6.5);
        assert_eq!(theoretical_bound_convex(&sm, 1, true).unwrap(), 4.5);
        assert_eq!(theoretical_bound_convex(&ns, 4, false).unwrap(), 3.25);
        assert_eq!(theoretical_bound_convex(&sm, 4, true).unwrap(), 2.25);
        let mut no_alpha = ns.clone();
        no_alpha.alpha_bar = None;
        assert!(theoretical_bound_convex(&no_alpha, 1, false).is_err());
    }

    #[test]
    fn iterate_bound() {
        let i = inputs(Regime::SmoothStronglyConvex);
        // threshold 1 / (2 * 2 * 1)
        assert!(theoretical_bound_iterate(&i, 0.25, 1.0, 10).is_err());
        let mut degenerate = i.clone();
        degenerate.constants.grad_norm_sq = Some(Pair::new(0.0, 0.0));
        assert_eq!(theoretical_bound_iterate(&degenerate, 1.0, 9.0, 3).unwrap(), 3.0);
        // gamma = 1, n = 2: M = 8 * (1 + 1) = 16, lead = 2 * 16 / 3
        let v = theoretical_bound_iterate(&i, 1.0, 1.0, 100).unwrap();
        assert!((v - 32.0 / 3.0 / 100.0).abs() < 1e-15);
    }

    #[test]
    fn quadratic_constants_hand_check() {
        let p = quadratic_pair(
            Point::scalar(0.0).unwrap(),
            Point::scalar(2.0).unwrap(),
            1.0,
            1.0,
            FeasibleRegion::interval(-1.0, 3.0).unwrap(),
        )
        .unwrap();
        let k = compute_constants(&p, 0.1).unwrap();
        // Theta = 4, L = c = 1, M_nabla = 9, G = 0.01
        let g_hat = (0.01f64 + 9.0).sqrt();
        let hand = 4.0 / 101.0 * (g_hat * g_hat + 4.0 * g_hat);
        let b = theoretical_bound_smooth_sc(&RateBoundInputs::new(k, 1, 1, Regime::SmoothStronglyConvex), 100).unwrap();
        assert!((b - hand).abs() < 1e-12 * hand);
    }

    #[test]
    fn nonsmooth_constants_hand_check() {
        let p = nonsmooth_pair(
            Point::scalar(0.0).unwrap(),
            Point::scalar(2.0).unwrap(),
            1.0,
            FeasibleRegion::interval(-1.0, 3.0).unwrap(),
        )
        .unwrap();
        let k = compute_constants(&p, 0.1).unwrap();
        // reach 3 from either centre: L^ = 3 + 1 = 4, L~ = sqrt(16 + 0.01), c^ = 1
        let lt = (16.01f64).sqrt();
        let hand = 4.0 / 101.0 * (2.0 * lt * lt + 4.0 * lt + 4.0 * lt);
        let b = theoretical_bound_nonsmooth_sc(&RateBoundInputs::new(k, 1, 1, Regime::NonsmoothStronglyConvex), 100)
            .unwrap();
        assert!((b - hand).abs() < 1e-12 * hand, "{b} vs {hand}");
    }
}
