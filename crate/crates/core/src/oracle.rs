//! Objective oracles and the weighted-sum scalarization.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::rng::NoiseKey;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Smoothness {
    Smooth,
    Nonsmooth,
}

/// A scalar objective on `R^n` with a deterministic (sub)gradient and a
/// stochastic gradient addressed by a [`NoiseKey`].
///
/// Implementations must be defined on all of `R^n`: intermediate iterates
/// of the alternating solver are not projected and may leave the region.
pub trait GradientOracle: fmt::Debug + Send + Sync {
    fn dim(&self) -> usize;

    fn value(&self, x: &[f64]) -> f64;

    /// True gradient, or the chosen subgradient element at kinks.
    fn gradient_into(&self, x: &[f64], out: &mut [f64]);

    fn smoothness(&self) -> Smoothness;

    /// Standard deviation of the additive Gaussian gradient noise.
    fn noise_sigma(&self) -> f64 {
        0.0
    }

    fn stochastic_gradient_into(&self, x: &[f64], key: NoiseKey, out: &mut [f64]) {
        self.gradient_into(x, out);
        let sigma = self.noise_sigma();
        if sigma > 0.0 {
            let mut stream = key.stream();
            for g in out.iter_mut() {
                *g += sigma * stream.next_gaussian();
            }
        }
    }

    fn deterministic_gradient(&self, x: &[f64]) -> Vec<f64> {
        let mut g = vec![0.0; self.dim()];
        self.gradient_into(x, &mut g);
        g
    }

    fn stochastic_gradient(&self, x: &[f64], key: NoiseKey) -> Vec<f64> {
        let mut g = vec![0.0; self.dim()];
        self.stochastic_gradient_into(x, key, &mut g);
        g
    }
}

pub type SharedOracle = Arc<dyn GradientOracle>;

/// Wraps an oracle with `g = grad f(x) + sigma * N(0, I)`.
#[derive(Debug, Clone)]
pub struct Noisy {
    inner: SharedOracle,
    sigma: f64,
}

impl Noisy {
    pub fn new(inner: SharedOracle, sigma: f64) -> Self {
        Noisy { inner, sigma }
    }
}

impl GradientOracle for Noisy {
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn value(&self, x: &[f64]) -> f64 {
        self.inner.value(x)
    }

    fn gradient_into(&self, x: &[f64], out: &mut [f64]) {
        self.inner.gradient_into(x, out)
    }

    fn smoothness(&self) -> Smoothness {
        self.inner.smoothness()
    }

    fn noise_sigma(&self) -> f64 {
        self.sigma
    }
}

/// Checked stochastic gradient draw.
pub fn sample_gradient(oracle: &dyn GradientOracle, x: &[f64], key: NoiseKey) -> Result<Vec<f64>> {
    let g = oracle.stochastic_gradient(x, key);
    if g.iter().all(|v| v.is_finite()) {
        Ok(g)
    } else {
        Err(Error::NonFiniteGradient { point: x.to_vec() })
    }
}

/// `S(x, lambda) = lambda f_a(x) + (1 - lambda) f_b(x)`.
#[derive(Clone, Copy)]
pub struct WeightedSum<'a> {
    pub lambda: f64,
    pub f_a: &'a dyn GradientOracle,
    pub f_b: &'a dyn GradientOracle,
}

impl<'a> WeightedSum<'a> {
    pub fn new(lambda: f64, f_a: &'a dyn GradientOracle, f_b: &'a dyn GradientOracle) -> Result<Self> {
        if !(0.0..=1.0).contains(&lambda) {
            return Err(Error::invalid(alloc::format!("lambda must lie in [0, 1], got {lambda}")));
        }
        Ok(WeightedSum { lambda, f_a, f_b })
    }

    pub fn value(&self, x: &[f64]) -> f64 {
        combine(self.lambda, self.f_a.value(x), self.f_b.value(x))
    }
}

/// `lambda * fa + (1 - lambda) * fb`, skipping a term whose weight is zero
/// so that a single-objective endpoint is exactly that objective.
#[inline]
pub(crate) fn combine(lambda: f64, fa: f64, fb: f64) -> f64 {
    if lambda == 0.0 {
        fb
    } else if lambda == 1.0 {
        fa
    } else {
        lambda * fa + (1.0 - lambda) * fb
    }
}

pub fn weighted_sum_value(ws: &WeightedSum<'_>, x: &[f64]) -> f64 {
    ws.value(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::objectives::{Quadratic, L1Quadratic};
    use crate::rng::NoiseStream;

    #[derive(Debug)]
    struct Constant(f64);

    impl GradientOracle for Constant {
        fn dim(&self) -> usize {
            1
        }
        fn value(&self, _: &[f64]) -> f64 {
            self.0
        }
        fn gradient_into(&self, _: &[f64], out: &mut [f64]) {
            out[0] = 0.0;
        }
        fn smoothness(&self) -> Smoothness {
            Smoothness::Smooth
        }
    }

    #[derive(Debug)]
    struct Broken;

    impl GradientOracle for Broken {
        fn dim(&self) -> usize {
            1
        }
        fn value(&self, _: &[f64]) -> f64 {
            0.0
        }
        fn gradient_into(&self, _: &[f64], out: &mut [f64]) {
            out[0] = f64::NAN;
        }
        fn smoothness(&self) -> Smoothness {
            Smoothness::Smooth
        }
    }

    #[test]
    fn weighted_sum_examples() {
        let (a, b) = (Constant(4.0), Constant(8.0));
        assert_eq!(WeightedSum::new(0.75, &a, &b).unwrap().value(&[0.0]), 5.0);
        assert_eq!(WeightedSum::new(0.0, &a, &b).unwrap().value(&[0.0]), 8.0);
        let qa = Quadratic::new(vec![0.0], 2.0);
        let qb = Quadratic::new(vec![2.0], 2.0);
        // curvature 2 gives x^2 and (x - 2)^2
        assert_eq!(WeightedSum::new(0.5, &qa, &qb).unwrap().value(&[1.0]), 1.0);
        assert!(WeightedSum::new(1.5, &qa, &qb).is_err());
    }

    #[test]
    fn noiseless_gradient_is_true_gradient() {
        let q = Quadratic::new(vec![0.0], 1.0);
        let key = NoiseStream::new(0).gradient_key(0, 0, 0);
        assert_eq!(sample_gradient(&q, &[3.0], key).unwrap(), vec![3.0]);
        let l1 = L1Quadratic::new(vec![0.0], 0.0);
        assert_eq!(sample_gradient(&l1, &[0.0], key).unwrap(), vec![0.0]);
    }

    #[test]
    fn noisy_gradient_replays_generator() {
        let q: SharedOracle = Arc::new(Quadratic::new(vec![0.0, 0.0], 1.0));
        let noisy = Noisy::new(q.clone(), 0.1);
        let key = NoiseStream::new(5).gradient_key(2, 3, 4);
        let x = [1.0, -2.0];
        let g = sample_gradient(&noisy, &x, key).unwrap();
        let mut st = key.stream();
        let expect: Vec<f64> = q
            .deterministic_gradient(&x)
            .iter()
            .map(|gi| gi + 0.1 * st.next_gaussian())
            .collect();
        assert_eq!(g.iter().map(|v| v.to_bits()).collect::<Vec<_>>(), expect.iter().map(|v| v.to_bits()).collect::<Vec<_>>());
    }

    #[test]
    fn non_finite_gradient_is_reported_with_point() {
        let key = NoiseStream::new(0).gradient_key(0, 0, 0);
        match sample_gradient(&Broken, &[1.5], key) {
            Err(Error::NonFiniteGradient { point }) => assert_eq!(point, vec![1.5]),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn monte_carlo_unbiased() {
        let sigma = 0.1;
        let noisy = Noisy::new(Arc::new(Quadratic::new(vec![1.0, -1.0], 2.0)), sigma);
        let x = [0.3, 0.4];
        let truth = noisy.deterministic_gradient(&x);
        let stream = NoiseStream::new(77);
        let n = 100_000;
        let mut mean = [0.0; 2];
        for t in 0..n {
            let g = noisy.stochastic_gradient(&x, stream.gradient_key(0, t, 0));
            mean[0] += g[0];
            mean[1] += g[1];
        }
        for i in 0..2 {
            let m = mean[i] / n as f64;
            assert!((m - truth[i]).abs() <= 4.0 * sigma / (n as f64).sqrt());
        }
    }
}
