//! Concrete objective oracles.

use alloc::vec::Vec;

use crate::math;
use crate::oracle::{GradientOracle, Smoothness};

/// `(curvature / 2) ||x - center||^2`.
#[derive(Debug, Clone, PartialEq)]
pub struct Quadratic {
    pub center: Vec<f64>,
    pub curvature: f64,
}

impl Quadratic {
    pub fn new(center: Vec<f64>, curvature: f64) -> Self {
        Quadratic { center, curvature }
    }
}

impl GradientOracle for Quadratic {
    fn dim(&self) -> usize {
        self.center.len()
    }

    fn value(&self, x: &[f64]) -> f64 {
        0.5 * self.curvature * math::dist_sq(x, &self.center)
    }

    fn gradient_into(&self, x: &[f64], out: &mut [f64]) {
        for ((o, xi), ci) in out.iter_mut().zip(x).zip(&self.center) {
            *o = self.curvature * (xi - ci);
        }
    }

    fn smoothness(&self) -> Smoothness {
        Smoothness::Smooth
    }
}

/// `(modulus / 2) ||x - center||^2 + ||x - center||_1`, with subgradient
/// `modulus (x - center) + sign(x - center)` and `sign(0) = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct L1Quadratic {
    pub center: Vec<f64>,
    pub modulus: f64,
}

impl L1Quadratic {
    pub fn new(center: Vec<f64>, modulus: f64) -> Self {
        L1Quadratic { center, modulus }
    }
}

impl GradientOracle for L1Quadratic {
    fn dim(&self) -> usize {
        self.center.len()
    }

    fn value(&self, x: &[f64]) -> f64 {
        let l1: f64 = x.iter().zip(&self.center).map(|(xi, ci)| (xi - ci).abs()).sum();
        0.5 * self.modulus * math::dist_sq(x, &self.center) + l1
    }

    fn gradient_into(&self, x: &[f64], out: &mut [f64]) {
        for ((o, xi), ci) in out.iter_mut().zip(x).zip(&self.center) {
            let d = xi - ci;
            *o = self.modulus * d + math::sign0(d);
        }
    }

    fn smoothness(&self) -> Smoothness {
        Smoothness::Nonsmooth
    }
}
