//! Deterministic bound-constrained bi-objective test problems.
//!
//! Formulas, bounds and sources are recorded in `manifest.toml`
//! ([`MANIFEST`]); the implementations below must agree with it.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math;
use crate::oracle::{GradientOracle, Smoothness};
use crate::region::FeasibleRegion;

/// Problems manifest (TOML).
pub const MANIFEST: &str = include_str!("manifest.toml");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BenchmarkName {
    Mop1,
    Im1,
    Mop3,
    Far1,
}

impl BenchmarkName {
    pub const ALL: [BenchmarkName; 4] =
        [BenchmarkName::Mop1, BenchmarkName::Im1, BenchmarkName::Mop3, BenchmarkName::Far1];

    pub fn as_str(&self) -> &'static str {
        match self {
            BenchmarkName::Mop1 => "MOP1",
            BenchmarkName::Im1 => "IM1",
            BenchmarkName::Mop3 => "MOP3",
            BenchmarkName::Far1 => "FAR1",
        }
    }

    pub fn parse(name: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|b| b.as_str().eq_ignore_ascii_case(name))
            .ok_or_else(|| {
                let names: Vec<&str> = Self::ALL.iter().map(|b| b.as_str()).collect();
                Error::invalid(format!("unknown benchmark problem {name:?}; available: {}", names.join(", ")))
            })
    }

    pub fn region(&self) -> FeasibleRegion {
        let (lower, upper) = match self {
            BenchmarkName::Mop1 => (vec![-1.0e5], vec![1.0e5]),
            BenchmarkName::Im1 => (vec![1.0, 1.0], vec![4.0, 2.0]),
            BenchmarkName::Mop3 => {
                let pi = core::f64::consts::PI;
                (vec![-pi, -pi], vec![pi, pi])
            }
            BenchmarkName::Far1 => (vec![-1.0, -1.0], vec![1.0, 1.0]),
        };
        FeasibleRegion::new_box(lower, upper).expect("static bounds are valid")
    }

    pub(crate) fn objectives(&self) -> (BenchmarkObjective, BenchmarkObjective) {
        use BenchmarkObjective::*;
        match self {
            BenchmarkName::Mop1 => (Mop1A, Mop1B),
            BenchmarkName::Im1 => (Im1A, Im1B),
            BenchmarkName::Mop3 => (Mop3A, Mop3B),
            BenchmarkName::Far1 => (Far1(GaussianBumps::far1_a()), Far1(GaussianBumps::far1_b())),
        }
    }
}

impl core::fmt::Display for BenchmarkName {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `sum_k coef_k exp(-rate_k ||x - c_k||^2)` in two dimensions.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianBumps {
    terms: Vec<(f64, f64, [f64; 2])>,
}

impl GaussianBumps {
    fn far1_a() -> Self {
        GaussianBumps {
            terms: vec![
                (-2.0, 15.0, [0.1, 0.0]),
                (-1.0, 20.0, [0.6, 0.6]),
                (1.0, 20.0, [-0.6, 0.6]),
                (1.0, 20.0, [0.6, -0.6]),
                (1.0, 20.0, [-0.6, -0.6]),
            ],
        }
    }

    fn far1_b() -> Self {
        GaussianBumps {
            terms: vec![
                (2.0, 20.0, [0.0, 0.0]),
                (1.0, 20.0, [0.4, 0.6]),
                (-1.0, 20.0, [-0.5, 0.7]),
                (-1.0, 20.0, [0.5, -0.7]),
                (1.0, 20.0, [-0.4, -0.8]),
            ],
        }
    }

    fn value(&self, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(coef, rate, c)| coef * math::exp(-rate * math::dist_sq(x, c)))
            .sum()
    }

    fn gradient_into(&self, x: &[f64], out: &mut [f64]) {
        out[0] = 0.0;
        out[1] = 0.0;
        for (coef, rate, c) in &self.terms {
            let e = coef * math::exp(-rate * math::dist_sq(x, c));
            out[0] += -2.0 * rate * (x[0] - c[0]) * e;
            out[1] += -2.0 * rate * (x[1] - c[1]) * e;
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum BenchmarkObjective {
    Mop1A,
    Mop1B,
    Im1A,
    Im1B,
    Mop3A,
    Mop3B,
    Far1(GaussianBumps),
}

struct Poloni {
    a1: f64,
    a2: f64,
}

impl Poloni {
    fn new() -> Self {
        let (s1, c1, s2, c2) = (math::sin(1.0), math::cos(1.0), math::sin(2.0), math::cos(2.0));
        Poloni {
            a1: 0.5 * s1 - 2.0 * c1 + s2 - 1.5 * c2,
            a2: 1.5 * s1 - c1 + 2.0 * s2 - 0.5 * c2,
        }
    }

    /// `(B1, B2, dB1/dx, dB2/dx)`
    fn b_terms(x: &[f64]) -> (f64, f64, [f64; 2], [f64; 2]) {
        let (s1, c1, s2, c2) = (math::sin(x[0]), math::cos(x[0]), math::sin(x[1]), math::cos(x[1]));
        let b1 = 0.5 * s1 - 2.0 * c1 + s2 - 1.5 * c2;
        let b2 = 1.5 * s1 - c1 + 2.0 * s2 - 0.5 * c2;
        let db1 = [0.5 * c1 + 2.0 * s1, c2 + 1.5 * s2];
        let db2 = [1.5 * c1 + s1, 2.0 * c2 + 0.5 * s2];
        (b1, b2, db1, db2)
    }
}

impl GradientOracle for BenchmarkObjective {
    fn dim(&self) -> usize {
        match self {
            BenchmarkObjective::Mop1A | BenchmarkObjective::Mop1B => 1,
            _ => 2,
        }
    }

    fn value(&self, x: &[f64]) -> f64 {
        match self {
            BenchmarkObjective::Mop1A => x[0] * x[0],
            BenchmarkObjective::Mop1B => (x[0] - 2.0) * (x[0] - 2.0),
            BenchmarkObjective::Im1A => 2.0 * math::sqrt(x[0]),
            BenchmarkObjective::Im1B => x[0] * (1.0 - x[1]) + 5.0,
            BenchmarkObjective::Mop3A => {
                let p = Poloni::new();
                let (b1, b2, _, _) = Poloni::b_terms(x);
                1.0 + (p.a1 - b1) * (p.a1 - b1) + (p.a2 - b2) * (p.a2 - b2)
            }
            BenchmarkObjective::Mop3B => (x[0] + 3.0) * (x[0] + 3.0) + (x[1] + 1.0) * (x[1] + 1.0),
            BenchmarkObjective::Far1(b) => b.value(x),
        }
    }

    fn gradient_into(&self, x: &[f64], out: &mut [f64]) {
        match self {
            BenchmarkObjective::Mop1A => out[0] = 2.0 * x[0],
            BenchmarkObjective::Mop1B => out[0] = 2.0 * (x[0] - 2.0),
            BenchmarkObjective::Im1A => {
                out[0] = 1.0 / math::sqrt(x[0]);
                out[1] = 0.0;
            }
            BenchmarkObjective::Im1B => {
                out[0] = 1.0 - x[1];
                out[1] = -x[0];
            }
            BenchmarkObjective::Mop3A => {
                let p = Poloni::new();
                let (b1, b2, db1, db2) = Poloni::b_terms(x);
                for i in 0..2 {
                    out[i] = -2.0 * (p.a1 - b1) * db1[i] - 2.0 * (p.a2 - b2) * db2[i];
                }
            }
            BenchmarkObjective::Mop3B => {
                out[0] = 2.0 * (x[0] + 3.0);
                out[1] = 2.0 * (x[1] + 1.0);
            }
            BenchmarkObjective::Far1(b) => b.gradient_into(x, out),
        }
    }

    fn smoothness(&self) -> Smoothness {
        Smoothness::Smooth
    }
}

pub(crate) fn display_name(name: BenchmarkName) -> String {
    String::from(name.as_str())
}
