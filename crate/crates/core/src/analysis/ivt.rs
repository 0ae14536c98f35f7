//! Constructive witness for `m phi(w) = sum_j phi(x_j)` with `w` in the
//! convex hull of the `x_j`, built by repeated segment bisection.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::point::Point;
use crate::rng::{KeyStream, NoiseKey};

const PARAM_TOL: f64 = 1e-14;

#[derive(Debug, Clone, PartialEq)]
pub struct IvtWitness {
    pub w: Point,
    /// Convex weights over the input points.
    pub weights: Vec<f64>,
    /// `|m phi(w) - sum_j phi(x_j)|`.
    pub residual: f64,
}

fn blend(w: &[f64], x: &[f64], s: f64) -> Vec<f64> {
    w.iter().zip(x).map(|(a, b)| (1.0 - s) * a + s * b).collect()
}

/// Root of `phi(blend(w, x, s)) - target` on `s in [0, 1]`, assuming opposite
/// signs (or a zero) at the endpoints.
fn bisect(phi: &dyn Fn(&[f64]) -> f64, w: &[f64], x: &[f64], target: f64, h0: f64, h1: f64) -> f64 {
    if h0 == 0.0 {
        return 0.0;
    }
    if h1 == 0.0 {
        return 1.0;
    }
    let (mut lo, mut hi, mut h_lo, mut h_hi) = (0.0, 1.0, h0, h1);
    while hi - lo > PARAM_TOL {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let h = phi(&blend(w, x, mid)) - target;
        if h == 0.0 {
            return mid;
        }
        if (h < 0.0) == (h_lo < 0.0) {
            lo = mid;
            h_lo = h;
        } else {
            hi = mid;
            h_hi = h;
        }
    }
    if h_lo.abs() <= h_hi.abs() {
        lo
    } else {
        hi
    }
}

/// Merges the points one at a time: after `k` points the running witness
/// `w_k` satisfies `k phi(w_k) = phi(x_1) + ... + phi(x_k)` up to the
/// bisection error.
pub fn ivt_witness(phi: &dyn Fn(&[f64]) -> f64, points: &[Point], tol: f64) -> Result<IvtWitness> {
    let first = points.first().ok_or_else(|| Error::invalid("need at least one point"))?;
    let dim = first.dim();
    if points.iter().any(|p| p.dim() != dim) {
        return Err(Error::invalid("points have mixed dimensions"));
    }
    let values: Vec<f64> = points.iter().map(|p| phi(p)).collect();
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::IvtResidual { residual: f64::NAN, tol });
    }
    let mut w = first.as_slice().to_vec();
    let mut phi_w = values[0];
    let mut weights = vec![0.0; points.len()];
    weights[0] = 1.0;
    for (k, (x, &phi_x)) in points.iter().zip(&values).enumerate().skip(1) {
        let kf = k as f64;
        let target = (kf * phi_w + phi_x) / (kf + 1.0);
        let s = bisect(phi, &w, x, target, phi_w - target, phi_x - target);
        w = blend(&w, x, s);
        phi_w = phi(&w);
        for mu in &mut weights[..k] {
            *mu *= 1.0 - s;
        }
        weights[k] = s;
    }
    let m = points.len() as f64;
    let total: f64 = values.iter().sum();
    let residual = (m * phi_w - total).abs();
    if !(residual <= tol) {
        return Err(Error::IvtResidual { residual, tol });
    }
    Ok(IvtWitness { w: Point::from_vec_unchecked(w), weights, residual })
}

/// Checks convexity of the weights and `w = sum_j mu_j x_j`.
pub fn certificate_holds(witness: &IvtWitness, points: &[Point]) -> bool {
    let ws = &witness.weights;
    if ws.len() != points.len() || ws.iter().any(|mu| !(-1e-12..=1.0 + 1e-12).contains(mu)) {
        return false;
    }
    if (ws.iter().sum::<f64>() - 1.0).abs() > 1e-12 {
        return false;
    }
    let scale = 1.0 + points.iter().flat_map(|p| p.iter()).fold(0.0_f64, |m, v| m.max(v.abs()));
    (0..witness.w.dim()).all(|i| {
        let comb: f64 = ws.iter().zip(points).map(|(mu, p)| mu * p[i]).sum();
        (comb - witness.w[i]).abs() <= 1e-12 * scale
    })
}

/// `Ok((true, w))` when the witness meets both the residual bound and the
/// convex-combination certificate.
pub fn verify_ivt(phi: &dyn Fn(&[f64]) -> f64, points: &[Point], tol: f64) -> Result<(bool, IvtWitness)> {
    let witness = ivt_witness(phi, points, tol)?;
    let ok = witness.residual <= tol && certificate_holds(&witness, points);
    Ok((ok, witness))
}

/// A sparse multivariate polynomial `sum_k c_k prod_i x_i^{e_ki}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    pub dim: usize,
    pub terms: Vec<(f64, Vec<u32>)>,
}

impl Polynomial {
    /// Up to eight monomials of total degree at most `degree` with standard
    /// normal coefficients.
    pub fn random(stream: &mut KeyStream, dim: usize, degree: u32) -> Self {
        let n_terms = 1 + stream.next_below(8) as usize;
        let terms = (0..n_terms)
            .map(|_| {
                let mut left = stream.next_below(degree as u64 + 1) as u32;
                let mut exps = vec![0u32; dim];
                while left > 0 {
                    exps[stream.next_below(dim as u64) as usize] += 1;
                    left -= 1;
                }
                (stream.next_gaussian(), exps)
            })
            .collect();
        Polynomial { dim, terms }
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(c, e)| c * x.iter().zip(e).map(|(xi, &k)| (0..k).fold(1.0, |acc, _| acc * xi)).product::<f64>())
            .sum()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IvtCampaign {
    pub instances: usize,
    pub max_points: usize,
    pub max_dim: usize,
    pub degree: u32,
    /// Relative tolerance: instance `i` must reach `tol (1 + |sum phi|)`.
    pub tol: f64,
    pub seed: u64,
}

impl Default for IvtCampaign {
    fn default() -> Self {
        IvtCampaign { instances: 1000, max_points: 8, max_dim: 4, degree: 5, tol: 1e-9, seed: 0 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IvtCampaignReport {
    pub instances: usize,
    pub passed: usize,
    /// Largest `residual / (1 + |sum phi|)` among instances that produced a witness.
    pub max_relative_residual: f64,
    pub failures: Vec<usize>,
}

impl IvtCampaignReport {
    pub fn all_passed(&self) -> bool {
        self.passed == self.instances
    }
}

/// Point set and polynomial of instance `i`, points uniform in `[-1, 1]^d`.
pub fn campaign_instance(c: &IvtCampaign, i: usize) -> (Polynomial, Vec<Point>) {
    let mut s = NoiseKey(c.seed).fork(i as u64).stream();
    let dim = 1 + s.next_below(c.max_dim.max(1) as u64) as usize;
    let m = 1 + s.next_below(c.max_points.max(1) as u64) as usize;
    let poly = Polynomial::random(&mut s, dim, c.degree);
    let points = (0..m)
        .map(|_| Point::from_vec_unchecked((0..dim).map(|_| 2.0 * s.next_f64() - 1.0).collect()))
        .collect();
    (poly, points)
}

pub fn run_ivt_campaign(c: &IvtCampaign) -> Result<IvtCampaignReport> {
    if c.max_points == 0 || c.max_dim == 0 {
        return Err(Error::invalid("max_points and max_dim must be >= 1"));
    }
    if !(c.tol >= 0.0) {
        return Err(Error::invalid("tol must be nonnegative"));
    }
    let mut report = IvtCampaignReport { instances: c.instances, passed: 0, max_relative_residual: 0.0, failures: Vec::new() };
    for i in 0..c.instances {
        let (poly, points) = campaign_instance(c, i);
        let phi = |x: &[f64]| poly.eval(x);
        let total: f64 = points.iter().map(|p| phi(p)).sum();
        let scale = 1.0 + total.abs();
        match verify_ivt(&phi, &points, c.tol * scale) {
            Ok((ok, w)) => {
                report.max_relative_residual = report.max_relative_residual.max(w.residual / scale);
                if ok {
                    report.passed += 1;
                } else {
                    report.failures.push(i);
                }
            }
            Err(Error::IvtResidual { residual, .. }) => {
                if residual.is_finite() {
                    report.max_relative_residual = report.max_relative_residual.max(residual / scale);
                }
                report.failures.push(i);
            }
            Err(e) => return Err(e),
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[f64]) -> Vec<Point> {
        v.iter().map(|x| Point::scalar(*x).unwrap()).collect()
    }

    #[test]
    fn linear_phi_gives_centroid() {
        let w = ivt_witness(&|x: &[f64]| 3.0 * x[0] + 1.0, &pts(&[0.0, 1.0, 2.0]), 1e-12).unwrap();
        assert!((w.w[0] - 1.0).abs() < 1e-13);
        assert!(w.residual < 1e-12);
        assert!(certificate_holds(&w, &pts(&[0.0, 1.0, 2.0])));
    }

    #[test]
    fn square_gives_sqrt_two() {
        let w = ivt_witness(&|x: &[f64]| x[0] * x[0], &pts(&[0.0, 2.0]), 1e-12).unwrap();
        assert!((w.w[0] - core::f64::consts::SQRT_2).abs() < 1e-12);
    }

    #[test]
    fn single_and_identical_points() {
        let phi = |x: &[f64]| x[0].sin() + x[1];
        let p = vec![Point::new(vec![0.3, -1.0]).unwrap()];
        let w = ivt_witness(&phi, &p, 0.0).unwrap();
        assert_eq!(w.w, p[0]);
        assert_eq!(w.weights, vec![1.0]);
        let same = vec![p[0].clone(); 5];
        let (ok, w) = verify_ivt(&phi, &same, 1e-12).unwrap();
        assert!(ok);
        assert_eq!(w.w, p[0]);
    }

    #[test]
    fn step_function_fails() {
        let step = |x: &[f64]| if x[0] < 0.5 { 0.0 } else { 1.0 };
        match ivt_witness(&step, &pts(&[0.0, 1.0]), 1e-9) {
            Err(Error::IvtResidual { residual, .. }) => assert!((residual - 1.0).abs() < 1e-12),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn campaign_passes() {
        let r = run_ivt_campaign(&IvtCampaign { instances: 200, ..Default::default() }).unwrap();
        assert!(r.all_passed(), "{r:?}");
        assert!(r.max_relative_residual <= 1e-9);
        let empty = run_ivt_campaign(&IvtCampaign { instances: 0, ..Default::default() }).unwrap();
        assert!(empty.all_passed());
    }

    #[test]
    fn zero_tolerance_reports_failures() {
        let r = run_ivt_campaign(&IvtCampaign { instances: 50, tol: 0.0, ..Default::default() }).unwrap();
        assert!(!r.all_passed());
    }

    #[test]
    fn polynomial_degree_bound() {
        let mut s = NoiseKey(1).stream();
        for _ in 0..100 {
            let p = Polynomial::random(&mut s, 3, 5);
            assert!(p.terms.iter().all(|(_, e)| e.iter().sum::<u32>() <= 5));
        }
    }
}
