use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::order::{alternation_order, AlternationSpec, Tag};
use super::trajectory::{IterationRecord, Trajectory};
use crate::error::{Error, Result};
use crate::math;
use crate::oracle::{combine, GradientOracle};
use crate::point::Point;
use crate::problems::BiObjectiveProblem;
use crate::rng::NoiseStream;
use crate::schedule::StepSchedule;

#[derive(Debug, Clone, PartialEq)]
pub enum InitialPoint {
    Given(Point),
    /// Uniform draw from the feasible region keyed by `(master_seed, replication)`.
    UniformInRegion,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    /// Outer iterations `T`.
    pub iterations: usize,
    pub schedule: StepSchedule,
    pub alternation: AlternationSpec,
    pub master_seed: u64,
    pub replication: u64,
    pub record_intermediates: bool,
    pub initial_point: InitialPoint,
    /// Combined projected steps per outer iteration of the weighted-sum
    /// baseline; ignored by the alternating solver.
    pub weighted_sum_steps: usize,
}

impl RunConfig {
    pub fn new(iterations: usize, schedule: StepSchedule, alternation: AlternationSpec) -> Self {
        RunConfig {
            iterations,
            schedule,
            alternation,
            master_seed: 0,
            replication: 0,
            record_intermediates: false,
            initial_point: InitialPoint::UniformInRegion,
            weighted_sum_steps: 1,
        }
    }

    pub fn with_seed(mut self, master_seed: u64) -> Self {
        self.master_seed = master_seed;
        self
    }

    pub fn with_replication(mut self, replication: u64) -> Self {
        self.replication = replication;
        self
    }

    pub fn with_initial_point(mut self, x0: Point) -> Self {
        self.initial_point = InitialPoint::Given(x0);
        self
    }

    pub fn with_uniform_start(mut self) -> Self {
        self.initial_point = InitialPoint::UniformInRegion;
        self
    }

    pub fn recording_intermediates(mut self, on: bool) -> Self {
        self.record_intermediates = on;
        self
    }

    pub fn with_weighted_sum_steps(mut self, steps: usize) -> Self {
        self.weighted_sum_steps = steps;
        self
    }

    pub fn noise(&self) -> NoiseStream {
        NoiseStream::new(self.master_seed)
    }

    /// The starting point `x_0` for this configuration.
    pub fn start(&self, problem: &BiObjectiveProblem) -> Result<Point> {
        match &self.initial_point {
            InitialPoint::Given(x) => {
                if x.dim() != problem.dim() {
                    return Err(Error::invalid(format!(
                        "initial point has dimension {}, problem has {}",
                        x.dim(),
                        problem.dim()
                    )));
                }
                if !problem.region.contains(x, 1e-12) {
                    return Err(Error::invalid(format!("initial point {x:?} is outside the feasible region")));
                }
                Ok(x.clone())
            }
            InitialPoint::UniformInRegion => {
                let mut stream = self.noise().start_key(self.replication).stream();
                Ok(problem.region.sample_uniform(&mut stream))
            }
        }
    }
}

struct Workspace {
    y: Vec<f64>,
    g: Vec<f64>,
    g2: Vec<f64>,
}

impl Workspace {
    fn new(n: usize) -> Self {
        Workspace { y: vec![0.0; n], g: vec![0.0; n], g2: vec![0.0; n] }
    }
}

fn check_finite(v: &[f64], t: usize, r: usize, at: &[f64]) -> Result<()> {
    if v.iter().all(|c| c.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFiniteIterate { t, r, point: at.to_vec() })
    }
}

/// One outer iteration of the alternating solver, in place on `ws.y`.
fn alternating_step(
    ws: &mut Workspace,
    t: usize,
    alpha: f64,
    config: &RunConfig,
    problem: &BiObjectiveProblem,
    mut record: Option<&mut IterationRecord>,
) -> Result<()> {
    let noise = config.noise();
    let order = alternation_order(&config.alternation, noise.order_key(config.replication, t as u64));
    for (r, tag) in order.iter().enumerate() {
        let oracle: &dyn GradientOracle = match tag {
            Tag::A => problem.oracle_a.as_ref(),
            Tag::B => problem.oracle_b.as_ref(),
        };
        let key = noise.gradient_key(config.replication, t as u64, r as u64);
        oracle.stochastic_gradient_into(&ws.y, key, &mut ws.g);
        check_finite(&ws.g, t, r, &ws.y)?;
        math::descend(&mut ws.y, alpha, &ws.g);
        check_finite(&ws.y, t, r, &ws.y)?;
        if let Some(rec) = record.as_deref_mut() {
            rec.points.push(ws.y.clone());
        }
    }
    if let Some(rec) = record {
        rec.order = order;
    }
    problem.region.project_in_place(&mut ws.y);
    Ok(())
}

/// `x_{t+1}` from `x_t`: `n_a + n_b` stochastic (sub)gradient steps in the
/// configured order, each with step `alpha_t`, then one projection.
pub fn sa2gd_iteration(
    x_t: &Point,
    t: usize,
    config: &RunConfig,
    problem: &BiObjectiveProblem,
) -> Result<(Point, IterationRecord)> {
    if x_t.dim() != problem.dim() {
        return Err(Error::invalid("iterate dimension does not match the problem"));
    }
    let mut ws = Workspace::new(problem.dim());
    ws.y.copy_from_slice(x_t);
    let mut rec = IterationRecord { order: Vec::new(), points: Vec::new() };
    let alpha = config.schedule.iteration_step(t);
    alternating_step(&mut ws, t, alpha, config, problem, Some(&mut rec))?;
    Ok((Point::from_vec_unchecked(ws.y), rec))
}

fn drive(
    config: &RunConfig,
    problem: &BiObjectiveProblem,
    lambda: f64,
    mut step: impl FnMut(&mut Workspace, usize, f64, Option<&mut IterationRecord>) -> Result<()>,
) -> Result<Trajectory> {
    let x0 = config.start(problem)?;
    let n_iter = config.iterations;
    let mut traj = Trajectory {
        lambda,
        iterates: Vec::with_capacity(n_iter + 1),
        f_a: Vec::with_capacity(n_iter + 1),
        f_b: Vec::with_capacity(n_iter + 1),
        s_values: Vec::with_capacity(n_iter + 1),
        step_sizes: Vec::with_capacity(n_iter),
        intermediates: config.record_intermediates.then(Vec::new),
    };
    let push = |traj: &mut Trajectory, x: Point| {
        let (fa, fb) = (problem.f_a(&x), problem.f_b(&x));
        traj.f_a.push(fa);
        traj.f_b.push(fb);
        traj.s_values.push(combine(lambda, fa, fb));
        traj.iterates.push(x);
    };
    let mut ws = Workspace::new(problem.dim());
    ws.y.copy_from_slice(&x0);
    push(&mut traj, x0);
    for t in 0..n_iter {
        let alpha = config.schedule.iteration_step(t);
        let mut rec = IterationRecord { order: Vec::new(), points: Vec::new() };
        step(&mut ws, t, alpha, traj.intermediates.is_some().then_some(&mut rec))?;
        if let Some(all) = traj.intermediates.as_mut() {
            all.push(rec);
        }
        traj.step_sizes.push(alpha);
        push(&mut traj, Point::from_vec_unchecked(ws.y.clone()));
    }
    Ok(traj)
}

fn check_dims(config: &RunConfig, problem: &BiObjectiveProblem) -> Result<()> {
    if problem.oracle_a.dim() != problem.dim() || problem.oracle_b.dim() != problem.dim() {
        return Err(Error::invalid("oracle and region dimensions disagree"));
    }
    if let InitialPoint::Given(x) = &config.initial_point {
        if x.dim() != problem.dim() {
            return Err(Error::invalid("initial point dimension does not match the problem"));
        }
    }
    Ok(())
}

/// Runs `T` outer iterations of the alternating solver. The trajectory
/// tracks `S(x_t, lambda_*)` with `lambda_* = n_a / (n_a + n_b)`.
pub fn run_sa2gd(config: &RunConfig, problem: &BiObjectiveProblem) -> Result<Trajectory> {
    check_dims(config, problem)?;
    let lambda = config.alternation.lambda_star();
    drive(config, problem, lambda, |ws, t, alpha, rec| alternating_step(ws, t, alpha, config, problem, rec))
}

/// Projected SGD on `S(., lambda)` with the combined gradient
/// `lambda g_a + (1 - lambda) g_b`; `config.weighted_sum_steps` projected
/// steps per outer iteration. A zero-weight objective is never sampled, so
/// `lambda in {0, 1}` reproduces single-objective descent on the same noise paths.
pub fn run_weighted_sum_sgd(config: &RunConfig, lambda: f64, problem: &BiObjectiveProblem) -> Result<Trajectory> {
    check_dims(config, problem)?;
    if !(0.0..=1.0).contains(&lambda) {
        return Err(Error::invalid(format!("lambda must lie in [0, 1], got {lambda}")));
    }
    if config.weighted_sum_steps == 0 {
        return Err(Error::invalid("weighted_sum_steps must be >= 1"));
    }
    let noise = config.noise();
    let rep = config.replication;
    drive(config, problem, lambda, |ws, t, alpha, mut rec| {
        for r in 0..config.weighted_sum_steps {
            let key = noise.gradient_key(rep, t as u64, r as u64);
            if lambda == 1.0 {
                problem.oracle_a.stochastic_gradient_into(&ws.y, key, &mut ws.g);
            } else if lambda == 0.0 {
                problem.oracle_b.stochastic_gradient_into(&ws.y, key, &mut ws.g);
            } else {
                problem.oracle_a.stochastic_gradient_into(&ws.y, key.fork(0), &mut ws.g);
                problem.oracle_b.stochastic_gradient_into(&ws.y, key.fork(1), &mut ws.g2);
                for (g, g2) in ws.g.iter_mut().zip(&ws.g2) {
                    *g = lambda * *g + (1.0 - lambda) * g2;
                }
            }
            check_finite(&ws.g, t, r, &ws.y)?;
            math::descend(&mut ws.y, alpha, &ws.g);
            check_finite(&ws.y, t, r, &ws.y)?;
            if let Some(rec) = rec.as_deref_mut() {
                rec.points.push(ws.y.clone());
            }
            problem.region.project_in_place(&mut ws.y);
        }
        Ok(())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::Smoothness;
    use crate::problems::{attach_noise, quadratic_pair};
    use crate::region::FeasibleRegion;
    use crate::solver::Pattern;
    use alloc::sync::Arc;

    fn s(x: f64) -> Point {
        Point::scalar(x).unwrap()
    }

    fn quad_pair_1d(lo: f64, hi: f64) -> BiObjectiveProblem {
        quadratic_pair(s(0.0), s(2.0), 1.0, 1.0, FeasibleRegion::interval(lo, hi).unwrap()).unwrap()
    }

    fn fixed(alpha: f64) -> StepSchedule {
        StepSchedule::fixed(alpha).unwrap()
    }

    #[test]
    fn hand_traced_iterations() {
        let p = quad_pair_1d(-10.0, 10.0);
        let cfg = RunConfig::new(1, fixed(0.1), AlternationSpec::block(1, 1).unwrap());
        let (x1, rec) = sa2gd_iteration(&s(0.0), 0, &cfg, &p).unwrap();
        assert!((x1[0] - 0.2).abs() < 1e-15);
        assert_eq!(rec.order, vec![Tag::A, Tag::B]);
        assert_eq!(rec.points.len(), 2);

        let cfg = RunConfig::new(1, fixed(0.5), AlternationSpec::block(2, 0).unwrap());
        let (x1, _) = sa2gd_iteration(&s(1.0), 0, &cfg, &p).unwrap();
        assert_eq!(x1[0], 0.25);
    }

    #[test]
    fn empty_a_block_only_touches_f_b() {
        let p = quad_pair_1d(-10.0, 10.0);
        let cfg = RunConfig::new(1, fixed(0.5), AlternationSpec::block(0, 1).unwrap());
        let (x1, rec) = sa2gd_iteration(&s(0.0), 0, &cfg, &p).unwrap();
        assert_eq!(rec.order, vec![Tag::B]);
        assert_eq!(x1[0], 1.0);
    }

    #[test]
    fn zero_iterations_keep_only_start() {
        let p = quad_pair_1d(-10.0, 10.0);
        let cfg = RunConfig::new(0, fixed(0.1), AlternationSpec::block(1, 1).unwrap()).with_initial_point(s(3.0));
        let tr = run_sa2gd(&cfg, &p).unwrap();
        assert_eq!(tr.iterates.len(), 1);
        assert!(tr.is_empty());
        assert_eq!(tr.final_iterate()[0], 3.0);
    }

    #[test]
    fn converges_to_effort_weighted_minimizer() {
        let p = quad_pair_1d(-10.0, 10.0);
        for (n_a, n_b, target) in [(1, 1, 1.0), (3, 1, 0.5)] {
            let sched = StepSchedule::strongly_convex_decay(1.0, n_a + n_b).unwrap();
            let cfg = RunConfig::new(500, sched, AlternationSpec::block(n_a, n_b).unwrap()).with_initial_point(s(5.0));
            let tr = run_sa2gd(&cfg, &p).unwrap();
            // grid oracle for the minimizer of S(., lambda_*)
            let lam = n_a as f64 / (n_a + n_b) as f64;
            let grid = (0..=200_000)
                .map(|i| -10.0 + 20.0 * i as f64 / 200_000.0)
                .min_by(|x, y| p.weighted_value(lam, &[*x]).total_cmp(&p.weighted_value(lam, &[*y])))
                .unwrap();
            assert!((grid - target).abs() < 1e-4);
            assert!((tr.final_iterate()[0] - target).abs() < 1e-2, "{n_a},{n_b}: {:?}", tr.final_iterate());
        }
    }

    #[test]
    fn trajectory_lengths_and_feasibility() {
        let p = attach_noise(&quad_pair_1d(-1.0, 3.0), 0.5).unwrap();
        let cfg = RunConfig::new(50, fixed(0.3), AlternationSpec::block(4, 2).unwrap())
            .with_seed(1)
            .recording_intermediates(true);
        let tr = run_sa2gd(&cfg, &p).unwrap();
        assert_eq!(tr.iterates.len(), 51);
        assert_eq!(tr.s_values.len(), 51);
        assert_eq!(tr.step_sizes.len(), 50);
        assert_eq!(tr.intermediates.as_ref().unwrap().len(), 50);
        for x in &tr.iterates[1..] {
            assert!(p.region.contains(x, 0.0));
        }
        // intermediates are not projected: with a large step and noise some leave [-1, 3]
        let cfg = RunConfig::new(50, fixed(1.9), AlternationSpec::block(4, 2).unwrap()).recording_intermediates(true);
        let tr = run_sa2gd(&cfg, &p).unwrap();
        let escaped = tr.intermediates.unwrap().iter().flat_map(|r| r.points.clone()).any(|y| !(-1.0..=3.0).contains(&y[0]));
        assert!(escaped);
    }

    #[test]
    fn seed_determinism() {
        let p = attach_noise(&quad_pair_1d(-1.0, 3.0), 0.1).unwrap();
        let spec = AlternationSpec::new(3, 2, Pattern::RandomPositions).unwrap();
        let cfg = RunConfig::new(100, fixed(0.05), spec).with_seed(17).with_replication(4);
        let a = run_sa2gd(&cfg, &p).unwrap();
        let b = run_sa2gd(&cfg, &p).unwrap();
        assert_eq!(a, b);
        let c = run_sa2gd(&cfg.clone().with_replication(5), &p).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn weighted_sum_single_step() {
        let p = quad_pair_1d(-10.0, 10.0);
        let cfg = RunConfig::new(1, fixed(0.5), AlternationSpec::block(1, 1).unwrap()).with_initial_point(s(1.0));
        let tr = run_weighted_sum_sgd(&cfg, 1.0, &p).unwrap();
        assert_eq!(tr.final_iterate()[0], 0.5);
        assert!(run_weighted_sum_sgd(&cfg, 1.5, &p).is_err());
    }

    #[test]
    fn weighted_sum_converges() {
        let p = quad_pair_1d(-10.0, 10.0);
        let sched = StepSchedule::strongly_convex_decay(1.0, 1).unwrap();
        let cfg = RunConfig::new(500, sched, AlternationSpec::block(1, 1).unwrap()).with_initial_point(s(5.0));
        let tr = run_weighted_sum_sgd(&cfg, 0.5, &p).unwrap();
        assert!((tr.final_iterate()[0] - 1.0).abs() < 1e-2);
    }

    #[test]
    fn weighted_sum_endpoint_matches_single_objective_alternation() {
        let p = attach_noise(&quad_pair_1d(-10.0, 10.0), 0.3).unwrap();
        let sched = StepSchedule::strongly_convex_decay(1.0, 1).unwrap();
        let cfg = RunConfig::new(200, sched, AlternationSpec::block(0, 1).unwrap()).with_seed(8);
        let alt = run_sa2gd(&cfg, &p).unwrap();
        let ws = run_weighted_sum_sgd(&cfg, 0.0, &p).unwrap();
        assert_eq!(alt.iterates, ws.iterates);
        assert_eq!(alt.step_sizes, ws.step_sizes);
    }

    #[derive(Debug)]
    struct Linear(f64);

    impl GradientOracle for Linear {
        fn dim(&self) -> usize {
            1
        }
        fn value(&self, x: &[f64]) -> f64 {
            self.0 * x[0]
        }
        fn gradient_into(&self, _: &[f64], out: &mut [f64]) {
            out[0] = self.0;
        }
        fn smoothness(&self) -> Smoothness {
            Smoothness::Smooth
        }
    }

    #[test]
    fn orders_commute_for_linear_objectives() {
        let mut p = quad_pair_1d(-100.0, 100.0);
        p.oracle_a = Arc::new(Linear(1.0));
        p.oracle_b = Arc::new(Linear(-3.0));
        for t in 0..20u64 {
            let block = RunConfig::new(1, fixed(0.25), AlternationSpec::block(1, 1).unwrap()).with_seed(t);
            let random = RunConfig {
                alternation: AlternationSpec::new(1, 1, Pattern::RandomPositions).unwrap(),
                ..block.clone()
            };
            let (xb, _) = sa2gd_iteration(&s(0.5), t as usize, &block, &p).unwrap();
            let (xr, _) = sa2gd_iteration(&s(0.5), t as usize, &random, &p).unwrap();
            assert_eq!(xb, xr);
        }
    }

    #[test]
    fn baseline_agrees_to_second_order() {
        let p = quadratic_pair(s(0.0), s(2.0), 1.0, 3.0, FeasibleRegion::interval(-10.0, 10.0).unwrap()).unwrap();
        let err = |alpha: f64| {
            let alt = RunConfig::new(1, fixed(alpha), AlternationSpec::block(1, 1).unwrap()).with_initial_point(s(0.7));
            let ws = RunConfig { schedule: fixed(2.0 * alpha), ..alt.clone() };
            let x_alt = run_sa2gd(&alt, &p).unwrap().final_iterate()[0];
            let x_ws = run_weighted_sum_sgd(&ws, 0.5, &p).unwrap().final_iterate()[0];
            (x_alt - x_ws).abs()
        };
        let mut prev = err(0.1);
        for k in 1..6 {
            let e = err(0.1 / 2f64.powi(k));
            let ratio = prev / e;
            assert!((ratio - 4.0).abs() < 0.05, "halving ratio {ratio}");
            prev = e;
        }
    }

    #[test]
    fn noiseless_descent_sanity() {
        let p = quad_pair_1d(-10.0, 10.0);
        let sched = StepSchedule::strongly_convex_decay(1.0, 4).unwrap();
        let cfg = RunConfig::new(300, sched, AlternationSpec::block(3, 1).unwrap()).with_initial_point(s(-7.0));
        let tr = run_sa2gd(&cfg, &p).unwrap();
        for t in 2..tr.s_values.len() - 1 {
            assert!(tr.s_values[t + 1] <= tr.s_values[t] + 1e-15, "t={t}");
        }
    }

    #[test]
    fn non_finite_iterate_names_iteration() {
        let mut p = quad_pair_1d(-10.0, 10.0);
        p.oracle_b = Arc::new(Linear(f64::INFINITY));
        let cfg = RunConfig::new(5, fixed(0.1), AlternationSpec::block(2, 1).unwrap()).with_initial_point(s(1.0));
        match run_sa2gd(&cfg, &p) {
            Err(Error::NonFiniteIterate { t, r, .. }) => assert_eq!((t, r), (0, 2)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn rejects_infeasible_start() {
        let p = quad_pair_1d(-1.0, 1.0);
        let cfg = RunConfig::new(5, fixed(0.1), AlternationSpec::block(1, 1).unwrap()).with_initial_point(s(5.0));
        assert!(matches!(run_sa2gd(&cfg, &p), Err(Error::InvalidInput(_))));
    }
}
