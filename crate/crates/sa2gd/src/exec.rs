//! Thread-pool executor for replications and sweep cells.

use rayon::prelude::*;
use sa2gd_core::exec::Executor;

/// Runs calls on the global rayon pool; results come back in index order.
#[derive(Debug, Clone, Copy, Default)]
pub struct Rayon;

impl Executor for Rayon {
    fn map<T, F>(&self, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        (0..n).into_par_iter().map(f).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use sa2gd_core::exec::Sequential;
    use sa2gd_core::pareto::{sweep, Method, SweepConfig};
    use sa2gd_core::prelude::*;

    #[test]
    fn matches_sequential_bitwise() {
        assert_eq!(Rayon.map(1000, |i| i as f64 * 0.5), Sequential.map(1000, |i| i as f64 * 0.5));
        let p = attach_noise(&benchmark_problem("MOP3").unwrap(), 0.2).unwrap();
        let cfg = SweepConfig::new(10, 50, StepSchedule::fixed(1e-2).unwrap(), Method::Sa2gd).with_seed(4);
        assert_eq!(sweep(&p, &cfg, &Rayon).unwrap(), sweep(&p, &cfg, &Sequential).unwrap());
    }
}
