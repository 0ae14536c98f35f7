//! Index-parallel map abstraction for replications and sweep cells.

use alloc::vec::Vec;

/// Evaluates `f(0), ..., f(n - 1)` and returns the results in index order.
///
/// Implementations may run the calls concurrently; callers rely only on the
/// output ordering, so sequential and parallel executors give identical
/// results for pure `f`.
pub trait Executor: Sync {
    fn map<T, F>(&self, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send;
}

/// Runs everything on the calling thread.
#[derive(Debug, Clone, Copy, Default)]
pub struct Sequential;

impl Executor for Sequential {
    fn map<T, F>(&self, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        (0..n).map(f).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sequential_keeps_order() {
        assert_eq!(Sequential.map(4, |i| i * i), alloc::vec![0, 1, 4, 9]);
        assert!(Sequential.map(0, |i| i).is_empty());
    }
}
