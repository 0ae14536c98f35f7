use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::rng::NoiseKey;

/// Which objective a single inner step descends on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Tag {
    A,
    B,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pattern {
    /// All `n_a` steps on `f_a`, then all `n_b` steps on `f_b`.
    BlockAThenB,
    /// Round-robin spreading of the `a` steps in proportion `n_a / n_total`.
    Interleaved,
    /// A uniformly random arrangement drawn afresh every iteration.
    RandomPositions,
}

/// Optimization effort `(n_a, n_b)` and the ordering of the steps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AlternationSpec {
    pub n_a: usize,
    pub n_b: usize,
    pub pattern: Pattern,
}

impl AlternationSpec {
    pub fn new(n_a: usize, n_b: usize, pattern: Pattern) -> Result<Self> {
        if n_a + n_b == 0 {
            return Err(Error::invalid("n_a + n_b must be >= 1"));
        }
        Ok(AlternationSpec { n_a, n_b, pattern })
    }

    pub fn block(n_a: usize, n_b: usize) -> Result<Self> {
        Self::new(n_a, n_b, Pattern::BlockAThenB)
    }

    pub fn n_total(&self) -> usize {
        self.n_a + self.n_b
    }

    pub fn lambda_star(&self) -> f64 {
        self.n_a as f64 / self.n_total() as f64
    }
}

pub fn alternation_order(spec: &AlternationSpec, key: NoiseKey) -> Vec<Tag> {
    let n = spec.n_total();
    match spec.pattern {
        Pattern::BlockAThenB => {
            let mut v = Vec::with_capacity(n);
            v.resize(spec.n_a, Tag::A);
            v.resize(n, Tag::B);
            v
        }
        Pattern::Interleaved => {
            // step k is an 'a' step when ceil((k+1) n_a / n) increases
            let ceil_div = |k: usize| (k * spec.n_a).div_ceil(n);
            (0..n)
                .map(|k| if ceil_div(k + 1) > ceil_div(k) { Tag::A } else { Tag::B })
                .collect()
        }
        Pattern::RandomPositions => {
            let mut v = alternation_order(&AlternationSpec { pattern: Pattern::BlockAThenB, ..*spec }, key);
            let mut stream = key.stream();
            for i in (1..n).rev() {
                let j = stream.next_below(i as u64 + 1) as usize;
                v.swap(i, j);
            }
            v
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::NoiseStream;
    use alloc::vec;
    use Tag::{A, B};

    #[test]
    fn fixed_patterns() {
        let k = NoiseKey(0);
        assert_eq!(alternation_order(&AlternationSpec::block(2, 1).unwrap(), k), vec![A, A, B]);
        let il = |a, b| alternation_order(&AlternationSpec::new(a, b, Pattern::Interleaved).unwrap(), k);
        assert_eq!(il(1, 1), vec![A, B]);
        assert_eq!(il(2, 2), vec![A, B, A, B]);
        assert_eq!(il(0, 3), vec![B, B, B]);
        assert_eq!(il(3, 0), vec![A, A, A]);
    }

    #[test]
    fn random_positions_replay_and_cover_all_arrangements() {
        let spec = AlternationSpec::new(2, 1, Pattern::RandomPositions).unwrap();
        let arrangements = [vec![A, A, B], vec![A, B, A], vec![B, A, A]];
        let stream = NoiseStream::new(3);
        let mut seen = [0usize; 3];
        for t in 0..3000 {
            let key = stream.order_key(0, t);
            let o = alternation_order(&spec, key);
            assert_eq!(o, alternation_order(&spec, key));
            let idx = arrangements.iter().position(|a| *a == o).expect("valid arrangement");
            seen[idx] += 1;
        }
        // each arrangement has probability 1/3
        for s in seen {
            assert!((s as f64 - 1000.0).abs() < 4.0 * (3000.0f64 * (1.0 / 3.0) * (2.0 / 3.0)).sqrt());
        }
    }

    #[test]
    fn counts_are_preserved() {
        for pattern in [Pattern::BlockAThenB, Pattern::Interleaved, Pattern::RandomPositions] {
            for n_a in 0..7 {
                for n_b in 0..7 {
                    if n_a + n_b == 0 {
                        assert!(AlternationSpec::new(n_a, n_b, pattern).is_err());
                        continue;
                    }
                    let spec = AlternationSpec::new(n_a, n_b, pattern).unwrap();
                    let o = alternation_order(&spec, NoiseKey(n_a as u64 * 31 + n_b as u64));
                    assert_eq!(o.len(), n_a + n_b);
                    assert_eq!(o.iter().filter(|t| **t == A).count(), n_a);
                }
            }
        }
    }
}
