//! Counter-based, splittable randomness.
//!
//! Every random draw is addressed by a path `(master_seed, replication, t, r)`
//! hashed into a [`NoiseKey`]. A key seeds its own SplitMix64 [`KeyStream`],
//! so draws never depend on evaluation order or on shared generator state.

use rand::{Rng, RngCore, SeedableRng};
use rand_distr::StandardNormal;
use rand_xoshiro::SplitMix64;

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

const DOMAIN_GRADIENT: u64 = 0x6772_6164;
const DOMAIN_ORDER: u64 = 0x6f72_6465;
const DOMAIN_START: u64 = 0x7374_6172;

#[inline]
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[inline]
fn absorb(h: u64, v: u64) -> u64 {
    mix64(h ^ mix64(v.wrapping_add(GOLDEN)))
}

/// Root of all randomness for one experiment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct NoiseStream {
    pub master_seed: u64,
}

impl NoiseStream {
    pub fn new(master_seed: u64) -> Self {
        NoiseStream { master_seed }
    }

    fn root(&self, domain: u64) -> u64 {
        absorb(mix64(self.master_seed), domain)
    }

    /// Key for the `r`-th oracle call of outer iteration `t`.
    pub fn gradient_key(&self, replication: u64, t: u64, r: u64) -> NoiseKey {
        let h = absorb(self.root(DOMAIN_GRADIENT), replication);
        NoiseKey(absorb(absorb(h, t), r))
    }

    /// Key for the step-order permutation of outer iteration `t`.
    pub fn order_key(&self, replication: u64, t: u64) -> NoiseKey {
        NoiseKey(absorb(absorb(self.root(DOMAIN_ORDER), replication), t))
    }

    /// Key for the random starting point of a replication.
    pub fn start_key(&self, replication: u64) -> NoiseKey {
        NoiseKey(absorb(self.root(DOMAIN_START), replication))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct NoiseKey(pub u64);

impl NoiseKey {
    /// An independent child key.
    pub fn fork(self, child: u64) -> NoiseKey {
        NoiseKey(absorb(self.0, child))
    }

    pub fn stream(self) -> KeyStream {
        KeyStream { rng: SplitMix64::seed_from_u64(self.0) }
    }
}

/// Draws expanded from one key; a thin wrapper over SplitMix64.
#[derive(Debug, Clone)]
pub struct KeyStream {
    rng: SplitMix64,
}

impl KeyStream {
    pub fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    /// Uniform in `[0, 1)`.
    pub fn next_f64(&mut self) -> f64 {
        self.rng.random()
    }

    pub fn next_gaussian(&mut self) -> f64 {
        self.rng.sample(StandardNormal)
    }

    /// Uniform integer in `0..n` (`n > 0`).
    pub fn next_below(&mut self, n: u64) -> u64 {
        debug_assert!(n > 0);
        self.rng.random_range(0..n)
    }
}
