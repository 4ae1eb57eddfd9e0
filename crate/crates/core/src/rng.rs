//! Portable seeded generator.
//!
//! SplitMix64 with its published constants: state advances by
//! `0x9E3779B97F4A7C15`, output mixes with multipliers `0xBF58476D1CE4E5B9`
//! and `0x94D049BB133111EB` and shifts 30/27/31. Ranges use
//! `lo + next_u64() % span`. Any implementation following these rules
//! reproduces the same instance stream.

use crate::rational::{frac, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeededGenerator {
    seed: u64,
    state: u64,
    counter: u64,
}

impl SeededGenerator {
    pub fn new(seed: u64) -> Self {
        SeededGenerator { seed, state: seed, counter: 0 }
    }

    /// Generator for trial `index` of a run seeded with `seed`.
    pub fn for_trial(seed: u64, index: u64) -> Self {
        let mut g = SeededGenerator::new(seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15));
        g.seed = seed;
        g
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn draws(&self) -> u64 {
        self.counter
    }

    pub fn next_u64(&mut self) -> u64 {
        self.counter += 1;
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform-ish integer in `[lo, hi]` (inclusive).
    pub fn range_i64(&mut self, lo: i64, hi: i64) -> i64 {
        assert!(lo <= hi);
        let span = (hi - lo) as u64 + 1;
        lo + (self.next_u64() % span) as i64
    }

    pub fn below(&mut self, n: usize) -> usize {
        assert!(n > 0);
        (self.next_u64() % n as u64) as usize
    }

    /// Rational `num/den` with `num ∈ [lo*den, hi*den]`, `den ∈ [1, max_den]`.
    pub fn rational_in(&mut self, lo: i64, hi: i64, max_den: i64) -> Rational {
        let den = self.range_i64(1, max_den);
        let num = self.range_i64(lo * den, hi * den);
        frac(num, den)
    }
}
