//! Seeded channel randomness.
//!
//! The generator is SplitMix64 (Steele, Lea, Flood 2014): state advances by
//! `0x9E3779B97F4A7C15`, output is the state passed through the finalizer
//! `z ^= z >> 30; z *= 0xBF58476D1CE4E5B9; z ^= z >> 27; z *= 0x94D049BB133111EB; z ^= z >> 31`.
//! Any language can reproduce the stream from these few lines.
//!
//! Bounded draws use rejection sampling so that they stay exactly uniform:
//! for a bound `m`, outputs `x ≥ ⌊2^64 / m⌋·m` (computed as
//! `(u64::MAX / m) * m`) are discarded, and the result is `x mod m`.

use rand_core::{RngCore, SeedableRng};

#[derive(Debug, Clone)]
pub struct SplitMix64 {
    inner: rand_xoshiro::SplitMix64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { inner: rand_xoshiro::SplitMix64::seed_from_u64(seed) }
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Uniform draw from `[0, m)`. Panics on `m == 0`.
    pub fn below(&mut self, m: u64) -> u64 {
        assert!(m > 0, "empty range");
        let zone = (u64::MAX / m) * m;
        loop {
            let x = self.next_u64();
            if x < zone {
                return x % m;
            }
        }
    }
}
