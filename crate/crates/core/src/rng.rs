//! The single random stream used by a run.
//!
//! `SimRng` wraps ChaCha8 (from `rand_chacha`), seeded from a 64-bit integer
//! via `SeedableRng::seed_from_u64`. Only two derived draws are used anywhere
//! in the crate, both defined here on top of raw `next_u64` output so that
//! trajectories do not depend on `rand`'s distribution internals:
//!
//! - [`SimRng::unit`]: the top 53 bits of one `u64`, scaled to `[0, 1)`;
//! - [`SimRng::below`]: Lemire's widening-multiply method with rejection,
//!   exactly uniform on `0..n`.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone)]
pub struct SimRng {
    inner: ChaCha8Rng,
}

impl SimRng {
    pub fn new(seed: u64) -> Self {
        Self {
            inner: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Uniform `f64` in `[0, 1)`.
    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// `true` with probability `p` (one draw, even when `p` is 0 or 1).
    pub fn chance(&mut self, p: f64) -> bool {
        self.unit() < p
    }

    /// Uniform integer in `0..n`. Panics if `n == 0`.
    pub fn below(&mut self, n: usize) -> usize {
        assert!(n > 0, "below(0)");
        let n = n as u64;
        let threshold = n.wrapping_neg() % n;
        loop {
            let m = (self.next_u64() as u128) * (n as u128);
            if (m as u64) >= threshold {
                return (m >> 64) as usize;
            }
        }
    }

    /// Fisher-Yates shuffle driven by [`SimRng::below`].
    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.below(i + 1);
            items.swap(i, j);
        }
    }
}
