//! Splittable deterministic random source.
//!
//! Every stream is a ChaCha8 generator whose key is derived from
//! `(master seed, stream index)` with a SplitMix64 finalizer, so stream `i`
//! is the same no matter which thread or in which order it is consumed.

use rand::RngCore;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::scalar::Real;

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(GOLDEN_GAMMA);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Mixes a master seed and a stream index into a 64-bit stream key.
pub fn mix_stream(seed: u64, index: u64) -> u64 {
    splitmix64(seed ^ splitmix64(index.wrapping_mul(GOLDEN_GAMMA) ^ 0xD1B5_4A32_D192_ED03))
}

#[derive(Clone, Debug)]
pub struct RandomSource {
    seed: u64,
    index: u64,
    rng: ChaCha8Rng,
}

impl RandomSource {
    /// Stream 0 of `seed`.
    pub fn new(seed: u64) -> Self {
        Self::stream(seed, 0)
    }

    pub fn stream(seed: u64, index: u64) -> Self {
        Self {
            seed,
            index,
            rng: ChaCha8Rng::seed_from_u64(mix_stream(seed, index)),
        }
    }

    /// Independent child stream. Children of different parents never share
    /// a key path because the parent's stream key becomes the child's seed.
    pub fn split(&self, index: u64) -> Self {
        Self::stream(mix_stream(self.seed, self.index), index)
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn index(&self) -> u64 {
        self.index
    }

    /// Uniform draw in `[0, 1)` with 53 random bits.
    pub fn uniform(&mut self) -> f64 {
        (self.rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn uniform_real<T: Real>(&mut self) -> T {
        T::lit(self.uniform())
    }

    /// Uniform angle in `[0, 2π)`.
    pub fn angle<T: Real>(&mut self) -> T {
        let a = T::lit(self.uniform() * std::f64::consts::TAU);
        if a >= T::TAU() {
            T::zero()
        } else {
            a
        }
    }

    /// Uniform index in `0..n`.
    pub fn index_below(&mut self, n: usize) -> usize {
        assert!(n > 0, "empty range");
        ((self.uniform() * n as f64) as usize).min(n - 1)
    }

    /// Standard normal draw (Box–Muller).
    pub fn normal(&mut self) -> f64 {
        let u1 = 1.0 - self.uniform();
        let u2 = self.uniform();
        (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
    }

    /// Samples an index with probability proportional to `weights`.
    pub fn categorical<T: Real>(&mut self, weights: &[T]) -> usize {
        let total: f64 = weights.iter().map(|w| w.to_f64().unwrap_or(0.0)).sum();
        let target = self.uniform() * total;
        let mut acc = 0.0;
        let mut last_positive = 0;
        for (i, w) in weights.iter().enumerate() {
            let w = w.to_f64().unwrap_or(0.0);
            if w > 0.0 {
                last_positive = i;
                acc += w;
                if target < acc {
                    return i;
                }
            }
        }
        last_positive
    }
}

impl RngCore for RandomSource {
    fn next_u32(&mut self) -> u32 {
        self.rng.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.rng.fill_bytes(dst)
    }
}
