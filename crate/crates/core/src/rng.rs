//! Seeded random number generation.
//!
//! All randomized routines in this crate take an explicit `u64` seed and are
//! bit-reproducible for a given seed. The generator is ChaCha12; uniforms are
//! drawn from the high 53 bits, and Gaussians come from a Box-Muller pair so
//! every complex Gaussian consumes exactly two uniforms.

use core::f64::consts::PI;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::linalg::{c, Ket, C64};

/// Derive an independent per-sample seed from a base seed and an index
/// (splitmix64 finalizer over their combination).
pub fn mix_seeds(seed: u64, index: u64) -> u64 {
    let mut z = seed ^ index.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Deterministic stream of uniforms, Gaussians and random kets.
#[derive(Debug, Clone)]
pub struct SeededRng {
    inner: ChaCha12Rng,
}

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        Self {
            inner: ChaCha12Rng::seed_from_u64(seed),
        }
    }

    /// Independent stream `index` of the same seed; used to fan one seed out
    /// across samples without correlations.
    pub fn substream(seed: u64, index: u64) -> Self {
        let mut inner = ChaCha12Rng::seed_from_u64(seed);
        inner.set_stream(index);
        Self { inner }
    }

    /// Uniform in `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        (self.inner.next_u64() >> 11) as f64 * (1.0 / ((1u64 << 53) as f64))
    }

    /// Uniform in `(0, 1]`; safe to pass to `ln`.
    fn uniform_open(&mut self) -> f64 {
        ((self.inner.next_u64() >> 11) + 1) as f64 * (1.0 / ((1u64 << 53) as f64))
    }

    /// Standard complex Gaussian: real and imaginary parts are independent
    /// N(0, 1) samples.
    pub fn complex_gaussian(&mut self) -> C64 {
        let r = libm::sqrt(-2.0 * libm::log(self.uniform_open()));
        let angle = 2.0 * PI * self.uniform();
        c(r * libm::cos(angle), r * libm::sin(angle))
    }

    /// Ket of independent standard complex Gaussians (unnormalized).
    pub fn gaussian_ket(&mut self, dim: usize) -> Ket {
        Ket::from_fn(dim, |_| self.complex_gaussian())
    }

    /// Normalized Gaussian ket; Haar-uniform on the sphere.
    pub fn random_ket(&mut self, dim: usize) -> Ket {
        loop {
            let k = self.gaussian_ket(dim);
            if let Ok(n) = k.normalized() {
                return n;
            }
        }
    }
}
