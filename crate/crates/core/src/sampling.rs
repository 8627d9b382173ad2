//! Seeded random streams and Gaussian sampling on `C^{n+1}`.
//!
//! Every sample, edge probe and trial draws from its own generator, keyed by
//! `(seed, stream, index)`, so results do not depend on how work is split
//! across threads.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::hermitian::IndefiniteVector;

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Generator for item `index` of stream `stream` under `seed`.
pub fn stream_rng(seed: u64, stream: u64, index: u64) -> ChaCha8Rng {
    let key = splitmix64(splitmix64(splitmix64(seed) ^ stream) ^ index);
    ChaCha8Rng::seed_from_u64(key)
}

/// Independent standard normal real and imaginary parts in `C^{n+1}`.
pub fn gaussian_vector(n: usize, rng: &mut impl Rng) -> IndefiniteVector {
    let coords = (0..=n).map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))).collect();
    IndefiniteVector::new(coords).expect("n >= 2")
}

/// Standard normal real vector in `R^{n+1}`, as a complex vector.
pub fn gaussian_real_vector(n: usize, rng: &mut impl Rng) -> IndefiniteVector {
    let coords = (0..=n).map(|_| Complex64::new(rng.sample(StandardNormal), 0.0)).collect();
    IndefiniteVector::new(coords).expect("n >= 2")
}

pub fn gaussian_complex(rng: &mut impl Rng) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}
