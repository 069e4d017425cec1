//! Seeded randomness.
//!
//! Every random draw in the crate comes from ChaCha8 seeded with a 64-bit
//! seed and a stream number. Distinct restarts or sample batches use
//! distinct streams, so results do not depend on evaluation order.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

/// The generator for `(seed, stream)`.
pub fn seeded(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// A vector of i.i.d. standard normal coordinates.
pub fn normal_vector(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| StandardNormal.sample(rng)).collect()
}

/// `count` standard normal vectors of length `n`, drawn from stream `stream`.
pub fn normal_samples(seed: u64, stream: u64, count: usize, n: usize) -> Vec<Vec<f64>> {
    let mut rng = seeded(seed, stream);
    (0..count).map(|_| normal_vector(&mut rng, n)).collect()
}
