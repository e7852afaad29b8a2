//! Input generators shared by the benchmarks.

use ordist::random::{random_circular_system, random_distance};
use ordist::DistanceMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Distance of a random weighted maximum circular system on `n` points.
pub fn circular_input(n: usize, seed: u64) -> DistanceMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_circular_system(n, &mut rng).expect("n >= 2").1.generate_distance()
}

/// Random matrix with integer entries in `1..=max`.
pub fn general_input(n: usize, max: i64, seed: u64) -> DistanceMatrix {
    random_distance(n, max, &mut ChaCha8Rng::seed_from_u64(seed))
}
