//! Fixtures shared by the benchmarks.

use ihss::IntMatrix;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// A seeded `n x n` integer matrix with entries in `[-9, 9]`.
pub fn random_matrix(n: usize, seed: u64) -> IntMatrix {
    let mut rng = StdRng::seed_from_u64(seed);
    let entries: Vec<i64> = (0..n * n).map(|_| rng.gen_range(-9..=9)).collect();
    IntMatrix::from_i64(n, n, &entries)
}
