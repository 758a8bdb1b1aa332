//! Deterministic fixtures shared by the criterion benches.

use cfinv_core::{ExactMatrix, Field, SkewMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Alternating matrix with uniformly random entries in `[-bound, bound]`.
pub fn random_skew(field: Field, n: usize, bound: i64, seed: u64) -> SkewMatrix<cfinv_core::Scalar> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    SkewMatrix::from_fn(n, |_, _| field.from_i64(rng.gen_range(-bound..=bound)))
}

pub fn random_matrix(field: Field, rows: usize, cols: usize, bound: i64, seed: u64) -> ExactMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let data: Vec<Vec<i64>> = (0..rows)
        .map(|_| (0..cols).map(|_| rng.gen_range(-bound..=bound)).collect())
        .collect();
    ExactMatrix::from_i64(field, &data)
}
