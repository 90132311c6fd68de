//! Seeded random inputs for the benchmarks.

use crumbs::{DenseOperator, InputMatrix, Triplet};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn sample(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

/// Dense `n x n` matrix with entries uniform in the unit square.
pub fn random_dense(n: usize, seed: u64) -> InputMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let data = (0..n * n).map(|_| sample(&mut rng)).collect();
    InputMatrix::Dense(DenseOperator::from_row_major(n, data).expect("n*n entries"))
}

/// Sparse `n x n` matrix with `nnz` distinct random positions.
pub fn random_sparse(n: usize, nnz: usize, seed: u64) -> InputMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nnz = nnz.min(n * n);
    let entries = rand::seq::index::sample(&mut rng, n * n, nnz)
        .into_iter()
        .map(|k| Triplet {
            row: k / n,
            col: k % n,
            value: Complex64::new(1.0, 0.0),
        })
        .collect::<Vec<_>>();
    let entries = entries
        .into_iter()
        .map(|t| Triplet {
            value: sample(&mut rng),
            ..t
        })
        .collect();
    InputMatrix::sparse(n, entries).expect("distinct in-range positions")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes_and_determinism() {
        assert_eq!(random_dense(8, 1), random_dense(8, 1));
        assert_ne!(random_dense(8, 1), random_dense(8, 2));
        let s = random_sparse(16, 20, 3);
        assert_eq!(s.nonzero_count(), 20);
        assert_eq!(s, random_sparse(16, 20, 3));
        assert_eq!(random_sparse(2, 10, 0).nonzero_count(), 4);
    }
}
