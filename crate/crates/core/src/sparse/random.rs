use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};

use super::{CsrMatrix, DenseMatrix, SpmmProblem};
use crate::error::{Error, Result};

/// Uniform random sparse matrix: every cell is a non-zero independently with
/// probability `density`, values uniform in [-1, 1).
///
/// Each row draws its count from Binomial(k, density) and then picks that
/// many distinct columns, so the cost is O(m + nnz) rather than O(m * k).
pub fn random_csr(m: usize, k: usize, density: f64, seed: u64) -> Result<CsrMatrix> {
    if m == 0 || k == 0 {
        return Err(Error::InvalidArgument(format!(
            "random matrix needs non-zero dimensions, got {m}x{k}"
        )));
    }
    if !(density > 0.0 && density <= 1.0) {
        return Err(Error::InvalidArgument(format!(
            "density must lie in (0, 1], got {density}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let per_row = Binomial::new(k as u64, density)
        .map_err(|e| Error::InvalidArgument(format!("bad density {density}: {e}")))?;

    let mut row_offsets = Vec::with_capacity(m + 1);
    row_offsets.push(0);
    let mut col_indices = Vec::new();
    let mut values = Vec::new();
    for _ in 0..m {
        let count = per_row.sample(&mut rng) as usize;
        let mut cols = index::sample(&mut rng, k, count).into_vec();
        cols.sort_unstable();
        for c in cols {
            col_indices.push(c);
            values.push(rng.random_range(-1.0f32..1.0));
        }
        row_offsets.push(col_indices.len());
    }
    CsrMatrix::from_parts(m, k, row_offsets, col_indices, values)
}

/// Dense matrix with entries uniform in [-1, 1).
pub fn random_dense(rows: usize, cols: usize, seed: u64) -> DenseMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let values = (0..rows * cols)
        .map(|_| rng.random_range(-1.0f32..1.0))
        .collect();
    DenseMatrix::from_vec(rows, cols, values).expect("length matches")
}

/// The dense operands `(B, C_in)` paired with a sparse `m x k` matrix.
/// Seeds are derived from `seed` so B and C_in are independent.
pub fn dense_operands(m: usize, k: usize, n: usize, seed: u64) -> (DenseMatrix, DenseMatrix) {
    let b = random_dense(k, n, seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(1));
    let c = random_dense(m, n, seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(2));
    (b, c)
}

/// Random SpMM instance with `alpha = 1`, `beta = 0`. Deterministic in `seed`.
pub fn random_problem(
    m: usize,
    k: usize,
    n: usize,
    density: f64,
    seed: u64,
) -> Result<SpmmProblem> {
    if n == 0 {
        return Err(Error::InvalidArgument("N must be non-zero".into()));
    }
    let a = random_csr(m, k, density, seed)?;
    let (b, c) = dense_operands(m, k, n, seed);
    SpmmProblem::new(a, b, c, 1.0, 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn density_one_is_fully_dense() {
        let p = random_problem(8, 8, 8, 1.0, 1234).unwrap();
        assert_eq!(p.nnz(), 64);
    }

    #[test]
    fn same_seed_same_problem() {
        let a = random_problem(100, 100, 8, 0.05, 7).unwrap();
        let b = random_problem(100, 100, 8, 0.05, 7).unwrap();
        assert_eq!(a, b);
        let c = random_problem(100, 100, 8, 0.05, 8).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn nnz_within_three_sigma_of_binomial() {
        let (m, k, d) = (513_351usize, 1000usize, 1e-5);
        let p = random_problem(m, k, 8, d, 1).unwrap();
        let cells = (m * k) as f64;
        let mean = cells * d;
        let sigma = (cells * d * (1.0 - d)).sqrt();
        let nnz = p.nnz() as f64;
        assert!(
            (nnz - mean).abs() <= 3.0 * sigma,
            "nnz {nnz} vs mean {mean} sigma {sigma}"
        );
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(random_problem(0, 4, 4, 0.5, 0).is_err());
        assert!(random_problem(4, 0, 4, 0.5, 0).is_err());
        assert!(random_problem(4, 4, 0, 0.5, 0).is_err());
        assert!(random_problem(4, 4, 4, 0.0, 0).is_err());
        assert!(random_problem(4, 4, 4, 1.5, 0).is_err());
        assert!(random_problem(4, 4, 4, f64::NAN, 0).is_err());
    }
}
