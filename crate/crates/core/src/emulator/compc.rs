use crate::error::{Error, Result};
use crate::sparse::DenseMatrix;

/// Merges the PE scratchpads of one column tile into
/// `alpha * C_AB + beta * C_in`.
///
/// Row `m` of the output comes from PE `m % P`, local row `m / P`. The merge
/// processes `f_c` rows per cycle, so it takes `ceil(M / f_c)` cycles.
pub fn comp_c_phase(
    scratchpads: &[DenseMatrix],
    c_in_tile: &DenseMatrix,
    alpha: f32,
    beta: f32,
    f_c: usize,
) -> Result<(DenseMatrix, u64)> {
    let p = scratchpads.len();
    let (m, n0) = (c_in_tile.num_rows(), c_in_tile.num_cols());
    if p == 0 || f_c == 0 {
        return Err(Error::Config("CompC needs at least one PE and f_c >= 1".into()));
    }
    let rows_per_pe = m.div_ceil(p);
    if let Some(bad) = scratchpads
        .iter()
        .position(|s| s.num_rows() < rows_per_pe || s.num_cols() != n0)
    {
        return Err(Error::StreamMismatch(format!(
            "scratchpad {bad} is {}x{}, need at least {rows_per_pe}x{n0}",
            scratchpads[bad].num_rows(),
            scratchpads[bad].num_cols()
        )));
    }
    let mut out = DenseMatrix::zeros(m, n0);
    for row in 0..m {
        let acc = scratchpads[row % p].row(row / p);
        let c_in = c_in_tile.row(row);
        for ((o, &a), &c) in out.row_mut(row).iter_mut().zip(acc).zip(c_in) {
            *o = alpha * a + beta * c;
        }
    }
    Ok((out, m.div_ceil(f_c) as u64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sparse::random_dense;

    fn pads(p: usize, rows: usize, n0: usize) -> Vec<DenseMatrix> {
        (0..p).map(|i| random_dense(rows, n0, i as u64)).collect()
    }

    #[test]
    fn alpha_one_beta_zero_collects_scratchpads() {
        let sps = pads(3, 4, 2);
        let c_in = random_dense(10, 2, 99);
        let (out, _) = comp_c_phase(&sps, &c_in, 1.0, 0.0, 16).unwrap();
        for m in 0..10 {
            assert_eq!(out.row(m), sps[m % 3].row(m / 3));
        }
    }

    #[test]
    fn zero_scalars_zero_output() {
        let sps = pads(2, 3, 4);
        let (out, _) = comp_c_phase(&sps, &random_dense(6, 4, 1), 0.0, 0.0, 16).unwrap();
        assert!(out.values().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn cycle_count_is_rows_over_f_c() {
        let sps = vec![DenseMatrix::zeros(64, 8); 64];
        let (_, cycles) = comp_c_phase(&sps, &DenseMatrix::zeros(4096, 8), 1.0, 1.0, 16).unwrap();
        assert_eq!(cycles, 256);
        let sps = vec![DenseMatrix::zeros(1, 8); 64];
        let (_, cycles) = comp_c_phase(&sps, &DenseMatrix::zeros(17, 8), 1.0, 1.0, 16).unwrap();
        assert_eq!(cycles, 2);
    }

    #[test]
    fn each_output_row_has_one_owner() {
        let (p, m) = (5usize, 23usize);
        let mut owners = vec![Vec::new(); m];
        for pe in 0..p {
            for local in 0..m.div_ceil(p) {
                let row = local * p + pe;
                if row < m {
                    owners[row].push(pe);
                }
            }
        }
        assert!(owners.iter().all(|o| o.len() == 1));
    }

    #[test]
    fn short_scratchpad_rejected() {
        let sps = pads(2, 1, 2);
        assert!(comp_c_phase(&sps, &DenseMatrix::zeros(3, 2), 1.0, 0.0, 16).is_err());
    }
}
