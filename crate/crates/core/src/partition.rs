//! Three-level decomposition of an SpMM: B column tiles of width `n0`,
//! K windows of length `k0`, and mod-P row interleaving of A.
//!
//! Non-zero `(r, c, v)` of A lands in bin `[c / k0][r % p]` as local
//! coordinates `(r / p, c % k0)`. Within a bin, entries are stored in
//! column-major order of their local coordinates, which is the visit order
//! the scheduler expects.

use crate::config::{COL_BITS, ROW_BITS};
use crate::error::{Error, Result};
use crate::sparse::{CsrMatrix, DenseMatrix};

/// Local rows a single PE can address; the all-ones row value marks bubbles.
pub const MAX_LOCAL_ROWS: usize = (1 << ROW_BITS) - 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PartitionConfig {
    /// PE count.
    pub p: usize,
    /// B/C column tile width.
    pub n0: usize,
    /// Window length along K.
    pub k0: usize,
}

impl Default for PartitionConfig {
    fn default() -> Self {
        Self {
            p: 64,
            n0: 8,
            k0: 4096,
        }
    }
}

impl PartitionConfig {
    pub fn validate(&self) -> Result<()> {
        if self.p == 0 || self.n0 == 0 || self.k0 == 0 {
            return Err(Error::Config("p, n0 and k0 must all be at least 1".into()));
        }
        if self.k0 > 1 << COL_BITS {
            return Err(Error::Config(format!(
                "k0 = {} exceeds the {COL_BITS}-bit column field",
                self.k0
            )));
        }
        Ok(())
    }

    pub fn num_windows(&self, k: usize) -> usize {
        k.div_ceil(self.k0)
    }

    pub fn num_col_tiles(&self, n: usize) -> usize {
        n.div_ceil(self.n0)
    }
}

/// One non-zero in PE-local coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalNonZero {
    pub local_row: u32,
    pub local_col: u32,
    pub value: f32,
}

impl LocalNonZero {
    pub fn new(local_row: u32, local_col: u32, value: f32) -> Self {
        Self {
            local_row,
            local_col,
            value,
        }
    }

    /// Total-order key used for multiset comparisons (NaN-safe).
    pub fn key(&self) -> (u32, u32, u32) {
        (self.local_row, self.local_col, self.value.to_bits())
    }
}

/// A partitioned into `num_windows x p` bins.
#[derive(Debug, Clone, PartialEq)]
pub struct PartitionedA {
    config: PartitionConfig,
    m: usize,
    k: usize,
    bins: Vec<Vec<Vec<LocalNonZero>>>,
}

impl PartitionedA {
    pub fn config(&self) -> PartitionConfig {
        self.config
    }

    pub fn num_windows(&self) -> usize {
        self.bins.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn bin(&self, window: usize, pe: usize) -> &[LocalNonZero] {
        &self.bins[window][pe]
    }

    /// Bins of one window, indexed by PE.
    pub fn window(&self, window: usize) -> &[Vec<LocalNonZero>] {
        &self.bins[window]
    }

    pub fn nnz(&self) -> usize {
        self.bins.iter().flatten().map(Vec::len).sum()
    }

    /// Maps a local entry of bin `(window, pe)` back to global `(row, col)`.
    pub fn to_global(&self, window: usize, pe: usize, nz: &LocalNonZero) -> (usize, usize) {
        (
            nz.local_row as usize * self.config.p + pe,
            window * self.config.k0 + nz.local_col as usize,
        )
    }
}

/// Splits A into per-window, per-PE bins with compressed local indices.
pub fn partition_a(a: &CsrMatrix, cfg: PartitionConfig) -> Result<PartitionedA> {
    cfg.validate()?;
    let (m, k) = (a.num_rows(), a.num_cols());
    if m > 0 {
        let last_local = (m - 1) / cfg.p;
        if last_local >= MAX_LOCAL_ROWS {
            let row = MAX_LOCAL_ROWS * cfg.p;
            return Err(Error::RowCapacity {
                row,
                local_row: row / cfg.p,
                max_local_rows: MAX_LOCAL_ROWS,
            });
        }
    }
    let num_windows = cfg.num_windows(k);
    let mut bins = vec![vec![Vec::new(); cfg.p]; num_windows];
    for (r, c, v) in a.iter() {
        bins[c / cfg.k0][r % cfg.p].push(LocalNonZero::new(
            (r / cfg.p) as u32,
            (c % cfg.k0) as u32,
            v,
        ));
    }
    for bin in bins.iter_mut().flatten() {
        // CSR order is already row-major; a stable column sort yields
        // column-major order.
        bin.sort_by_key(|nz| nz.local_col);
    }
    Ok(PartitionedA {
        config: cfg,
        m,
        k,
        bins,
    })
}

/// The `k0 x n0` block of B for window `j` and column tile `i`, zero-padded
/// past the matrix edges.
pub fn partition_b_window(
    b: &DenseMatrix,
    j: usize,
    i: usize,
    cfg: PartitionConfig,
) -> Result<DenseMatrix> {
    cfg.validate()?;
    let windows = cfg.num_windows(b.num_rows());
    let tiles = cfg.num_col_tiles(b.num_cols());
    if j >= windows || i >= tiles {
        return Err(Error::InvalidArgument(format!(
            "window ({j}, {i}) outside {windows} x {tiles} grid"
        )));
    }
    Ok(b.padded_block(j * cfg.k0, i * cfg.n0, cfg.k0, cfg.n0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sparse::{random_csr, random_dense, reference_product, CooMatrix, coo_to_csr};

    #[test]
    fn single_element() {
        let a = CsrMatrix::from_parts(1, 1, vec![0, 1], vec![0], vec![2.5]).unwrap();
        let pa = partition_a(&a, PartitionConfig::default()).unwrap();
        assert_eq!(pa.num_windows(), 1);
        assert_eq!(pa.bin(0, 0), &[LocalNonZero::new(0, 0, 2.5)]);
        assert!((1..64).all(|p| pa.bin(0, p).is_empty()));
    }

    #[test]
    fn bins_are_column_major() {
        let a = random_csr(50, 40, 0.3, 2).unwrap();
        let cfg = PartitionConfig { p: 3, n0: 2, k0: 16 };
        let pa = partition_a(&a, cfg).unwrap();
        for j in 0..pa.num_windows() {
            for p in 0..3 {
                let keys: Vec<_> = pa.bin(j, p).iter().map(|n| (n.local_col, n.local_row)).collect();
                assert!(keys.windows(2).all(|w| w[0] < w[1]));
            }
        }
    }

    #[test]
    fn inverse_map_reproduces_input() {
        let a = random_csr(64, 8192, 0.01, 17).unwrap();
        let cfg = PartitionConfig { p: 64, n0: 8, k0: 4096 };
        let pa = partition_a(&a, cfg).unwrap();
        let mut entries = Vec::new();
        for j in 0..pa.num_windows() {
            for p in 0..cfg.p {
                for nz in pa.bin(j, p) {
                    let (r, c) = pa.to_global(j, p, nz);
                    entries.push((r, c, nz.value));
                }
            }
        }
        let back = coo_to_csr(&CooMatrix::from_entries(64, 8192, entries).unwrap());
        assert_eq!(back, a);
        assert_eq!(pa.nnz(), a.nnz());
    }

    #[test]
    fn row_capacity_error_names_row() {
        let m = MAX_LOCAL_ROWS * 2 + 1;
        let a = CsrMatrix::from_parts(m, 1, vec![0; m + 1], vec![], vec![]).unwrap();
        let err = partition_a(&a, PartitionConfig { p: 2, n0: 1, k0: 1 }).unwrap_err();
        assert!(matches!(err, Error::RowCapacity { row, .. } if row == MAX_LOCAL_ROWS * 2));
        let ok = CsrMatrix::from_parts(m - 1, 1, vec![0; m], vec![], vec![]).unwrap();
        partition_a(&ok, PartitionConfig { p: 2, n0: 1, k0: 1 }).unwrap();
    }

    #[test]
    fn b_window_slices_and_pads() {
        let b = random_dense(8, 8, 1);
        let cfg = PartitionConfig { p: 2, n0: 8, k0: 4 };
        let w = partition_b_window(&b, 1, 0, cfg).unwrap();
        assert_eq!(w.values(), &b.values()[32..64]);

        let b = random_dense(10, 3, 2);
        let cfg = PartitionConfig { p: 1, n0: 8, k0: 4 };
        let w = partition_b_window(&b, 2, 0, cfg).unwrap();
        assert_eq!((w.num_rows(), w.num_cols()), (4, 8));
        assert_eq!(&w.row(0)[..3], b.row(8));
        assert!(w.row(0)[3..].iter().all(|&v| v == 0.0));
        assert!(w.row(2).iter().chain(w.row(3)).all(|&v| v == 0.0));

        assert!(partition_b_window(&b, 3, 0, cfg).is_err());
        assert!(partition_b_window(&b, 0, 1, cfg).is_err());
    }

    #[test]
    fn windows_recompose_to_product() {
        let a = random_csr(37, 29, 0.2, 8).unwrap();
        let b = random_dense(29, 11, 9);
        let cfg = PartitionConfig { p: 4, n0: 3, k0: 8 };
        let pa = partition_a(&a, cfg).unwrap();
        let mut c = DenseMatrix::zeros(37, 11);
        for i in 0..cfg.num_col_tiles(11) {
            let mut tile = DenseMatrix::zeros(37, cfg.n0);
            for j in 0..pa.num_windows() {
                let bw = partition_b_window(&b, j, i, cfg).unwrap();
                for p in 0..cfg.p {
                    for nz in pa.bin(j, p) {
                        let (r, _) = pa.to_global(j, p, nz);
                        for q in 0..cfg.n0 {
                            let v = tile.get(r, q) + nz.value * bw.get(nz.local_col as usize, q);
                            tile.set(r, q, v);
                        }
                    }
                }
            }
            c.write_block(0, i * cfg.n0, &tile);
        }
        let want = reference_product(&a, &b);
        for (x, y) in c.values().iter().zip(want.values()) {
            assert!((x - y).abs() <= 1e-5 * x.abs().max(y.abs()) + 1e-6);
        }
    }
}
