use super::CooMatrix;
use crate::error::{Error, Result};

/// Compressed sparse row matrix. Column indices are strictly increasing
/// within every row.
#[derive(Debug, Clone, PartialEq)]
pub struct CsrMatrix {
    num_rows: usize,
    num_cols: usize,
    row_offsets: Vec<usize>,
    col_indices: Vec<usize>,
    values: Vec<f32>,
}

impl CsrMatrix {
    /// Assembles a CSR matrix from raw arrays, validating every structural
    /// invariant.
    pub fn from_parts(
        num_rows: usize,
        num_cols: usize,
        row_offsets: Vec<usize>,
        col_indices: Vec<usize>,
        values: Vec<f32>,
    ) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidArgument(msg));
        if row_offsets.len() != num_rows + 1 {
            return bad(format!(
                "row_offsets has {} entries, expected {}",
                row_offsets.len(),
                num_rows + 1
            ));
        }
        if row_offsets[0] != 0 || row_offsets[num_rows] != col_indices.len() {
            return bad("row_offsets must start at 0 and end at nnz".into());
        }
        if col_indices.len() != values.len() {
            return bad("col_indices and values differ in length".into());
        }
        for (r, w) in row_offsets.windows(2).enumerate() {
            if w[0] > w[1] {
                return bad(format!("row_offsets decrease at row {r}"));
            }
            let cols = &col_indices[w[0]..w[1]];
            if cols.windows(2).any(|c| c[0] >= c[1]) {
                return bad(format!("columns of row {r} are not strictly increasing"));
            }
            if let Some(&c) = cols.last() {
                if c >= num_cols {
                    return bad(format!("column {c} in row {r} exceeds {num_cols} columns"));
                }
            }
        }
        Ok(Self {
            num_rows,
            num_cols,
            row_offsets,
            col_indices,
            values,
        })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            num_rows: n,
            num_cols: n,
            row_offsets: (0..=n).collect(),
            col_indices: (0..n).collect(),
            values: vec![1.0; n],
        }
    }

    pub fn num_rows(&self) -> usize {
        self.num_rows
    }

    pub fn num_cols(&self) -> usize {
        self.num_cols
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn row_offsets(&self) -> &[usize] {
        &self.row_offsets
    }

    pub fn col_indices(&self) -> &[usize] {
        &self.col_indices
    }

    pub fn values(&self) -> &[f32] {
        &self.values
    }

    /// Column indices and values of one row.
    pub fn row(&self, r: usize) -> (&[usize], &[f32]) {
        let range = self.row_offsets[r]..self.row_offsets[r + 1];
        (&self.col_indices[range.clone()], &self.values[range])
    }

    /// All entries as `(row, col, value)` in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, f32)> + '_ {
        (0..self.num_rows).flat_map(move |r| {
            let (cols, vals) = self.row(r);
            cols.iter().zip(vals).map(move |(&c, &v)| (r, c, v))
        })
    }

    pub fn to_coo(&self) -> CooMatrix {
        CooMatrix::from_entries(self.num_rows, self.num_cols, self.iter().collect())
            .expect("CSR entries are in bounds")
    }

    /// Multiplies every stored value by `alpha`.
    pub fn scaled(&self, alpha: f32) -> Self {
        let mut out = self.clone();
        out.values.iter_mut().for_each(|v| *v *= alpha);
        out
    }
}

/// Converts a COO matrix to CSR, summing any duplicate coordinates.
pub fn coo_to_csr(m: &CooMatrix) -> CsrMatrix {
    let mut canon = m.clone();
    if !canon.is_canonical() {
        canon.canonicalize();
    }
    let mut row_offsets = vec![0usize; canon.num_rows() + 1];
    for &(r, _, _) in canon.entries() {
        row_offsets[r + 1] += 1;
    }
    for r in 0..canon.num_rows() {
        row_offsets[r + 1] += row_offsets[r];
    }
    let (col_indices, values) = canon.entries().iter().map(|&(_, c, v)| (c, v)).unzip();
    CsrMatrix {
        num_rows: canon.num_rows(),
        num_cols: canon.num_cols(),
        row_offsets,
        col_indices,
        values,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sparse::random_csr;
    use proptest::prelude::*;

    #[test]
    fn empty_matrix_offsets() {
        let csr = coo_to_csr(&CooMatrix::new(4, 4));
        assert_eq!(csr.row_offsets(), &[0, 0, 0, 0, 0]);
        assert_eq!(csr.nnz(), 0);
    }

    #[test]
    fn small_hand_checked() {
        let coo = CooMatrix::from_entries(2, 2, vec![(1, 0, 2.0), (0, 1, 3.0)]).unwrap();
        let csr = coo_to_csr(&coo);
        assert_eq!(csr.row_offsets(), &[0, 1, 2]);
        assert_eq!(csr.col_indices(), &[1, 0]);
        assert_eq!(csr.values(), &[3.0, 2.0]);
    }

    #[test]
    fn random_round_trip_is_identical() {
        let csr = random_csr(100, 100, 0.05, 11).unwrap();
        let back = coo_to_csr(&csr.to_coo());
        assert_eq!(back, csr);
    }

    #[test]
    fn from_parts_rejects_unsorted_columns() {
        let err = CsrMatrix::from_parts(1, 3, vec![0, 2], vec![2, 1], vec![1.0, 1.0]);
        assert!(err.is_err());
        let err = CsrMatrix::from_parts(2, 3, vec![0, 2, 1], vec![0, 1], vec![1.0, 1.0]);
        assert!(err.is_err());
    }

    proptest! {
        #[test]
        fn coo_csr_round_trip_preserves_multiset(
            entries in prop::collection::btree_map((0usize..20, 0usize..30), -100i32..100, 0..120)
        ) {
            let triplets: Vec<_> = entries.iter().map(|(&(r, c), &v)| (r, c, v as f32 * 0.25)).collect();
            let coo = CooMatrix::from_entries(20, 30, triplets.clone()).unwrap();
            let csr = coo_to_csr(&coo);
            let again = coo_to_csr(&csr.to_coo());
            prop_assert_eq!(&again, &csr);
            let mut got: Vec<_> = csr.iter().collect();
            let mut want = triplets;
            got.sort_by_key(|t| (t.0, t.1));
            want.sort_by_key(|t| (t.0, t.1));
            prop_assert_eq!(got, want);
        }
    }
}
