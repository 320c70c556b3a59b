use crate::error::{Error, Result};

/// Row-major dense fp32 matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    num_rows: usize,
    num_cols: usize,
    values: Vec<f32>,
}

impl DenseMatrix {
    pub fn zeros(num_rows: usize, num_cols: usize) -> Self {
        Self {
            num_rows,
            num_cols,
            values: vec![0.0; num_rows * num_cols],
        }
    }

    pub fn filled(num_rows: usize, num_cols: usize, value: f32) -> Self {
        Self {
            num_rows,
            num_cols,
            values: vec![value; num_rows * num_cols],
        }
    }

    pub fn from_vec(num_rows: usize, num_cols: usize, values: Vec<f32>) -> Result<Self> {
        if values.len() != num_rows * num_cols {
            return Err(Error::InvalidArgument(format!(
                "{} values for a {num_rows}x{num_cols} matrix",
                values.len()
            )));
        }
        Ok(Self {
            num_rows,
            num_cols,
            values,
        })
    }

    pub fn num_rows(&self) -> usize {
        self.num_rows
    }

    pub fn num_cols(&self) -> usize {
        self.num_cols
    }

    pub fn values(&self) -> &[f32] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f32] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<f32> {
        self.values
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> f32 {
        self.values[r * self.num_cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: f32) {
        self.values[r * self.num_cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[f32] {
        &self.values[r * self.num_cols..(r + 1) * self.num_cols]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [f32] {
        &mut self.values[r * self.num_cols..(r + 1) * self.num_cols]
    }

    /// Copies the `rows x cols` block starting at `(row0, col0)`; cells past
    /// the matrix edge are zero.
    pub fn padded_block(&self, row0: usize, col0: usize, rows: usize, cols: usize) -> Self {
        let mut out = Self::zeros(rows, cols);
        let row_end = (row0 + rows).min(self.num_rows);
        let col_end = (col0 + cols).min(self.num_cols);
        if row0 >= row_end || col0 >= col_end {
            return out;
        }
        let width = col_end - col0;
        for r in row0..row_end {
            out.row_mut(r - row0)[..width].copy_from_slice(&self.row(r)[col0..col_end]);
        }
        out
    }

    /// Writes `block` at `(row0, col0)`, dropping any part past the edge.
    pub fn write_block(&mut self, row0: usize, col0: usize, block: &DenseMatrix) {
        let row_end = (row0 + block.num_rows).min(self.num_rows);
        let col_end = (col0 + block.num_cols).min(self.num_cols);
        if row0 >= row_end || col0 >= col_end {
            return;
        }
        let width = col_end - col0;
        for r in row0..row_end {
            let src = &block.row(r - row0)[..width];
            self.row_mut(r)[col0..col_end].copy_from_slice(src);
        }
    }
}
