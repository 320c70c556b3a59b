use crate::error::{Error, Result};

/// Coordinate-list sparse matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CooMatrix {
    num_rows: usize,
    num_cols: usize,
    entries: Vec<(usize, usize, f32)>,
}

impl CooMatrix {
    pub fn new(num_rows: usize, num_cols: usize) -> Self {
        Self {
            num_rows,
            num_cols,
            entries: Vec::new(),
        }
    }

    /// Builds a matrix from raw triplets, checking bounds. Duplicates are kept
    /// until [`CooMatrix::canonicalize`] is called.
    pub fn from_entries(
        num_rows: usize,
        num_cols: usize,
        entries: Vec<(usize, usize, f32)>,
    ) -> Result<Self> {
        if let Some(&(r, c, _)) = entries
            .iter()
            .find(|&&(r, c, _)| r >= num_rows || c >= num_cols)
        {
            return Err(Error::InvalidArgument(format!(
                "entry ({r}, {c}) outside {num_rows}x{num_cols} matrix"
            )));
        }
        Ok(Self {
            num_rows,
            num_cols,
            entries,
        })
    }

    pub fn push(&mut self, row: usize, col: usize, value: f32) -> Result<()> {
        if row >= self.num_rows || col >= self.num_cols {
            return Err(Error::InvalidArgument(format!(
                "entry ({row}, {col}) outside {}x{} matrix",
                self.num_rows, self.num_cols
            )));
        }
        self.entries.push((row, col, value));
        Ok(())
    }

    pub fn num_rows(&self) -> usize {
        self.num_rows
    }

    pub fn num_cols(&self) -> usize {
        self.num_cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[(usize, usize, f32)] {
        &self.entries
    }

    /// Sorts entries row-major and sums duplicate coordinates in their
    /// original order of appearance.
    pub fn canonicalize(&mut self) {
        // stable sort keeps duplicates in insertion order for the summation
        self.entries.sort_by_key(|&(r, c, _)| (r, c));
        let mut out: Vec<(usize, usize, f32)> = Vec::with_capacity(self.entries.len());
        for &(r, c, v) in &self.entries {
            match out.last_mut() {
                Some(last) if last.0 == r && last.1 == c => last.2 += v,
                _ => out.push((r, c, v)),
            }
        }
        self.entries = out;
    }

    pub fn is_canonical(&self) -> bool {
        self.entries
            .windows(2)
            .all(|w| (w[0].0, w[0].1) < (w[1].0, w[1].1))
    }
}
