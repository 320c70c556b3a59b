use super::{CsrMatrix, DenseMatrix};
use crate::error::{Error, Result};

/// The five inputs of `C_out = alpha * A * B + beta * C_in`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpmmProblem {
    a: CsrMatrix,
    b: DenseMatrix,
    c_in: DenseMatrix,
    alpha: f32,
    beta: f32,
}

impl SpmmProblem {
    pub fn new(
        a: CsrMatrix,
        b: DenseMatrix,
        c_in: DenseMatrix,
        alpha: f32,
        beta: f32,
    ) -> Result<Self> {
        if a.num_cols() != b.num_rows() {
            return Err(Error::InvalidArgument(format!(
                "A is {}x{} but B has {} rows",
                a.num_rows(),
                a.num_cols(),
                b.num_rows()
            )));
        }
        if a.num_rows() != c_in.num_rows() || b.num_cols() != c_in.num_cols() {
            return Err(Error::InvalidArgument(format!(
                "C_in is {}x{}, expected {}x{}",
                c_in.num_rows(),
                c_in.num_cols(),
                a.num_rows(),
                b.num_cols()
            )));
        }
        Ok(Self {
            a,
            b,
            c_in,
            alpha,
            beta,
        })
    }

    pub fn a(&self) -> &CsrMatrix {
        &self.a
    }

    pub fn b(&self) -> &DenseMatrix {
        &self.b
    }

    pub fn c_in(&self) -> &DenseMatrix {
        &self.c_in
    }

    pub fn alpha(&self) -> f32 {
        self.alpha
    }

    pub fn beta(&self) -> f32 {
        self.beta
    }

    pub fn m(&self) -> usize {
        self.a.num_rows()
    }

    pub fn k(&self) -> usize {
        self.a.num_cols()
    }

    pub fn n(&self) -> usize {
        self.b.num_cols()
    }

    pub fn nnz(&self) -> usize {
        self.a.nnz()
    }
}
