//! Matrix containers, Matrix Market I/O, random generators and the
//! reference SpMM used to check everything downstream.

mod coo;
mod csr;
mod dense;
mod mtx;
mod problem;
mod random;
mod reference;

pub use coo::CooMatrix;
pub use csr::{coo_to_csr, CsrMatrix};
pub use dense::DenseMatrix;
pub use mtx::{load_matrix_market, read_matrix_market, write_array, write_coordinate};
pub use problem::SpmmProblem;
pub use random::{dense_operands, random_csr, random_dense, random_problem};
pub use reference::{reference_product, reference_spmm};
