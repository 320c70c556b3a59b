#![allow(dead_code)]

use std::path::PathBuf;

use streamspmm::{coo_to_csr, load_matrix_market, CsrMatrix};

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

pub fn load(name: &str) -> CsrMatrix {
    coo_to_csr(&load_matrix_market(fixture(name), true).unwrap())
}
