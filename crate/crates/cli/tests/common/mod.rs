#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use streamspmm::{CsrMatrix, DenseMatrix};

pub const BIN: &str = env!("CARGO_BIN_EXE_streamspmm");

pub fn core_fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures").join(name)
}

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Run {
    pub fn json(&self) -> serde_json::Value {
        serde_json::from_str(&self.stdout)
            .unwrap_or_else(|e| panic!("stdout is not JSON ({e}): {}", self.stdout))
    }
}

pub fn run<I, S>(args: I) -> Run
where
    I: IntoIterator<Item = S>,
    S: AsRef<std::ffi::OsStr>,
{
    let Output { status, stdout, stderr } = Command::new(BIN).args(args).output().expect("spawn cli");
    Run {
        code: status.code().unwrap_or(-1),
        stdout: String::from_utf8_lossy(&stdout).into_owned(),
        stderr: String::from_utf8_lossy(&stderr).into_owned(),
    }
}

/// Coordinate Matrix Market text from 0-based triplets.
pub fn mtx_text(m: usize, k: usize, entries: &[(usize, usize, f32)]) -> String {
    let mut s = format!("%%MatrixMarket matrix coordinate real general\n{m} {k} {}\n", entries.len());
    for (r, c, v) in entries {
        s.push_str(&format!("{} {} {v:e}\n", r + 1, c + 1));
    }
    s
}

/// Parses array-format Matrix Market output (column-major) into row-major values.
pub fn parse_array_mtx(text: &str) -> (usize, usize, Vec<f32>) {
    let mut lines = text.lines().filter(|l| !l.starts_with('%') && !l.trim().is_empty());
    let dims: Vec<usize> = lines.next().unwrap().split_whitespace().map(|t| t.parse().unwrap()).collect();
    let (m, n) = (dims[0], dims[1]);
    let col_major: Vec<f32> = lines.map(|l| l.trim().parse().unwrap()).collect();
    assert_eq!(col_major.len(), m * n);
    let mut out = vec![0.0; m * n];
    for c in 0..n {
        for r in 0..m {
            out[r * n + c] = col_major[c * m + r];
        }
    }
    (m, n, out)
}

/// Straightforward SpMM from the triplets of A, accumulating each row in
/// ascending column order.
pub fn oracle_spmm(a: &CsrMatrix, b: &DenseMatrix, c: &DenseMatrix, alpha: f32, beta: f32) -> Vec<f32> {
    let n = b.num_cols();
    let mut triplets: Vec<(usize, usize, f32)> = a.iter().collect();
    triplets.sort_by_key(|&(r, col, _)| (r, col));
    let mut acc = vec![0.0f32; a.num_rows() * n];
    for (r, col, v) in triplets {
        for j in 0..n {
            acc[r * n + j] += v * b.values()[col * n + j];
        }
    }
    acc.iter().zip(c.values()).map(|(&x, &y)| alpha * x + beta * y).collect()
}

/// Largest elementwise relative error; exact matches (including zeros)
/// count as zero.
pub fn max_rel_err(got: &[f32], want: &[f32]) -> f64 {
    assert_eq!(got.len(), want.len());
    got.iter()
        .zip(want)
        .map(|(&g, &w)| {
            if g == w {
                0.0
            } else {
                ((g as f64 - w as f64).abs()) / (w as f64).abs().max(f64::MIN_POSITIVE)
            }
        })
        .fold(0.0, f64::max)
}
