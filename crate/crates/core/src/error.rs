use std::io;
use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },

    #[error("matrix market parse error at line {line}: {msg}")]
    MatrixMarket { line: usize, msg: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    /// A row index whose local (per-PE) row would not fit the 18-bit row field.
    #[error(
        "row capacity exceeded: row {row} maps to local row {local_row}, \
         but the encoded row field holds at most {max_local_rows} rows per PE"
    )]
    RowCapacity {
        row: usize,
        local_row: usize,
        max_local_rows: usize,
    },

    #[error(
        "scratchpad capacity exceeded: {rows_per_pe} C rows per PE needed \
         (M = {m}, P = {p}) but scratchpad depth is {depth}; use more PEs"
    )]
    ScratchpadCapacity {
        m: usize,
        p: usize,
        rows_per_pe: usize,
        depth: usize,
    },

    #[error("{field} = {value} does not fit (maximum {max})")]
    FieldRange {
        field: &'static str,
        value: u64,
        max: u64,
    },

    #[error("stream does not match problem/config: {0}")]
    StreamMismatch(String),

    #[error("malformed pointer list: {0}")]
    PointerList(String),

    #[error("malformed stream file: {0}")]
    StreamFormat(String),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn mm(line: usize, msg: impl Into<String>) -> Self {
        Error::MatrixMarket {
            line,
            msg: msg.into(),
        }
    }
}
