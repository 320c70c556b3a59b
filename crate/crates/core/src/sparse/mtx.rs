//! Matrix Market coordinate reader and array/coordinate writers.

use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use super::{CooMatrix, CsrMatrix, DenseMatrix};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Field {
    Real,
    Integer,
    Pattern,
}

#[derive(Debug, Clone, Copy)]
struct Header {
    field: Field,
    symmetric: bool,
}

fn parse_header(line: &str) -> Result<Header> {
    let tokens: Vec<String> = line.split_whitespace().map(str::to_ascii_lowercase).collect();
    if tokens.first().map(String::as_str) != Some("%%matrixmarket") {
        return Err(Error::mm(1, "first line must start with %%MatrixMarket"));
    }
    if tokens.len() != 5 {
        return Err(Error::mm(1, format!("expected 4 header fields, found {}", tokens.len() - 1)));
    }
    if tokens[1] != "matrix" {
        return Err(Error::mm(1, format!("unsupported object '{}'", tokens[1])));
    }
    match tokens[2].as_str() {
        "coordinate" => {}
        "array" => {
            return Err(Error::mm(
                1,
                "array (dense) format is not supported; convert to coordinate format",
            ))
        }
        other => return Err(Error::mm(1, format!("unknown format '{other}'"))),
    }
    let field = match tokens[3].as_str() {
        "real" => Field::Real,
        "integer" => Field::Integer,
        "pattern" => Field::Pattern,
        other => return Err(Error::mm(1, format!("unsupported field '{other}'"))),
    };
    let symmetric = match tokens[4].as_str() {
        "general" => false,
        "symmetric" => true,
        other => return Err(Error::mm(1, format!("unsupported symmetry '{other}'"))),
    };
    Ok(Header { field, symmetric })
}

fn parse_index(tok: Option<&str>, bound: usize, what: &str, line: usize) -> Result<usize> {
    let tok = tok.ok_or_else(|| Error::mm(line, format!("missing {what} index")))?;
    let idx: usize = tok
        .parse()
        .map_err(|_| Error::mm(line, format!("bad {what} index '{tok}'")))?;
    if idx == 0 || idx > bound {
        return Err(Error::mm(
            line,
            format!("{what} index {idx} outside declared range 1..={bound}"),
        ));
    }
    Ok(idx - 1)
}

/// Reads a coordinate-format Matrix Market stream.
///
/// Pattern entries get value 1.0, duplicates are summed, and symmetric files
/// are mirrored into the upper triangle when `expand_symmetric` is set
/// (otherwise only the stored triangle is returned).
pub fn read_matrix_market<R: BufRead>(reader: R, expand_symmetric: bool) -> Result<CooMatrix> {
    let mut lines = reader.lines().enumerate().map(|(i, l)| (i + 1, l));
    let header = match lines.next() {
        Some((_, Ok(l))) => parse_header(&l)?,
        Some((n, Err(e))) => return Err(Error::mm(n, e.to_string())),
        None => return Err(Error::mm(1, "empty file")),
    };

    let mut size: Option<(usize, usize, usize)> = None;
    let mut coo = CooMatrix::new(0, 0);
    let mut seen = 0usize;
    for (n, line) in lines {
        let line = line.map_err(|e| Error::mm(n, e.to_string()))?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('%') {
            continue;
        }
        let mut tok = trimmed.split_whitespace();
        let Some((rows, cols, nnz)) = size else {
            let mut dim = || -> Result<usize> {
                let t = tok.next().ok_or_else(|| Error::mm(n, "size line needs 3 fields"))?;
                t.parse()
                    .map_err(|_| Error::mm(n, format!("bad size field '{t}'")))
            };
            let dims = (dim()?, dim()?, dim()?);
            if tok.next().is_some() {
                return Err(Error::mm(n, "size line has extra fields"));
            }
            if header.symmetric && dims.0 != dims.1 {
                return Err(Error::mm(n, "symmetric matrix must be square"));
            }
            coo = CooMatrix::new(dims.0, dims.1);
            size = Some(dims);
            continue;
        };
        if seen == nnz {
            return Err(Error::mm(n, format!("more entries than the declared {nnz}")));
        }
        let r = parse_index(tok.next(), rows, "row", n)?;
        let c = parse_index(tok.next(), cols, "column", n)?;
        let v = match header.field {
            Field::Pattern => 1.0,
            Field::Real | Field::Integer => {
                let t = tok.next().ok_or_else(|| Error::mm(n, "missing value"))?;
                let v: f64 = t
                    .parse()
                    .map_err(|_| Error::mm(n, format!("bad value '{t}'")))?;
                if header.field == Field::Integer && v.fract() != 0.0 {
                    return Err(Error::mm(n, format!("non-integer value '{t}'")));
                }
                v as f32
            }
        };
        if tok.next().is_some() {
            return Err(Error::mm(n, "entry line has extra fields"));
        }
        coo.push(r, c, v)?;
        if header.symmetric && expand_symmetric && r != c {
            coo.push(c, r, v)?;
        }
        seen += 1;
    }
    match size {
        None => Err(Error::mm(1, "missing size line")),
        Some((_, _, nnz)) if seen < nnz => Err(Error::mm(
            0,
            format!("declared {nnz} entries but found {seen}"),
        )),
        Some(_) => {
            coo.canonicalize();
            Ok(coo)
        }
    }
}

pub fn load_matrix_market(path: impl AsRef<Path>, expand_symmetric: bool) -> Result<CooMatrix> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    read_matrix_market(BufReader::new(file), expand_symmetric)
}

/// Writes a dense matrix in Matrix Market array (column-major) format.
pub fn write_array<W: Write>(mut w: W, m: &DenseMatrix) -> std::io::Result<()> {
    writeln!(w, "%%MatrixMarket matrix array real general")?;
    writeln!(w, "{} {}", m.num_rows(), m.num_cols())?;
    for c in 0..m.num_cols() {
        for r in 0..m.num_rows() {
            writeln!(w, "{:e}", m.get(r, c))?;
        }
    }
    Ok(())
}

/// Writes a sparse matrix in Matrix Market coordinate format.
pub fn write_coordinate<W: Write>(mut w: W, m: &CsrMatrix) -> std::io::Result<()> {
    writeln!(w, "%%MatrixMarket matrix coordinate real general")?;
    writeln!(w, "{} {} {}", m.num_rows(), m.num_cols(), m.nnz())?;
    for (r, c, v) in m.iter() {
        writeln!(w, "{} {} {:e}", r + 1, c + 1, v)?;
    }
    Ok(())
}
