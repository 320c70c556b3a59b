use crate::error::{Error, Result};
use crate::scheduler::{decode_nonzero, StreamSlot};
use crate::sparse::DenseMatrix;

/// Runs one PE over a window's slot words.
///
/// Every payload drives all `n0` PUs: `c[a_row][q] += a_val * b[a_col][q]`.
/// Bubbles only advance time. The pipeline issues one slot per cycle, so the
/// returned cycle count is the slot count.
pub fn pe_execute(words: &[u64], b_window: &DenseMatrix, scratchpad: &mut DenseMatrix) -> Result<u64> {
    if b_window.num_cols() != scratchpad.num_cols() {
        return Err(Error::StreamMismatch(format!(
            "B window has {} columns but scratchpad has {}",
            b_window.num_cols(),
            scratchpad.num_cols()
        )));
    }
    for (cycle, &word) in words.iter().enumerate() {
        let StreamSlot::Payload(nz) = decode_nonzero(word) else {
            continue;
        };
        let (row, col) = (nz.local_row as usize, nz.local_col as usize);
        if row >= scratchpad.num_rows() {
            return Err(Error::StreamMismatch(format!(
                "slot {cycle}: row {row} outside {}-row scratchpad",
                scratchpad.num_rows()
            )));
        }
        if col >= b_window.num_rows() {
            return Err(Error::StreamMismatch(format!(
                "slot {cycle}: column {col} outside {}-row B window",
                b_window.num_rows()
            )));
        }
        let b = b_window.row(col);
        for (c, &bv) in scratchpad.row_mut(row).iter_mut().zip(b) {
            *c += nz.value * bv;
        }
    }
    Ok(words.len() as u64)
}
