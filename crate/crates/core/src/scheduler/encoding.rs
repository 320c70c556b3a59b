//! 64-bit non-zero word: bits [13:0] local column, [31:14] local row,
//! [63:32] IEEE-754 value bits.

use crate::config::{COL_BITS, ROW_BITS};
use crate::error::{Error, Result};
use crate::partition::LocalNonZero;

const COL_MASK: u64 = (1 << COL_BITS) - 1;
const ROW_MASK: u64 = (1 << ROW_BITS) - 1;

/// Row value reserved for bubbles.
pub const BUBBLE_ROW: u32 = ROW_MASK as u32;
/// Canonical bubble word: sentinel row, column 0, value bits 0.
pub const BUBBLE_WORD: u64 = ROW_MASK << COL_BITS;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StreamSlot {
    Payload(LocalNonZero),
    Bubble,
}

impl StreamSlot {
    pub fn is_bubble(&self) -> bool {
        matches!(self, StreamSlot::Bubble)
    }

    pub fn payload(&self) -> Option<&LocalNonZero> {
        match self {
            StreamSlot::Payload(nz) => Some(nz),
            StreamSlot::Bubble => None,
        }
    }

    /// Wire word for this slot.
    pub fn to_word(&self) -> Result<u64> {
        match self {
            StreamSlot::Payload(nz) => encode_nonzero(nz),
            StreamSlot::Bubble => Ok(BUBBLE_WORD),
        }
    }
}

pub fn encode_nonzero(nz: &LocalNonZero) -> Result<u64> {
    if u64::from(nz.local_col) > COL_MASK {
        return Err(Error::FieldRange {
            field: "local column",
            value: nz.local_col.into(),
            max: COL_MASK,
        });
    }
    if nz.local_row >= BUBBLE_ROW {
        return Err(Error::FieldRange {
            field: "local row",
            value: nz.local_row.into(),
            max: u64::from(BUBBLE_ROW) - 1,
        });
    }
    Ok(u64::from(nz.value.to_bits()) << 32
        | u64::from(nz.local_row) << COL_BITS
        | u64::from(nz.local_col))
}

/// Any word whose row field is the sentinel decodes to a bubble.
pub fn decode_nonzero(word: u64) -> StreamSlot {
    let row = ((word >> COL_BITS) & ROW_MASK) as u32;
    if row == BUBBLE_ROW {
        return StreamSlot::Bubble;
    }
    StreamSlot::Payload(LocalNonZero {
        local_row: row,
        local_col: (word & COL_MASK) as u32,
        value: f32::from_bits((word >> 32) as u32),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Bit layout assembled with shifts on plain integers, independent of the
    /// encoder's masks.
    fn oracle(row: u64, col: u64, bits: u64) -> u64 {
        (bits * (1u64 << 32)) + row * 16384 + col
    }

    #[test]
    fn zero_word() {
        assert_eq!(encode_nonzero(&LocalNonZero::new(0, 0, 0.0)).unwrap(), 0);
    }

    #[test]
    fn unit_entry() {
        let w = encode_nonzero(&LocalNonZero::new(1, 1, 1.0)).unwrap();
        assert_eq!(w, oracle(1, 1, 0x3F80_0000));
        assert_eq!(w, 0x3F80_0000_0000_4001);
    }

    #[test]
    fn sentinel_row_is_bubble() {
        assert!(decode_nonzero(0x3FFFF << 14).is_bubble());
        assert!(decode_nonzero(0xDEAD_BEEF_FFFF_C123).is_bubble());
        assert_eq!(BUBBLE_WORD, 0x0000_0000_FFFF_C000);
    }

    #[test]
    fn rejects_out_of_range_fields() {
        assert!(encode_nonzero(&LocalNonZero::new(0, 1 << 14, 1.0)).is_err());
        assert!(encode_nonzero(&LocalNonZero::new(BUBBLE_ROW, 0, 1.0)).is_err());
        assert!(encode_nonzero(&LocalNonZero::new(BUBBLE_ROW - 1, (1 << 14) - 1, 1.0)).is_ok());
    }
}
