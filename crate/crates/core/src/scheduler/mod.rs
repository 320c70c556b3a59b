//! PE-aware out-of-order non-zero scheduling.
//!
//! Each bin of the partitioned matrix becomes an II=1 slot stream in which
//! two accumulations into the same row are at least `d` cycles apart.
//! Window streams of one PE are concatenated and indexed by a pointer list.

mod encoding;
mod matrix;
mod stream_file;
mod validate;
mod window;

pub use encoding::{decode_nonzero, encode_nonzero, StreamSlot, BUBBLE_ROW, BUBBLE_WORD};
pub use matrix::{schedule_matrix, PeStream, PointerList, ScheduledMatrix};
pub use stream_file::{read_stream_file, write_stream_file, STREAM_MAGIC, STREAM_VERSION};
pub use validate::{validate_schedule, RawViolation, ValidationReport};
pub use window::{
    in_order_colmajor_cycles, in_order_rowmajor_cycles, schedule_window, ScheduledStream,
};

use crate::error::{Error, Result};

/// Scheduler knobs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScheduleConfig {
    /// Minimum cycle distance between two non-zeros of the same row.
    pub d: usize,
}

impl Default for ScheduleConfig {
    fn default() -> Self {
        Self { d: 15 }
    }
}

impl ScheduleConfig {
    pub fn validate(&self) -> Result<()> {
        if self.d == 0 {
            return Err(Error::Config("RAW distance d must be at least 1".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
pub(crate) use window::tests::{example_bin, EXAMPLE_BIN};
