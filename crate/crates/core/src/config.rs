//! Architecture knobs shared by the partitioner, scheduler, emulator and model.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::PartitionConfig;
use crate::scheduler::ScheduleConfig;

/// Bits of the local column field in an encoded non-zero.
pub const COL_BITS: u32 = 14;
/// Bits of the local row field in an encoded non-zero.
pub const ROW_BITS: u32 = 18;

/// Hardware configuration of the accelerator.
///
/// Defaults describe the 64-PE U280 build: 8 PE groups of 8 PEs, 8 PUs per
/// PE, 4096-row B windows, 12288-row C scratchpads, 8-deep broadcast FIFOs,
/// a 15-cycle accumulation latency and a 189 MHz clock.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AcceleratorConfig {
    pub peg_count: usize,
    pub pes_per_peg: usize,
    /// PUs per PE, i.e. the B/C column tile width.
    pub n0: usize,
    /// B window length along K.
    pub k0: usize,
    /// C rows held per PE.
    pub scratchpad_depth: usize,
    pub fifo_depth: usize,
    /// RAW distance in cycles between two accumulations into one row.
    pub d: usize,
    /// Partition factor of the on-chip B store (2 ports each).
    pub f_b: usize,
    /// Row parallelism of the CompC merge.
    pub f_c: usize,
    pub frequency_mhz: f64,
}

impl Default for AcceleratorConfig {
    fn default() -> Self {
        Self {
            peg_count: 8,
            pes_per_peg: 8,
            n0: 8,
            k0: 4096,
            scratchpad_depth: 12288,
            fifo_depth: 8,
            d: 15,
            f_b: 4,
            f_c: 16,
            frequency_mhz: 189.0,
        }
    }
}

impl AcceleratorConfig {
    /// Total PE count.
    pub fn p(&self) -> usize {
        self.peg_count * self.pes_per_peg
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("peg_count", self.peg_count),
            ("pes_per_peg", self.pes_per_peg),
            ("n0", self.n0),
            ("k0", self.k0),
            ("scratchpad_depth", self.scratchpad_depth),
            ("fifo_depth", self.fifo_depth),
            ("d", self.d),
            ("f_b", self.f_b),
            ("f_c", self.f_c),
        ];
        if let Some((name, _)) = positive.iter().find(|(_, v)| *v == 0) {
            return Err(Error::Config(format!("{name} must be at least 1")));
        }
        if self.k0 > 1 << COL_BITS {
            return Err(Error::Config(format!(
                "k0 = {} exceeds the {}-bit column field",
                self.k0, COL_BITS
            )));
        }
        // the all-ones row value is reserved for bubbles
        if self.scratchpad_depth > (1 << ROW_BITS) - 1 {
            return Err(Error::Config(format!(
                "scratchpad_depth = {} exceeds the {}-bit row field",
                self.scratchpad_depth, ROW_BITS
            )));
        }
        if !(self.frequency_mhz > 0.0 && self.frequency_mhz.is_finite()) {
            return Err(Error::Config("frequency_mhz must be positive".into()));
        }
        Ok(())
    }

    pub fn partition_config(&self) -> PartitionConfig {
        PartitionConfig {
            p: self.p(),
            n0: self.n0,
            k0: self.k0,
        }
    }

    pub fn schedule_config(&self) -> ScheduleConfig {
        ScheduleConfig { d: self.d }
    }

    /// C rows each PE must hold for an `m`-row problem.
    pub fn rows_per_pe(&self, m: usize) -> usize {
        m.div_ceil(self.p())
    }

    /// Fails when an `m`-row problem does not fit the C scratchpads.
    pub fn check_capacity(&self, m: usize) -> Result<()> {
        let rows_per_pe = self.rows_per_pe(m);
        if rows_per_pe > self.scratchpad_depth {
            return Err(Error::ScratchpadCapacity {
                m,
                p: self.p(),
                rows_per_pe,
                depth: self.scratchpad_depth,
            });
        }
        Ok(())
    }
}
