//! Functional and cycle-counting emulation of the accelerator.
//!
//! The loop nest: for every B column tile, zero the PE scratchpads; for every
//! K window, load the B window and let all PEs run their slice of the
//! scheduled stream; finally merge the scratchpads with `C_in`. Phases are
//! sequential and the PE region of a window costs the longest PE stream.

mod compc;
mod pe;
mod sync;

pub use compc::comp_c_phase;
pub use pe::pe_execute;
pub use sync::{estimate_sync_stalls, SyncEstimate};

use serde::Serialize;

use crate::config::AcceleratorConfig;
use crate::error::{Error, Result};
use crate::partition::partition_b_window;
use crate::scheduler::ScheduledMatrix;
use crate::sparse::{DenseMatrix, SpmmProblem};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct WindowCycles {
    pub stream_b: u64,
    pub pe_compute: u64,
    pub stall_estimate: u64,
}

/// Cycle accounting for one B column tile.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TileCycles {
    pub init_c: u64,
    pub windows: Vec<WindowCycles>,
    pub comp_c: u64,
}

impl TileCycles {
    pub fn total(&self) -> u64 {
        self.init_c
            + self
                .windows
                .iter()
                .map(|w| w.stream_b + w.pe_compute)
                .sum::<u64>()
            + self.comp_c
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct CycleTotals {
    pub init_c: u64,
    pub stream_b: u64,
    pub pe_compute: u64,
    pub comp_c: u64,
    /// Sum of the four phases.
    pub total: u64,
}

/// Everything the emulator measures apart from the output matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycleReport {
    pub tiles: Vec<TileCycles>,
    pub totals: CycleTotals,
    /// Producer stalls from PE drift beyond the FIFO depth, over all windows.
    pub stall_estimate: u64,
    /// Broadcast chain fill latency, `peg_count` cycles per window.
    pub chain_latency: u64,
}

impl CycleReport {
    fn from_tiles(tiles: Vec<TileCycles>, peg_count: usize) -> Self {
        let mut totals = CycleTotals::default();
        let mut stall_estimate = 0;
        let mut windows = 0u64;
        for t in &tiles {
            totals.init_c += t.init_c;
            totals.comp_c += t.comp_c;
            for w in &t.windows {
                totals.stream_b += w.stream_b;
                totals.pe_compute += w.pe_compute;
                stall_estimate += w.stall_estimate;
                windows += 1;
            }
        }
        totals.total = totals.init_c + totals.stream_b + totals.pe_compute + totals.comp_c;
        Self {
            tiles,
            totals,
            stall_estimate,
            chain_latency: windows * peg_count as u64,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EmulationResult {
    pub c_out: DenseMatrix,
    pub cycles: CycleReport,
}

fn check_inputs(sm: &ScheduledMatrix, m: usize, k: usize, cfg: &AcceleratorConfig) -> Result<()> {
    cfg.validate()?;
    cfg.check_capacity(m)?;
    let mismatch = |what: &str, got: usize, want: usize| {
        Err(Error::StreamMismatch(format!(
            "stream has {what} = {got}, expected {want}"
        )))
    };
    if sm.p() != cfg.p() {
        return mismatch("P", sm.p(), cfg.p());
    }
    if sm.k0() != cfg.k0 {
        return mismatch("K0", sm.k0(), cfg.k0);
    }
    if sm.d() != cfg.d {
        return mismatch("D", sm.d(), cfg.d);
    }
    let windows = k.div_ceil(cfg.k0);
    if sm.num_windows() != windows {
        return mismatch("num_windows", sm.num_windows(), windows);
    }
    Ok(())
}

fn window_timing(sm: &ScheduledMatrix, j: usize, cfg: &AcceleratorConfig) -> WindowCycles {
    let lengths: Vec<usize> = sm.pes().iter().map(|s| s.pointers().window_len(j)).collect();
    let sync = estimate_sync_stalls(&lengths, cfg.fifo_depth);
    WindowCycles {
        stream_b: cfg.k0.div_ceil(2 * cfg.f_b) as u64,
        pe_compute: sync.window_cycles,
        stall_estimate: sync.stall_cycles,
    }
}

/// Emulates `alpha * A * B + beta * C_in` from a scheduled stream.
pub fn run_spmm(
    problem: &SpmmProblem,
    sm: &ScheduledMatrix,
    cfg: &AcceleratorConfig,
) -> Result<EmulationResult> {
    let (m, k, n) = (problem.m(), problem.k(), problem.n());
    check_inputs(sm, m, k, cfg)?;
    let pcfg = cfg.partition_config();
    let p = cfg.p();
    let rows_per_pe = cfg.rows_per_pe(m);
    let mut c_out = DenseMatrix::zeros(m, n);
    let mut tiles = Vec::with_capacity(pcfg.num_col_tiles(n));

    for i in 0..pcfg.num_col_tiles(n) {
        let mut scratchpads = vec![DenseMatrix::zeros(rows_per_pe, cfg.n0); p];
        let mut windows = Vec::with_capacity(sm.num_windows());
        for j in 0..sm.num_windows() {
            let b_window = partition_b_window(problem.b(), j, i, pcfg)?;
            let timing = window_timing(sm, j, cfg);
            let mut longest = 0;
            for (pe, sp) in scratchpads.iter_mut().enumerate() {
                longest = longest.max(pe_execute(sm.pe(pe).window_words(j), &b_window, sp)?);
            }
            debug_assert_eq!(longest, timing.pe_compute);
            windows.push(timing);
        }
        let c_in_tile = problem.c_in().padded_block(0, i * cfg.n0, m, cfg.n0);
        let (tile, comp_c) =
            comp_c_phase(&scratchpads, &c_in_tile, problem.alpha(), problem.beta(), cfg.f_c)?;
        c_out.write_block(0, i * cfg.n0, &tile);
        tiles.push(TileCycles {
            init_c: rows_per_pe as u64,
            windows,
            comp_c,
        });
    }
    Ok(EmulationResult {
        c_out,
        cycles: CycleReport::from_tiles(tiles, cfg.peg_count),
    })
}

/// Cycle accounting of [`run_spmm`] without doing the arithmetic.
pub fn count_cycles(
    sm: &ScheduledMatrix,
    m: usize,
    k: usize,
    n: usize,
    cfg: &AcceleratorConfig,
) -> Result<CycleReport> {
    check_inputs(sm, m, k, cfg)?;
    let windows: Vec<WindowCycles> = (0..sm.num_windows())
        .map(|j| window_timing(sm, j, cfg))
        .collect();
    let tile = TileCycles {
        init_c: cfg.rows_per_pe(m) as u64,
        windows,
        comp_c: m.div_ceil(cfg.f_c) as u64,
    };
    let tiles = vec![tile; n.div_ceil(cfg.n0)];
    Ok(CycleReport::from_tiles(tiles, cfg.peg_count))
}
