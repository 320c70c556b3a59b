use serde::Serialize;

/// Timing of the PE region of one window under loose FIFO synchronization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SyncEstimate {
    /// Cycles until the slowest PE drains its stream.
    pub window_cycles: u64,
    /// Producer stall cycles caused by PEs drifting apart by more than the
    /// FIFO depth. Reported separately, never added to the window cost.
    pub stall_cycles: u64,
}

/// Estimates PE-region timing for one window from per-PE stream lengths.
///
/// PEs drift apart by at most `fifo_depth` slots before the shared broadcast
/// stalls; every slot of drift beyond that is counted as a stall.
pub fn estimate_sync_stalls(stream_lengths: &[usize], fifo_depth: usize) -> SyncEstimate {
    let max = stream_lengths.iter().copied().max().unwrap_or(0);
    let min = stream_lengths.iter().copied().min().unwrap_or(0);
    let stall_cycles = stream_lengths
        .iter()
        .map(|&len| len.saturating_sub(min).saturating_sub(fifo_depth) as u64)
        .sum();
    SyncEstimate {
        window_cycles: max as u64,
        stall_cycles,
    }
}
