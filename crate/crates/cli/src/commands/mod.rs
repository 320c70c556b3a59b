pub mod bench;
pub mod emulate;
pub mod model;
pub mod schedule;
pub mod validate;

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde::Serialize;
use streamspmm::perfmodel::{bandwidth_utilization, energy_efficiency, flop_count};
use streamspmm::{partition_a, schedule_matrix, AcceleratorConfig, CsrMatrix, PartitionedA, PerfParams, ScheduledMatrix};

use crate::error::{CliError, IoContext};

/// Run-time metrics derived from a cycle count.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Metrics {
    pub seconds: f64,
    pub gflops: f64,
    pub bw_util_pct: f64,
    pub flop_per_joule: f64,
}

pub fn metrics(
    (m, k, n, nnz): (usize, usize, usize, usize),
    cycles: u64,
    accel: &AcceleratorConfig,
    perf: &PerfParams,
) -> Metrics {
    let seconds = cycles as f64 / (accel.frequency_mhz * 1e6) + perf.launch_overhead_s;
    let flop = flop_count(m, n, nnz) as f64;
    if seconds <= 0.0 {
        return Metrics { seconds, gflops: 0.0, bw_util_pct: 0.0, flop_per_joule: 0.0 };
    }
    Metrics {
        seconds,
        gflops: flop / seconds / 1e9,
        bw_util_pct: 100.0 * bandwidth_utilization(m, k, n, nnz, seconds, perf),
        flop_per_joule: energy_efficiency(flop, seconds, perf),
    }
}

/// Partitions and schedules A for `accel`, failing early when A does not fit.
pub fn schedule_for(a: &CsrMatrix, accel: &AcceleratorConfig) -> Result<(PartitionedA, ScheduledMatrix), CliError> {
    accel.check_capacity(a.num_rows())?;
    let pa = partition_a(a, accel.partition_config())?;
    let sm = schedule_matrix(&pa, accel.schedule_config())?;
    Ok((pa, sm))
}

/// Pretty JSON to `path`, or stdout when `None`.
pub fn emit_json<T: Serialize>(value: &T, path: Option<&Path>) -> Result<(), CliError> {
    match path {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path).at(path)?);
            serde_json::to_writer_pretty(&mut w, value).map_err(|e| CliError::io(path, e))?;
            writeln!(w).at(path)?;
            w.flush().at(path)
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            serde_json::to_writer_pretty(&mut lock, value)
                .map_err(|e| CliError::io(Path::new("<stdout>"), e))?;
            writeln!(lock).at("<stdout>")
        }
    }
}
