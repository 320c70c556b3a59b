use serde::Serialize;
use streamspmm::scheduler::{read_stream_file, validate_schedule};
use streamspmm::{partition_a, PartitionConfig, ScheduleConfig};

use super::emit_json;
use crate::args::{load_a, ValidateArgs};
use crate::error::{CliError, IoContext};

/// Dirty bins listed in the summary before truncation.
const MAX_LISTED: usize = 32;

#[derive(Debug, Serialize)]
pub struct DirtyBin {
    pub window: usize,
    pub pe: usize,
    pub raw_violations: usize,
    pub missing: usize,
    pub unexpected: usize,
    pub trailing_bubble: bool,
}

#[derive(Debug, Serialize)]
pub struct ValidateSummary {
    pub clean: bool,
    pub p: usize,
    pub k0: usize,
    pub d: usize,
    pub num_windows: usize,
    pub bins_checked: usize,
    pub dirty_bins: usize,
    pub raw_violations: usize,
    pub missing: usize,
    pub unexpected: usize,
    pub first_dirty: Vec<DirtyBin>,
}

pub fn run(args: &ValidateArgs) -> Result<(), CliError> {
    let bytes = std::fs::read(&args.streams).at(&args.streams)?;
    let sm = read_stream_file(&bytes)?;
    let (_, a) = load_a(&args.input)?;

    let pcfg = PartitionConfig { p: sm.p(), n0: 1, k0: sm.k0() };
    let pa = partition_a(&a, pcfg)?;
    if pa.num_windows() != sm.num_windows() {
        return Err(CliError::validation(format!(
            "stream file has {} windows, the matrix needs {}",
            sm.num_windows(),
            pa.num_windows()
        )));
    }
    let cfg = ScheduleConfig { d: sm.d() };

    let mut summary = ValidateSummary {
        clean: true,
        p: sm.p(),
        k0: sm.k0(),
        d: sm.d(),
        num_windows: sm.num_windows(),
        bins_checked: 0,
        dirty_bins: 0,
        raw_violations: 0,
        missing: 0,
        unexpected: 0,
        first_dirty: Vec::new(),
    };
    for j in 0..sm.num_windows() {
        for pe in 0..sm.p() {
            let report = validate_schedule(&sm.window_stream(pe, j), pa.bin(j, pe), cfg);
            summary.bins_checked += 1;
            if report.is_clean() {
                continue;
            }
            summary.clean = false;
            summary.dirty_bins += 1;
            summary.raw_violations += report.violations.len();
            summary.missing += report.missing;
            summary.unexpected += report.unexpected;
            if summary.first_dirty.len() < MAX_LISTED {
                summary.first_dirty.push(DirtyBin {
                    window: j,
                    pe,
                    raw_violations: report.violations.len(),
                    missing: report.missing,
                    unexpected: report.unexpected,
                    trailing_bubble: report.trailing_bubble,
                });
            }
        }
    }
    emit_json(&summary, None)?;
    if summary.clean {
        Ok(())
    } else {
        Err(CliError::validation(format!("{} of {} bins are invalid", summary.dirty_bins, summary.bins_checked)))
    }
}
