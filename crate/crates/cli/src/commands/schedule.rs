use std::fs::File;
use std::io::BufWriter;

use serde::Serialize;
use streamspmm::scheduler::{
    in_order_colmajor_cycles, in_order_rowmajor_cycles, validate_schedule, write_stream_file,
};

use super::{emit_json, schedule_for};
use crate::args::{load_a, ScheduleArgs};
use crate::error::{CliError, IoContext};

#[derive(Debug, Serialize)]
pub struct BinReport {
    pub window: usize,
    pub pe: usize,
    pub payload: usize,
    pub makespan: usize,
    pub bubbles: usize,
    pub in_order_colmajor: usize,
    pub in_order_rowmajor: usize,
    pub clean: bool,
}

#[derive(Debug, Default, Serialize)]
pub struct ScheduleTotals {
    pub payload: usize,
    pub makespan: usize,
    pub bubbles: usize,
    pub in_order_colmajor: usize,
    pub in_order_rowmajor: usize,
    /// Longest concatenated stream of any PE.
    pub longest_pe_stream: usize,
}

#[derive(Debug, Serialize)]
pub struct ScheduleReport {
    pub source: String,
    pub m: usize,
    pub k: usize,
    pub nnz: usize,
    pub p: usize,
    pub k0: usize,
    pub d: usize,
    pub num_windows: usize,
    pub all_clean: bool,
    pub totals: ScheduleTotals,
    /// Non-empty bins only.
    pub bins: Vec<BinReport>,
}

pub fn run(args: &ScheduleArgs) -> Result<(), CliError> {
    let (accel, _) = args.config.resolve()?;
    let (source, a) = load_a(&args.input)?;
    let (pa, sm) = schedule_for(&a, &accel)?;
    let cfg = accel.schedule_config();

    let mut totals = ScheduleTotals::default();
    let mut bins = Vec::new();
    for j in 0..pa.num_windows() {
        for pe in 0..sm.p() {
            let bin = pa.bin(j, pe);
            if bin.is_empty() {
                continue;
            }
            let stream = sm.window_stream(pe, j);
            let report = BinReport {
                window: j,
                pe,
                payload: stream.payload_count(),
                makespan: stream.makespan(),
                bubbles: stream.bubbles(),
                in_order_colmajor: in_order_colmajor_cycles(bin, cfg),
                in_order_rowmajor: in_order_rowmajor_cycles(bin, cfg),
                clean: validate_schedule(&stream, bin, cfg).is_clean(),
            };
            totals.payload += report.payload;
            totals.makespan += report.makespan;
            totals.bubbles += report.bubbles;
            totals.in_order_colmajor += report.in_order_colmajor;
            totals.in_order_rowmajor += report.in_order_rowmajor;
            bins.push(report);
        }
    }
    totals.longest_pe_stream = sm.pes().iter().map(|s| s.words().len()).max().unwrap_or(0);

    if let Some(path) = &args.out {
        let file = BufWriter::new(File::create(path).at(path)?);
        write_stream_file(file, &sm)?;
    }
    let report = ScheduleReport {
        source,
        m: a.num_rows(),
        k: a.num_cols(),
        nnz: a.nnz(),
        p: sm.p(),
        k0: sm.k0(),
        d: sm.d(),
        num_windows: sm.num_windows(),
        all_clean: bins.iter().all(|b| b.clean),
        totals,
        bins,
    };
    emit_json(&report, args.report.as_deref())?;
    if !report.all_clean {
        return Err(CliError::validation("scheduled stream failed validation"));
    }
    Ok(())
}
