use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;
use streamspmm::perfmodel::{model_cycle_terms, ModelCycles, ProblemDims};
use streamspmm::scheduler::read_stream_file;
use streamspmm::sparse::write_array;
use streamspmm::{max_tolerance_ratio, reference_spmm, run_spmm, CycleReport, DenseMatrix};

use super::{emit_json, metrics, schedule_for, Metrics};
use crate::args::{build_problem, check_budget, footprint_bytes, load_a, EmulateArgs};
use crate::error::{CliError, IoContext};

#[derive(Debug, Serialize)]
pub struct CheckReport {
    pub passed: bool,
    /// Worst |got - want| / (1e-5 * max(|got|, |want|) + 1e-6); passing is <= 1.
    pub max_tolerance_ratio: f32,
}

#[derive(Debug, Serialize)]
pub struct EmulateReport {
    pub source: String,
    pub problem: ProblemDims,
    pub alpha: f32,
    pub beta: f32,
    pub cycles: CycleReport,
    #[serde(flatten)]
    pub metrics: Metrics,
    pub model: ModelCycles,
    pub footprint_bytes: u64,
    pub check: Option<CheckReport>,
    pub output: Option<PathBuf>,
}

fn sidecar_path(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(".json");
    PathBuf::from(name)
}

fn write_c(path: &Path, c: &DenseMatrix) -> Result<(), CliError> {
    let mut w = BufWriter::new(File::create(path).at(path)?);
    if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("mtx")) {
        write_array(&mut w, c).at(path)?;
    } else {
        for v in c.values() {
            w.write_all(&v.to_le_bytes()).at(path)?;
        }
    }
    w.flush().at(path)
}

pub fn run(args: &EmulateArgs) -> Result<(), CliError> {
    let (accel, perf) = args.config.resolve()?;
    let (source, a) = load_a(&args.input)?;
    accel.check_capacity(a.num_rows())?;

    let sm = match &args.streams {
        Some(path) => read_stream_file(&std::fs::read(path).at(path)?)?,
        None => schedule_for(&a, &accel)?.1,
    };
    let footprint = footprint_bytes(&a, args.problem.n, sm.total_slots(), args.check);
    check_budget(footprint, args.problem.mem_budget_gib)?;

    let problem = build_problem(a, &args.problem)?;
    let result = run_spmm(&problem, &sm, &accel)?;

    let check = args.check.then(|| {
        let ratio = max_tolerance_ratio(&result.c_out, &reference_spmm(&problem));
        CheckReport { passed: ratio <= 1.0, max_tolerance_ratio: ratio }
    });

    if let Some(out) = &args.out {
        write_c(out, &result.c_out)?;
        emit_json(&result.cycles, Some(&sidecar_path(out)))?;
    }

    let dims = (problem.m(), problem.k(), problem.n(), problem.nnz());
    let report = EmulateReport {
        source,
        problem: ProblemDims { m: dims.0, k: dims.1, n: dims.2, nnz: dims.3 },
        alpha: problem.alpha(),
        beta: problem.beta(),
        metrics: metrics(dims, result.cycles.totals.total, &accel, &perf),
        model: model_cycle_terms(dims.0, dims.1, dims.2, dims.3, &accel),
        cycles: result.cycles,
        footprint_bytes: footprint,
        check,
        output: args.out.clone(),
    };
    emit_json(&report, args.report.as_deref())?;
    match &report.check {
        Some(c) if !c.passed => Err(CliError::validation(format!(
            "emulated C differs from the reference (tolerance ratio {})",
            c.max_tolerance_ratio
        ))),
        _ => Ok(()),
    }
}
