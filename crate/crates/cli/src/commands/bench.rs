use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;
use streamspmm::perfmodel::model_cycle_terms;
use streamspmm::sparse::dense_operands;
use streamspmm::{
    coo_to_csr, count_cycles, load_matrix_market, max_tolerance_ratio, reference_spmm,
    run_spmm, AcceleratorConfig, PerfParams, SpmmProblem,
};

use super::{metrics, schedule_for};
use crate::args::{BenchArgs, CORPUS_ENV};
use crate::error::{CliError, IoContext};

#[derive(Debug, Clone, Serialize)]
pub struct BenchRow {
    pub matrix: String,
    pub m: usize,
    pub k: usize,
    pub nnz: usize,
    pub n: usize,
    pub model_cycles: f64,
    pub emulated_cycles: u64,
    pub seconds: f64,
    pub gflops: f64,
    pub bw_util_pct: f64,
    pub flop_per_joule: f64,
    pub stall_estimate: u64,
    /// Empty unless `--check` was given.
    pub check_passed: Option<bool>,
}

fn corpus_files(dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    let mut files = Vec::new();
    for entry in std::fs::read_dir(dir).at(dir)? {
        let path = entry.at(dir)?.path();
        if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("mtx")) {
            files.push(path);
        }
    }
    files.sort();
    Ok(files)
}

fn bench_matrix(
    path: &Path,
    ns: &[usize],
    check: bool,
    accel: &AcceleratorConfig,
    perf: &PerfParams,
) -> Result<Vec<BenchRow>, CliError> {
    let name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let a = coo_to_csr(&load_matrix_market(path, true)?);
    let (_, sm) = schedule_for(&a, accel)?;
    let (m, k, nnz) = (a.num_rows(), a.num_cols(), a.nnz());

    let mut rows = Vec::with_capacity(ns.len());
    for &n in ns {
        let (cycles, check_passed) = if check {
            let (b, c) = dense_operands(m, k, n, 0);
            let problem = SpmmProblem::new(a.clone(), b, c, 1.0, 0.0)?;
            let result = run_spmm(&problem, &sm, accel)?;
            let ok = max_tolerance_ratio(&result.c_out, &reference_spmm(&problem)) <= 1.0;
            (result.cycles, Some(ok))
        } else {
            (count_cycles(&sm, m, k, n, accel)?, None)
        };
        let met = metrics((m, k, n, nnz), cycles.totals.total, accel, perf);
        rows.push(BenchRow {
            matrix: name.clone(),
            m,
            k,
            nnz,
            n,
            model_cycles: model_cycle_terms(m, k, n, nnz, accel).total,
            emulated_cycles: cycles.totals.total,
            seconds: met.seconds,
            gflops: met.gflops,
            bw_util_pct: met.bw_util_pct,
            flop_per_joule: met.flop_per_joule,
            stall_estimate: cycles.stall_estimate,
            check_passed,
        });
    }
    Ok(rows)
}

pub fn run(args: &BenchArgs) -> Result<(), CliError> {
    let (accel, perf) = args.config.resolve()?;
    let dir = match &args.corpus {
        Some(dir) => dir.clone(),
        None => std::env::var_os(CORPUS_ENV)
            .map(PathBuf::from)
            .ok_or_else(|| CliError::config(format!("no --corpus given and {CORPUS_ENV} is unset")))?,
    };
    if args.n.is_empty() || args.n.contains(&0) {
        return Err(CliError::config("--n values must be positive"));
    }
    let files = corpus_files(&dir)?;

    let per_file: Vec<Vec<BenchRow>> = files
        .par_iter()
        .map(|path| match bench_matrix(path, &args.n, args.check, &accel, &perf) {
            Ok(rows) => rows,
            Err(e) => {
                log::warn!("skipping {}: {e}", path.display());
                Vec::new()
            }
        })
        .collect();
    let mut rows: Vec<BenchRow> = per_file.into_iter().flatten().collect();
    rows.sort_by(|a, b| a.matrix.cmp(&b.matrix).then(a.n.cmp(&b.n)));

    let failed = rows.iter().filter(|r| r.check_passed == Some(false)).count();
    match &args.csv {
        Some(path) => write_csv(csv::Writer::from_path(path).map_err(|e| CliError::io(path, e))?, &rows, path)?,
        None => write_csv(csv::Writer::from_writer(std::io::stdout()), &rows, Path::new("<stdout>"))?,
    }
    if failed > 0 {
        return Err(CliError::validation(format!("{failed} bench rows failed the reference check")));
    }
    Ok(())
}

fn write_csv<W: std::io::Write>(mut w: csv::Writer<W>, rows: &[BenchRow], path: &Path) -> Result<(), CliError> {
    for row in rows {
        w.serialize(row).map_err(|e| CliError::io(path, e))?;
    }
    w.flush().at(path)
}
