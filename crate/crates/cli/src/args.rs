use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use streamspmm::sparse::{dense_operands, random_csr};
use streamspmm::{coo_to_csr, load_matrix_market, AcceleratorConfig, CsrMatrix, PerfParams, Preset, SpmmProblem};

use crate::config_file::apply_config_file;
use crate::error::CliError;

/// Environment variable naming the default corpus directory for `bench`.
pub const CORPUS_ENV: &str = "STREAMSPMM_CORPUS_DIR";

#[derive(Debug, Parser)]
#[command(name = "streamspmm", version, about = "Schedule, emulate and model a streaming SpMM accelerator")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Partition and schedule A; write the binary stream file and a JSON report.
    Schedule(ScheduleArgs),
    /// Run the emulator end to end and report cycles.
    Emulate(EmulateArgs),
    /// Check a stream file against its matrix; exit 0 iff clean.
    Validate(ValidateArgs),
    /// Print the analytical performance and resource model.
    Model(ModelArgs),
    /// Sweep a directory of .mtx files over several N and write CSV.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct InputSource {
    /// Matrix Market file holding A.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Random A as MxKxDENSITY[:SEED], e.g. 4096x4096x0.01:7.
    #[arg(long, value_name = "MxKxD:SEED")]
    pub gen: Option<GenSpec>,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    #[command(flatten)]
    pub source: InputSource,
    /// Keep only the stored triangle of symmetric Matrix Market files.
    #[arg(long)]
    pub no_expand_symmetric: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenSpec {
    pub m: usize,
    pub k: usize,
    pub density: f64,
    pub seed: u64,
}

impl std::str::FromStr for GenSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (dims, seed) = match s.split_once(':') {
            Some((dims, seed)) => (dims, seed.parse().map_err(|_| format!("bad seed '{seed}'"))?),
            None => (s, 0),
        };
        let parts: Vec<&str> = dims.splitn(3, 'x').collect();
        let [m, k, density] = parts[..] else {
            return Err(format!("expected MxKxDENSITY[:SEED], got '{s}'"));
        };
        Ok(Self {
            m: m.parse().map_err(|_| format!("bad M '{m}'"))?,
            k: k.parse().map_err(|_| format!("bad K '{k}'"))?,
            density: density.parse().map_err(|_| format!("bad density '{density}'"))?,
            seed,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PresetArg {
    U280,
    Projected,
}

/// Architecture and platform knobs. Precedence: preset, then config file,
/// then individual flags.
#[derive(Debug, Args)]
pub struct ConfigArgs {
    #[arg(long, value_enum, default_value = "u280")]
    pub preset: PresetArg,
    /// key = value configuration file.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub pegs: Option<usize>,
    #[arg(long)]
    pub pes_per_peg: Option<usize>,
    #[arg(long)]
    pub n0: Option<usize>,
    #[arg(long)]
    pub k0: Option<usize>,
    /// RAW distance in cycles.
    #[arg(long)]
    pub d: Option<usize>,
    /// C scratchpad rows per PE.
    #[arg(long)]
    pub depth: Option<usize>,
    #[arg(long)]
    pub fifo: Option<usize>,
    #[arg(long)]
    pub f_b: Option<usize>,
    #[arg(long)]
    pub f_c: Option<usize>,
    #[arg(long)]
    pub freq_mhz: Option<f64>,
    #[arg(long)]
    pub bandwidth_gb_s: Option<f64>,
    #[arg(long)]
    pub tdp_w: Option<f64>,
    /// Host launch overhead added to modeled and emulated run time.
    #[arg(long)]
    pub launch_overhead_s: Option<f64>,
}

impl ConfigArgs {
    pub fn resolve(&self) -> Result<(AcceleratorConfig, PerfParams), CliError> {
        let preset = match self.preset {
            PresetArg::U280 => Preset::U280,
            PresetArg::Projected => Preset::Projected,
        };
        let (mut accel, mut perf) = preset.configs();
        if let Some(path) = &self.config {
            apply_config_file(path, &mut accel, &mut perf)?;
        }
        macro_rules! set {
            ($($flag:ident => $target:expr),* $(,)?) => {
                $(if let Some(v) = self.$flag { $target = v; })*
            };
        }
        set! {
            pegs => accel.peg_count,
            pes_per_peg => accel.pes_per_peg,
            n0 => accel.n0,
            k0 => accel.k0,
            d => accel.d,
            depth => accel.scratchpad_depth,
            fifo => accel.fifo_depth,
            f_b => accel.f_b,
            f_c => accel.f_c,
            freq_mhz => accel.frequency_mhz,
            bandwidth_gb_s => perf.bandwidth_gb_s,
            tdp_w => perf.tdp_watts,
            launch_overhead_s => perf.launch_overhead_s,
        }
        accel.validate()?;
        if !(perf.bandwidth_gb_s > 0.0 && perf.tdp_watts > 0.0 && perf.launch_overhead_s >= 0.0) {
            return Err(CliError::config("bandwidth and TDP must be positive, launch overhead non-negative"));
        }
        Ok((accel, perf))
    }
}

#[derive(Debug, Args)]
pub struct ProblemArgs {
    /// Columns of B and C.
    #[arg(long, default_value_t = 8)]
    pub n: usize,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub alpha: f32,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub beta: f32,
    /// Seed for the dense operands B and C_in.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Host memory budget in GiB for the whole run.
    #[arg(long, default_value_t = 5.0)]
    pub mem_budget_gib: f64,
}

#[derive(Debug, Args)]
pub struct ScheduleArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub config: ConfigArgs,
    /// Binary stream file to write.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EmulateArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub problem: ProblemArgs,
    #[command(flatten)]
    pub config: ConfigArgs,
    /// Use this stream file instead of scheduling A.
    #[arg(long)]
    pub streams: Option<PathBuf>,
    /// Compare against the reference SpMM; exit 1 on mismatch.
    #[arg(long)]
    pub check: bool,
    /// Output C: `.mtx` writes Matrix Market array format, anything else raw
    /// little-endian fp32 row-major. A `<out>.json` cycle sidecar is written
    /// next to it.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    /// Stream file to check.
    #[arg(long)]
    pub streams: PathBuf,
    #[command(flatten)]
    pub input: InputArgs,
}

#[derive(Debug, Args)]
pub struct ModelArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, default_value_t = 8)]
    pub n: usize,
    #[command(flatten)]
    pub config: ConfigArgs,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Directory of .mtx files; defaults to $STREAMSPMM_CORPUS_DIR.
    #[arg(long)]
    pub corpus: Option<PathBuf>,
    /// Comma-separated N values.
    #[arg(long, value_delimiter = ',', default_value = "8,16,32,64,128,256,512")]
    pub n: Vec<usize>,
    #[command(flatten)]
    pub config: ConfigArgs,
    /// Also run the functional emulator and compare with the reference.
    #[arg(long)]
    pub check: bool,
    /// CSV output path; stdout when absent.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

/// Loads or generates A.
pub fn load_a(input: &InputArgs) -> Result<(String, CsrMatrix), CliError> {
    match (&input.source.input, &input.source.gen) {
        (Some(path), _) => {
            let coo = load_matrix_market(path, !input.no_expand_symmetric)?;
            Ok((path.display().to_string(), coo_to_csr(&coo)))
        }
        (None, Some(g)) => Ok((
            format!("gen:{}x{}x{}:{}", g.m, g.k, g.density, g.seed),
            random_csr(g.m, g.k, g.density, g.seed)?,
        )),
        (None, None) => Err(CliError::config("one of --input or --gen is required")),
    }
}

/// Bytes held in host memory by a run: A as CSR, its stream words (at least
/// one per non-zero plus bubbles), B, C_in and C_out, and a reference C when
/// checking.
pub fn footprint_bytes(a: &CsrMatrix, n: usize, stream_words: usize, check: bool) -> u64 {
    let (m, k, nnz) = (a.num_rows() as u64, a.num_cols() as u64, a.nnz() as u64);
    let n = n as u64;
    let csr = 8 * (m + 1) + 12 * nnz;
    let streams = 8 * stream_words.max(a.nnz()) as u64;
    let dense = 4 * k * n + 4 * m * n * if check { 3 } else { 2 };
    csr + streams + dense
}

pub fn check_budget(bytes: u64, budget_gib: f64) -> Result<(), CliError> {
    let budget = budget_gib * (1u64 << 30) as f64;
    if bytes as f64 > budget {
        return Err(CliError::config(format!(
            "estimated footprint {bytes} bytes exceeds the {budget_gib} GiB budget"
        )));
    }
    Ok(())
}

pub fn build_problem(a: CsrMatrix, p: &ProblemArgs) -> Result<SpmmProblem, CliError> {
    let (b, c) = dense_operands(a.num_rows(), a.num_cols(), p.n, p.seed);
    Ok(SpmmProblem::new(a, b, c, p.alpha, p.beta)?)
}
