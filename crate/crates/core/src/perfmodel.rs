//! Analytical cycle model, on-chip memory arithmetic, and the throughput,
//! bandwidth-utilization and energy-efficiency metrics.
//!
//! The cycle model works in real arithmetic throughout; ceilings belong to
//! the emulator.

use serde::{Deserialize, Serialize};

use crate::config::AcceleratorConfig;

/// Platform numbers that are not part of the datapath.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PerfParams {
    /// Peak off-chip bandwidth, GB/s (10^9 bytes).
    pub bandwidth_gb_s: f64,
    pub tdp_watts: f64,
    /// Fixed host launch cost added to every modeled run.
    pub launch_overhead_s: f64,
}

impl Default for PerfParams {
    fn default() -> Self {
        Self {
            bandwidth_gb_s: 460.0,
            tdp_watts: 225.0,
            launch_overhead_s: 0.0,
        }
    }
}

/// Named platform presets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    /// The 189 MHz, 460 GB/s, 225 W FPGA build.
    U280,
    /// Projected 350 MHz, 900 GB/s, 300 W build.
    Projected,
}

impl Preset {
    pub fn configs(self) -> (AcceleratorConfig, PerfParams) {
        match self {
            Preset::U280 => (AcceleratorConfig::default(), PerfParams::default()),
            Preset::Projected => (
                AcceleratorConfig {
                    frequency_mhz: 350.0,
                    ..Default::default()
                },
                PerfParams {
                    bandwidth_gb_s: 900.0,
                    tdp_watts: 300.0,
                    launch_overhead_s: 0.0,
                },
            ),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ProblemDims {
    pub m: usize,
    pub k: usize,
    pub n: usize,
    pub nnz: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModelConfig {
    pub accelerator: AcceleratorConfig,
    pub platform: PerfParams,
}

/// Per-phase cycle terms. `total` is the full composition
/// `(init_c + windows * (stream_b + pe) + comp_c) * col_tiles`;
/// `simplified_total` is `(K / 2F_B + NNZ / P + M / F_C) * col_tiles`,
/// which drops the `K / P` initialization term.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModelCycles {
    pub init_c: f64,
    pub stream_b: f64,
    pub pe: f64,
    pub comp_c: f64,
    pub windows: f64,
    pub col_tiles: f64,
    pub total: f64,
    pub simplified_total: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModelReport {
    pub problem: ProblemDims,
    pub config: ModelConfig,
    pub cycles: ModelCycles,
    pub seconds: f64,
    pub flop: u64,
    pub gflops: f64,
    pub bandwidth_utilization: f64,
    pub bw_util_pct: f64,
    pub flop_per_joule: f64,
}

/// Floating-point operations of one SpMM: a multiply and an add per
/// non-zero and B column, plus the alpha scale, beta scale and add per
/// output element.
pub fn flop_count(m: usize, n: usize, nnz: usize) -> u64 {
    2 * nnz as u64 * n as u64 + 3 * m as u64 * n as u64
}

/// Bytes that must cross the memory interface at least once: A values,
/// B once, C read and written once.
pub fn essential_bytes(m: usize, k: usize, n: usize, nnz: usize) -> f64 {
    4.0 * (nnz as f64 + n as f64 * (2.0 * m as f64 + k as f64))
}

/// Essential traffic divided by what the memory could deliver during the
/// run. A fraction; multiply by 100 for percent.
pub fn bandwidth_utilization(
    m: usize,
    k: usize,
    n: usize,
    nnz: usize,
    exec_seconds: f64,
    pp: &PerfParams,
) -> f64 {
    essential_bytes(m, k, n, nnz) / (exec_seconds * pp.bandwidth_gb_s * 1e9)
}

/// FLOP per joule at the platform TDP.
pub fn energy_efficiency(flop: f64, exec_seconds: f64, pp: &PerfParams) -> f64 {
    flop / (exec_seconds * pp.tdp_watts)
}

/// Cycle terms of the analytical model for an `m x k` matrix with `nnz`
/// non-zeros and `n` B columns.
pub fn model_cycle_terms(m: usize, k: usize, n: usize, nnz: usize, cfg: &AcceleratorConfig) -> ModelCycles {
    let (m, k, n, nnz) = (m as f64, k as f64, n as f64, nnz as f64);
    let p = cfg.p() as f64;
    let k0 = cfg.k0 as f64;
    let f_b = cfg.f_b as f64;
    let f_c = cfg.f_c as f64;

    let init_c = k / p;
    let stream_b = k0 / (2.0 * f_b);
    let pe = if k > 0.0 { nnz * k0 / (p * k) } else { 0.0 };
    let comp_c = m / f_c;
    let windows = k / k0;
    let col_tiles = n / cfg.n0 as f64;
    ModelCycles {
        init_c,
        stream_b,
        pe,
        comp_c,
        windows,
        col_tiles,
        total: (init_c + windows * (stream_b + pe) + comp_c) * col_tiles,
        simplified_total: (k / (2.0 * f_b) + nnz / p + m / f_c) * col_tiles,
    }
}

/// Full model report: cycles, time at the configured clock, and the three
/// evaluation metrics.
pub fn model_cycles(
    m: usize,
    k: usize,
    n: usize,
    nnz: usize,
    cfg: &AcceleratorConfig,
    pp: &PerfParams,
) -> ModelReport {
    let cycles = model_cycle_terms(m, k, n, nnz, cfg);
    let seconds = cycles.total / (cfg.frequency_mhz * 1e6) + pp.launch_overhead_s;
    let flop = flop_count(m, n, nnz);
    let utilization = bandwidth_utilization(m, k, n, nnz, seconds, pp);
    ModelReport {
        problem: ProblemDims { m, k, n, nnz },
        config: ModelConfig {
            accelerator: *cfg,
            platform: *pp,
        },
        cycles,
        seconds,
        flop,
        gflops: flop as f64 / seconds / 1e9,
        bandwidth_utilization: utilization,
        bw_util_pct: 100.0 * utilization,
        flop_per_joule: energy_efficiency(flop as f64, seconds, pp),
    }
}

/// Multiply-accumulate ceiling: `2 * P * N0` FLOP per cycle, in GFLOP/s.
pub fn peak_gflops(cfg: &AcceleratorConfig) -> f64 {
    2.0 * cfg.p() as f64 * cfg.n0 as f64 * cfg.frequency_mhz * 1e6 / 1e9
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ResourceEstimate {
    pub bram_blocks: usize,
    pub uram_blocks: usize,
}

/// On-chip memory blocks for B windows (BRAM) and C scratchpads (URAM).
///
/// A 1024 x 18-bit BRAM holds half of 1024 fp32 values, so a window column
/// needs `2 * ceil(k0 / 1024)` blocks; each PE keeps `n0` columns and two PEs
/// share a dual-ported block. A 4096 x 72-bit URAM holds two fp32 values per
/// entry, so each PE needs `ceil(depth / 4096) * ceil(n0 / 2)` blocks.
pub fn resource_estimate(cfg: &AcceleratorConfig) -> ResourceEstimate {
    let per_pe_bram = cfg.k0.div_ceil(1024) * 2 * cfg.n0;
    let per_pe_uram = cfg.scratchpad_depth.div_ceil(4096) * cfg.n0.div_ceil(2);
    ResourceEstimate {
        bram_blocks: (per_pe_bram * cfg.p()).div_ceil(2),
        uram_blocks: per_pe_uram * cfg.p(),
    }
}
