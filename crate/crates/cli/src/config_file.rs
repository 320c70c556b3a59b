//! `key = value` configuration files.
//!
//! Blank lines and lines starting with `#` are ignored. Recognized keys:
//! `pegs`, `pes_per_peg`, `n0`, `k0`, `d`, `depth`, `fifo`, `f_b`, `f_c`,
//! `freq_mhz`, `bandwidth_gb_s`, `tdp_w`, `launch_overhead_s`.

use std::path::Path;

use streamspmm::{AcceleratorConfig, PerfParams};

use crate::error::{CliError, IoContext};

pub fn apply_config_file(
    path: &Path,
    accel: &mut AcceleratorConfig,
    perf: &mut PerfParams,
) -> Result<(), CliError> {
    let text = std::fs::read_to_string(path).at(path)?;
    apply_config_text(&text, accel, perf)
        .map_err(|e| CliError::config(format!("{}: {e}", path.display())))
}

pub fn apply_config_text(
    text: &str,
    accel: &mut AcceleratorConfig,
    perf: &mut PerfParams,
) -> Result<(), String> {
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("line {}: expected key = value", lineno + 1))?;
        let (key, value) = (key.trim(), value.trim());
        let int = || -> Result<usize, String> {
            value.parse().map_err(|_| format!("line {}: {key} needs an integer, got '{value}'", lineno + 1))
        };
        let real = || -> Result<f64, String> {
            value.parse().map_err(|_| format!("line {}: {key} needs a number, got '{value}'", lineno + 1))
        };
        match key {
            "pegs" => accel.peg_count = int()?,
            "pes_per_peg" => accel.pes_per_peg = int()?,
            "n0" => accel.n0 = int()?,
            "k0" => accel.k0 = int()?,
            "d" => accel.d = int()?,
            "depth" => accel.scratchpad_depth = int()?,
            "fifo" => accel.fifo_depth = int()?,
            "f_b" => accel.f_b = int()?,
            "f_c" => accel.f_c = int()?,
            "freq_mhz" => accel.frequency_mhz = real()?,
            "bandwidth_gb_s" => perf.bandwidth_gb_s = real()?,
            "tdp_w" => perf.tdp_watts = real()?,
            "launch_overhead_s" => perf.launch_overhead_s = real()?,
            other => return Err(format!("line {}: unknown key '{other}'", lineno + 1)),
        }
    }
    Ok(())
}
