//! Software model of a streaming SpMM accelerator that computes
//! `C = alpha * A * B + beta * C` with `P` processing engines.
//!
//! The pipeline is: [`partition::partition_a`] splits A into per-window,
//! per-PE bins; [`scheduler::schedule_matrix`] turns every bin into a
//! hazard-free II=1 stream indexed by a pointer list;
//! [`emulator::run_spmm`] executes the streams functionally while counting
//! cycles; [`perfmodel`] provides the matching closed-form model.

pub mod config;
pub mod emulator;
pub mod error;
pub mod partition;
pub mod perfmodel;
pub mod scheduler;
pub mod sparse;

pub use config::AcceleratorConfig;
pub use emulator::{count_cycles, run_spmm, CycleReport, EmulationResult};
pub use error::{Error, Result};
pub use partition::{partition_a, partition_b_window, LocalNonZero, PartitionConfig, PartitionedA};
pub use perfmodel::{model_cycles, resource_estimate, ModelReport, PerfParams, Preset};
pub use scheduler::{schedule_matrix, schedule_window, ScheduleConfig, ScheduledMatrix, ScheduledStream};
pub use sparse::{coo_to_csr, load_matrix_market, reference_spmm, CooMatrix, CsrMatrix, DenseMatrix, SpmmProblem};

/// Elementwise closeness used to compare emulated and reference results:
/// `|a - b| <= rel * max(|a|, |b|) + abs`.
pub fn close_enough(a: f32, b: f32, rel: f32, abs: f32) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs()) + abs
}

/// Largest violation ratio of [`close_enough`] with the default
/// `1e-5` relative and `1e-6` absolute tolerances; `<= 1` means every element
/// passes.
pub fn max_tolerance_ratio(got: &DenseMatrix, want: &DenseMatrix) -> f32 {
    assert_eq!(
        (got.num_rows(), got.num_cols()),
        (want.num_rows(), want.num_cols()),
        "shape mismatch"
    );
    got.values()
        .iter()
        .zip(want.values())
        .map(|(&a, &b)| (a - b).abs() / (1e-5 * a.abs().max(b.abs()) + 1e-6))
        .fold(0.0, f32::max)
}
