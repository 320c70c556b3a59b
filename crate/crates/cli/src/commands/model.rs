use serde::Serialize;
use streamspmm::perfmodel::{peak_gflops, ResourceEstimate};
use streamspmm::{model_cycles, resource_estimate, ModelReport};

use super::emit_json;
use crate::args::{load_a, ModelArgs};
use crate::error::CliError;

#[derive(Debug, Serialize)]
pub struct ModelOutput {
    pub source: String,
    #[serde(flatten)]
    pub report: ModelReport,
    pub peak_gflops: f64,
    pub resources: ResourceEstimate,
    /// Whether every row of A fits the C scratchpads.
    pub fits_scratchpad: bool,
}

pub fn run(args: &ModelArgs) -> Result<(), CliError> {
    let (accel, perf) = args.config.resolve()?;
    let (source, a) = load_a(&args.input)?;
    let out = ModelOutput {
        source,
        report: model_cycles(a.num_rows(), a.num_cols(), args.n, a.nnz(), &accel, &perf),
        peak_gflops: peak_gflops(&accel),
        resources: resource_estimate(&accel),
        fits_scratchpad: accel.check_capacity(a.num_rows()).is_ok(),
    };
    emit_json(&out, None)
}
