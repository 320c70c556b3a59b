//! Shared inputs for the criterion benchmarks.

use streamspmm::{partition_a, AcceleratorConfig, PartitionedA, SpmmProblem};
use streamspmm::sparse::random_problem;

/// A seeded problem together with its partition under `cfg`.
pub fn bench_input(m: usize, k: usize, n: usize, density: f64, cfg: &AcceleratorConfig) -> (SpmmProblem, PartitionedA) {
    let problem = random_problem(m, k, n, density, 42).expect("valid generator arguments");
    let pa = partition_a(problem.a(), cfg.partition_config()).expect("fits the row field");
    (problem, pa)
}
