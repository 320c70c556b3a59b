use std::collections::VecDeque;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use streamspmm::emulator::estimate_sync_stalls;
use streamspmm::perfmodel::model_cycle_terms;
use streamspmm::sparse::random_problem;
use streamspmm::{
    partition_a, run_spmm, schedule_matrix, AcceleratorConfig, CsrMatrix, DenseMatrix, SpmmProblem,
};

/// Token-level reference of one window: a producer broadcasts one B token
/// per cycle into every PE's FIFO when all FIFOs have room; each PE pops at
/// most one token per cycle and spends it on its next slot. Returns the
/// cycle in which the last slot is consumed, counted from the first
/// consumption.
fn discrete_event_window(lengths: &[usize], fifo_depth: usize) -> usize {
    let mut fifos: Vec<VecDeque<()>> = vec![VecDeque::new(); lengths.len()];
    let mut consumed = vec![0usize; lengths.len()];
    let mut first = None;
    let mut last = 0;
    for cycle in 0.. {
        if consumed.iter().zip(lengths).all(|(c, l)| c >= l) {
            break;
        }
        if fifos.iter().all(|f| f.len() < fifo_depth) {
            fifos.iter_mut().for_each(|f| f.push_back(()));
        }
        for (p, fifo) in fifos.iter_mut().enumerate() {
            if fifo.pop_front().is_some() && consumed[p] < lengths[p] {
                consumed[p] += 1;
                first.get_or_insert(cycle);
                last = cycle;
            }
        }
    }
    first.map_or(0, |f| last - f + 1)
}

#[test]
fn window_cost_matches_discrete_event_reference() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..200 {
        let p = rng.random_range(1..12);
        let lengths: Vec<usize> = (0..p)
            .map(|_| if rng.random_bool(0.2) { rng.random_range(0..80) } else { rng.random_range(0..10) })
            .collect();
        let est = estimate_sync_stalls(&lengths, 8);
        assert_eq!(est.window_cycles as usize, discrete_event_window(&lengths, 8), "{lengths:?}");
    }
}

#[test]
fn balanced_fixture_matches_model_exactly() {
    // identity: every bin of every window holds k0 / p distinct rows
    for cfg in [
        AcceleratorConfig { peg_count: 1, pes_per_peg: 4, k0: 16, ..Default::default() },
        AcceleratorConfig::default(),
    ] {
        let n = 2 * cfg.k0;
        let problem = SpmmProblem::new(
            CsrMatrix::identity(n),
            DenseMatrix::filled(n, 16, 1.0),
            DenseMatrix::zeros(n, 16),
            1.0,
            0.0,
        )
        .unwrap();
        let pa = partition_a(problem.a(), cfg.partition_config()).unwrap();
        let sm = schedule_matrix(&pa, cfg.schedule_config()).unwrap();
        let run = run_spmm(&problem, &sm, &cfg).unwrap();
        let model = model_cycle_terms(n, n, 16, n, &cfg);
        assert_eq!(run.cycles.totals.total as f64, model.total, "{cfg:?}");
        assert_eq!(run.cycles.stall_estimate, 0);
    }
}

#[test]
fn uniform_random_within_twenty_percent_of_model() {
    let cfg = AcceleratorConfig::default();
    for (seed, (size, density)) in [(4096, 0.02), (8192, 0.01), (12288, 0.004)].into_iter().enumerate() {
        let problem = random_problem(size, size, 8, density, seed as u64).unwrap();
        let pa = partition_a(problem.a(), cfg.partition_config()).unwrap();
        let sm = schedule_matrix(&pa, cfg.schedule_config()).unwrap();
        let run = run_spmm(&problem, &sm, &cfg).unwrap();
        let model = model_cycle_terms(size, size, 8, problem.nnz(), &cfg).total;
        let ratio = run.cycles.totals.total as f64 / model;
        assert!((0.8..=1.2).contains(&ratio), "size {size}: ratio {ratio}");
    }
}
