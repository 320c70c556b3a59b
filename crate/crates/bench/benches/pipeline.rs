use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use streamspmm::perfmodel::model_cycle_terms;
use streamspmm::{count_cycles, partition_a, run_spmm, schedule_matrix, schedule_window, AcceleratorConfig};
use streamspmm_bench::bench_input;

fn scheduling(c: &mut Criterion) {
    let cfg = AcceleratorConfig::default();
    let mut group = c.benchmark_group("schedule");
    for density in [0.002, 0.01] {
        let (_, pa) = bench_input(8192, 8192, 8, density, &cfg);
        group.throughput(Throughput::Elements(pa.nnz() as u64));
        group.bench_with_input(BenchmarkId::new("matrix", density), &pa, |b, pa| {
            b.iter(|| schedule_matrix(black_box(pa), cfg.schedule_config()).unwrap())
        });
        let bin = pa.bin(0, 0).to_vec();
        group.bench_with_input(BenchmarkId::new("window", density), &bin, |b, bin| {
            b.iter(|| schedule_window(black_box(bin), cfg.schedule_config()))
        });
    }
    group.finish();
}

fn partitioning(c: &mut Criterion) {
    let cfg = AcceleratorConfig::default();
    let (problem, pa) = bench_input(8192, 8192, 8, 0.01, &cfg);
    let mut group = c.benchmark_group("partition");
    group.throughput(Throughput::Elements(pa.nnz() as u64));
    group.bench_function("8192_0.01", |b| b.iter(|| partition_a(black_box(problem.a()), cfg.partition_config()).unwrap()));
    group.finish();
}

fn emulation(c: &mut Criterion) {
    let cfg = AcceleratorConfig::default();
    let mut group = c.benchmark_group("emulate");
    group.sample_size(10);
    for n in [8, 64] {
        let (problem, pa) = bench_input(4096, 4096, n, 0.01, &cfg);
        let sm = schedule_matrix(&pa, cfg.schedule_config()).unwrap();
        group.throughput(Throughput::Elements((problem.nnz() * n) as u64));
        group.bench_with_input(BenchmarkId::new("run_spmm", n), &n, |b, _| {
            b.iter(|| run_spmm(black_box(&problem), &sm, &cfg).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("count_cycles", n), &n, |b, &n| {
            b.iter(|| count_cycles(black_box(&sm), 4096, 4096, n, &cfg).unwrap())
        });
    }
    group.finish();
}

fn model(c: &mut Criterion) {
    let cfg = AcceleratorConfig::default();
    c.bench_function("model_cycle_terms", |b| {
        b.iter(|| model_cycle_terms(black_box(100_000), 100_000, 512, black_box(5_000_000), &cfg))
    });
}

criterion_group!(benches, scheduling, partitioning, emulation, model);
criterion_main!(benches);
