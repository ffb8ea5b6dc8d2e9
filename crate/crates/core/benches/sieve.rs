use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use primint::constants::ConstantSet;
use primint::primes::{accumulate, SieveConfig};
use primint::stepintegrals::{evaluate, sign_sweep};
use primint::Execution;

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn sieve(c: &mut Criterion) {
    let mut g = c.benchmark_group("accumulate");
    g.sample_size(10);
    for hi in [10_000_000u64, 100_000_000] {
        for (name, mode) in MODES {
            let cfg = SieveConfig::new(2, hi).with_execution(mode);
            g.bench_with_input(BenchmarkId::new(name, hi), &cfg, |b, cfg| {
                b.iter(|| black_box(accumulate(cfg).unwrap()))
            });
        }
    }
    g.finish();
}

fn integrals(c: &mut Criterion) {
    let points: Vec<f64> = (0..40).map(|i| 10f64.powf(1.0 + 7.0 * i as f64 / 39.0)).collect();
    let mut g = c.benchmark_group("evaluate_1e8");
    g.sample_size(10);
    for (name, mode) in MODES {
        let cfg = SieveConfig::new(2, 3).with_execution(mode);
        g.bench_function(name, |b| b.iter(|| black_box(evaluate(&points, ConstantSet::standard(), &cfg).unwrap())));
    }
    g.finish();
}

fn sweep(c: &mut Criterion) {
    let mut g = c.benchmark_group("sign_sweep_1e7");
    g.sample_size(10);
    for (name, mode) in MODES {
        let cfg = SieveConfig::new(2, 3).with_execution(mode);
        g.bench_function(name, |b| b.iter(|| black_box(sign_sweep(10_000_000, &cfg).unwrap())));
    }
    g.finish();
}

criterion_group!(benches, sieve, integrals, sweep);
criterion_main!(benches);
