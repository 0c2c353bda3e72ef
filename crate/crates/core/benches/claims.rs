use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use graded_lab::exec::Executor;
use graded_lab::harness::{run_claims, Budget};

fn executors() -> Vec<(&'static str, Executor)> {
    vec![
        ("sequential", Executor::Sequential),
        #[cfg(feature = "parallel")]
        ("parallel", Executor::Parallel),
    ]
}

fn claims_run(c: &mut Criterion) {
    let mut group = c.benchmark_group("claims_run");
    group.sample_size(10);
    let budgets = [("zn12", Budget::zn_only(12)), ("small", Budget { max_zn: 12, quadratic_n: vec![2, 3], max_integer_m: 8, max_cyclic_n: 16, ..Budget::default() })];
    for (name, budget) in &budgets {
        for (label, exec) in executors() {
            group.bench_with_input(BenchmarkId::new(label, name), budget, |b, budget| b.iter(|| run_claims(budget, None, exec).unwrap()));
        }
    }
    group.finish();
}

fn localization_claim(c: &mut Criterion) {
    let mut group = c.benchmark_group("thm7.2");
    group.sample_size(10);
    let budget = Budget::zn_only(20);
    for (label, exec) in executors() {
        group.bench_function(label, |b| b.iter(|| run_claims(&budget, Some("thm7.2"), exec).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, claims_run, localization_claim);
criterion_main!(benches);
