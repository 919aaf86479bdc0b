use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hypermirror::golden::golden_suite;
use hypermirror::mirror::mirror_pipeline;
use hypermirror::ode::{relation_search, SearchConfig, SearchMode};
use hypermirror::Exec;
use std::hint::black_box;

const POLICIES: [(&str, Exec); 2] = [
    ("sequential", Exec::Sequential),
    ("parallel", Exec::Parallel),
];

fn convolution(c: &mut Criterion) {
    let data = mirror_pipeline(5, 160).expect("pipeline");
    let (a, b) = (&data.z_of_q, &data.f0_tilde);
    let mut g = c.benchmark_group("mul_order_160");
    for (name, exec) in POLICIES {
        g.bench_function(BenchmarkId::from_parameter(name), |bench| {
            bench.iter(|| black_box(a.mul_with(b, exec).expect("same variable")))
        });
    }
    g.finish();
}

fn golden(c: &mut Criterion) {
    let mut g = c.benchmark_group("golden_suite_24");
    g.sample_size(10);
    for (name, exec) in POLICIES {
        g.bench_function(BenchmarkId::from_parameter(name), |bench| {
            bench.iter(|| black_box(golden_suite(24, exec).expect("suite")))
        });
    }
    g.finish();
}

fn relation(c: &mut Criterion) {
    let mut g = c.benchmark_group("relation_search_p2_w10");
    g.sample_size(10);
    for (name, exec) in POLICIES {
        let mut cfg = SearchConfig::new(SearchMode::P2, 10);
        cfg.exec = exec;
        g.bench_function(BenchmarkId::from_parameter(name), |bench| {
            bench.iter(|| black_box(relation_search(&cfg).err()))
        });
    }
    g.finish();
}

criterion_group!(benches, convolution, golden, relation);
criterion_main!(benches);
