//! Benchmarks for the hot paths of checking: successor generation, state
//! graph construction, and a full bounded-response check.

use criterion::{criterion_group, criterion_main, Criterion};
use crosslight_bench::{closed_loop, traffic_scenario};
use crosslight_core::checker::graph::{build_graph, step};
use crosslight_core::checker::{AtomicProp, PropKind};
use crosslight_core::{check_bounded_response, CheckOptions, Direction};
use std::hint::black_box;

fn successor_generation(c: &mut Criterion) {
    let (init, params) = traffic_scenario();
    let init = init.normalized();
    c.bench_function("step/initial-state", |b| {
        b.iter(|| black_box(step(black_box(&init), &params)))
    });

    // A mid-run state with pending work: tick once, then fire the env.
    let after_env = step(&init, &params).into_iter().next().unwrap().1;
    c.bench_function("step/busy-state", |b| {
        b.iter(|| black_box(step(black_box(&after_env), &params)))
    });
}

fn graph_construction(c: &mut Criterion) {
    let (small, params) = closed_loop();
    c.bench_function("build_graph/closed-loop", |b| {
        b.iter(|| build_graph(black_box(&small), &params, 10_000).unwrap())
    });

    let (big, params) = traffic_scenario();
    let mut group = c.benchmark_group("exploration");
    group.sample_size(10);
    group.bench_function("build_graph/traffic-20k-states", |b| {
        b.iter(|| build_graph(black_box(&big), &params, 1_000_000).unwrap())
    });
    group.finish();
}

fn bounded_response_check(c: &mut Criterion) {
    let (init, params) = traffic_scenario();
    let p = AtomicProp::new("Spitsbergen", PropKind::PedArriving(Direction::NS));
    let q = AtomicProp::new("Spitsbergen", PropKind::Walking(Direction::NS));
    let mut group = c.benchmark_group("check");
    group.sample_size(10);
    group.bench_function("bounded-response/tau-15", |b| {
        b.iter(|| {
            check_bounded_response(&init, &params, &p, &q, 15, &CheckOptions::default())
                .unwrap()
        })
    });
    group.finish();
}

criterion_group!(benches, successor_generation, graph_construction, bounded_response_check);
criterion_main!(benches);
