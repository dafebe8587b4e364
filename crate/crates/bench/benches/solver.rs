use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use misere_bench::{empty, midgame, SOLVE_SHAPES};
use misere_core::solver::{decode, encode, Budget, Solver};
use misere_core::strategies::{StrategyKind, StrategyTag};
use misere_core::verifier::verify_strategy;
use misere_core::{BoardSpec, Claim, Player};

fn solve(c: &mut Criterion) {
    let mut group = c.benchmark_group("solve-empty");
    group.sample_size(10);
    for (w, h, k) in SOLVE_SHAPES {
        let state = empty(w, h, k);
        group.bench_with_input(BenchmarkId::from_parameter(format!("{w}x{h}k{k}")), &state, |b, s| {
            b.iter(|| Solver::default().solve(black_box(s), Budget::unlimited()).unwrap())
        });
    }
    group.finish();
}

fn verify(c: &mut Criterion) {
    let spec = BoardSpec::finite(7, 4, 4).unwrap();
    let kind = StrategyKind::new(StrategyTag::TakeEven, Player::P2);
    c.bench_function("verify-take-even-7x4", |b| {
        b.iter(|| verify_strategy(black_box(&spec), kind, Claim::AlwaysWins).unwrap())
    });
}

fn packing(c: &mut Criterion) {
    let state = midgame();
    c.bench_function("encode-7x6", |b| b.iter(|| encode(black_box(&state)).unwrap()));
    let packed = encode(&state).unwrap();
    c.bench_function("canonical-key-7x6", |b| b.iter(|| black_box(&packed).canonical_key()));
    c.bench_function("decode-7x6", |b| b.iter(|| decode(black_box(&packed)).unwrap()));
}

criterion_group!(benches, solve, verify, packing);
criterion_main!(benches);
