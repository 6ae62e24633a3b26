use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use conjlambek::prover::{LambekProver, MacllProver, Strategy};
use conjlambek::Calculus;
use conjlambek_bench::{additive_chain, division_chain, macll_chain};

fn lambek(c: &mut Criterion) {
    let mut group = c.benchmark_group("lambek");
    for n in [2, 4, 6] {
        let s = division_chain(n);
        for strategy in [Strategy::Focused, Strategy::Exhaustive] {
            let id = BenchmarkId::new(format!("division_{strategy:?}"), n);
            group.bench_with_input(id, &s, |b, s| {
                b.iter(|| {
                    LambekProver::new(Calculus::L)
                        .with_strategy(strategy)
                        .derivable(black_box(s))
                })
            });
        }
        let s = additive_chain(n);
        group.bench_with_input(BenchmarkId::new("additive", n), &s, |b, s| {
            b.iter(|| LambekProver::new(Calculus::Malc).derivable(black_box(s)))
        });
    }
    group.finish();
}

fn macll(c: &mut Criterion) {
    let mut group = c.benchmark_group("macll");
    for n in [2, 4, 6] {
        let s = macll_chain(n);
        group.bench_with_input(BenchmarkId::new("chain", n), &s, |b, s| {
            b.iter(|| MacllProver::new().derivable(black_box(s)))
        });
    }
    group.finish();
}

criterion_group!(benches, lambek, macll);
criterion_main!(benches);
