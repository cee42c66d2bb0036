//! Sequential vs rayon-parallel sweeps. Build with `--no-default-features` to confirm
//! the parallel arm degrades to the sequential path.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use chromberge::verify::{run, Config, Suite};
use chromberge::Exec;

fn sweeps(c: &mut Criterion) {
    let mut group = c.benchmark_group("sweeps");
    group.sample_size(10);
    for (suite, n) in [
        (Suite::OmegaBridge, 6),
        (Suite::DelConW, 4),
        (Suite::BrokenCycle, 5),
        (Suite::PExpansion, 4),
    ] {
        for exec in [Exec::Sequential, Exec::Parallel] {
            let cfg = Config {
                n,
                seed: 0,
                exec,
                unsafe_bounds: false,
            };
            group.bench_with_input(BenchmarkId::new(format!("{suite}/n={n}"), format!("{exec:?}")), &cfg, |b, cfg| {
                b.iter(|| run(suite, cfg).expect("suite runs"))
            });
        }
    }
    group.finish();
}

criterion_group!(benches, sweeps);
criterion_main!(benches);
