use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use pde_solve::{init, solve, Kind, PdeProblem};
use series_core::TruncationSpec;

fn burgers(c: &mut Criterion) {
    let r = 2;
    let trunc = TruncationSpec::new(3, 2, 2);
    let u = init::symbolic(r, 2, trunc.dx + 2 * trunc.ds, &init::vacuum_labels(r));
    let p = PdeProblem { r, u, trunc, kind: Kind::Burgers };
    let threads = std::thread::available_parallelism().map_or(4, |n| n.get()).max(2);
    let mut group = c.benchmark_group("burgers r=2 Dx=3,Ds=2,G=2");
    group.sample_size(10);
    for n in [1, threads] {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(n).build().unwrap();
        group.bench_with_input(BenchmarkId::new("threads", n), &p, |b, p| b.iter(|| pool.install(|| solve(p).unwrap())));
    }
    group.finish();
}

criterion_group!(benches, burgers);
criterion_main!(benches);
