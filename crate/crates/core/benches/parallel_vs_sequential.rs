use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use charvar::exec::Execution;
use charvar::nilquot::{IdealMode, IdealTower, TowerConfig};
use charvar::words::Alphabet;

struct Case {
    name: &'static str,
    n: usize,
    alphabet: Alphabet,
    mode: IdealMode,
    degree: usize,
}

fn tower(c: &mut Criterion) {
    let cases = [
        Case { name: "plain-n3-k3", n: 3, alphabet: Alphabet::plain(3), mode: IdealMode::Plain, degree: 6 },
        Case { name: "symmetric-n4-k2", n: 4, alphabet: Alphabet::starred(2), mode: IdealMode::Symmetric, degree: 5 },
    ];
    let mut group = c.benchmark_group("ideal_tower");
    group.sample_size(10);
    for case in &cases {
        for (label, exec) in [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)] {
            group.bench_with_input(BenchmarkId::new(label, case.name), case, |b, case| {
                b.iter(|| {
                    let config = TowerConfig::new(case.n, &case.alphabet, case.mode);
                    let mut t = IdealTower::new(config).unwrap().with_execution(exec);
                    t.normal_words(case.degree).len()
                })
            });
        }
    }
    group.finish();
}

criterion_group!(benches, tower);
criterion_main!(benches);
