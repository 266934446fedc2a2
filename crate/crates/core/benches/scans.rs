use criterion::{criterion_group, criterion_main, Criterion};

use qtsemi::enumeration::{
    brute_force_counts, oracle_agreement, AssocOracle, BruteForceOptions, ExecMode,
    SearchStrategy,
};

fn scans(c: &mut Criterion) {
    let mut group = c.benchmark_group("quasitrivial-scans");
    group.sample_size(10);

    for (name, mode) in
        [("sequential", ExecMode::Sequential), ("parallel", ExecMode::Parallel)]
    {
        group.bench_function(format!("oracle_agreement_k2n4_{name}"), |b| {
            b.iter(|| oracle_agreement(2, 4, 1 << 31, mode).unwrap().associative)
        });
        group.bench_function(format!("binary_full_scan_k4_{name}"), |b| {
            let options = BruteForceOptions {
                oracle: AssocOracle::Naive,
                strategy: SearchStrategy::Full,
                mode,
                ..Default::default()
            };
            b.iter(|| brute_force_counts(4, 2, &options).unwrap().associative)
        });
    }

    group.bench_function("pruned_search_k3n3_fast", |b| {
        let options = BruteForceOptions {
            oracle: AssocOracle::Fast,
            strategy: SearchStrategy::Pruned,
            ..Default::default()
        };
        b.iter(|| brute_force_counts(3, 3, &options).unwrap().associative)
    });

    group.finish();
}

criterion_group!(benches, scans);
criterion_main!(benches);
