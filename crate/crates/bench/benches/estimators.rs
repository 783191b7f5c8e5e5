use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rbm_sl_bench::model_and_samples;
use rbm_sl_core::estimators::{build_index, CovarianceScorer, InfluenceScorer};
use rbm_sl_core::model::ModelKind;
use std::hint::black_box;

fn influence(c: &mut Criterion) {
    let mut group = c.benchmark_group("influence_scores");
    for count in [10_000, 100_000] {
        let (_, samples) = model_and_samples(ModelKind::Ferromagnetic, 32, count, 1);
        let set = [1, 2, 3];
        group.bench_with_input(BenchmarkId::from_parameter(count), &samples, |b, samples| {
            b.iter(|| {
                let scorer = InfluenceScorer::new(samples, 0, &set).unwrap();
                (4..32).map(|j| scorer.extended(j).ranking_key()).sum::<f64>()
            })
        });
    }
    group.finish();
}

fn covariance(c: &mut Criterion) {
    let mut group = c.benchmark_group("covariance_scores");
    for count in [10_000, 100_000] {
        let (_, samples) = model_and_samples(ModelKind::LocallyConsistent, 32, count, 2);
        group.bench_with_input(BenchmarkId::from_parameter(count), &samples, |b, samples| {
            b.iter(|| {
                let idx = build_index(samples, black_box(&[1, 2, 3])).unwrap();
                let scorer = CovarianceScorer::new(samples, 0, &idx).unwrap();
                (4..32).map(|v| scorer.score(v)).sum::<f64>()
            })
        });
    }
    group.finish();
}

criterion_group!(benches, influence, covariance);
criterion_main!(benches);
