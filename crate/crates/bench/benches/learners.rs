use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rbm_sl_bench::{model_and_samples, random_scores};
use rbm_sl_core::greedy::{learn_ferro, learn_lc};
use rbm_sl_core::model::ModelKind;
use rbm_sl_core::qsearch::{dh_max_find, GroverParams, QueryMeter, ScoreOracle};
use rbm_sl_core::seeds::stream_rng;

fn greedy(c: &mut Criterion) {
    let (_, ferro) = model_and_samples(ModelKind::Ferromagnetic, 24, 20_000, 3);
    let (_, lc) = model_and_samples(ModelKind::LocallyConsistent, 24, 20_000, 4);
    c.bench_function("learn_ferro/24x20000", |b| b.iter(|| learn_ferro(0, &ferro, 0.01, 5).unwrap()));
    c.bench_function("learn_lc/24x20000", |b| b.iter(|| learn_lc(0, &lc, 0.02, 5).unwrap()));
}

fn max_finding(c: &mut Criterion) {
    let mut group = c.benchmark_group("dh_max_find");
    let params = GroverParams::default();
    for n in [256, 4096] {
        let scores = random_scores(n, 5);
        group.bench_with_input(BenchmarkId::from_parameter(n), &scores, |b, scores| {
            let mut rng = stream_rng(6, n as u64);
            b.iter(|| {
                let oracle = ScoreOracle::new(scores.len(), 1, |j| scores[j]);
                let mut meter = QueryMeter::new();
                dh_max_find(&oracle, 0.1, &params, &mut rng, &mut meter).unwrap()
            })
        });
    }
    group.finish();
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(20);
    targets = greedy, max_finding
}
criterion_main!(benches);
