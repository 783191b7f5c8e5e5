use super::*;
use crate::error::Error;
use crate::model::ModelKind;

fn config(algorithm: Algorithm, trials: usize) -> ExperimentConfig {
    let mut learner = LearnerSpec::new(algorithm);
    learner.eta = Some(0.05);
    learner.k = Some(5);
    learner.tau = Some(0.03);
    learner.t_max = Some(5);
    ExperimentConfig {
        model: ModelSpec {
            kind: if algorithm.is_influence() {
                ModelKind::Ferromagnetic
            } else {
                ModelKind::LocallyConsistent
            },
            n: 6,
            m: 3,
            d2: 3,
            alpha: 0.4,
            beta: 2.0,
            seed: 17,
        },
        sampler: SamplerSpec {
            method: SamplerMethod::Exact,
            samples: 4000,
            burn_in: 100,
            thinning: 2,
        },
        learner,
        trials,
        seed: 5,
        output: None,
    }
}

#[test]
fn zero_trials_give_empty_metrics() {
    let out = run(&config(Algorithm::Ferro, 0)).unwrap();
    assert!(out.records.is_empty());
    assert_eq!(out.metrics.trials, 0);
    assert_eq!(out.metrics.exact_recovery, None);
    assert_eq!(out.metrics.raw_queries.mean, None);
}

#[test]
fn outputs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let mut a = config(Algorithm::LcQ, 3);
    a.output = Some(dir.path().join("a"));
    let mut b = a.clone();
    b.output = Some(dir.path().join("b"));
    run(&a).unwrap();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    pool.install(|| run(&b)).unwrap();
    for file in ["trials.jsonl", "summary.csv"] {
        let x = std::fs::read(dir.path().join("a").join(file)).unwrap();
        let y = std::fs::read(dir.path().join("b").join(file)).unwrap();
        assert_eq!(x, y, "{file}");
    }
    let csv = std::fs::read_to_string(dir.path().join("a/summary.csv")).unwrap();
    assert_eq!(csv.lines().next().unwrap(), SUMMARY_COLUMNS.join(","));
    let jsonl = std::fs::read_to_string(dir.path().join("a/trials.jsonl")).unwrap();
    assert_eq!(jsonl.lines().count(), 3);
}

#[test]
fn metrics_recompute_from_records() {
    let out = run(&config(Algorithm::Ferro, 4)).unwrap();
    let mut tp = 0;
    let mut fp = 0;
    let mut fn_ = 0;
    for r in &out.records {
        let truth: std::collections::BTreeSet<_> = r.truth_edges.iter().collect();
        let est: std::collections::BTreeSet<_> = r.estimated_edges.iter().collect();
        tp += truth.intersection(&est).count();
        fp += est.difference(&truth).count();
        fn_ += truth.difference(&est).count();
        assert_eq!(r.exact_recovery, truth == est);
    }
    let precision = out.metrics.precision.unwrap();
    let recall = out.metrics.recall.unwrap();
    assert_eq!(precision, tp as f64 / (tp + fp) as f64);
    assert_eq!(recall, tp as f64 / (tp + fn_) as f64);
    assert!((0.0..=1.0).contains(&precision) && (0.0..=1.0).contains(&recall));
    let perfect_recall = out.records.iter().filter(|r| r.false_negatives == 0).count() as f64 / 4.0;
    assert!(out.metrics.exact_recovery.unwrap() <= perfect_recall);
}

#[test]
fn ring_style_model_reports_recall() {
    let mut cfg = config(Algorithm::Ferro, 2);
    cfg.model.n = 4;
    cfg.model.m = 4;
    cfg.model.d2 = 2;
    cfg.sampler.samples = 20_000;
    let out = run(&cfg).unwrap();
    assert!(out.metrics.recall.is_some());
}

#[test]
fn invalid_configs_are_rejected() {
    let mut cfg = config(Algorithm::Ferro, 1);
    cfg.learner.eta = None;
    assert!(matches!(run(&cfg), Err(Error::InvalidConfig(_))));
    cfg.learner.theory_defaults = true;
    assert!(cfg.validate().is_ok());

    let mut cfg = config(Algorithm::Lc, 1);
    cfg.sampler.samples = 0;
    assert!(cfg.validate().is_err());

    let mut cfg = config(Algorithm::Ferro, 1);
    cfg.model.n = 30;
    cfg.model.m = 10;
    let err = run(&cfg).unwrap_err();
    assert!(err.to_string().contains("trial 0"), "{err}");
    assert!(err.is_config_error());
}

#[test]
fn config_json_round_trip() {
    let cfg = config(Algorithm::FerroQ, 2);
    let text = serde_json::to_string(&cfg).unwrap();
    let back: ExperimentConfig = serde_json::from_str(&text).unwrap();
    assert_eq!(back, cfg);
    assert!(serde_json::from_str::<ExperimentConfig>(&text.replace("\"trials\"", "\"trails\"")).is_err());
}

#[test]
fn theory_defaults_fill_parameters() {
    let mut spec = LearnerSpec::new(Algorithm::Ferro);
    spec.theory_defaults = true;
    let model = config(Algorithm::Ferro, 1).model;
    match spec.resolve(&model, 0).unwrap() {
        crate::greedy::LearnerConfig::Ferro { eta, k } => {
            assert_eq!(eta, crate::greedy::ferro_eta(0.4, 2.0));
            assert!(k >= 1);
        }
        other => panic!("{other:?}"),
    }
    spec.eta = Some(0.1);
    assert!(matches!(
        spec.resolve(&model, 0).unwrap(),
        crate::greedy::LearnerConfig::Ferro { eta, .. } if eta == 0.1
    ));
}

#[test]
fn calibration_finds_a_setting() {
    let cfg = config(Algorithm::Ferro, 1);
    let cal = calibrate(&cfg, &[0.005, 0.01, 0.02], 1000, 64_000, 3).unwrap();
    assert!(cal.samples >= 1000);
    assert!(cal.grid.contains(&cal.threshold));
    let last = cal.history.last().unwrap();
    assert!(last.recovered.contains(&3));
    assert!(calibrate(&cfg, &[], 1000, 2000, 3).is_err());
}

#[test]
fn held_out_seeds_differ() {
    let cfg = config(Algorithm::Ferro, 1);
    let h = held_out(&cfg);
    assert_ne!(TrialSeeds::for_trial(&cfg, 0), TrialSeeds::for_trial(&h, 0));
}

#[test]
fn verify_battery_passes() {
    for c in verify_battery(1) {
        assert!(c.passed, "{}: {}", c.name, c.detail);
    }
}

