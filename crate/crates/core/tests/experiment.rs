use trajctx_core::dataset::{synth_generate, SynthConfig};
use trajctx_core::experiment::{run_lambda_sweep, run_rst_benchmark, ExperimentConfig, RstMode};
use trajctx_core::Error;

fn synthetic() -> trajctx_core::dataset::LabeledDataset {
    synth_generate(&SynthConfig::standard(4, 20, 0.01, 5)).unwrap()
}

#[test]
fn sweep_bookkeeping() {
    let cfg = ExperimentConfig {
        lambdas: vec![4, 30],
        repetitions: 5,
        seed: 11,
        ..ExperimentConfig::default()
    };
    let report = run_lambda_sweep(&synthetic(), &cfg).unwrap();
    assert_eq!(report.summaries.len(), 2);
    assert_eq!(report.records.len(), 10);
    for s in &report.summaries {
        assert_eq!(s.repetitions, 5);
        let m = s.mean_plain.unwrap();
        assert!((0.0..=1.0).contains(&m));
        assert!(s.mean_rst.is_none());
    }
    eprintln!("{:#?}", report.summaries);
}

#[test]
fn benchmark_bookkeeping_and_determinism() {
    let cfg = ExperimentConfig {
        class_sizes: vec![2],
        repetitions: 3,
        rst: RstMode::Both,
        seed: 3,
        ..ExperimentConfig::default()
    };
    let ds = synthetic();
    let report = run_rst_benchmark(&ds, &cfg).unwrap();
    assert_eq!(report.records.len(), 3);
    assert!(report.records.iter().all(|r| r.accuracy_plain.is_some() && r.accuracy_rst.is_some()));
    let again = run_rst_benchmark(&ds, &cfg).unwrap();
    let acc = |r: &trajctx_core::experiment::ExperimentReport| -> Vec<_> {
        r.records.iter().map(|x| (x.accuracy_plain, x.accuracy_rst, x.knda_gamma, x.svm_gamma, x.svm_penalty, x.class_subset.clone())).collect()
    };
    assert_eq!(acc(&report), acc(&again));
}

#[test]
fn oversized_subset_is_rejected() {
    let cfg = ExperimentConfig {
        class_sizes: vec![8],
        ..ExperimentConfig::default()
    };
    assert!(matches!(run_rst_benchmark(&synthetic(), &cfg), Err(Error::InsufficientClasses { requested: 8, available: 4 })));
}
