use std::path::Path;
use std::time::Instant;

use rand::seq::index;
use rayon::prelude::*;

use super::config::{DataSource, ExperimentConfig};
use super::pipeline::{fit_pipeline, split_per_class};
use super::report::{ExperimentReport, RunRecord};
use super::{stream_rng, stream_seed, svg, Stream};
use crate::classify::accuracy;
use crate::dataset::LabeledDataset;
use crate::point_context::{apply_rst, ContextTable};
use crate::trajectory::{preprocess, Trajectory};
use crate::{Error, Result};

/// One repetition's sample choice, shared by every λ evaluated on it.
struct Split {
    /// Key `(a, b)` for the derived random streams of this repetition.
    key: (u64, u64),
    repetition: usize,
    classes: usize,
    class_subset: String,
    train: Vec<usize>,
    test: Vec<usize>,
}

fn preprocess_all(dataset: &LabeledDataset, cfg: &ExperimentConfig) -> Result<Vec<Trajectory>> {
    dataset
        .samples()
        .par_iter()
        .map(|s| preprocess(&s.trajectory, &cfg.preprocess).map_err(|e| e.context(format!("preprocessing {}", s.source))))
        .collect()
}

fn run_split(dataset: &LabeledDataset, pre: &[Trajectory], split: &Split, lambda: usize, cfg: &ExperimentConfig) -> Result<RunRecord> {
    let labels = dataset.labels();
    let (a, b) = split.key;
    let table = ContextTable::generate(cfg.preprocess.n, lambda, stream_seed(cfg.seed, Stream::Table, lambda as u64, b))?;
    let train: Vec<&Trajectory> = split.train.iter().map(|&r| &pre[r]).collect();
    let train_labels: Vec<usize> = split.train.iter().map(|&r| labels[r]).collect();
    let truth: Vec<usize> = split.test.iter().map(|&r| labels[r]).collect();

    let start = Instant::now();
    let pipeline = fit_pipeline(&train, &train_labels, &table, cfg, stream_seed(cfg.seed, Stream::Folds, a, b))?;
    let train_seconds = start.elapsed().as_secs_f64();

    let mut test_seconds = None;
    let accuracy_plain = if cfg.rst.plain() {
        let start = Instant::now();
        let predicted = split.test.iter().map(|&r| pipeline.predict(&pre[r])).collect::<Result<Vec<_>>>()?;
        test_seconds = Some(start.elapsed().as_secs_f64() / split.test.len() as f64);
        Some(accuracy(&predicted, &truth))
    } else {
        None
    };
    let accuracy_rst = if cfg.rst.transformed() {
        // Only test samples are posed; training data stays as captured.
        let mut rng = stream_rng(cfg.seed, Stream::Pose, a, b);
        let start = Instant::now();
        let mut predicted = Vec::with_capacity(split.test.len());
        for &r in &split.test {
            let posed = apply_rst(&dataset.samples()[r].trajectory, &cfg.rst_ranges.sample(&mut rng));
            predicted.push(pipeline.predict(&preprocess(&posed, &cfg.preprocess)?)?);
        }
        test_seconds.get_or_insert(start.elapsed().as_secs_f64() / split.test.len() as f64);
        Some(accuracy(&predicted, &truth))
    } else {
        None
    };

    Ok(RunRecord {
        lambda,
        classes: split.classes,
        repetition: split.repetition,
        class_subset: split.class_subset.clone(),
        accuracy_plain,
        accuracy_rst,
        train_seconds,
        test_seconds: test_seconds.unwrap_or(0.0),
        knda_gamma: pipeline.knda_gamma,
        svm_gamma: pipeline.svm.map(|s| s.gamma),
        svm_penalty: pipeline.svm.map(|s| s.penalty),
    })
}

fn run_jobs(dataset: &LabeledDataset, pre: &[Trajectory], splits: &[Split], cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    let jobs: Vec<(&Split, usize)> = splits.iter().flat_map(|s| cfg.lambdas.iter().map(move |&l| (s, l))).collect();
    let mut records = jobs
        .par_iter()
        .map(|&(split, lambda)| {
            run_split(dataset, pre, split, lambda, cfg).map_err(|e| {
                e.context(format!("classes {}, λ = {lambda}, repetition {}", split.classes, split.repetition))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    records.sort_by_key(|r| (r.classes, r.lambda, r.repetition));
    Ok(ExperimentReport::from_records(records))
}

fn subset_name(dataset: &LabeledDataset, classes: &[usize]) -> String {
    classes.iter().map(|&c| dataset.class_names()[c].as_str()).collect::<Vec<_>>().join(";")
}

/// Accuracy against context number: for every repetition a fresh split, and
/// for every λ a fresh context table.
pub fn run_lambda_sweep(dataset: &LabeledDataset, cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    cfg.validate()?;
    if dataset.class_count() < 2 {
        return Err(Error::InsufficientClasses { requested: 2, available: dataset.class_count() });
    }
    let pre = preprocess_all(dataset, cfg)?;
    let labels = dataset.labels();
    let all: Vec<usize> = (0..dataset.class_count()).collect();
    let splits = (0..cfg.repetitions)
        .map(|rep| {
            let key = (0, rep as u64);
            let (train, test) = split_per_class(&labels, cfg.train_fraction, &mut stream_rng(cfg.seed, Stream::Split, key.0, key.1))?;
            Ok(Split {
                key,
                repetition: rep,
                classes: dataset.class_count(),
                class_subset: subset_name(dataset, &all),
                train,
                test,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    run_jobs(dataset, &pre, &splits, cfg)
}

/// Accuracy on random class subsets, with test samples both as captured and
/// under random RST transforms, per `cfg.rst`.
pub fn run_rst_benchmark(dataset: &LabeledDataset, cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    cfg.validate()?;
    if cfg.class_sizes.is_empty() {
        return Err(Error::InvalidConfig("at least one class-subset size is required".into()));
    }
    let available = dataset.class_count();
    if let Some(&size) = cfg.class_sizes.iter().find(|&&s| s < 2 || s > available) {
        return Err(Error::InsufficientClasses { requested: size, available });
    }
    let pre = preprocess_all(dataset, cfg)?;
    let labels = dataset.labels();
    let mut splits = Vec::new();
    for &size in &cfg.class_sizes {
        for rep in 0..cfg.repetitions {
            let key = (size as u64, rep as u64);
            let mut chosen = index::sample(&mut stream_rng(cfg.seed, Stream::Subset, key.0, key.1), available, size).into_vec();
            chosen.sort_unstable();
            let members: Vec<usize> = (0..labels.len()).filter(|&r| chosen.contains(&labels[r])).collect();
            let sub_labels: Vec<usize> = members.iter().map(|&r| labels[r]).collect();
            let (train, test) = split_per_class(&sub_labels, cfg.train_fraction, &mut stream_rng(cfg.seed, Stream::Split, key.0, key.1))?;
            splits.push(Split {
                key,
                repetition: rep,
                classes: size,
                class_subset: subset_name(dataset, &chosen),
                train: train.into_iter().map(|i| members[i]).collect(),
                test: test.into_iter().map(|i| members[i]).collect(),
            });
        }
    }
    run_jobs(dataset, &pre, &splits, cfg)
}

/// Loads the data, runs the sweep and writes `lambda_sweep.csv`,
/// `lambda_sweep_summary.csv`, `lambda_sweep_accuracy.svg` and
/// `lambda_sweep_time.svg` into `out`.
pub fn cmd_lambda_sweep(source: &DataSource, cfg: &ExperimentConfig, out: &Path) -> Result<ExperimentReport> {
    cfg.validate()?;
    let dataset = source.load()?;
    let report = run_lambda_sweep(&dataset, cfg)?;
    report.write_csv(out, "lambda_sweep")?;
    std::fs::write(out.join("lambda_sweep_accuracy.svg"), svg::sweep_accuracy(&report, cfg.classifier))?;
    std::fs::write(out.join("lambda_sweep_time.svg"), svg::sweep_time(&report))?;
    Ok(report)
}

/// Loads the data, runs the benchmark and writes `rst_benchmark.csv`,
/// `rst_benchmark_summary.csv` and `rst_benchmark.svg` into `out`.
pub fn cmd_rst_benchmark(source: &DataSource, cfg: &ExperimentConfig, out: &Path) -> Result<ExperimentReport> {
    cfg.validate()?;
    let dataset = source.load()?;
    let report = run_rst_benchmark(&dataset, cfg)?;
    report.write_csv(out, "rst_benchmark")?;
    std::fs::write(out.join("rst_benchmark.svg"), svg::benchmark_bars(&report))?;
    Ok(report)
}

