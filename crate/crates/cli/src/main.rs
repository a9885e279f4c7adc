//! `trajctx`: describe trajectories and run recognition experiments.

use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use trajctx_core::classify::CvConfig;
use trajctx_core::dataset::{import_asl, synth_generate, write_manifest, LabeledDataset, SynthConfig};
use trajctx_core::experiment::{
    cmd_describe, cmd_lambda_sweep, cmd_rst_benchmark, ClassifierKind, DataSource, ExperimentConfig, ExperimentReport, RstMode,
};
use trajctx_core::trajectory::PreprocessConfig;
use trajctx_core::{Error, Result};

#[derive(Parser)]
#[command(name = "trajctx", version, about = "Point-context descriptors and KNDA recognition of 3D trajectories")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the preprocessed points and descriptor of one trajectory CSV.
    Describe(DescribeArgs),
    /// Recognition accuracy and timing against the context number λ.
    LambdaSweep(RunArgs),
    /// Recognition accuracy on random class subsets, with and without RST.
    RstBenchmark(RunArgs),
    /// Convert a sign archive directory into a manifest dataset.
    ImportAsl(ImportArgs),
    /// Write a synthetic labeled dataset as a manifest.
    Synth(SynthArgs),
}

#[derive(Args)]
struct DescribeArgs {
    /// Trajectory CSV with an `x,y,z` header.
    trajectory: PathBuf,
    #[arg(long, default_value_t = 60)]
    n: usize,
    #[arg(long, default_value_t = 25)]
    lambda: usize,
    /// Context table CSV to reuse; created here if it does not exist.
    #[arg(long)]
    table: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct RunArgs {
    /// Manifest CSV, sign archive directory, or `synth`.
    #[arg(long, default_value = "synth")]
    data: String,
    #[arg(long, default_value_t = 60)]
    n: usize,
    /// Comma-separated context numbers.
    #[arg(long, value_delimiter = ',')]
    lambda: Option<Vec<usize>>,
    /// Repetitions per condition (default 10 for the sweep, 20 for the benchmark).
    #[arg(long)]
    reps: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// svm, bayes or knn.
    #[arg(long, default_value = "svm")]
    classifier: String,
    /// Comma-separated class-subset sizes (benchmark only).
    #[arg(long, value_delimiter = ',', default_value = "2,4,8,16")]
    classes: Vec<usize>,
    /// on, off or both (default off for the sweep, both for the benchmark).
    #[arg(long)]
    rst: Option<String>,
    /// Cross-validation folds.
    #[arg(long, default_value_t = 10)]
    folds: usize,
    /// Neighbours for the k-NN classifier.
    #[arg(long, default_value_t = 1)]
    knn_k: usize,
    /// Synthetic data: number of classes.
    #[arg(long, default_value_t = 4)]
    synth_classes: usize,
    /// Synthetic data: samples per class.
    #[arg(long, default_value_t = 20)]
    synth_per_class: usize,
    /// Synthetic data: per-axis noise.
    #[arg(long, default_value_t = 0.01)]
    synth_noise: f64,
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

#[derive(Args)]
struct ImportArgs {
    /// Root directory of the sign archive.
    #[arg(long)]
    data: PathBuf,
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

#[derive(Args)]
struct SynthArgs {
    #[arg(long, default_value_t = 4)]
    classes: usize,
    #[arg(long, default_value_t = 20)]
    per_class: usize,
    #[arg(long, default_value_t = 0.01)]
    noise: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

fn default_lambdas(n: usize) -> Vec<usize> {
    let mut l: Vec<usize> = [1, 2, 4, 8, 16, 25, n / 2, 3 * n / 4, n - 1]
        .into_iter()
        .filter(|&l| l >= 1 && l <= n)
        .collect();
    l.sort_unstable();
    l.dedup();
    l
}

impl RunArgs {
    fn config(&self, sweep: bool) -> Result<(DataSource, ExperimentConfig)> {
        let source = if self.data == "synth" {
            DataSource::Synth(SynthConfig::standard(self.synth_classes, self.synth_per_class, self.synth_noise, self.seed))
        } else {
            DataSource::from_arg(&self.data, self.seed)
        };
        let lambdas = match &self.lambda {
            Some(l) => l.clone(),
            None if sweep => default_lambdas(self.n),
            None => vec![25.min(self.n)],
        };
        let rst = match &self.rst {
            Some(s) => s.parse()?,
            None if sweep => RstMode::Off,
            None => RstMode::Both,
        };
        let cfg = ExperimentConfig {
            preprocess: PreprocessConfig::with_n(self.n),
            lambdas,
            repetitions: self.reps.unwrap_or(if sweep { 10 } else { 20 }),
            rst,
            classifier: self.classifier.parse::<ClassifierKind>()?,
            class_sizes: self.classes.clone(),
            seed: self.seed,
            cv: CvConfig { folds: self.folds, ..CvConfig::default() },
            knn_k: self.knn_k,
            ..ExperimentConfig::default()
        };
        cfg.validate()?;
        Ok((source, cfg))
    }
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map_or("-".into(), |v| format!("{:.4}", v))
}

fn print_report(report: &ExperimentReport) -> io::Result<()> {
    let mut out = io::stdout().lock();
    writeln!(out, "classes\tlambda\treps\tmean\tstd\tmean_rst\tstd_rst\ttrain_s\ttest_s")?;
    for s in &report.summaries {
        writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{:.4}\t{:.6}",
            s.classes,
            s.lambda,
            s.repetitions,
            fmt_opt(s.mean_plain),
            fmt_opt(s.std_plain),
            fmt_opt(s.mean_rst),
            fmt_opt(s.std_rst),
            s.median_train_seconds,
            s.median_test_seconds
        )?;
    }
    Ok(())
}

fn write_dataset(dataset: &LabeledDataset, out: &Path) -> Result<()> {
    let manifest = write_manifest(dataset, out)?;
    let mut stdout = io::stdout().lock();
    for (name, count) in dataset.class_names().iter().zip(dataset.class_counts()) {
        writeln!(stdout, "{name}\t{count}")?;
    }
    writeln!(stdout, "wrote {} samples to {}", dataset.len(), manifest.display())?;
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Describe(a) => {
            let d = cmd_describe(&a.trajectory, a.n, a.lambda, a.table.as_deref(), a.seed)?;
            if let Some(p) = &d.saved_table {
                eprintln!("context table saved to {}", p.display());
            }
            d.write_csv(io::stdout().lock())
        }
        Command::LambdaSweep(a) => {
            let (source, cfg) = a.config(true)?;
            let report = cmd_lambda_sweep(&source, &cfg, &a.out)?;
            Ok(print_report(&report)?)
        }
        Command::RstBenchmark(a) => {
            let (source, cfg) = a.config(false)?;
            let report = cmd_rst_benchmark(&source, &cfg, &a.out)?;
            Ok(print_report(&report)?)
        }
        Command::ImportAsl(a) => write_dataset(&import_asl(&a.data)?, &a.out),
        Command::Synth(a) => write_dataset(&synth_generate(&SynthConfig::standard(a.classes, a.per_class, a.noise, a.seed))?, &a.out),
    }
}

fn exit_code(e: &Error) -> u8 {
    if e.is_data_error() {
        3
    } else {
        2
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
