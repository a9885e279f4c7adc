//! Experiment harness: λ sweeps and RST benchmarks over labeled datasets.
//!
//! Every random choice (train/test split, context table, class subset, test
//! pose, fold assignment) draws from its own stream derived from the run seed,
//! the condition and the repetition index, so parallel and serial runs agree.

mod config;
mod describe;
mod pipeline;
mod report;
mod runner;
mod svg;

pub use config::{ClassifierKind, DataSource, ExperimentConfig, KndaSearch, RstMode};
pub use describe::{cmd_describe, Description};
pub use pipeline::{fit_pipeline, split_per_class, Pipeline, Standardizer, TrainedClassifier};
pub use report::{ConditionSummary, ExperimentReport, RunRecord};
pub use runner::{cmd_lambda_sweep, cmd_rst_benchmark, run_lambda_sweep, run_rst_benchmark};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Purpose tags for derived random streams.
#[derive(Debug, Clone, Copy)]
#[repr(u8)]
pub(crate) enum Stream {
    Split = 1,
    Table = 2,
    Pose = 3,
    Folds = 4,
    Subset = 5,
}

/// Independent generator for `(purpose, a, b)` under `seed`.
pub(crate) fn stream_rng(seed: u64, purpose: Stream, a: u64, b: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((purpose as u64) << 56) | ((a & 0xFF_FFFF) << 32) | (b & 0xFFFF_FFFF));
    rng
}

/// Seed value derived the same way as [`stream_rng`].
pub(crate) fn stream_seed(seed: u64, purpose: Stream, a: u64, b: u64) -> u64 {
    use rand::RngCore;
    stream_rng(seed, purpose, a, b).next_u64()
}
