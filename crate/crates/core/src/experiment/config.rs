use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::classify::CvConfig;
use crate::dataset::{import_asl, load_manifest, synth_generate, LabeledDataset, SynthConfig};
use crate::point_context::RstRanges;
use crate::trajectory::PreprocessConfig;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClassifierKind {
    Svm,
    Bayes,
    Knn,
}

impl FromStr for ClassifierKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "svm" => Ok(Self::Svm),
            "bayes" => Ok(Self::Bayes),
            "knn" => Ok(Self::Knn),
            _ => Err(Error::InvalidConfig(format!("unknown classifier `{s}` (svm, bayes, knn)"))),
        }
    }
}

/// Which test legs to run: untransformed, RST-transformed, or both.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RstMode {
    Off,
    On,
    Both,
}

impl RstMode {
    pub fn plain(self) -> bool {
        matches!(self, Self::Off | Self::Both)
    }

    pub fn transformed(self) -> bool {
        matches!(self, Self::On | Self::Both)
    }
}

impl FromStr for RstMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "off" => Ok(Self::Off),
            "on" => Ok(Self::On),
            "both" => Ok(Self::Both),
            _ => Err(Error::InvalidConfig(format!("unknown RST mode `{s}` (on, off, both)"))),
        }
    }
}

/// Where samples come from.
#[derive(Debug, Clone, PartialEq)]
pub enum DataSource {
    Manifest(PathBuf),
    Asl(PathBuf),
    Synth(SynthConfig),
}

impl DataSource {
    /// `synth` selects the default synthetic set, a directory the sign
    /// archive importer, anything else a manifest file.
    pub fn from_arg(arg: &str, seed: u64) -> Self {
        if arg == "synth" {
            Self::Synth(SynthConfig::standard(4, 20, 0.01, seed))
        } else if Path::new(arg).is_dir() {
            Self::Asl(PathBuf::from(arg))
        } else {
            Self::Manifest(PathBuf::from(arg))
        }
    }

    pub fn load(&self) -> Result<LabeledDataset> {
        match self {
            Self::Manifest(p) => load_manifest(p),
            Self::Asl(p) => import_asl(p),
            Self::Synth(cfg) => synth_generate(cfg),
        }
    }
}

/// Kernel-width search for KNDA. Candidates are `multiplier / d̄²`, where
/// `d̄²` is the mean squared distance between training descriptors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KndaSearch {
    pub multipliers: Vec<f64>,
    pub alpha: f64,
    pub retained_variance: f64,
}

impl Default for KndaSearch {
    fn default() -> Self {
        Self {
            multipliers: (-3..=3).map(|e| 2f64.powi(e)).collect(),
            alpha: 1.0,
            retained_variance: 0.99,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub preprocess: PreprocessConfig,
    pub lambdas: Vec<usize>,
    pub repetitions: usize,
    /// Fraction of each class used for training.
    pub train_fraction: f64,
    pub rst: RstMode,
    pub rst_ranges: RstRanges,
    pub classifier: ClassifierKind,
    /// Class-subset sizes for the RST benchmark.
    pub class_sizes: Vec<usize>,
    pub seed: u64,
    pub knda: KndaSearch,
    pub cv: CvConfig,
    /// Neighbours for the k-NN classifier.
    pub knn_k: usize,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            preprocess: PreprocessConfig::default(),
            lambdas: vec![25],
            repetitions: 10,
            train_fraction: 0.5,
            rst: RstMode::Off,
            rst_ranges: RstRanges::default(),
            classifier: ClassifierKind::Svm,
            class_sizes: vec![2, 4, 8, 16],
            seed: 0,
            knda: KndaSearch::default(),
            cv: CvConfig::default(),
            knn_k: 1,
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        self.preprocess.validate()?;
        if self.repetitions == 0 {
            return Err(Error::InvalidConfig("repetitions must be at least 1".into()));
        }
        if self.lambdas.is_empty() {
            return Err(Error::InvalidConfig("at least one context number is required".into()));
        }
        if let Some(&l) = self.lambdas.iter().find(|&&l| l == 0 || l > self.preprocess.n) {
            return Err(Error::InvalidLambda { lambda: l, n: self.preprocess.n });
        }
        if !(self.train_fraction > 0.0 && self.train_fraction < 1.0) {
            return Err(Error::InvalidConfig(format!("train fraction must lie in (0, 1), got {}", self.train_fraction)));
        }
        if self.knda.multipliers.is_empty() {
            return Err(Error::EmptyGrid);
        }
        if self.knda.multipliers.iter().any(|m| !(*m > 0.0 && m.is_finite())) {
            return Err(Error::InvalidConfig("KNDA width multipliers must be positive".into()));
        }
        if self.knn_k == 0 {
            return Err(Error::InvalidConfig("k-NN needs k ≥ 1".into()));
        }
        self.rst_ranges.validate()?;
        self.cv.validate()
    }
}
