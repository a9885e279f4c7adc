//! Classifiers for KNDA features and the cross-validation that tunes them.

mod bayes;
mod cv;
mod knn;
mod svm;

pub use bayes::{gnb_train, GaussianNb};
pub use cv::{cross_validate, grid_search, stratified_folds, CvConfig, CvResult, SvmCandidate};
pub use knn::knn_predict;
pub use svm::{solve_binary, svm_train, BinarySolution, SvmModel, SvmParams};

/// Fraction of `predicted` equal to `truth`.
pub fn accuracy(predicted: &[usize], truth: &[usize]) -> f64 {
    if truth.is_empty() {
        return 0.0;
    }
    let hits = predicted.iter().zip(truth).filter(|(a, b)| a == b).count();
    hits as f64 / truth.len() as f64
}

/// Sorted distinct labels.
pub fn distinct_labels(labels: &[usize]) -> Vec<usize> {
    let mut classes = labels.to_vec();
    classes.sort_unstable();
    classes.dedup();
    classes
}
