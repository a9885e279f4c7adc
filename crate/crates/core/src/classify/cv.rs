//! Stratified k-fold cross-validation and grid search.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{accuracy, distinct_labels as distinct, svm_train, SvmParams};
use crate::subspace::KernelConfig;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CvConfig {
    pub folds: usize,
    /// Candidate RBF widths.
    pub gammas: Vec<f64>,
    /// Candidate SVM penalties.
    pub penalties: Vec<f64>,
    pub seed: u64,
}

impl Default for CvConfig {
    fn default() -> Self {
        Self {
            folds: 10,
            gammas: (-10..=3).map(|e| 2f64.powi(e)).collect(),
            penalties: (-2..=10).map(|e| 2f64.powi(e)).collect(),
            seed: 0,
        }
    }
}

impl CvConfig {
    pub fn validate(&self) -> Result<()> {
        if self.folds < 2 {
            return Err(Error::InvalidConfig(format!("folds must be at least 2, got {}", self.folds)));
        }
        if self.gammas.is_empty() || self.penalties.is_empty() {
            return Err(Error::EmptyGrid);
        }
        if self.gammas.iter().chain(&self.penalties).any(|v| !(*v > 0.0 && v.is_finite())) {
            return Err(Error::InvalidConfig("grid values must be positive and finite".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SvmCandidate {
    pub gamma: f64,
    pub penalty: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CvResult<P> {
    pub best: P,
    /// Mean validation accuracy of `best`.
    pub accuracy: f64,
    /// Mean validation accuracy of every candidate, in evaluation order.
    pub scores: Vec<(P, f64)>,
}

/// Fold id per sample. Each class is shuffled and dealt round-robin, with the
/// dealing position carried across classes so fold sizes differ by at most one.
pub fn stratified_folds(labels: &[usize], folds: usize, seed: u64) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut assignment = vec![0; labels.len()];
    let mut next = 0;
    for class in distinct(labels) {
        let mut members: Vec<usize> = (0..labels.len()).filter(|&r| labels[r] == class).collect();
        members.shuffle(&mut rng);
        for r in members {
            assignment[r] = next % folds;
            next += 1;
        }
    }
    assignment
}

/// Scores each candidate by mean fold accuracy and returns the best.
///
/// `evaluate(candidate, train, test)` returns predicted labels for `test`.
/// Ties keep the earliest candidate. Folds without test samples are skipped.
pub fn grid_search<P, F>(labels: &[usize], fold_ids: &[usize], candidates: &[P], evaluate: F) -> Result<CvResult<P>>
where
    P: Copy + Send + Sync,
    F: Fn(&P, &[usize], &[usize]) -> Result<Vec<usize>> + Sync,
{
    if candidates.is_empty() {
        return Err(Error::EmptyGrid);
    }
    let folds = fold_ids.iter().max().map_or(0, |m| m + 1);
    let splits: Vec<(Vec<usize>, Vec<usize>)> = (0..folds)
        .map(|f| {
            let (test, train): (Vec<usize>, Vec<usize>) = (0..labels.len()).partition(|&r| fold_ids[r] == f);
            (train, test)
        })
        .filter(|(train, test)| !test.is_empty() && !train.is_empty())
        .collect();
    if splits.is_empty() {
        return Err(Error::InsufficientSamples {
            class: labels.first().copied().unwrap_or(0),
            count: labels.len(),
            required: 2,
        });
    }
    let scores = candidates
        .par_iter()
        .map(|cand| {
            let mut total = 0.0;
            for (train, test) in &splits {
                let predicted = evaluate(cand, train, test)?;
                let truth: Vec<usize> = test.iter().map(|&r| labels[r]).collect();
                total += accuracy(&predicted, &truth);
            }
            Ok((*cand, total / splits.len() as f64))
        })
        .collect::<Result<Vec<_>>>()?;
    let best = scores
        .iter()
        .enumerate()
        .fold(0, |best, (i, s)| if s.1 > scores[best].1 { i } else { best });
    Ok(CvResult {
        best: scores[best].0,
        accuracy: scores[best].1,
        scores,
    })
}

/// Selects the RBF SVM `(γ, C)` by stratified cross-validation; ties go to
/// the smaller γ, then the smaller C.
pub fn cross_validate(features: &[Vec<f64>], labels: &[usize], cfg: &CvConfig) -> Result<CvResult<SvmCandidate>> {
    cfg.validate()?;
    if features.len() != labels.len() {
        return Err(Error::SizeMismatch {
            expected: features.len(),
            found: labels.len(),
        });
    }
    let mut gammas = cfg.gammas.clone();
    let mut penalties = cfg.penalties.clone();
    gammas.sort_by(f64::total_cmp);
    penalties.sort_by(f64::total_cmp);
    let candidates: Vec<SvmCandidate> = gammas
        .iter()
        .flat_map(|&gamma| penalties.iter().map(move |&penalty| SvmCandidate { gamma, penalty }))
        .collect();
    let fold_ids = stratified_folds(labels, cfg.folds, cfg.seed);
    grid_search(labels, &fold_ids, &candidates, |cand, train, test| {
        let tf: Vec<Vec<f64>> = train.iter().map(|&r| features[r].clone()).collect();
        let tl: Vec<usize> = train.iter().map(|&r| labels[r]).collect();
        let present = distinct(&tl);
        if present.len() < 2 {
            return Ok(vec![present[0]; test.len()]);
        }
        let model = svm_train(&tf, &tl, &SvmParams::new(KernelConfig::Rbf { gamma: cand.gamma }, cand.penalty))?;
        Ok(test.iter().map(|&r| model.predict(&features[r])).collect())
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn blobs() -> (Vec<Vec<f64>>, Vec<usize>) {
        let mut f = Vec::new();
        let mut l = Vec::new();
        for c in 0..3 {
            for i in 0..8 {
                let t = i as f64;
                f.push(vec![c as f64 * 10.0 + (t * 0.9).sin() * 0.3, (t * 1.7).cos() * 0.3]);
                l.push(c);
            }
        }
        (f, l)
    }

    #[test]
    fn folds_are_stratified_and_balanced() {
        let labels: Vec<usize> = (0..37).map(|i| i % 4).collect();
        let ids = stratified_folds(&labels, 10, 3);
        let mut sizes = [0usize; 10];
        for &f in &ids {
            sizes[f] += 1;
        }
        assert!(sizes.iter().max().unwrap() - sizes.iter().min().unwrap() <= 1);
        for c in 0..4 {
            let mut per = [0usize; 10];
            for (r, &f) in ids.iter().enumerate() {
                if labels[r] == c {
                    per[f] += 1;
                }
            }
            assert!(per.iter().max().unwrap() - per.iter().min().unwrap() <= 1);
        }
        assert_eq!(ids, stratified_folds(&labels, 10, 3));
    }

    #[test]
    fn single_candidate_is_returned() {
        let (f, l) = blobs();
        let cfg = CvConfig { gammas: vec![0.3], penalties: vec![2.0], ..CvConfig::default() };
        let res = cross_validate(&f, &l, &cfg).unwrap();
        assert_eq!(res.best, SvmCandidate { gamma: 0.3, penalty: 2.0 });
    }

    #[test]
    fn separable_blobs_reach_full_accuracy() {
        let (f, l) = blobs();
        let cfg = CvConfig { gammas: vec![0.01, 0.1, 1.0], penalties: vec![1.0, 10.0], folds: 4, seed: 1 };
        let res = cross_validate(&f, &l, &cfg).unwrap();
        assert_eq!(res.accuracy, 1.0);
        // Every candidate is perfect here, so the tie-break picks the first.
        assert_eq!(res.best, SvmCandidate { gamma: 0.01, penalty: 1.0 });
        assert_eq!(res, cross_validate(&f, &l, &cfg).unwrap());
    }

    #[test]
    fn empty_grid_is_rejected() {
        let (f, l) = blobs();
        let cfg = CvConfig { gammas: vec![], ..CvConfig::default() };
        assert!(matches!(cross_validate(&f, &l, &cfg), Err(Error::EmptyGrid)));
        assert!(matches!(grid_search::<f64, _>(&l, &[0; 24], &[], |_, _, _| Ok(vec![])), Err(Error::EmptyGrid)));
    }
}
