//! Training and prediction for one split: descriptors, KNDA, classifier.

use rand::seq::SliceRandom;
use rand::Rng;

use super::config::{ClassifierKind, ExperimentConfig};
use crate::classify::{cross_validate, grid_search, gnb_train, knn_predict, stratified_folds, svm_train, CvConfig, GaussianNb, SvmCandidate, SvmModel, SvmParams};
use crate::linalg::squared_distance;
use crate::point_context::{descriptor, ContextTable};
use crate::subspace::{knda_fit, KernelConfig, KndaParams, LabeledMatrix, SubspaceModel};
use crate::trajectory::Trajectory;
use crate::{Error, Result};

/// Splits sample indices per class: `round(fraction·N_c)` training samples,
/// clamped so that each class keeps ≥ 2 for training and ≥ 1 for testing.
pub fn split_per_class<R: Rng + ?Sized>(labels: &[usize], fraction: f64, rng: &mut R) -> Result<(Vec<usize>, Vec<usize>)> {
    let classes = crate::classify::distinct_labels(labels);
    let (mut train, mut test) = (Vec::new(), Vec::new());
    for c in classes {
        let mut members: Vec<usize> = (0..labels.len()).filter(|&r| labels[r] == c).collect();
        if members.len() < 3 {
            return Err(Error::InsufficientSamples {
                class: c,
                count: members.len(),
                required: 3,
            });
        }
        members.shuffle(rng);
        let k = ((members.len() as f64 * fraction).round() as usize).clamp(2, members.len() - 1);
        train.extend_from_slice(&members[..k]);
        test.extend_from_slice(&members[k..]);
    }
    train.sort_unstable();
    test.sort_unstable();
    Ok((train, test))
}

/// Per-dimension z-scoring fitted on training features.
#[derive(Debug, Clone, PartialEq)]
pub struct Standardizer {
    mean: Vec<f64>,
    scale: Vec<f64>,
}

impl Standardizer {
    pub fn fit(features: &[Vec<f64>]) -> Self {
        let dim = features.first().map_or(0, Vec::len);
        let count = features.len() as f64;
        let mean: Vec<f64> = (0..dim).map(|d| features.iter().map(|f| f[d]).sum::<f64>() / count).collect();
        let scale = (0..dim)
            .map(|d| {
                let var = features.iter().map(|f| (f[d] - mean[d]).powi(2)).sum::<f64>() / count;
                if var.sqrt() > 1e-12 { var.sqrt() } else { 1.0 }
            })
            .collect();
        Self { mean, scale }
    }

    pub fn apply(&self, f: &[f64]) -> Vec<f64> {
        f.iter().zip(&self.mean).zip(&self.scale).map(|((x, m), s)| (x - m) / s).collect()
    }
}

#[derive(Debug, Clone)]
pub enum TrainedClassifier {
    Svm(SvmModel),
    Bayes(GaussianNb),
    Knn { features: Vec<Vec<f64>>, labels: Vec<usize>, k: usize },
}

impl TrainedClassifier {
    pub fn predict(&self, u: &[f64]) -> usize {
        match self {
            Self::Svm(m) => m.predict(u),
            Self::Bayes(m) => m.predict(u),
            Self::Knn { features, labels, k } => knn_predict(features, labels, u, *k),
        }
    }
}

/// A fitted descriptor → KNDA → classifier chain.
#[derive(Debug, Clone)]
pub struct Pipeline {
    pub table: ContextTable,
    pub subspace: SubspaceModel,
    pub scaler: Standardizer,
    pub classifier: TrainedClassifier,
    /// Selected KNDA RBF width.
    pub knda_gamma: f64,
    /// Selected SVM parameters, when the classifier is an SVM.
    pub svm: Option<SvmCandidate>,
}

impl Pipeline {
    pub fn features(&self, trajectory: &Trajectory) -> Result<Vec<f64>> {
        let desc = descriptor(trajectory.points(), &self.table)?;
        let z = self.subspace.project(&desc.values)?;
        Ok(self.scaler.apply(z.as_slice()))
    }

    pub fn predict(&self, trajectory: &Trajectory) -> Result<usize> {
        Ok(self.classifier.predict(&self.features(trajectory)?))
    }
}

/// Fits the chain on preprocessed training trajectories.
///
/// The KNDA kernel width is chosen by cross-validated 1-NN accuracy in the
/// KNDA subspace; the SVM `(γ, C)` by cross-validation on the standardized
/// KNDA features of the whole training set.
pub fn fit_pipeline(train: &[&Trajectory], labels: &[usize], table: &ContextTable, cfg: &ExperimentConfig, cv_seed: u64) -> Result<Pipeline> {
    let descriptors = train
        .iter()
        .map(|t| descriptor(t.points(), table).map(|d| d.values))
        .collect::<Result<Vec<_>>>()?;
    let data = LabeledMatrix::new(descriptors, labels.to_vec())?;
    let knda_gamma = select_knda_gamma(&data, cfg, cv_seed)?;
    let params = knda_params(knda_gamma, cfg);
    let subspace = knda_fit(&data, &params)?;
    let raw_features: Vec<Vec<f64>> = subspace
        .project_many(data.samples())?
        .into_iter()
        .map(|v| v.as_slice().to_vec())
        .collect();
    let scaler = Standardizer::fit(&raw_features);
    let features: Vec<Vec<f64>> = raw_features.iter().map(|f| scaler.apply(f)).collect();

    let mut svm = None;
    let classifier = match cfg.classifier {
        ClassifierKind::Svm => {
            let cv = CvConfig { seed: cv_seed, ..cfg.cv.clone() };
            let best = cross_validate(&features, labels, &cv)?.best;
            svm = Some(best);
            TrainedClassifier::Svm(svm_train(&features, labels, &SvmParams::new(KernelConfig::Rbf { gamma: best.gamma }, best.penalty))?)
        }
        ClassifierKind::Bayes => TrainedClassifier::Bayes(gnb_train(&features, labels)?),
        ClassifierKind::Knn => TrainedClassifier::Knn {
            features,
            labels: labels.to_vec(),
            k: cfg.knn_k,
        },
    };
    Ok(Pipeline {
        table: table.clone(),
        subspace,
        scaler,
        classifier,
        knda_gamma,
        svm,
    })
}

fn knda_params(gamma: f64, cfg: &ExperimentConfig) -> KndaParams {
    KndaParams {
        alpha: cfg.knda.alpha,
        retained_variance: cfg.knda.retained_variance,
        ..KndaParams::new(KernelConfig::Rbf { gamma })
    }
}

fn select_knda_gamma(data: &LabeledMatrix, cfg: &ExperimentConfig, seed: u64) -> Result<f64> {
    let n = data.len();
    let mut total = 0.0;
    for i in 0..n {
        for j in 0..i {
            total += squared_distance(data.sample(i), data.sample(j));
        }
    }
    let mean_sq = total / (n * (n - 1) / 2) as f64;
    if !(mean_sq > 0.0) {
        return Err(Error::RankDeficient("all training descriptors coincide".into()));
    }
    let mut gammas: Vec<f64> = cfg.knda.multipliers.iter().map(|m| m / mean_sq).collect();
    gammas.sort_by(f64::total_cmp);
    if gammas.len() == 1 {
        return Ok(gammas[0]);
    }
    let Some(fold_ids) = viable_folds(data, cfg.cv.folds, seed) else {
        // Too few samples per class for inner folds: use the middle candidate.
        return Ok(gammas[gammas.len() / 2]);
    };
    let result = grid_search(data.labels(), &fold_ids, &gammas, |&gamma, tr, te| {
        let sub = LabeledMatrix::new(tr.iter().map(|&r| data.sample(r).to_vec()).collect(), tr.iter().map(|&r| data.labels()[r]).collect())?;
        let model = match knda_fit(&sub, &knda_params(gamma, cfg)) {
            Ok(m) => m,
            // A width that collapses the kernel scatter scores as a miss.
            Err(Error::RankDeficient(_) | Error::NumericalFailure(_)) => return Ok(vec![usize::MAX; te.len()]),
            Err(e) => return Err(e),
        };
        let train_feats: Vec<Vec<f64>> = model.project_many(sub.samples())?.into_iter().map(|v| v.as_slice().to_vec()).collect();
        te.iter()
            .map(|&r| {
                let u = model.project(data.sample(r))?;
                Ok(knn_predict(&train_feats, sub.labels(), u.as_slice(), 1))
            })
            .collect()
    })?;
    Ok(result.best)
}

/// Stratified folds whose training parts keep ≥ 2 samples of every class.
fn viable_folds(data: &LabeledMatrix, folds: usize, seed: u64) -> Option<Vec<usize>> {
    let smallest = (0..data.class_count()).map(|c| data.members(c).len()).min()?;
    let folds = folds.min(smallest);
    if folds < 2 {
        return None;
    }
    let ids = stratified_folds(data.labels(), folds, seed);
    let ok = (0..folds).all(|f| {
        (0..data.class_count()).all(|c| data.members(c).iter().filter(|&&r| ids[r] != f).count() >= 2)
    });
    ok.then_some(ids)
}
