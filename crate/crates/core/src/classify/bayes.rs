//! Gaussian naive Bayes.

use serde::{Deserialize, Serialize};

use super::distinct_labels as distinct;
use crate::{Error, Result};

const VARIANCE_FLOOR: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaussianNb {
    classes: Vec<usize>,
    log_priors: Vec<f64>,
    means: Vec<Vec<f64>>,
    variances: Vec<Vec<f64>>,
}

/// Fits per-class means and (floored, maximum-likelihood) variances with
/// empirical priors.
pub fn gnb_train(features: &[Vec<f64>], labels: &[usize]) -> Result<GaussianNb> {
    if features.len() != labels.len() {
        return Err(Error::SizeMismatch {
            expected: features.len(),
            found: labels.len(),
        });
    }
    let classes = distinct(labels);
    if classes.is_empty() {
        return Err(Error::InsufficientClasses { requested: 1, available: 0 });
    }
    let dim = features[0].len();
    let total = labels.len() as f64;
    let mut log_priors = Vec::with_capacity(classes.len());
    let mut means = Vec::with_capacity(classes.len());
    let mut variances = Vec::with_capacity(classes.len());
    for &c in &classes {
        let members: Vec<&Vec<f64>> = features.iter().zip(labels).filter(|(_, &l)| l == c).map(|(f, _)| f).collect();
        if members.len() < 2 {
            return Err(Error::InsufficientSamples {
                class: c,
                count: members.len(),
                required: 2,
            });
        }
        let count = members.len() as f64;
        let mean: Vec<f64> = (0..dim).map(|d| members.iter().map(|f| f[d]).sum::<f64>() / count).collect();
        let var: Vec<f64> = (0..dim)
            .map(|d| {
                let v = members.iter().map(|f| (f[d] - mean[d]).powi(2)).sum::<f64>() / count;
                v.max(VARIANCE_FLOOR)
            })
            .collect();
        log_priors.push((count / total).ln());
        means.push(mean);
        variances.push(var);
    }
    Ok(GaussianNb {
        classes,
        log_priors,
        means,
        variances,
    })
}

impl GaussianNb {
    pub fn classes(&self) -> &[usize] {
        &self.classes
    }

    fn log_joint(&self, u: &[f64]) -> Vec<f64> {
        (0..self.classes.len())
            .map(|c| {
                let ll: f64 = u
                    .iter()
                    .zip(&self.means[c])
                    .zip(&self.variances[c])
                    .map(|((x, m), v)| -0.5 * ((2.0 * std::f64::consts::PI * v).ln() + (x - m).powi(2) / v))
                    .sum();
                self.log_priors[c] + ll
            })
            .collect()
    }

    /// Posterior probabilities in [`classes`](Self::classes) order.
    pub fn posteriors(&self, u: &[f64]) -> Vec<f64> {
        let lj = self.log_joint(u);
        let max = lj.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let exp: Vec<f64> = lj.iter().map(|l| (l - max).exp()).collect();
        let z: f64 = exp.iter().sum();
        exp.into_iter().map(|e| e / z).collect()
    }

    /// Maximum a posteriori label; ties go to the smallest label.
    pub fn predict(&self, u: &[f64]) -> usize {
        let lj = self.log_joint(u);
        let best = lj.iter().enumerate().fold(0, |best, (c, &v)| if v > lj[best] { c } else { best });
        self.classes[best]
    }
}
