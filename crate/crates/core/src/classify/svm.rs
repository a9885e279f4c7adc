//! One-vs-one SVM trained with SMO.
//!
//! The binary solver minimizes `½ αᵀQα − eᵀα` with `Q_ij = y_i y_j K_ij`,
//! `0 ≤ α ≤ C` and `yᵀα = 0`, picking working pairs by maximal violation with
//! second-order gain, and stops once the KKT violation drops below the
//! tolerance.

use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::distinct_labels as distinct;
use crate::subspace::KernelConfig;
use crate::{Error, Result};

const TAU: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SvmParams {
    pub kernel: KernelConfig,
    /// Box constraint `C`.
    pub penalty: f64,
    /// Stopping tolerance on the maximal KKT violation.
    pub tolerance: f64,
    pub max_iterations: usize,
}

impl SvmParams {
    pub fn new(kernel: KernelConfig, penalty: f64) -> Self {
        Self {
            kernel,
            penalty,
            tolerance: 1e-3,
            max_iterations: 1_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BinarySolution {
    pub alpha: Vec<f64>,
    /// Decision function is `Σ α_i y_i K(x_i, x) − rho`.
    pub rho: f64,
    pub iterations: usize,
}

impl BinarySolution {
    /// Dual objective `Σα − ½ αᵀQα` (to be maximized).
    pub fn dual_objective(&self, k: &DMatrix<f64>, y: &[f64]) -> f64 {
        let n = y.len();
        let mut quad = 0.0;
        for i in 0..n {
            for j in 0..n {
                quad += self.alpha[i] * self.alpha[j] * y[i] * y[j] * k[(i, j)];
            }
        }
        self.alpha.iter().sum::<f64>() - 0.5 * quad
    }
}

/// Solves one binary problem over a precomputed kernel matrix; `y` is ±1.
pub fn solve_binary(k: &DMatrix<f64>, y: &[f64], c: f64, tolerance: f64, max_iterations: usize) -> Result<BinarySolution> {
    let n = y.len();
    if !(c > 0.0) {
        return Err(Error::InvalidConfig(format!("SVM penalty must be positive, got {c}")));
    }
    let q = |i: usize, j: usize| y[i] * y[j] * k[(i, j)];
    let mut alpha = vec![0.0; n];
    let mut grad = vec![-1.0; n];
    let is_up = |a: f64, yi: f64| (yi > 0.0 && a < c) || (yi < 0.0 && a > 0.0);
    let is_low = |a: f64, yi: f64| (yi > 0.0 && a > 0.0) || (yi < 0.0 && a < c);

    let mut iterations = 0;
    loop {
        // i: maximal −y_t ∇_t over I_up.
        let mut gmax = f64::NEG_INFINITY;
        let mut i_sel = None;
        for t in 0..n {
            if is_up(alpha[t], y[t]) {
                let v = -y[t] * grad[t];
                if v > gmax {
                    gmax = v;
                    i_sel = Some(t);
                }
            }
        }
        let mut gmin = f64::INFINITY;
        let mut j_sel = None;
        let mut best_gain = f64::INFINITY;
        if let Some(i) = i_sel {
            for t in 0..n {
                if is_low(alpha[t], y[t]) {
                    let v = -y[t] * grad[t];
                    gmin = gmin.min(v);
                    let b = gmax - v;
                    if b > 0.0 {
                        let a = (k[(i, i)] + k[(t, t)] - 2.0 * k[(i, t)]).max(TAU);
                        let gain = -(b * b) / a;
                        if gain <= best_gain {
                            best_gain = gain;
                            j_sel = Some(t);
                        }
                    }
                }
            }
        }
        let (i, j) = match (i_sel, j_sel) {
            (Some(i), Some(j)) if gmax - gmin >= tolerance => (i, j),
            _ => break,
        };
        if iterations >= max_iterations {
            return Err(Error::NonConvergence { iterations });
        }
        iterations += 1;

        let (old_ai, old_aj) = (alpha[i], alpha[j]);
        if y[i] != y[j] {
            let quad = (q(i, i) + q(j, j) + 2.0 * q(i, j)).max(TAU);
            let delta = (-grad[i] - grad[j]) / quad;
            let diff = alpha[i] - alpha[j];
            alpha[i] += delta;
            alpha[j] += delta;
            if diff > 0.0 {
                if alpha[j] < 0.0 {
                    alpha[j] = 0.0;
                    alpha[i] = diff;
                }
            } else if alpha[i] < 0.0 {
                alpha[i] = 0.0;
                alpha[j] = -diff;
            }
            if diff > 0.0 {
                if alpha[i] > c {
                    alpha[i] = c;
                    alpha[j] = c - diff;
                }
            } else if alpha[j] > c {
                alpha[j] = c;
                alpha[i] = c + diff;
            }
        } else {
            let quad = (q(i, i) + q(j, j) - 2.0 * q(i, j)).max(TAU);
            let delta = (grad[i] - grad[j]) / quad;
            let sum = alpha[i] + alpha[j];
            alpha[i] -= delta;
            alpha[j] += delta;
            if sum > c {
                if alpha[i] > c {
                    alpha[i] = c;
                    alpha[j] = sum - c;
                }
            } else if alpha[j] < 0.0 {
                alpha[j] = 0.0;
                alpha[i] = sum;
            }
            if sum > c {
                if alpha[j] > c {
                    alpha[j] = c;
                    alpha[i] = sum - c;
                }
            } else if alpha[i] < 0.0 {
                alpha[i] = 0.0;
                alpha[j] = sum;
            }
        }
        let (di, dj) = (alpha[i] - old_ai, alpha[j] - old_aj);
        for (t, g) in grad.iter_mut().enumerate() {
            *g += q(t, i) * di + q(t, j) * dj;
        }
    }

    // rho: average of y∇ over free vectors, else the midpoint of the bounds.
    let mut free_sum = 0.0;
    let mut free_count = 0;
    let (mut ub, mut lb) = (f64::INFINITY, f64::NEG_INFINITY);
    for t in 0..n {
        let yg = y[t] * grad[t];
        if alpha[t] > 0.0 && alpha[t] < c {
            free_sum += yg;
            free_count += 1;
        } else if (alpha[t] >= c && y[t] < 0.0) || (alpha[t] <= 0.0 && y[t] > 0.0) {
            ub = ub.min(yg);
        } else {
            lb = lb.max(yg);
        }
    }
    let rho = if free_count > 0 {
        free_sum / free_count as f64
    } else if ub.is_finite() && lb.is_finite() {
        (ub + lb) / 2.0
    } else if ub.is_finite() {
        ub
    } else {
        lb
    };
    Ok(BinarySolution { alpha, rho, iterations })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct PairModel {
    /// Class index voted for by a positive decision value.
    positive: usize,
    negative: usize,
    support: Vec<Vec<f64>>,
    /// `α_i y_i` per support vector.
    coef: Vec<f64>,
    rho: f64,
}

/// One binary SVM per class pair; prediction by majority vote.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SvmModel {
    classes: Vec<usize>,
    params: SvmParams,
    pairs: Vec<PairModel>,
}

pub fn svm_train(features: &[Vec<f64>], labels: &[usize], params: &SvmParams) -> Result<SvmModel> {
    if features.len() != labels.len() {
        return Err(Error::SizeMismatch {
            expected: features.len(),
            found: labels.len(),
        });
    }
    if features.iter().flatten().any(|v| !v.is_finite()) {
        return Err(Error::InvalidConfig("SVM features must be finite".into()));
    }
    let classes = distinct(labels);
    if classes.len() < 2 {
        return Err(Error::InsufficientClasses {
            requested: 2,
            available: classes.len(),
        });
    }
    let pair_list: Vec<(usize, usize)> = (0..classes.len())
        .flat_map(|a| (a + 1..classes.len()).map(move |b| (a, b)))
        .collect();
    let pairs = pair_list
        .par_iter()
        .map(|&(a, b)| {
            let idx: Vec<usize> = (0..labels.len())
                .filter(|&r| labels[r] == classes[a] || labels[r] == classes[b])
                .collect();
            let y: Vec<f64> = idx.iter().map(|&r| if labels[r] == classes[a] { 1.0 } else { -1.0 }).collect();
            let k = DMatrix::from_fn(idx.len(), idx.len(), |p, q| params.kernel.eval(&features[idx[p]], &features[idx[q]]));
            let sol = solve_binary(&k, &y, params.penalty, params.tolerance, params.max_iterations)?;
            let (support, coef) = idx
                .iter()
                .zip(&sol.alpha)
                .zip(&y)
                .filter(|((_, &al), _)| al > 0.0)
                .map(|((&r, &al), &yi)| (features[r].clone(), al * yi))
                .unzip();
            Ok(PairModel {
                positive: a,
                negative: b,
                support,
                coef,
                rho: sol.rho,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SvmModel {
        classes,
        params: *params,
        pairs,
    })
}

impl SvmModel {
    pub fn classes(&self) -> &[usize] {
        &self.classes
    }

    /// Decision values, one per class pair in `(a, b)`, `a < b` order.
    pub fn decision_values(&self, u: &[f64]) -> Vec<f64> {
        self.pairs
            .iter()
            .map(|p| {
                p.support
                    .iter()
                    .zip(&p.coef)
                    .map(|(sv, c)| c * self.params.kernel.eval(sv, u))
                    .sum::<f64>()
                    - p.rho
            })
            .collect()
    }

    /// Majority vote over class pairs; ties go to the smallest label.
    pub fn predict(&self, u: &[f64]) -> usize {
        let mut votes = vec![0usize; self.classes.len()];
        for (p, v) in self.pairs.iter().zip(self.decision_values(u)) {
            votes[if v > 0.0 { p.positive } else { p.negative }] += 1;
        }
        let best = votes.iter().enumerate().fold(0, |best, (c, &n)| if n > votes[best] { c } else { best });
        self.classes[best]
    }
}
