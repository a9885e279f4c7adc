use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{gram, kernel_pca, kernel_vector, nda_weight, KernelConfig, LabeledMatrix};
use crate::linalg::generalized_symmetric_eigen;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KndaParams {
    pub kernel: KernelConfig,
    /// Neighbours per local mean; `None` uses the median class size.
    pub knn_count: Option<usize>,
    /// Exponent of the boundary weight.
    pub alpha: f64,
    /// Output dimension `l`; `None` uses the class count.
    pub subspace_dim: Option<usize>,
    /// Fraction of centered-Gram eigenvalue mass kept by kernel PCA.
    pub retained_variance: f64,
}

impl KndaParams {
    pub fn new(kernel: KernelConfig) -> Self {
        Self {
            kernel,
            knn_count: None,
            alpha: 1.0,
            subspace_dim: None,
            retained_variance: 0.99,
        }
    }
}

/// Median of the per-class sample counts (lower median for an even count).
pub fn default_knn_count(data: &LabeledMatrix) -> usize {
    let mut sizes: Vec<usize> = (0..data.class_count()).map(|c| data.members(c).len()).collect();
    sizes.sort_unstable();
    sizes[(sizes.len() - 1) / 2]
}

/// Kernel-space scatter matrices in the span of the training samples.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelScatters {
    /// `Σ_s K_s (I − 1/N_s) K_sᵀ`
    pub within: DMatrix<f64>,
    /// Weighted sum of `(K_sr − k-NN mean column)(…)ᵀ` over `(s, t ≠ s, r)`,
    /// divided by `R`.
    pub between: DMatrix<f64>,
}

/// Vectors whose outer products make up the two scatters: the class-centered
/// Gram columns, and the weighted differences between each Gram column and
/// the mean of its nearest-neighbour columns in every other class.
struct ScatterTerms {
    within: Vec<DVector<f64>>,
    between: Vec<(f64, DVector<f64>)>,
}

fn kernel_neighbour_mean(k: &DMatrix<f64>, r: usize, class: &[usize], knn: usize) -> (DVector<f64>, f64) {
    // d²(x, y) = k(x,x) − 2k(x,y) + k(y,y)
    let mut cand: Vec<(f64, usize)> = class
        .iter()
        .map(|&q| (k[(r, r)] - 2.0 * k[(r, q)] + k[(q, q)], q))
        .collect();
    cand.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    let nn: Vec<usize> = cand.iter().take(knn.clamp(1, cand.len())).map(|&(_, q)| q).collect();
    let inv = 1.0 / nn.len() as f64;
    let mut mean = DVector::zeros(k.nrows());
    for &q in &nn {
        mean += k.column(q);
    }
    mean *= inv;
    // ‖φ(v) − mean φ(nn)‖²
    let cross: f64 = nn.iter().map(|&q| k[(r, q)]).sum::<f64>() * inv;
    let inner: f64 = nn.iter().flat_map(|&a| nn.iter().map(move |&b| k[(a, b)])).sum::<f64>() * inv * inv;
    let dist = (k[(r, r)] - 2.0 * cross + inner).max(0.0).sqrt();
    (mean, dist)
}

fn scatter_terms(k: &DMatrix<f64>, data: &LabeledMatrix, knn: usize, alpha: f64) -> ScatterTerms {
    let c = data.class_count();
    let mut within = Vec::with_capacity(data.len());
    for s in 0..c {
        let members = data.members(s);
        let mut mean = DVector::zeros(k.nrows());
        for &r in members {
            mean += k.column(r);
        }
        mean /= members.len() as f64;
        within.extend(members.iter().map(|&r| k.column(r) - &mean));
    }
    let between: Vec<(f64, DVector<f64>)> = (0..data.len())
        .into_par_iter()
        .flat_map_iter(|r| {
            let s = data.class_of(r);
            let (_, d_own) = kernel_neighbour_mean(k, r, data.members(s), knn);
            (0..c).filter(move |&t| t != s).map(move |t| {
                let (mean, d_other) = kernel_neighbour_mean(k, r, data.members(t), knn);
                (nda_weight(d_own, d_other, alpha), k.column(r) - mean)
            })
        })
        .collect();
    ScatterTerms { within, between }
}

fn accumulate(dim: usize, terms: impl Iterator<Item = (f64, DVector<f64>)>) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(dim, dim);
    for (w, v) in terms {
        m.ger(w, &v, &v, 1.0);
    }
    m
}

/// Full `R × R` scatter matrices of the kernel discriminant problem.
pub fn kernel_scatters(k: &DMatrix<f64>, data: &LabeledMatrix, knn_count: usize, alpha: f64) -> KernelScatters {
    let r = k.nrows();
    let terms = scatter_terms(k, data, knn_count, alpha);
    let within = accumulate(r, terms.within.into_iter().map(|v| (1.0, v)));
    let between = accumulate(r, terms.between.into_iter()) / data.len() as f64;
    KernelScatters { within, between }
}

/// A fitted KNDA subspace.
#[derive(Debug, Clone, PartialEq)]
pub struct SubspaceModel {
    pub(super) training_samples: Vec<Vec<f64>>,
    pub(super) training_labels: Vec<usize>,
    pub(super) kernel: KernelConfig,
    pub(super) pca_projection: DMatrix<f64>,
    pub(super) column_mean: DVector<f64>,
    pub(super) coefficients: DMatrix<f64>,
    pub(super) eigenvalues: DVector<f64>,
    pub(super) knn_count: usize,
    pub(super) alpha: f64,
}

/// Fits KNDA on `data`.
pub fn knda_fit(data: &LabeledMatrix, params: &KndaParams) -> Result<SubspaceModel> {
    let c = data.class_count();
    let l = params.subspace_dim.unwrap_or(c);
    let knn = params.knn_count.unwrap_or_else(|| default_knn_count(data));
    if l == 0 {
        return Err(Error::InvalidConfig("subspace dimension must be positive".into()));
    }
    super::linear::check_knn(knn)?;
    if !(params.alpha >= 0.0) {
        return Err(Error::InvalidConfig(format!("alpha must be non-negative, got {}", params.alpha)));
    }
    if let KernelConfig::Rbf { gamma } = params.kernel {
        KernelConfig::rbf(gamma)?;
    }

    let k = gram(data, &params.kernel);
    let pca = kernel_pca(&k, params.retained_variance, c.max(l))?;
    let d = pca.dim();
    if l > d {
        return Err(Error::InvalidConfig(format!(
            "subspace dimension {l} exceeds the kernel PCA dimension {d}"
        )));
    }

    // Both scatters only ever enter through Pᵀ(·)P, so project the terms first.
    let terms = scatter_terms(&k, data, knn, params.alpha);
    let p = &pca.projection;
    let a_pca = accumulate(d, terms.within.iter().map(|v| (1.0, p.tr_mul(v))));
    let b_pca = accumulate(d, terms.between.iter().map(|(w, v)| (*w, p.tr_mul(v)))) / data.len() as f64;
    if !(b_pca.trace() > 0.0) {
        return Err(Error::RankDeficient("kernel between-class scatter is zero".into()));
    }
    let eps = {
        let base = if a_pca.trace() > 0.0 { a_pca.trace() } else { b_pca.trace() };
        (1e-6 * base / d as f64).max(f64::MIN_POSITIVE)
    };
    let a_reg = a_pca + DMatrix::identity(d, d) * eps;
    let (eigenvalues, mut coefficients) = generalized_symmetric_eigen(&a_reg, &b_pca, l)?;
    // Orient each direction by its expansion over the training samples, which
    // unlike the PCA coordinates does not depend on eigenvector signs.
    let expansion = &pca.projection * &coefficients;
    for (j, col) in expansion.column_iter().enumerate() {
        let lead = col.iter().cloned().fold(0.0_f64, |m, v| if v.abs() > m.abs() { v } else { m });
        if lead < 0.0 {
            coefficients.column_mut(j).neg_mut();
        }
    }

    Ok(SubspaceModel {
        training_samples: data.samples().to_vec(),
        training_labels: data.labels().to_vec(),
        kernel: params.kernel,
        pca_projection: pca.projection,
        column_mean: pca.column_mean,
        coefficients,
        eigenvalues,
        knn_count: knn,
        alpha: params.alpha,
    })
}

impl SubspaceModel {
    /// Feature vector `aᵀ Pᵀ (k(V, u) − k̄)`.
    pub fn project(&self, u: &[f64]) -> Result<DVector<f64>> {
        if u.len() != self.input_dim() {
            return Err(Error::SizeMismatch {
                expected: self.input_dim(),
                found: u.len(),
            });
        }
        let kv = kernel_vector(&self.training_samples, &self.kernel, u);
        Ok(self.project_kernel_vector(&kv))
    }

    /// Projects a precomputed kernel vector `k(V, u)`.
    pub fn project_kernel_vector(&self, kv: &DVector<f64>) -> DVector<f64> {
        let z = self.pca_projection.tr_mul(&(kv - &self.column_mean));
        self.coefficients.tr_mul(&z)
    }

    pub fn project_many(&self, us: &[Vec<f64>]) -> Result<Vec<DVector<f64>>> {
        us.par_iter().map(|u| self.project(u)).collect()
    }

    pub fn input_dim(&self) -> usize {
        self.training_samples[0].len()
    }

    pub fn subspace_dim(&self) -> usize {
        self.coefficients.ncols()
    }

    pub fn pca_dim(&self) -> usize {
        self.pca_projection.ncols()
    }

    pub fn kernel(&self) -> KernelConfig {
        self.kernel
    }

    pub fn knn_count(&self) -> usize {
        self.knn_count
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn eigenvalues(&self) -> &DVector<f64> {
        &self.eigenvalues
    }

    pub fn coefficients(&self) -> &DMatrix<f64> {
        &self.coefficients
    }

    pub fn pca_projection(&self) -> &DMatrix<f64> {
        &self.pca_projection
    }

    pub fn training_samples(&self) -> &[Vec<f64>] {
        &self.training_samples
    }

    pub fn training_labels(&self) -> &[usize] {
        &self.training_labels
    }
}
