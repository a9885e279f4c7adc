use nalgebra::{DMatrix, DVector};

use super::LabeledMatrix;
use crate::linalg::{generalized_symmetric_eigen, squared_distance};
use crate::{Error, Result};

/// A linear map `u ↦ wᵀu` onto `l` discriminant directions.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearProjection {
    /// `h × l`, one direction per column.
    pub w: DMatrix<f64>,
    /// Generalized eigenvalues of the kept directions, non-increasing.
    pub eigenvalues: DVector<f64>,
}

impl LinearProjection {
    pub fn project(&self, u: &[f64]) -> DVector<f64> {
        self.w.tr_mul(&DVector::from_column_slice(u))
    }
}

fn class_means(data: &LabeledMatrix) -> Vec<DVector<f64>> {
    (0..data.class_count())
        .map(|c| {
            let m = data.members(c);
            let mut mean = DVector::zeros(data.dim());
            for &r in m {
                mean += DVector::from_column_slice(data.sample(r));
            }
            mean / m.len() as f64
        })
        .collect()
}

/// `S_w = 1/R Σ_s Σ_{r∈s} (v_r − μ_s)(v_r − μ_s)ᵀ`.
pub fn within_scatter(data: &LabeledMatrix) -> DMatrix<f64> {
    let means = class_means(data);
    let mut sw = DMatrix::zeros(data.dim(), data.dim());
    for r in 0..data.len() {
        let dev = DVector::from_column_slice(data.sample(r)) - &means[data.class_of(r)];
        sw.ger(1.0, &dev, &dev, 1.0);
    }
    sw / data.len() as f64
}

/// `S_b = 1/R Σ_s (μ_s − μ)(μ_s − μ)ᵀ`.
fn between_scatter(data: &LabeledMatrix) -> DMatrix<f64> {
    let means = class_means(data);
    let mut mu = DVector::zeros(data.dim());
    for r in 0..data.len() {
        mu += DVector::from_column_slice(data.sample(r));
    }
    mu /= data.len() as f64;
    let mut sb = DMatrix::zeros(data.dim(), data.dim());
    for m in &means {
        let dev = m - &mu;
        sb.ger(1.0, &dev, &dev, 1.0);
    }
    sb / data.len() as f64
}

/// Boundary-emphasizing weight `min(d_sᵅ, d_tᵅ) / (d_sᵅ + d_tᵅ)`; `½` when
/// both distances vanish.
pub fn nda_weight(d_own: f64, d_other: f64, alpha: f64) -> f64 {
    let (a, b) = (d_own.powf(alpha), d_other.powf(alpha));
    if a + b > 0.0 {
        a.min(b) / (a + b)
    } else {
        0.5
    }
}

/// Mean of the `k` members of class `c` nearest to sample `r` (the sample
/// itself included when it belongs to `c`); ties go to the lower index.
fn local_mean(data: &LabeledMatrix, r: usize, c: usize, k: usize) -> DVector<f64> {
    let v = data.sample(r);
    let mut cand: Vec<(f64, usize)> = data
        .members(c)
        .iter()
        .map(|&q| (squared_distance(v, data.sample(q)), q))
        .collect();
    cand.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    let k = k.clamp(1, cand.len());
    let mut mean = DVector::zeros(data.dim());
    for &(_, q) in &cand[..k] {
        mean += DVector::from_column_slice(data.sample(q));
    }
    mean / k as f64
}

/// Nonparametric between-class scatter
/// `Ŝ_b = 1/R Σ_s Σ_{t≠s} Σ_{r∈s} w(s,t,r) (v_r − m_t(v_r))(v_r − m_t(v_r))ᵀ`
/// where `m_t(v)` is the mean of the `knn_count` nearest neighbours of `v`
/// in class `t` (clamped to the class size).
pub fn nda_between_scatter(data: &LabeledMatrix, knn_count: usize, alpha: f64) -> DMatrix<f64> {
    let h = data.dim();
    let mut sb = DMatrix::zeros(h, h);
    for r in 0..data.len() {
        let s = data.class_of(r);
        let v = DVector::from_column_slice(data.sample(r));
        let d_own = (&v - local_mean(data, r, s, knn_count)).norm();
        for t in (0..data.class_count()).filter(|&t| t != s) {
            let diff = &v - local_mean(data, r, t, knn_count);
            let w = nda_weight(d_own, diff.norm(), alpha);
            sb.ger(w, &diff, &diff, 1.0);
        }
    }
    sb / data.len() as f64
}

/// Own-class neighbourhoods contain the sample itself, so with `k = 1` every
/// own-class distance is zero and every boundary weight vanishes.
pub(super) fn check_knn(knn_count: usize) -> Result<()> {
    if knn_count < 2 {
        return Err(Error::InvalidConfig(format!(
            "neighbour count must be at least 2 (the own-class neighbourhood includes the sample), got {knn_count}"
        )));
    }
    Ok(())
}

fn regularized(sw: &DMatrix<f64>, fallback_scale: f64) -> DMatrix<f64> {
    let h = sw.nrows();
    let base = if sw.trace() > 0.0 { sw.trace() } else { fallback_scale };
    let eps = (1e-6 * base / h as f64).max(f64::MIN_POSITIVE);
    sw + DMatrix::identity(h, h) * eps
}

/// Fisher LDA: leading eigenvectors of `(S_w + εI)⁻¹ S_b`, `l ≤ C − 1`.
pub fn lda_fit(data: &LabeledMatrix, l: usize) -> Result<LinearProjection> {
    let c = data.class_count();
    if l == 0 || l > c - 1 || l > data.dim() {
        return Err(Error::InvalidConfig(format!(
            "LDA subspace dimension must lie in [1..{}], got {l}",
            (c - 1).min(data.dim())
        )));
    }
    let sw = within_scatter(data);
    let sb = between_scatter(data);
    let total = sw.trace() + sb.trace();
    if !(sb.trace() > 1e-12 * total) {
        return Err(Error::RankDeficient("all class means coincide".into()));
    }
    let (eigenvalues, w) = generalized_symmetric_eigen(&regularized(&sw, sb.trace()), &sb, l)?;
    Ok(LinearProjection { w, eigenvalues })
}

/// Input-space NDA: leading eigenvectors of `(S_w + εI)⁻¹ Ŝ_b`.
pub fn nda_fit(data: &LabeledMatrix, knn_count: usize, alpha: f64, l: usize) -> Result<LinearProjection> {
    if l == 0 || l > data.dim() {
        return Err(Error::InvalidConfig(format!(
            "NDA subspace dimension must lie in [1..{}], got {l}",
            data.dim()
        )));
    }
    check_knn(knn_count)?;
    let sw = within_scatter(data);
    let sb = nda_between_scatter(data, knn_count, alpha);
    if !(sb.trace() > 0.0) {
        return Err(Error::RankDeficient("nonparametric between-class scatter is zero".into()));
    }
    let (eigenvalues, w) = generalized_symmetric_eigen(&regularized(&sw, sb.trace()), &sb, l)?;
    Ok(LinearProjection { w, eigenvalues })
}
