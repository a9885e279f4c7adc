use nalgebra::{DMatrix, DVector};

use crate::linalg::{sorted_symmetric_eigen, symmetrize};
use crate::{Error, Result};

/// Relative eigenvalue size below which a direction of the centered Gram
/// matrix counts as null.
const RANK_TOLERANCE: f64 = 1e-10;

/// Kernel PCA basis of a Gram matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelPca {
    /// `R × d`; column `i` is the `i`-th eigenvector of the centered Gram
    /// matrix divided by the square root of its eigenvalue.
    pub projection: DMatrix<f64>,
    /// Retained eigenvalues, non-increasing.
    pub eigenvalues: DVector<f64>,
    /// Mean Gram column `K·1/R`, subtracted from kernel vectors before
    /// projecting.
    pub column_mean: DVector<f64>,
    /// Numerical rank of the centered Gram matrix.
    pub rank: usize,
}

impl KernelPca {
    pub fn dim(&self) -> usize {
        self.projection.ncols()
    }

    /// Coordinates `Pᵀ(k − k̄)` of a kernel vector.
    pub fn coordinates(&self, kernel_vector: &DVector<f64>) -> DVector<f64> {
        self.projection.tr_mul(&(kernel_vector - &self.column_mean))
    }
}

/// Double-centers `k`, eigen-decomposes it and keeps the fewest leading
/// directions whose eigenvalues reach `retained_variance` of the total, but
/// at least `min_dim` of them (as far as the rank allows).
pub fn kernel_pca(k: &DMatrix<f64>, retained_variance: f64, min_dim: usize) -> Result<KernelPca> {
    let r = k.nrows();
    if k.ncols() != r {
        return Err(Error::SizeMismatch {
            expected: r,
            found: k.ncols(),
        });
    }
    if !(retained_variance > 0.0 && retained_variance <= 1.0) {
        return Err(Error::InvalidConfig(format!(
            "retained variance must lie in (0, 1], got {retained_variance}"
        )));
    }
    let column_mean = k.column_mean();
    let row_mean = k.row_mean();
    let grand = column_mean.mean();
    let centered = DMatrix::from_fn(r, r, |p, q| k[(p, q)] - column_mean[p] - row_mean[q] + grand);
    let (values, vectors) = sorted_symmetric_eigen(&symmetrize(&centered))?;

    let top = values.iter().cloned().fold(0.0, f64::max);
    let rank = values.iter().filter(|&&v| v > RANK_TOLERANCE * top).count();
    if rank == 0 {
        return Err(Error::RankDeficient("centered Gram matrix is zero".into()));
    }
    let total: f64 = values.iter().take(rank).sum();
    let target = retained_variance * total * (1.0 - 1e-12);
    let mut d = rank;
    let mut acc = 0.0;
    for (i, v) in values.iter().take(rank).enumerate() {
        acc += v;
        if acc >= target {
            d = i + 1;
            break;
        }
    }
    let d = d.max(min_dim).min(rank);

    let mut projection = vectors.columns(0, d).into_owned();
    for (i, mut col) in projection.column_iter_mut().enumerate() {
        col /= values[i].sqrt();
    }
    Ok(KernelPca {
        projection,
        eigenvalues: values.rows(0, d).into_owned(),
        column_mean,
        rank,
    })
}
