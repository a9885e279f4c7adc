//! Versioned JSON archive for fitted subspace models.

use std::fs;
use std::path::Path;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::{KernelConfig, SubspaceModel};
use crate::{Error, Result};

const FORMAT: &str = "trajctx-subspace";
const VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct Matrix {
    rows: usize,
    cols: usize,
    /// Row-major.
    data: Vec<f64>,
}

impl From<&DMatrix<f64>> for Matrix {
    fn from(m: &DMatrix<f64>) -> Self {
        Self {
            rows: m.nrows(),
            cols: m.ncols(),
            data: m.transpose().as_slice().to_vec(),
        }
    }
}

impl Matrix {
    fn into_dmatrix(self, what: &str) -> Result<DMatrix<f64>> {
        if self.data.len() != self.rows * self.cols {
            return Err(Error::Archive(format!("{what}: data length does not match shape")));
        }
        Ok(DMatrix::from_row_slice(self.rows, self.cols, &self.data))
    }
}

#[derive(Serialize, Deserialize)]
struct Archive {
    format: String,
    version: u32,
    kernel: KernelConfig,
    knn_count: usize,
    alpha: f64,
    subspace_dim: usize,
    training_labels: Vec<usize>,
    training_samples: Vec<Vec<f64>>,
    pca_projection: Matrix,
    column_mean: Vec<f64>,
    coefficients: Matrix,
    eigenvalues: Vec<f64>,
}

impl SubspaceModel {
    pub fn to_json(&self) -> String {
        let archive = Archive {
            format: FORMAT.into(),
            version: VERSION,
            kernel: self.kernel,
            knn_count: self.knn_count,
            alpha: self.alpha,
            subspace_dim: self.subspace_dim(),
            training_labels: self.training_labels.clone(),
            training_samples: self.training_samples.clone(),
            pca_projection: (&self.pca_projection).into(),
            column_mean: self.column_mean.as_slice().to_vec(),
            coefficients: (&self.coefficients).into(),
            eigenvalues: self.eigenvalues.as_slice().to_vec(),
        };
        serde_json::to_string(&archive).expect("archive is always serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let a: Archive = serde_json::from_str(text).map_err(|e| Error::Archive(e.to_string()))?;
        if a.format != FORMAT {
            return Err(Error::Archive(format!("unknown format `{}`", a.format)));
        }
        if a.version != VERSION {
            return Err(Error::Archive(format!("unsupported version {}", a.version)));
        }
        let r = a.training_samples.len();
        let model = SubspaceModel {
            pca_projection: a.pca_projection.into_dmatrix("pca_projection")?,
            coefficients: a.coefficients.into_dmatrix("coefficients")?,
            column_mean: DVector::from_vec(a.column_mean),
            eigenvalues: DVector::from_vec(a.eigenvalues),
            training_samples: a.training_samples,
            training_labels: a.training_labels,
            kernel: a.kernel,
            knn_count: a.knn_count,
            alpha: a.alpha,
        };
        let consistent = r > 0
            && model.training_labels.len() == r
            && model.pca_projection.nrows() == r
            && model.column_mean.len() == r
            && model.coefficients.nrows() == model.pca_projection.ncols()
            && model.coefficients.ncols() == a.subspace_dim
            && model.eigenvalues.len() == a.subspace_dim;
        if !consistent {
            return Err(Error::Archive("inconsistent model dimensions".into()));
        }
        Ok(model)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_json())?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| match e.kind() {
            std::io::ErrorKind::NotFound => Error::MissingFile(path.to_path_buf()),
            _ => Error::Io(e),
        })?;
        Self::from_json(&text)
    }
}
