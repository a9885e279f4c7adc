//! Discriminant subspaces for descriptor vectors.
//!
//! [`lda_fit`] and [`nda_fit`] are the linear baselines. [`knda_fit`] runs
//! nonparametric discriminant analysis in the feature space of a kernel:
//! it computes the Gram matrix, compresses it with kernel PCA, forms the
//! within-class and nonparametric between-class scatters from kernel columns
//! and keeps the leading generalized eigenvectors. [`SubspaceModel::project`]
//! maps any descriptor into the resulting `l`-dimensional feature space.

mod archive;
mod data;
mod kernel;
mod knda;
mod kpca;
mod linear;

pub use data::LabeledMatrix;
pub use kernel::{gram, gram_from_squared_distances, kernel_vector, squared_distance_matrix, KernelConfig};
pub use knda::{default_knn_count, kernel_scatters, knda_fit, KernelScatters, KndaParams, SubspaceModel};
pub use kpca::{kernel_pca, KernelPca};
pub use linear::{
    lda_fit, nda_between_scatter, nda_fit, nda_weight, within_scatter, LinearProjection,
};
