//! Point-context shape descriptors.
//!
//! A normalized trajectory `p₁ … pₙ` is described by the Euclidean distances
//! among its first `λ` points, followed, for every later point `pₘ`, by its
//! distances to `λ` earlier context points picked from a [`ContextTable`]
//! shared by every trajectory in a data set. For `λ ≥ 4` and points in general
//! position the descriptor determines the point set up to an isometry, which
//! [`reconstruct`] demonstrates constructively and [`procrustes_residual`]
//! measures.

mod descriptor;
mod procrustes;
mod reconstruct;
mod rst;
mod table;

pub use descriptor::{descriptor, descriptor_len, pair_index, Descriptor};
pub use procrustes::{optimal_orthogonal, procrustes_residual};
pub use reconstruct::{reconstruct, CONDITION_THRESHOLD};
pub use rst::{apply_rst, random_rotation, random_rst, RstParams, RstRanges};
pub use table::{make_context_table, ContextTable};
