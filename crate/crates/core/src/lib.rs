//! RST-invariant recognition of 3D motion trajectories.
//!
//! The pipeline is:
//!
//! 1. [`trajectory`]: resample a raw capture to `n` points evenly spaced by arc
//!    length, smooth it with a Daubechies-4 wavelet, then center it and scale it
//!    to unit mean radius.
//! 2. [`point_context`]: describe the normalized points by Euclidean distances to
//!    a shared table of context points. The descriptor is invariant to rotation,
//!    scale, translation and reflection, and for four or more context points it
//!    determines the shape uniquely ([`point_context::reconstruct`] rebuilds it).
//! 3. [`subspace`]: map descriptors to a low-dimensional discriminative space with
//!    kernel nonparametric discriminant analysis (KNDA).
//! 4. [`classify`]: SVM (SMO), Gaussian naive Bayes or k-NN on the KNDA features,
//!    with stratified cross-validation for kernel parameters.
//!
//! [`dataset`] loads and synthesizes labeled trajectory sets and
//! [`experiment`] drives the context-number sweep and RST benchmarks.

// Negated float comparisons are used deliberately so NaN fails the check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod classify;
pub mod dataset;
mod error;
pub mod experiment;
pub mod linalg;
pub mod point_context;
pub mod subspace;
pub mod trajectory;

pub use error::{Error, Result};
pub use nalgebra::Vector3;

/// A point in 3D Cartesian space.
pub type Point3 = Vector3<f64>;
