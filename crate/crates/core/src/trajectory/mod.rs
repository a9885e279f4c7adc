//! Raw captures and their canonical, comparison-ready form.
//!
//! [`preprocess`] resamples a [`RawTrajectory`] to a fixed number of points
//! evenly spaced by arc length, smooths each coordinate channel with a
//! Daubechies-4 wavelet, and finally centers the points and scales them to unit
//! mean distance from the origin.

mod csv_io;
mod resample;
mod wavelet;

use serde::{Deserialize, Serialize};

pub use csv_io::{parse_trajectory_csv, read_trajectory_csv, write_trajectory_csv};
pub use resample::{polyline_length, resample, resample_points};
pub use wavelet::{smooth, smooth_channel, Db4, DetailRule};

use crate::{Error, Point3, Result};

/// Trajectory points in temporal order, as captured.
#[derive(Debug, Clone, PartialEq)]
pub struct RawTrajectory {
    points: Vec<Point3>,
}

impl RawTrajectory {
    /// Validates and wraps captured points.
    ///
    /// Needs at least two points, all finite, and a polyline of nonzero length.
    pub fn new(points: Vec<Point3>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::InvalidTrajectory(format!(
                "need at least 2 points, got {}",
                points.len()
            )));
        }
        if let Some(i) = points.iter().position(|p| !p.iter().all(|c| c.is_finite())) {
            return Err(Error::InvalidTrajectory(format!("point {i} is not finite")));
        }
        if polyline_length(&points) <= 0.0 {
            return Err(Error::ZeroLength);
        }
        Ok(Self { points })
    }

    pub fn points(&self) -> &[Point3] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn into_points(self) -> Vec<Point3> {
        self.points
    }
}

impl AsRef<[Point3]> for RawTrajectory {
    fn as_ref(&self) -> &[Point3] {
        &self.points
    }
}

/// A preprocessed trajectory: `n` points, centroid at the origin and unit mean
/// radius.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    points: Vec<Point3>,
}

impl Trajectory {
    /// Normalizes arbitrary points into a trajectory.
    pub fn from_points(points: &[Point3]) -> Result<Self> {
        Ok(Self {
            points: normalize(points)?,
        })
    }

    pub fn points(&self) -> &[Point3] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

impl AsRef<[Point3]> for Trajectory {
    fn as_ref(&self) -> &[Point3] {
        &self.points
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PreprocessConfig {
    /// Number of points after resampling.
    pub n: usize,
    /// Wavelet decomposition depth; 0 disables smoothing.
    pub smooth_levels: usize,
    pub smooth_rule: DetailRule,
}

impl Default for PreprocessConfig {
    fn default() -> Self {
        Self {
            n: 60,
            smooth_levels: 2,
            smooth_rule: DetailRule::ZeroAll,
        }
    }
}

impl PreprocessConfig {
    pub fn with_n(n: usize) -> Self {
        Self {
            n,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 5 {
            return Err(Error::InvalidConfig(format!(
                "trajectory length n must be at least 5, got {}",
                self.n
            )));
        }
        Ok(())
    }
}

/// Centroid of a point set.
pub fn centroid(points: &[Point3]) -> Point3 {
    let sum = points.iter().fold(Point3::zeros(), |acc, p| acc + p);
    sum / points.len() as f64
}

/// Translates the centroid to the origin and divides by the mean distance of
/// the points from it.
pub fn normalize(points: &[Point3]) -> Result<Vec<Point3>> {
    if points.is_empty() {
        return Err(Error::DegenerateTrajectory);
    }
    let c = centroid(points);
    let mean_radius = points.iter().map(|p| (p - c).norm()).sum::<f64>() / points.len() as f64;
    if !(mean_radius > 0.0) || !mean_radius.is_finite() {
        return Err(Error::DegenerateTrajectory);
    }
    Ok(points.iter().map(|p| (p - c) / mean_radius).collect())
}

/// Resample, smooth, then normalize.
pub fn preprocess(raw: &RawTrajectory, cfg: &PreprocessConfig) -> Result<Trajectory> {
    cfg.validate()?;
    let resampled = resample(raw, cfg.n)?;
    let smoothed = smooth(&resampled, cfg);
    Trajectory::from_points(&smoothed)
}
