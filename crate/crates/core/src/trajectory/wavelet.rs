//! Daubechies-4 wavelet smoothing of coordinate channels.
//!
//! Each channel is extended by its mirror image, `x₀ … xₙ₋₁ xₙ₋₁ … x₀`, and the
//! extended sequence is transformed with a periodic DWT. The mirror keeps the
//! wrap-around continuous, so the ends of an open trajectory are not pulled
//! towards each other.

use serde::{Deserialize, Serialize};

use super::PreprocessConfig;
use crate::Point3;

/// What happens to detail coefficients before reconstruction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DetailRule {
    /// Zero the details of every decomposed level.
    ZeroAll,
    /// Zero only the finest-level details.
    ZeroFinest,
}

/// The 4-tap Daubechies orthogonal filter bank.
#[derive(Debug, Clone, Copy)]
pub struct Db4 {
    low: [f64; 4],
    high: [f64; 4],
}

impl Default for Db4 {
    fn default() -> Self {
        let s3 = 3f64.sqrt();
        let norm = 4.0 * 2f64.sqrt();
        let low = [(1.0 + s3) / norm, (3.0 + s3) / norm, (3.0 - s3) / norm, (1.0 - s3) / norm];
        let high = [low[3], -low[2], low[1], -low[0]];
        Self { low, high }
    }
}

impl Db4 {
    /// One periodic analysis step. `x.len()` must be even.
    pub fn forward(&self, x: &[f64]) -> (Vec<f64>, Vec<f64>) {
        let n = x.len();
        debug_assert!(n.is_multiple_of(2));
        let half = n / 2;
        let mut approx = vec![0.0; half];
        let mut detail = vec![0.0; half];
        for k in 0..half {
            for j in 0..4 {
                let v = x[(2 * k + j) % n];
                approx[k] += self.low[j] * v;
                detail[k] += self.high[j] * v;
            }
        }
        (approx, detail)
    }

    /// Inverse of [`Db4::forward`].
    pub fn inverse(&self, approx: &[f64], detail: &[f64]) -> Vec<f64> {
        let n = 2 * approx.len();
        let mut x = vec![0.0; n];
        for k in 0..approx.len() {
            for j in 0..4 {
                x[(2 * k + j) % n] += self.low[j] * approx[k] + self.high[j] * detail[k];
            }
        }
        x
    }
}

/// Smooths one channel. Decomposition stops early when the working length
/// would become odd or shorter than the filter.
pub fn smooth_channel(x: &[f64], levels: usize, rule: DetailRule) -> Vec<f64> {
    if levels == 0 || x.len() < 2 {
        return x.to_vec();
    }
    let n = x.len();
    let mut approx: Vec<f64> = x.iter().chain(x.iter().rev()).copied().collect();
    let bank = Db4::default();
    let mut details = Vec::new();
    while details.len() < levels && approx.len().is_multiple_of(2) && approx.len() >= 4 {
        let (a, d) = bank.forward(&approx);
        approx = a;
        details.push(d);
    }
    for (level, d) in details.iter_mut().enumerate() {
        let zero = match rule {
            DetailRule::ZeroAll => true,
            DetailRule::ZeroFinest => level == 0,
        };
        if zero {
            d.iter_mut().for_each(|v| *v = 0.0);
        }
    }
    for d in details.iter().rev() {
        approx = bank.inverse(&approx, d);
    }
    approx.truncate(n);
    approx
}

/// Smooths the x, y and z channels independently.
pub fn smooth(points: &[Point3], cfg: &PreprocessConfig) -> Vec<Point3> {
    let channel = |axis: usize| {
        let values: Vec<f64> = points.iter().map(|p| p[axis]).collect();
        smooth_channel(&values, cfg.smooth_levels, cfg.smooth_rule)
    };
    let (xs, ys, zs) = (channel(0), channel(1), channel(2));
    (0..points.len())
        .map(|i| Point3::new(xs[i], ys[i], zs[i]))
        .collect()
}
