use nalgebra::{Matrix3, Vector3};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::trajectory::RawTrajectory;
use crate::{Error, Point3, Result};

/// A similarity transform `p ↦ t + s·R·p` with `R` a proper rotation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RstParams {
    pub rotation: Matrix3<f64>,
    pub scale: f64,
    pub translation: Vector3<f64>,
}

impl RstParams {
    pub fn identity() -> Self {
        Self {
            rotation: Matrix3::identity(),
            scale: 1.0,
            translation: Vector3::zeros(),
        }
    }

    pub fn apply(&self, p: &Point3) -> Point3 {
        self.translation + self.rotation * p * self.scale
    }
}

/// Ranges random transforms are drawn from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RstRanges {
    pub scale: (f64, f64),
    /// Each translation component is uniform in `[-translation, translation]`.
    pub translation: f64,
}

impl Default for RstRanges {
    fn default() -> Self {
        Self {
            scale: (0.5, 2.0),
            translation: 5.0,
        }
    }
}

impl RstRanges {
    pub fn validate(&self) -> Result<()> {
        let (lo, hi) = self.scale;
        if !(lo > 0.0 && lo <= hi && hi.is_finite()) || !(self.translation >= 0.0) {
            return Err(Error::InvalidConfig(format!("invalid RST ranges {self:?}")));
        }
        Ok(())
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> RstParams {
        let rotation = random_rotation(rng);
        let (lo, hi) = self.scale;
        let scale = if hi > lo { rng.random_range(lo..=hi) } else { lo };
        let tr = self.translation;
        let mut coord = || if tr > 0.0 { rng.random_range(-tr..=tr) } else { 0.0 };
        let translation = Vector3::new(coord(), coord(), coord());
        RstParams {
            rotation,
            scale,
            translation,
        }
    }
}

/// Uniformly random proper rotation: Gram-Schmidt on three Gaussian vectors,
/// with the last axis flipped if needed so that `det R = +1`.
pub fn random_rotation<R: Rng + ?Sized>(rng: &mut R) -> Matrix3<f64> {
    loop {
        let mut g = || {
            Vector3::new(
                rng.sample::<f64, _>(StandardNormal),
                rng.sample::<f64, _>(StandardNormal),
                rng.sample::<f64, _>(StandardNormal),
            )
        };
        let (a, b, c) = (g(), g(), g());
        let e1 = a.normalize();
        let b_perp = b - e1 * e1.dot(&b);
        let c_perp = c - e1 * e1.dot(&c);
        if b_perp.norm() < 1e-6 {
            continue;
        }
        let e2 = b_perp.normalize();
        let c_perp = c_perp - e2 * e2.dot(&c_perp);
        if c_perp.norm() < 1e-6 {
            continue;
        }
        let mut e3 = c_perp.normalize();
        let m = Matrix3::from_columns(&[e1, e2, e3]);
        if m.determinant() < 0.0 {
            e3 = -e3;
        }
        return Matrix3::from_columns(&[e1, e2, e3]);
    }
}

/// Draws a random transform, deterministic in `seed`.
pub fn random_rst(seed: u64, scale_range: (f64, f64), translation_range: f64) -> Result<RstParams> {
    let ranges = RstRanges {
        scale: scale_range,
        translation: translation_range,
    };
    ranges.validate()?;
    Ok(ranges.sample(&mut ChaCha8Rng::seed_from_u64(seed)))
}

/// Maps every point by `t + s·R·p`.
pub fn apply_rst(raw: &RawTrajectory, params: &RstParams) -> RawTrajectory {
    let points = raw.points().iter().map(|p| params.apply(p)).collect();
    RawTrajectory::new(points).expect("a similarity transform preserves validity")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn raw(seed: u64) -> RawTrajectory {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        RawTrajectory::new(
            (0..12)
                .map(|_| Point3::new(rng.random(), rng.random(), rng.random()))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn rotations_are_proper_and_orthogonal() {
        for seed in 0..200 {
            let p = random_rst(seed, (0.5, 2.0), 5.0).unwrap();
            let r = p.rotation;
            assert!((r * r.transpose() - Matrix3::identity()).norm() <= 1e-9);
            assert!((r.determinant() - 1.0).abs() <= 1e-9);
            assert!((0.5..=2.0).contains(&p.scale));
            assert!(p.translation.iter().all(|t| t.abs() <= 5.0));
        }
    }

    #[test]
    fn unit_scale_and_zero_translation_is_pure_rotation() {
        let p = random_rst(4, (1.0, 1.0), 0.0).unwrap();
        assert_eq!(p.scale, 1.0);
        assert_eq!(p.translation, Vector3::zeros());
    }

    #[test]
    fn scale_mean_within_three_sigma() {
        let (lo, hi) = (0.5, 2.0);
        let ranges = RstRanges { scale: (lo, hi), translation: 1.0 };
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let count = 10_000;
        let mean = (0..count).map(|_| ranges.sample(&mut rng).scale).sum::<f64>() / count as f64;
        let sigma = (hi - lo) / 12f64.sqrt() / (count as f64).sqrt();
        assert!((mean - (lo + hi) / 2.0).abs() < 3.0 * sigma, "mean {mean}");
    }

    #[test]
    fn identity_leaves_points_unchanged() {
        let r = raw(1);
        assert_eq!(apply_rst(&r, &RstParams::identity()), r);
    }

    #[test]
    fn quarter_turn_about_z() {
        let params = RstParams {
            rotation: Matrix3::new(0.0, -1.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 1.0),
            scale: 1.0,
            translation: Vector3::zeros(),
        };
        assert_eq!(params.apply(&Point3::new(1.0, 0.0, 0.0)), Point3::new(0.0, 1.0, 0.0));
    }

    #[test]
    fn distances_scale_by_s() {
        for seed in 0..20 {
            let r = raw(seed);
            let p = random_rst(seed + 100, (0.1, 10.0), 50.0).unwrap();
            let t = apply_rst(&r, &p);
            for i in 0..r.len() {
                for j in 0..i {
                    let d0 = (r.points()[i] - r.points()[j]).norm();
                    let d1 = (t.points()[i] - t.points()[j]).norm();
                    assert!((d1 - p.scale * d0).abs() <= 1e-9 * (1.0 + d1));
                }
            }
        }
    }

    #[test]
    fn invalid_ranges_are_rejected() {
        assert!(random_rst(0, (0.0, 1.0), 1.0).is_err());
        assert!(random_rst(0, (2.0, 1.0), 1.0).is_err());
    }
}
