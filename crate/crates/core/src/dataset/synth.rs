//! Labeled synthetic trajectories from parametric curve families.

use std::f64::consts::{PI, TAU};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use super::LabeledDataset;
use crate::point_context::{apply_rst, RstRanges};
use crate::trajectory::{normalize, RawTrajectory};
use crate::{Error, Point3, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CurveFamily {
    Helix,
    FigureEight,
    Lissajous,
    ZigZag,
    /// Ellipse-like curves in a plane; exercises degenerate geometry.
    Planar,
    /// Points on a line; exercises degenerate geometry.
    Collinear,
}

impl CurveFamily {
    pub const SPATIAL: [CurveFamily; 4] = [Self::Helix, Self::FigureEight, Self::Lissajous, Self::ZigZag];

    fn name(self) -> &'static str {
        match self {
            Self::Helix => "helix",
            Self::FigureEight => "figure-eight",
            Self::Lissajous => "lissajous",
            Self::ZigZag => "zig-zag",
            Self::Planar => "planar",
            Self::Collinear => "collinear",
        }
    }

    /// Point at parameter `t ∈ [0, 1]` of member `variant`.
    fn point(self, variant: usize, t: f64) -> Point3 {
        let v = variant as f64;
        let u = TAU * t;
        match self {
            Self::Helix => {
                let turns = 1.5 + 0.5 * v;
                Point3::new((turns * u).cos(), (turns * u).sin(), (1.5 + 0.5 * v) * (2.0 * t - 1.0))
            }
            Self::FigureEight => Point3::new(u.sin(), u.sin() * u.cos() * (1.0 + 0.3 * v), 0.6 * (u / 2.0).sin() * (1.0 + 0.4 * v)),
            Self::Lissajous => Point3::new((2.0 * u + 0.5).sin(), ((3.0 + v) * u).sin(), (0.8 * u).cos() * (1.0 + 0.25 * v)),
            Self::ZigZag => {
                let teeth = 3.0 + v;
                let phase = (teeth * t).fract();
                let tri = if phase < 0.5 { 4.0 * phase - 1.0 } else { 3.0 - 4.0 * phase };
                Point3::new(4.0 * t, tri, 1.5 * (PI * t).sin() * (1.0 + 0.3 * v))
            }
            Self::Planar => Point3::new(u.cos(), (0.5 + 0.2 * v) * (u * 0.9).sin(), 0.0),
            Self::Collinear => Point3::new(t.powf(1.0 + v), 0.0, 0.0),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassGenerator {
    pub family: CurveFamily,
    pub variant: usize,
}

impl ClassGenerator {
    pub fn name(&self) -> String {
        format!("{}-{}", self.family.name(), self.variant)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SynthConfig {
    pub generators: Vec<ClassGenerator>,
    pub per_class: usize,
    /// Raw points per sample.
    pub points: usize,
    /// Per-axis Gaussian noise, relative to a unit mean radius.
    pub noise: f64,
    /// Random pose per sample; `None` leaves samples in the canonical frame.
    pub pose: Option<RstRanges>,
    pub seed: u64,
}

impl SynthConfig {
    /// `classes` generators cycling through the four spatial families, with
    /// the variant advancing every full cycle.
    pub fn standard(classes: usize, per_class: usize, noise: f64, seed: u64) -> Self {
        let generators = (0..classes)
            .map(|c| ClassGenerator {
                family: CurveFamily::SPATIAL[c % 4],
                variant: c / 4,
            })
            .collect();
        Self {
            generators,
            per_class,
            points: 120,
            noise,
            pose: Some(RstRanges::default()),
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.generators.is_empty() {
            return Err(Error::InvalidConfig("synthetic dataset needs at least one class".into()));
        }
        if self.per_class < 2 {
            return Err(Error::InvalidConfig(format!("per_class must be at least 2, got {}", self.per_class)));
        }
        if self.points < 2 {
            return Err(Error::InvalidConfig(format!("points must be at least 2, got {}", self.points)));
        }
        if !(self.noise >= 0.0 && self.noise.is_finite()) {
            return Err(Error::InvalidConfig(format!("noise must be finite and non-negative, got {}", self.noise)));
        }
        let mut names: Vec<String> = self.generators.iter().map(ClassGenerator::name).collect();
        names.sort();
        if names.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidConfig("class generators must be distinct".into()));
        }
        if let Some(r) = &self.pose {
            r.validate()?;
        }
        Ok(())
    }
}

/// Generates `per_class` noisy, randomly posed samples for each generator.
/// Deterministic in `cfg.seed`.
pub fn synth_generate(cfg: &SynthConfig) -> Result<LabeledDataset> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let noise = Normal::new(0.0, cfg.noise).map_err(|e| Error::InvalidConfig(e.to_string()))?;
    let mut items = Vec::with_capacity(cfg.generators.len() * cfg.per_class);
    for g in &cfg.generators {
        let curve: Vec<Point3> = (0..cfg.points)
            .map(|k| g.family.point(g.variant, k as f64 / (cfg.points - 1) as f64))
            .collect();
        let canonical = normalize(&curve)?;
        for s in 0..cfg.per_class {
            let points = canonical
                .iter()
                .map(|p| p + Point3::new(noise.sample(&mut rng), noise.sample(&mut rng), noise.sample(&mut rng)))
                .collect();
            let mut raw = RawTrajectory::new(points)?;
            if let Some(ranges) = &cfg.pose {
                raw = apply_rst(&raw, &ranges.sample(&mut rng));
            }
            items.push((raw, g.name(), format!("synth/{}/{s:03}", g.name())));
        }
    }
    LabeledDataset::from_named(items)
}
