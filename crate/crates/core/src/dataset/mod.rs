//! Labeled trajectory collections: manifests, the Auslan sign archive and
//! synthetic curve families.

mod asl;
mod manifest;
mod synth;

use std::collections::{BTreeMap, HashSet};

pub use asl::{import_asl, import_asl_with, sign_name, AslOptions};
pub use manifest::{load_manifest, write_manifest};
pub use synth::{synth_generate, ClassGenerator, CurveFamily, SynthConfig};

use crate::trajectory::RawTrajectory;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    pub trajectory: RawTrajectory,
    /// Index into [`LabeledDataset::class_names`].
    pub label: usize,
    pub source: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LabeledDataset {
    samples: Vec<Sample>,
    class_names: Vec<String>,
}

impl LabeledDataset {
    /// Every label must index `class_names`, every class must be used, and
    /// source ids must be unique.
    pub fn new(samples: Vec<Sample>, class_names: Vec<String>) -> Result<Self> {
        let mut used = vec![false; class_names.len()];
        for s in &samples {
            *used.get_mut(s.label).ok_or_else(|| {
                Error::InvalidConfig(format!("label {} has no class name ({} classes)", s.label, class_names.len()))
            })? = true;
        }
        if let Some(c) = used.iter().position(|u| !u) {
            return Err(Error::InvalidConfig(format!("class `{}` has no samples", class_names[c])));
        }
        let mut seen = HashSet::new();
        if let Some(dup) = samples.iter().find(|s| !seen.insert(s.source.as_str())) {
            return Err(Error::InvalidConfig(format!("duplicate source id `{}`", dup.source)));
        }
        Ok(Self { samples, class_names })
    }

    /// Builds a dataset from `(trajectory, class name, source)` triples;
    /// classes are numbered in sorted name order.
    pub fn from_named(items: Vec<(RawTrajectory, String, String)>) -> Result<Self> {
        let names: BTreeMap<String, usize> = items.iter().map(|(_, n, _)| (n.clone(), 0)).collect();
        let class_names: Vec<String> = names.into_keys().collect();
        let samples = items
            .into_iter()
            .map(|(trajectory, name, source)| Sample {
                label: class_names.binary_search(&name).unwrap(),
                trajectory,
                source,
            })
            .collect();
        Self::new(samples, class_names)
    }

    pub fn samples(&self) -> &[Sample] {
        &self.samples
    }

    pub fn class_names(&self) -> &[String] {
        &self.class_names
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn class_count(&self) -> usize {
        self.class_names.len()
    }

    pub fn labels(&self) -> Vec<usize> {
        self.samples.iter().map(|s| s.label).collect()
    }

    /// Samples per class, in class order.
    pub fn class_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.class_names.len()];
        for s in &self.samples {
            counts[s.label] += 1;
        }
        counts
    }

    /// Keeps the listed classes, relabeled `0..classes.len()` in the given order.
    pub fn select_classes(&self, classes: &[usize]) -> Result<Self> {
        let mut remap = vec![None; self.class_names.len()];
        for (new, &old) in classes.iter().enumerate() {
            let slot = remap
                .get_mut(old)
                .ok_or_else(|| Error::InvalidConfig(format!("class index {old} out of range")))?;
            if slot.replace(new).is_some() {
                return Err(Error::InvalidConfig(format!("class index {old} listed twice")));
            }
        }
        let samples = self
            .samples
            .iter()
            .filter_map(|s| {
                remap[s.label].map(|label| Sample {
                    label,
                    ..s.clone()
                })
            })
            .collect();
        let names = classes.iter().map(|&c| self.class_names[c].clone()).collect();
        Self::new(samples, names)
    }

    /// Keeps the classes with the given names, in the given order.
    pub fn select_names(&self, names: &[&str]) -> Result<Self> {
        let idx = names
            .iter()
            .map(|n| {
                self.class_names
                    .iter()
                    .position(|c| c == n)
                    .ok_or_else(|| Error::InvalidConfig(format!("no class named `{n}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        self.select_classes(&idx)
    }
}
