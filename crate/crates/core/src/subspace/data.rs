use nalgebra::DMatrix;

use crate::{Error, Result};

/// Training vectors with class labels.
///
/// Labels are arbitrary ids; internally classes are numbered `0..C` in
/// ascending label order.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledMatrix {
    samples: Vec<Vec<f64>>,
    labels: Vec<usize>,
    classes: Vec<usize>,
    class_of: Vec<usize>,
    members: Vec<Vec<usize>>,
}

impl LabeledMatrix {
    pub fn new(samples: Vec<Vec<f64>>, labels: Vec<usize>) -> Result<Self> {
        if samples.len() != labels.len() {
            return Err(Error::SizeMismatch {
                expected: samples.len(),
                found: labels.len(),
            });
        }
        if samples.len() < 2 {
            return Err(Error::InsufficientSamples {
                class: labels.first().copied().unwrap_or(0),
                count: samples.len(),
                required: 2,
            });
        }
        let dim = samples[0].len();
        if dim == 0 {
            return Err(Error::InvalidConfig("samples have dimension 0".into()));
        }
        if let Some(bad) = samples.iter().find(|s| s.len() != dim) {
            return Err(Error::SizeMismatch {
                expected: dim,
                found: bad.len(),
            });
        }
        if samples.iter().flatten().any(|v| !v.is_finite()) {
            return Err(Error::InvalidConfig("samples contain non-finite values".into()));
        }
        let mut classes = labels.clone();
        classes.sort_unstable();
        classes.dedup();
        let class_of: Vec<usize> = labels
            .iter()
            .map(|l| classes.binary_search(l).unwrap())
            .collect();
        let mut members = vec![Vec::new(); classes.len()];
        for (r, &c) in class_of.iter().enumerate() {
            members[c].push(r);
        }
        for (c, m) in members.iter().enumerate() {
            if m.len() < 2 {
                return Err(Error::InsufficientSamples {
                    class: classes[c],
                    count: m.len(),
                    required: 2,
                });
            }
        }
        Ok(Self {
            samples,
            labels,
            classes,
            class_of,
            members,
        })
    }

    /// Number of samples `R`.
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Sample dimension `h`.
    pub fn dim(&self) -> usize {
        self.samples[0].len()
    }

    /// Number of classes `C`.
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn sample(&self, r: usize) -> &[f64] {
        &self.samples[r]
    }

    pub fn samples(&self) -> &[Vec<f64>] {
        &self.samples
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    /// Distinct labels, ascending.
    pub fn classes(&self) -> &[usize] {
        &self.classes
    }

    /// Class number (`0..C`) of sample `r`.
    pub fn class_of(&self, r: usize) -> usize {
        self.class_of[r]
    }

    /// Sample indices of class number `c`, ascending.
    pub fn members(&self, c: usize) -> &[usize] {
        &self.members[c]
    }

    /// Samples as the rows of an `R × h` matrix.
    pub fn to_matrix(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.len(), self.dim(), |r, j| self.samples[r][j])
    }
}
