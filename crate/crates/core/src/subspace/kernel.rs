use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::LabeledMatrix;
use crate::linalg::squared_distance;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum KernelConfig {
    /// `exp(−γ‖x − y‖²)`
    Rbf { gamma: f64 },
    /// `xᵀy`
    Linear,
}

impl KernelConfig {
    pub fn rbf(gamma: f64) -> Result<Self> {
        if gamma > 0.0 && gamma.is_finite() {
            Ok(KernelConfig::Rbf { gamma })
        } else {
            Err(Error::InvalidConfig(format!("RBF gamma must be positive, got {gamma}")))
        }
    }

    pub fn eval(&self, x: &[f64], y: &[f64]) -> f64 {
        match *self {
            KernelConfig::Rbf { gamma } => (-gamma * squared_distance(x, y)).exp(),
            KernelConfig::Linear => x.iter().zip(y).map(|(a, b)| a * b).sum(),
        }
    }
}

/// `R × R` matrix of squared Euclidean distances between samples.
pub fn squared_distance_matrix(samples: &[Vec<f64>]) -> DMatrix<f64> {
    let r = samples.len();
    let rows: Vec<Vec<f64>> = (0..r)
        .into_par_iter()
        .map(|p| (0..r).map(|q| if q < p { 0.0 } else { squared_distance(&samples[p], &samples[q]) }).collect())
        .collect();
    let mut d = DMatrix::zeros(r, r);
    for p in 0..r {
        for q in p..r {
            d[(p, q)] = rows[p][q];
            d[(q, p)] = rows[p][q];
        }
    }
    d
}

/// RBF Gram matrix from precomputed squared distances, so a grid of `γ`
/// values can share one distance computation.
pub fn gram_from_squared_distances(sq: &DMatrix<f64>, gamma: f64) -> DMatrix<f64> {
    sq.map(|v| (-gamma * v).exp())
}

/// Gram matrix `K_pq = k(v_p, v_q)`.
pub fn gram(data: &LabeledMatrix, kernel: &KernelConfig) -> DMatrix<f64> {
    match *kernel {
        KernelConfig::Rbf { gamma } => {
            gram_from_squared_distances(&squared_distance_matrix(data.samples()), gamma)
        }
        KernelConfig::Linear => {
            let v = data.to_matrix();
            &v * v.transpose()
        }
    }
}

/// `k(V, u)`: kernel values of `u` against every stored sample.
pub fn kernel_vector(samples: &[Vec<f64>], kernel: &KernelConfig, u: &[f64]) -> DVector<f64> {
    DVector::from_iterator(samples.len(), samples.iter().map(|v| kernel.eval(v, u)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::sorted_symmetric_eigen;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_data(r: usize, h: usize, seed: u64) -> LabeledMatrix {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let samples = (0..r).map(|_| (0..h).map(|_| rng.random_range(-2.0..2.0)).collect()).collect();
        LabeledMatrix::new(samples, (0..r).map(|i| i % 2).collect()).unwrap()
    }

    #[test]
    fn rbf_diagonal_is_one_and_symmetric() {
        let data = random_data(15, 4, 1);
        let k = gram(&data, &KernelConfig::Rbf { gamma: 0.3 });
        for p in 0..15 {
            assert_eq!(k[(p, p)], 1.0);
            for q in 0..15 {
                assert_eq!(k[(p, q)], k[(q, p)]);
            }
        }
    }

    #[test]
    fn rbf_direct_evaluation() {
        let k = KernelConfig::Rbf { gamma: 0.5 };
        let v = k.eval(&[0.0, 0.0], &[1.0, 1.0]);
        assert!((v - (-1.0f64).exp()).abs() < 1e-15);
        assert!((v - 0.367879).abs() < 1e-6);
    }

    #[test]
    fn gram_is_positive_semidefinite() {
        for seed in 0..5 {
            let data = random_data(25, 6, seed);
            for kernel in [KernelConfig::Rbf { gamma: 0.1 }, KernelConfig::Rbf { gamma: 2.0 }, KernelConfig::Linear] {
                let k = gram(&data, &kernel);
                let (vals, _) = sorted_symmetric_eigen(&k).unwrap();
                assert!(vals.min() >= -1e-9 * k.trace());
            }
        }
    }

    #[test]
    fn gamma_must_be_positive() {
        assert!(KernelConfig::rbf(0.0).is_err());
        assert!(KernelConfig::rbf(1e-3).is_ok());
    }
}
