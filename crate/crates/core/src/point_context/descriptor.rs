use serde::{Deserialize, Serialize};

use super::ContextTable;
use crate::{Error, Point3, Result};

/// Flattened point-context descriptor.
///
/// Layout: the `λ(λ−1)/2` pairwise distances among the first `λ` points,
/// ordered by `i` ascending then `j < i` ascending, followed by each later
/// point's distances to its context points in table-row order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Descriptor {
    pub values: Vec<f64>,
    pub n: usize,
    pub lambda: usize,
}

impl Descriptor {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Distance between points `i` and `j` (0-based, both `< λ`).
    pub fn pair(&self, i: usize, j: usize) -> f64 {
        self.values[pair_index(i, j)]
    }

    /// Distances from point `m ≥ λ` to its context points.
    pub fn context(&self, m: usize) -> &[f64] {
        let start = pair_index(self.lambda, 0) + (m - self.lambda) * self.lambda;
        &self.values[start..start + self.lambda]
    }
}

/// `λ(λ−1)/2 + (n−λ)λ`, which is `n(n−1)/2` for `λ = n`.
pub fn descriptor_len(n: usize, lambda: usize) -> usize {
    lambda * lambda.saturating_sub(1) / 2 + (n - lambda) * lambda
}

/// Position of the pair `{i, j}` inside the leading pairwise block.
pub fn pair_index(i: usize, j: usize) -> usize {
    let (hi, lo) = if i > j { (i, j) } else { (j, i) };
    debug_assert!(hi != lo);
    hi * (hi - 1) / 2 + lo
}

/// Computes the descriptor of `points` under `table`.
pub fn descriptor(points: &[Point3], table: &ContextTable) -> Result<Descriptor> {
    let n = table.n();
    if points.len() != n {
        return Err(Error::SizeMismatch {
            expected: n,
            found: points.len(),
        });
    }
    let lambda = table.lambda();
    let mut values = Vec::with_capacity(descriptor_len(n, lambda));
    for i in 1..lambda {
        for j in 0..i {
            values.push((points[i] - points[j]).norm());
        }
    }
    for (m, row) in (lambda..n).zip(table.rows()) {
        values.extend(row.iter().map(|&a| (points[m] - points[a]).norm()));
    }
    Ok(Descriptor { values, n, lambda })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::point_context::make_context_table;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_points(n: usize, seed: u64) -> Vec<Point3> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..n)
            .map(|_| Point3::new(rng.random(), rng.random(), rng.random()))
            .collect()
    }

    #[test]
    fn unit_square_full_descriptor() {
        let sq = [
            Point3::new(0., 0., 0.),
            Point3::new(1., 0., 0.),
            Point3::new(1., 1., 0.),
            Point3::new(0., 1., 0.),
        ];
        let t = make_context_table(4, 4, 0).unwrap();
        let d = descriptor(&sq, &t).unwrap();
        let r2 = 2f64.sqrt();
        let expected = [1.0, r2, 1.0, 1.0, r2, 1.0];
        assert_eq!(d.len(), 6);
        for (a, b) in d.values.iter().zip(expected) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn emitted_length_for_n60_lambda25() {
        let t = make_context_table(60, 25, 1).unwrap();
        let d = descriptor(&random_points(60, 2), &t).unwrap();
        let emitted = d.values.len();
        assert_eq!(emitted, 1175);
        assert_eq!(descriptor_len(60, 25), 1175);
    }

    #[test]
    fn full_lambda_equals_brute_force_pairwise() {
        let pts = random_points(60, 3);
        let t = make_context_table(60, 60, 0).unwrap();
        let d = descriptor(&pts, &t).unwrap();
        let mut brute = Vec::new();
        for i in 0..60 {
            for j in 0..i {
                let diff = pts[i] - pts[j];
                brute.push((diff.x * diff.x + diff.y * diff.y + diff.z * diff.z).sqrt());
            }
        }
        assert_eq!(brute.len(), 1770);
        for (a, b) in d.values.iter().zip(&brute) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn context_block_accessors() {
        let pts = random_points(9, 4);
        let t = make_context_table(9, 4, 5).unwrap();
        let d = descriptor(&pts, &t).unwrap();
        for m in 4..9 {
            let row = t.row(m).unwrap();
            for (k, &a) in row.iter().enumerate() {
                assert_eq!(d.context(m)[k], (pts[m] - pts[a]).norm());
            }
        }
        assert_eq!(d.pair(3, 1), (pts[3] - pts[1]).norm());
    }

    #[test]
    fn size_mismatch_is_reported() {
        let t = make_context_table(10, 4, 0).unwrap();
        assert!(matches!(
            descriptor(&random_points(9, 0), &t),
            Err(Error::SizeMismatch { expected: 10, found: 9 })
        ));
    }
}
