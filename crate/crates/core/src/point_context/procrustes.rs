use nalgebra::Matrix3;

use crate::trajectory::centroid;
use crate::{Error, Point3, Result};

/// Orthogonal `Q` (rotation or reflection) minimizing `Σ‖aᵢ − Q·bᵢ‖²` for
/// centered inputs.
pub fn optimal_orthogonal(a: &[Point3], b: &[Point3]) -> Matrix3<f64> {
    let h = b
        .iter()
        .zip(a)
        .fold(Matrix3::zeros(), |acc, (bi, ai)| acc + bi * ai.transpose());
    let svd = h.svd(true, true);
    let u = svd.u.expect("requested U");
    let v_t = svd.v_t.expect("requested Vᵀ");
    v_t.transpose() * u.transpose()
}

/// Root-mean-square distance between `a` and the best isometric image
/// `Q·b + c` of `b`, over orthogonal `Q` and translations `c`.
pub fn procrustes_residual(a: &[Point3], b: &[Point3]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::SizeMismatch {
            expected: a.len(),
            found: b.len(),
        });
    }
    if a.is_empty() {
        return Ok(0.0);
    }
    let (ca, cb) = (centroid(a), centroid(b));
    let a: Vec<Point3> = a.iter().map(|p| p - ca).collect();
    let b: Vec<Point3> = b.iter().map(|p| p - cb).collect();
    let q = optimal_orthogonal(&a, &b);
    let sq: f64 = a.iter().zip(&b).map(|(ai, bi)| (ai - q * bi).norm_squared()).sum();
    Ok((sq / a.len() as f64).sqrt())
}
