//! Rebuilds a point set from its descriptor, up to an isometry.
//!
//! Points are placed one at a time: the first at the origin, the second on
//! the x-axis, the third in the xy-plane by circle intersection and the fourth
//! by intersecting three spheres (taking the `z ≥ 0` mirror solution). Every
//! later point is trilaterated by linearized least squares from the spheres
//! around its anchors: all earlier points while inside the leading pairwise
//! block, its context points afterwards.

use nalgebra::{DMatrix, DVector, Matrix2};

use super::{pair_index, ContextTable, Descriptor};
use crate::{Error, Point3, Result};

/// Smallest accepted ratio between the extreme singular values of a
/// trilateration system.
pub const CONDITION_THRESHOLD: f64 = 1e-7;

/// Heights whose square is below this fraction of the squared descriptor
/// scale are rounding noise and are set to zero.
const HEIGHT_NOISE: f64 = 1e-12;

pub fn reconstruct(desc: &Descriptor, table: &ContextTable) -> Result<Vec<Point3>> {
    let (n, lambda) = (table.n(), table.lambda());
    if desc.n != n || desc.lambda != lambda || desc.values.len() != table.descriptor_len() {
        return Err(Error::SizeMismatch {
            expected: table.descriptor_len(),
            found: desc.values.len(),
        });
    }
    if lambda < 4 {
        return Err(Error::InvalidConfig(format!(
            "reconstruction needs at least 4 context points, got {lambda}"
        )));
    }
    let d = |i: usize, j: usize| desc.values[pair_index(i, j)];
    let degenerate = |point: usize, reason: &str| Error::DegenerateGeometry {
        point: point + 1,
        reason: reason.to_string(),
    };

    let mut pts = Vec::with_capacity(n);
    pts.push(Point3::zeros());

    let d01 = d(1, 0);
    let scale = desc.values.iter().cloned().fold(0.0, f64::max);
    if !(d01 > 1e-12 * scale) {
        return Err(degenerate(1, "first two points coincide"));
    }
    pts.push(Point3::new(d01, 0.0, 0.0));

    let x2 = (d(2, 0).powi(2) - d(2, 1).powi(2) + d01 * d01) / (2.0 * d01);
    let y2 = height(d(2, 0).powi(2) - x2 * x2, scale);
    pts.push(Point3::new(x2, y2, 0.0));

    // Fourth point: its (x, y) from the planar part of the three spheres.
    let rows = Matrix2::new(pts[1].x, 0.0, pts[2].x, pts[2].y) * 2.0;
    let sv = rows.singular_values();
    if !(sv.min() > CONDITION_THRESHOLD * sv.max()) {
        return Err(degenerate(3, "first three points are collinear"));
    }
    let r0 = d(3, 0).powi(2);
    let rhs = nalgebra::Vector2::new(
        pts[1].norm_squared() - d(3, 1).powi(2) + r0,
        pts[2].norm_squared() - d(3, 2).powi(2) + r0,
    );
    let xy = rows
        .lu()
        .solve(&rhs)
        .ok_or_else(|| degenerate(3, "singular planar system"))?;
    let z3 = height(r0 - xy.norm_squared(), scale);
    pts.push(Point3::new(xy.x, xy.y, z3));

    for m in 4..n {
        let (anchors, dists): (Vec<Point3>, Vec<f64>) = match table.row(m) {
            None => (0..m).map(|j| (pts[j], d(m, j))).unzip(),
            Some(row) => row
                .iter()
                .zip(desc.context(m))
                .map(|(&a, &r)| (pts[a], r))
                .unzip(),
        };
        pts.push(trilaterate(&anchors, &dists).ok_or_else(|| {
            degenerate(m, "anchors are coplanar or collinear, trilateration is rank deficient")
        })?);
    }
    Ok(pts)
}

/// `√h2`, with rounding-level values of `h2` treated as an exact zero.
fn height(h2: f64, scale: f64) -> f64 {
    if h2 <= HEIGHT_NOISE * scale * scale {
        0.0
    } else {
        h2.sqrt()
    }
}

/// Least-squares position from distances to four or more anchors. Returns
/// `None` when the anchors do not span 3D.
fn trilaterate(anchors: &[Point3], dists: &[f64]) -> Option<Point3> {
    let k = anchors.len();
    if k < 4 {
        return None;
    }
    // 2(aⱼ − a₀)·x = ‖aⱼ‖² − ‖a₀‖² − rⱼ² + r₀²
    let a0 = anchors[0];
    let mut a = DMatrix::zeros(k - 1, 3);
    let mut b = DVector::zeros(k - 1);
    for j in 1..k {
        let diff = (anchors[j] - a0) * 2.0;
        a.set_row(j - 1, &diff.transpose());
        b[j - 1] = anchors[j].norm_squared() - a0.norm_squared() - dists[j] * dists[j]
            + dists[0] * dists[0];
    }
    let svd = a.svd(true, true);
    let (lo, hi) = (svd.singular_values.min(), svd.singular_values.max());
    if !(lo > CONDITION_THRESHOLD * hi) {
        return None;
    }
    let x = svd.solve(&b, 0.0).ok()?;
    Some(Point3::new(x[0], x[1], x[2]))
}
