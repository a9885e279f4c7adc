use super::RawTrajectory;
use crate::{Error, Point3, Result};

/// Total length of the polyline through `points`.
pub fn polyline_length(points: &[Point3]) -> f64 {
    points.windows(2).map(|w| (w[1] - w[0]).norm()).sum()
}

/// Resamples a raw trajectory to `n` points evenly spaced by arc length.
pub fn resample(raw: &RawTrajectory, n: usize) -> Result<Vec<Point3>> {
    resample_points(raw.points(), n)
}

/// Places `n` points along the polyline at arc lengths `k · L / (n − 1)`,
/// `k = 0..n`, where `L` is the total length. The first and last input points
/// are reproduced exactly; zero-length segments are skipped.
pub fn resample_points(points: &[Point3], n: usize) -> Result<Vec<Point3>> {
    if n < 2 {
        return Err(Error::InvalidConfig(format!(
            "resampling needs at least 2 output points, got {n}"
        )));
    }
    if points.len() < 2 {
        return Err(Error::ZeroLength);
    }
    let mut cumulative = Vec::with_capacity(points.len());
    cumulative.push(0.0);
    for w in points.windows(2) {
        let last = *cumulative.last().unwrap();
        cumulative.push(last + (w[1] - w[0]).norm());
    }
    let total = *cumulative.last().unwrap();
    if !(total > 0.0) {
        return Err(Error::ZeroLength);
    }

    let mut out = Vec::with_capacity(n);
    out.push(points[0]);
    let mut seg = 0;
    let last_seg = points.len() - 2;
    for k in 1..n - 1 {
        let target = total * k as f64 / (n - 1) as f64;
        while seg < last_seg && cumulative[seg + 1] < target {
            seg += 1;
        }
        let seg_len = cumulative[seg + 1] - cumulative[seg];
        let q = if seg_len > 0.0 {
            let t = ((target - cumulative[seg]) / seg_len).clamp(0.0, 1.0);
            points[seg] + (points[seg + 1] - points[seg]) * t
        } else {
            points[seg]
        };
        out.push(q);
    }
    out.push(points[points.len() - 1]);
    Ok(out)
}
