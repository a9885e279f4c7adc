//! Independent oracles and generators shared by the integration tests.
#![allow(dead_code)]

use nalgebra::{DMatrix, DVector, Matrix3, Vector3};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use trajctx_core::trajectory::RawTrajectory;
use trajctx_core::Point3;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform points in the unit cube; almost surely in general position.
pub fn random_points(rng: &mut impl Rng, n: usize) -> Vec<Point3> {
    (0..n)
        .map(|_| Point3::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect()
}

/// A smooth random space curve: a random walk whose heading drifts slowly.
pub fn random_curve(rng: &mut impl Rng, samples: usize) -> RawTrajectory {
    let mut p = Point3::zeros();
    let mut dir = Vector3::new(1.0, 0.0, 0.0);
    let mut pts = Vec::with_capacity(samples);
    for _ in 0..samples {
        pts.push(p);
        let turn = Vector3::new(rng.random_range(-0.4..0.4), rng.random_range(-0.4..0.4), rng.random_range(-0.4..0.4));
        dir = (dir + turn).normalize();
        p += dir * rng.random_range(0.05..0.3);
    }
    RawTrajectory::new(pts).unwrap()
}

/// Integrates the Frenet-Serret equations for unit speed with curvature
/// `kappa(s)` and torsion `tau(s)` over `[0, length]`, sampling `samples`
/// points (RK4 on position and frame).
pub fn frenet_curve(kappa: impl Fn(f64) -> f64, tau: impl Fn(f64) -> f64, length: f64, samples: usize) -> Vec<Point3> {
    // State: position, tangent, normal, binormal.
    type State = [Vector3<f64>; 4];
    let deriv = |s: f64, x: &State| -> State {
        let (k, t) = (kappa(s), tau(s));
        [x[1], x[2] * k, -x[1] * k + x[3] * t, -x[2] * t]
    };
    let add = |x: &State, d: &State, h: f64| -> State { [x[0] + d[0] * h, x[1] + d[1] * h, x[2] + d[2] * h, x[3] + d[3] * h] };
    let substeps = 20;
    let h = length / ((samples - 1) * substeps) as f64;
    let mut x: State = [Vector3::zeros(), Vector3::x(), Vector3::y(), Vector3::z()];
    let mut out = vec![x[0]];
    let mut s = 0.0;
    for _ in 1..samples {
        for _ in 0..substeps {
            let k1 = deriv(s, &x);
            let k2 = deriv(s + h / 2.0, &add(&x, &k1, h / 2.0));
            let k3 = deriv(s + h / 2.0, &add(&x, &k2, h / 2.0));
            let k4 = deriv(s + h, &add(&x, &k3, h));
            for i in 0..4 {
                x[i] += (k1[i] + k2[i] * 2.0 + k3[i] * 2.0 + k4[i]) * (h / 6.0);
            }
            s += h;
        }
        out.push(x[0]);
    }
    out
}

/// Canonical correlations between the column spaces of `x` and `y` (rows are
/// observations), in decreasing order.
pub fn canonical_correlations(x: &DMatrix<f64>, y: &DMatrix<f64>) -> Vec<f64> {
    let center = |m: &DMatrix<f64>| {
        let mut c = m.clone();
        for mut col in c.column_iter_mut() {
            let mean = col.mean();
            col.add_scalar_mut(-mean);
        }
        c
    };
    let qx = center(x).qr().q();
    let qy = center(y).qr().q();
    let mut s: Vec<f64> = (qx.transpose() * qy).singular_values().iter().cloned().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

/// Exact maximum of the SVM dual `Σα − ½αᵀQα`, `0 ≤ α ≤ C`, `yᵀα = 0`, by
/// enumerating every assignment of samples to {at 0, at C, free} and solving
/// the stationarity system on the free set. Needs a nonsingular `Q` on the
/// free sets that matter (true for RBF kernels on distinct points).
pub fn brute_force_dual(k: &DMatrix<f64>, y: &[f64], c: f64) -> f64 {
    let n = y.len();
    assert!(n <= 8, "enumeration is exponential");
    let q = DMatrix::from_fn(n, n, |i, j| y[i] * y[j] * k[(i, j)]);
    let objective = |a: &DVector<f64>| a.sum() - 0.5 * (a.transpose() * &q * a)[(0, 0)];
    let mut best = f64::NEG_INFINITY;
    for code in 0..3usize.pow(n as u32) {
        let mut state = vec![0u8; n];
        let mut rest = code;
        for s in state.iter_mut() {
            *s = (rest % 3) as u8;
            rest /= 3;
        }
        let free: Vec<usize> = (0..n).filter(|&i| state[i] == 2).collect();
        let mut alpha = DVector::from_fn(n, |i, _| if state[i] == 1 { c } else { 0.0 });
        if !free.is_empty() {
            // [Q_FF y_F; y_Fᵀ 0] [α_F; ν] = [1 − Q_F,fixed α_fixed; −y_fixedᵀ α_fixed]
            let m = free.len();
            let mut sys = DMatrix::zeros(m + 1, m + 1);
            let mut rhs = DVector::zeros(m + 1);
            for (a, &i) in free.iter().enumerate() {
                for (b, &j) in free.iter().enumerate() {
                    sys[(a, b)] = q[(i, j)];
                }
                sys[(a, m)] = y[i];
                sys[(m, a)] = y[i];
                rhs[a] = 1.0 - (0..n).filter(|j| state[*j] != 2).map(|j| q[(i, j)] * alpha[j]).sum::<f64>();
            }
            rhs[m] = -(0..n).filter(|j| state[*j] != 2).map(|j| y[j] * alpha[j]).sum::<f64>();
            let Some(sol) = sys.lu().solve(&rhs) else { continue };
            for (a, &i) in free.iter().enumerate() {
                alpha[i] = sol[a];
            }
        }
        let feasible = alpha.iter().all(|&a| a >= -1e-12 && a <= c + 1e-12) && alpha.iter().zip(y).map(|(a, y)| a * y).sum::<f64>().abs() < 1e-9;
        if feasible {
            best = best.max(objective(&alpha));
        }
    }
    best
}

/// A proper rotation from Euler angles.
pub fn rotation(a: f64, b: f64, c: f64) -> Matrix3<f64> {
    let rz = |t: f64| Matrix3::new(t.cos(), -t.sin(), 0.0, t.sin(), t.cos(), 0.0, 0.0, 0.0, 1.0);
    let rx = |t: f64| Matrix3::new(1.0, 0.0, 0.0, 0.0, t.cos(), -t.sin(), 0.0, t.sin(), t.cos());
    rz(a) * rx(b) * rz(c)
}

/// Smallest canonical correlation between linear-kernel KNDA features and
/// input-space NDA features on one random instance (R ≤ 20, h ≤ 5).
pub fn kernel_trick_fidelity(seed: u64) -> f64 {
    use trajctx_core::subspace::{knda_fit, nda_fit, KernelConfig, KndaParams, LabeledMatrix};
    let mut r = rng(seed);
    let h = r.random_range(3..=5);
    let classes = r.random_range(2..=4);
    let per = r.random_range(3..=20 / classes);
    let mut samples = Vec::new();
    let mut labels = Vec::new();
    for c in 0..classes {
        let center: Vec<f64> = (0..h).map(|_| r.random_range(-2.0..2.0)).collect();
        for _ in 0..per {
            samples.push(center.iter().map(|m| m + r.random_range(-1.0..1.0)).collect::<Vec<f64>>());
            labels.push(c);
        }
    }
    let data = LabeledMatrix::new(samples, labels).unwrap();
    let l = r.random_range(1..h);
    let knn = r.random_range(2..=per);
    let alpha = 1.0;
    let params = KndaParams {
        knn_count: Some(knn),
        alpha,
        subspace_dim: Some(l),
        retained_variance: 1.0,
        ..KndaParams::new(KernelConfig::Linear)
    };
    let kernel = knda_fit(&data, &params).unwrap();
    let linear = nda_fit(&data, knn, alpha, l).unwrap();
    let rows = data.len();
    let kf = kernel.project_many(data.samples()).unwrap();
    let x = DMatrix::from_fn(rows, l, |i, j| kf[i][j]);
    let y = DMatrix::from_fn(rows, l, |i, j| linear.project(data.sample(i))[j]);
    canonical_correlations(&x, &y).into_iter().fold(f64::INFINITY, f64::min)
}
