//! Small dense linear-algebra helpers shared by the discriminant-analysis code.

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::{Error, Result};

const EIGEN_EPS: f64 = 1e-14;
const EIGEN_MAX_ITER: usize = 10_000;

/// Eigen-decomposition of a symmetric matrix with eigenvalues sorted in
/// non-increasing order. Column `i` of the returned matrix pairs with value `i`.
pub fn sorted_symmetric_eigen(m: &DMatrix<f64>) -> Result<(DVector<f64>, DMatrix<f64>)> {
    let sym = symmetrize(m);
    let eig = SymmetricEigen::try_new(sym, EIGEN_EPS, EIGEN_MAX_ITER).ok_or_else(|| {
        Error::NumericalFailure("symmetric eigen-decomposition did not converge".into())
    })?;
    let n = eig.eigenvalues.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]).then(a.cmp(&b)));
    let values = DVector::from_iterator(n, order.iter().map(|&i| eig.eigenvalues[i]));
    let mut vectors = DMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &eig.eigenvectors.column(src));
    }
    Ok((values, vectors))
}

/// `(m + mᵀ) / 2`.
pub fn symmetrize(m: &DMatrix<f64>) -> DMatrix<f64> {
    (m + m.transpose()) * 0.5
}

/// Flips each column so that its largest-magnitude entry is positive.
pub fn fix_column_signs(m: &mut DMatrix<f64>) {
    for mut col in m.column_iter_mut() {
        let mut best = 0.0_f64;
        let mut best_abs = -1.0_f64;
        for &v in col.iter() {
            if v.abs() > best_abs {
                best_abs = v.abs();
                best = v;
            }
        }
        if best < 0.0 {
            col.neg_mut();
        }
    }
}

/// Leading `l` solutions of the generalized symmetric problem `B x = μ A x`
/// for symmetric positive definite `a`, by whitening with the Cholesky factor
/// of `a`. Returns `(values, vectors)` with values non-increasing and clamped
/// at zero from below within `1e-9` of the largest value.
pub fn generalized_symmetric_eigen(
    a: &DMatrix<f64>,
    b: &DMatrix<f64>,
    l: usize,
) -> Result<(DVector<f64>, DMatrix<f64>)> {
    let n = a.nrows();
    if l == 0 || l > n {
        return Err(Error::InvalidConfig(format!(
            "requested {l} eigenvectors of a {n}x{n} problem"
        )));
    }
    let chol = symmetrize(a).cholesky().ok_or_else(|| {
        Error::NumericalFailure("regularized scatter matrix is not positive definite".into())
    })?;
    let lower = chol.l();
    // C = L⁻¹ B L⁻ᵀ
    let linv_b = lower
        .solve_lower_triangular(b)
        .ok_or_else(|| Error::NumericalFailure("singular Cholesky factor".into()))?;
    let c = lower
        .solve_lower_triangular(&linv_b.transpose())
        .ok_or_else(|| Error::NumericalFailure("singular Cholesky factor".into()))?;
    let (values, vectors) = sorted_symmetric_eigen(&c)?;
    let top = vectors.columns(0, l).into_owned();
    // x = L⁻ᵀ q
    let mut x = lower
        .transpose()
        .solve_upper_triangular(&top)
        .ok_or_else(|| Error::NumericalFailure("singular Cholesky factor".into()))?;
    fix_column_signs(&mut x);
    let scale = values[0].abs().max(f64::MIN_POSITIVE);
    let kept = DVector::from_iterator(
        l,
        values.iter().take(l).map(|&v| if v < 0.0 && v > -1e-9 * scale { 0.0 } else { v }),
    );
    Ok((kept, x))
}

/// Squared Euclidean distance between two equally long slices.
pub fn squared_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}
