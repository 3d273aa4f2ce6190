use super::matrix::Matrix;
use super::svd::{svd, SvdResult};
use super::tolerance::ToleranceConfig;
use crate::error::Result;

/// Moore–Penrose inverse via the SVD, dropping singular values at or below
/// the rank threshold.
pub fn pinv(a: &Matrix, cfg: &ToleranceConfig) -> Result<Matrix> {
    pinv_ref(a, 0.0, cfg)
}

/// [`pinv`] for a matrix computed from terms of magnitude `reference`; the
/// zero threshold is taken relative to `max(sigma_max, reference)` so that
/// cancellation residue is not inverted.
pub fn pinv_ref(a: &Matrix, reference: f64, cfg: &ToleranceConfig) -> Result<Matrix> {
    let s = svd(a, cfg)?;
    Ok(pinv_from_svd(&s, reference, cfg))
}

pub(crate) fn pinv_from_svd(s: &SvdResult, reference: f64, cfg: &ToleranceConfig) -> Matrix {
    let (m, n) = (s.u.rows(), s.v.rows());
    let r = s.rank(reference, cfg);
    let mut out = Matrix::zeros(n, m);
    for k in 0..r {
        let inv = 1.0 / s.sigma[k];
        for i in 0..n {
            let vi = s.v[(i, k)] * inv;
            for j in 0..m {
                out[(i, j)] += vi * s.u[(j, k)].conj();
            }
        }
    }
    out
}

pub fn rank(a: &Matrix, cfg: &ToleranceConfig) -> Result<usize> {
    rank_ref(a, 0.0, cfg)
}

pub fn rank_ref(a: &Matrix, reference: f64, cfg: &ToleranceConfig) -> Result<usize> {
    Ok(svd(a, cfg)?.rank(reference, cfg))
}

/// Orthogonal projector onto `R(A)`, i.e. `AA†`, built from the left
/// singular vectors.
pub fn range_projector(a: &Matrix, cfg: &ToleranceConfig) -> Result<Matrix> {
    let s = svd(a, cfg)?;
    let r = s.rank(0.0, cfg);
    Ok(outer_sum(&s.u, r))
}

/// Orthogonal projector onto `R(Aᴴ)`, i.e. `A†A`.
pub fn row_space_projector(a: &Matrix, cfg: &ToleranceConfig) -> Result<Matrix> {
    let s = svd(a, cfg)?;
    let r = s.rank(0.0, cfg);
    Ok(outer_sum(&s.v, r))
}

/// Orthonormal basis of `N(A)` as columns.
pub fn null_space_basis(a: &Matrix, cfg: &ToleranceConfig) -> Result<Matrix> {
    let s = svd(a, cfg)?;
    let r = s.rank(0.0, cfg);
    let n = a.cols();
    Ok(s.v.submatrix(0, n, r, n))
}

/// Orthonormal basis of `R(Aᴴ)` as columns.
pub fn row_space_basis(a: &Matrix, cfg: &ToleranceConfig) -> Result<Matrix> {
    let s = svd(a, cfg)?;
    let r = s.rank(0.0, cfg);
    Ok(s.v.submatrix(0, a.cols(), 0, r))
}

fn outer_sum(q: &Matrix, r: usize) -> Matrix {
    let n = q.rows();
    let mut p = Matrix::zeros(n, n);
    for k in 0..r {
        for i in 0..n {
            for j in 0..n {
                p[(i, j)] += q[(i, k)] * q[(j, k)].conj();
            }
        }
    }
    p
}
