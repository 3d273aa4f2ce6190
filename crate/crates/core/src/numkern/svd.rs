//! Singular value decomposition by one-sided (Hestenes) Jacobi rotations.
//!
//! The input is orthogonalized column by column, `W = A V`, until every pair
//! of columns of `W` is numerically orthogonal; the column norms of `W` are
//! then the singular values. Wide inputs are handled through the adjoint.

use super::matrix::{Matrix, C64};
use super::tolerance::ToleranceConfig;
use crate::error::{Error, Result};

/// `input = u * diag(sigma) * vᴴ` with `u` (m×m) and `v` (n×n) unitary and
/// `sigma` nonincreasing of length `min(m, n)`.
#[derive(Clone, Debug)]
pub struct SvdResult {
    pub u: Matrix,
    pub sigma: Vec<f64>,
    pub v: Matrix,
}

impl SvdResult {
    pub fn sigma_max(&self) -> f64 {
        self.sigma.first().copied().unwrap_or(0.0)
    }

    /// Number of singular values above the configured threshold.
    pub fn rank(&self, reference: f64, cfg: &ToleranceConfig) -> usize {
        let thr = cfg.zero_threshold(self.sigma_max(), reference, self.u.rows(), self.v.rows());
        self.sigma.iter().take_while(|&&s| s > thr).count()
    }

    pub fn reconstruct(&self) -> Matrix {
        let (m, n) = (self.u.rows(), self.v.rows());
        let mut out = Matrix::zeros(m, n);
        for (k, &s) in self.sigma.iter().enumerate() {
            for i in 0..m {
                let us = self.u[(i, k)] * s;
                for j in 0..n {
                    out[(i, j)] += us * self.v[(j, k)].conj();
                }
            }
        }
        out
    }
}

pub fn svd(a: &Matrix, _cfg: &ToleranceConfig) -> Result<SvdResult> {
    if !a.is_finite() {
        return Err(Error::NonFinite);
    }
    if a.rows() >= a.cols() {
        jacobi_tall(a)
    } else {
        let t = jacobi_tall(&a.adjoint())?;
        Ok(SvdResult {
            u: t.v,
            sigma: t.sigma,
            v: t.u,
        })
    }
}

fn jacobi_tall(a: &Matrix) -> Result<SvdResult> {
    let (m, n) = a.shape();
    debug_assert!(m >= n);
    let mut w = a.clone();
    let mut v = Matrix::identity(n);
    let max_sweeps = 100 * m.max(n).max(1);
    let tol = f64::EPSILON * (m.max(1) as f64);
    // Columns below this squared norm are rounding residue of a zero column.
    let floor = f64::EPSILON * f64::EPSILON * a.as_slice().iter().map(|z| z.norm_sqr()).sum::<f64>();

    let mut converged = n < 2;
    let mut sweeps = 0;
    while !converged {
        if sweeps == max_sweeps {
            return Err(Error::SvdNoConvergence { sweeps });
        }
        sweeps += 1;
        let mut rotated = false;
        for p in 0..n - 1 {
            for q in p + 1..n {
                let (mut alpha, mut beta, mut gamma) = (0.0, 0.0, C64::new(0.0, 0.0));
                for i in 0..m {
                    let x = w[(i, p)];
                    let y = w[(i, q)];
                    alpha += x.norm_sqr();
                    beta += y.norm_sqr();
                    gamma += x.conj() * y;
                }
                let g = gamma.norm();
                if alpha <= floor || beta <= floor || g <= tol * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let phase = gamma / g;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                rotate(&mut w, p, q, phase, c, s);
                rotate(&mut v, p, q, phase, c, s);
            }
        }
        converged = !rotated;
    }

    let mut norms: Vec<(f64, usize)> = (0..n)
        .map(|j| {
            let s = (0..m).map(|i| w[(i, j)].norm_sqr()).sum::<f64>().sqrt();
            (s, j)
        })
        .collect();
    norms.sort_by(|x, y| y.0.total_cmp(&x.0));

    let sigma: Vec<f64> = norms.iter().map(|&(s, _)| s).collect();
    let v_sorted = Matrix::from_fn(n, n, |i, k| v[(i, norms[k].1)]);

    // Columns whose norm is at rounding level carry no direction information;
    // they are replaced by an orthonormal completion.
    let sigma_max = sigma.first().copied().unwrap_or(0.0);
    let keep_thr = sigma_max * f64::EPSILON * (m.max(1) as f64);
    let mut basis: Vec<Vec<C64>> = Vec::with_capacity(m);
    for &(s, j) in &norms {
        if s > keep_thr && s > 0.0 {
            basis.push((0..m).map(|i| w[(i, j)] / s).collect());
        } else {
            break;
        }
    }
    complete_orthonormal(&mut basis, m);
    let u = Matrix::from_fn(m, m, |i, k| basis[k][i]);

    Ok(SvdResult { u, sigma, v: v_sorted })
}

fn rotate(x: &mut Matrix, p: usize, q: usize, phase: C64, c: f64, s: f64) {
    let back = phase.conj();
    for i in 0..x.rows() {
        let a = x[(i, p)];
        let b = x[(i, q)] * back;
        x[(i, p)] = a * c - b * s;
        x[(i, q)] = a * s + b * c;
    }
}

/// Extends an orthonormal set in `C^m` to a full basis, drawing candidates
/// from the standard basis and keeping the one with the largest residual.
pub(crate) fn complete_orthonormal(basis: &mut Vec<Vec<C64>>, m: usize) {
    let mut used = vec![false; m];
    while basis.len() < m {
        let mut best: Option<(f64, usize, Vec<C64>)> = None;
        for e in 0..m {
            if used[e] {
                continue;
            }
            let mut r = vec![C64::new(0.0, 0.0); m];
            r[e] = C64::new(1.0, 0.0);
            for _ in 0..2 {
                for b in basis.iter() {
                    let proj: C64 = b.iter().zip(&r).map(|(bi, ri)| bi.conj() * ri).sum();
                    for (ri, bi) in r.iter_mut().zip(b) {
                        *ri -= proj * bi;
                    }
                }
            }
            let nr = r.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if best.as_ref().is_none_or(|(bn, _, _)| nr > *bn) {
                best = Some((nr, e, r));
            }
        }
        let (nr, e, r) = best.expect("candidate exists while basis is incomplete");
        used[e] = true;
        basis.push(r.into_iter().map(|z| z / nr).collect());
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    fn unitary_defect(u: &Matrix) -> f64 {
        (&(&u.adjoint() * u) - &Matrix::identity(u.cols())).max_abs()
    }

    #[test]
    fn identity_has_unit_singular_values() {
        let s = svd(&Matrix::identity(3), &cfg()).unwrap();
        assert_eq!(s.sigma, vec![1.0, 1.0, 1.0]);
    }

    #[test]
    fn diagonal_with_zero() {
        let s = svd(&Matrix::diag_real(&[3.0, 0.0]), &cfg()).unwrap();
        assert_eq!(s.sigma, vec![3.0, 0.0]);
        assert!(unitary_defect(&s.u) < 1e-15);
    }

    #[test]
    fn ones_matrix_has_sigma_two_and_zero() {
        // AᴴA = [[2,2],[2,2]] has characteristic polynomial λ² - 4λ, roots 4 and 0.
        let s = svd(&Matrix::from_real_rows(&[[1.0, 1.0], [1.0, 1.0]]), &cfg()).unwrap();
        assert!((s.sigma[0] - 2.0).abs() < 1e-14);
        assert!(s.sigma[1].abs() < 1e-14);
    }

    #[test]
    fn wide_and_tall_reconstruct() {
        let a = Matrix::from_complex_rows(&[
            [C64::new(1.0, 0.5), C64::new(-2.0, 0.0), C64::new(0.0, 3.0)],
            [C64::new(0.0, 0.0), C64::new(1.0, -1.0), C64::new(2.0, 0.0)],
        ]);
        for m in [a.clone(), a.adjoint()] {
            let s = svd(&m, &cfg()).unwrap();
            assert_eq!(s.u.shape(), (m.rows(), m.rows()));
            assert_eq!(s.v.shape(), (m.cols(), m.cols()));
            assert!((&s.reconstruct() - &m).max_abs() < 1e-13);
            assert!(unitary_defect(&s.u) < 1e-13);
            assert!(unitary_defect(&s.v) < 1e-13);
            assert!(s.sigma.windows(2).all(|w| w[0] >= w[1]));
        }
    }

    #[test]
    fn empty_matrices() {
        for (r, c) in [(0, 0), (0, 3), (3, 0)] {
            let s = svd(&Matrix::zeros(r, c), &cfg()).unwrap();
            assert!(s.sigma.is_empty());
            assert_eq!(s.u, Matrix::identity(r));
            assert_eq!(s.v, Matrix::identity(c));
        }
    }

    #[test]
    fn zero_matrix_gets_full_unitary_u() {
        let s = svd(&Matrix::zeros(3, 2), &cfg()).unwrap();
        assert_eq!(s.sigma, vec![0.0, 0.0]);
        assert!(unitary_defect(&s.u) < 1e-15);
    }
}
