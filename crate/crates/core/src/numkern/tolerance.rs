use serde::{Deserialize, Serialize};

use super::matrix::Matrix;

/// Tolerances behind every floating-point decision in the crate.
///
/// Singular values at or below
/// `rank_tol_rel * max(sigma_max, reference) * max(m, n)` count as zero, where
/// `reference` is the magnitude of whatever the matrix was computed from (zero
/// when the matrix is an input). Two matrices are equal when
/// `max|X - Y| <= eq_tol * (1 + max(max|X|, max|Y|))`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ToleranceConfig {
    pub rank_tol_rel: f64,
    pub eq_tol: f64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self {
            rank_tol_rel: 1e-12,
            eq_tol: 1e-9,
        }
    }
}

impl ToleranceConfig {
    pub fn new(rank_tol_rel: f64, eq_tol: f64) -> Self {
        assert!(rank_tol_rel >= 0.0 && eq_tol >= 0.0, "tolerances must be nonnegative");
        Self { rank_tol_rel, eq_tol }
    }

    pub fn zero_threshold(&self, sigma_max: f64, reference: f64, rows: usize, cols: usize) -> f64 {
        self.rank_tol_rel * sigma_max.max(reference) * rows.max(cols) as f64
    }

    /// Relative max-abs distance between two matrices of the same shape.
    pub fn rel_residual(x: &Matrix, y: &Matrix) -> f64 {
        let scale = 1.0 + x.max_abs().max(y.max_abs());
        (x - y).max_abs() / scale
    }

    pub fn approx_eq(&self, x: &Matrix, y: &Matrix) -> bool {
        x.shape() == y.shape() && Self::rel_residual(x, y) <= self.eq_tol
    }

    /// `residual` measured against operands of magnitude `scale`.
    pub fn negligible(&self, residual: f64, scale: f64) -> bool {
        residual <= self.eq_tol * (1.0 + scale)
    }
}

/// Boolean outcome of a matrix predicate together with the residual that
/// decided it.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PredicateVerdict {
    pub holds: bool,
    /// Relative residual; the predicate holds iff this is `<= eq_tol`.
    pub residual: f64,
}

impl PredicateVerdict {
    pub fn from_residual(residual: f64, cfg: &ToleranceConfig) -> Self {
        Self {
            holds: residual <= cfg.eq_tol,
            residual,
        }
    }

    pub fn and(self, other: PredicateVerdict) -> PredicateVerdict {
        PredicateVerdict {
            holds: self.holds && other.holds,
            residual: self.residual.max(other.residual),
        }
    }
}
