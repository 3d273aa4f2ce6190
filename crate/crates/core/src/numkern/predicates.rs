use serde::{Deserialize, Serialize};

use super::matrix::Matrix;
use super::pinv::{range_projector, rank_ref, row_space_projector};
use super::svd::svd;
use super::tolerance::{PredicateVerdict, ToleranceConfig};
use crate::error::{Error, Result};

fn require_square(a: &Matrix, op: &'static str) -> Result<()> {
    if a.is_square() {
        Ok(())
    } else {
        Err(Error::NotSquare {
            op,
            rows: a.rows(),
            cols: a.cols(),
        })
    }
}

/// Tests `N(X) ⊆ N(Y)` through the residual `Y(I - X†X)`.
pub fn null_space_included(x: &Matrix, y: &Matrix, cfg: &ToleranceConfig) -> Result<PredicateVerdict> {
    if x.cols() != y.cols() {
        return Err(Error::DimensionMismatch {
            op: "null_space_included",
            left: x.shape(),
            right: y.shape(),
        });
    }
    let complement = &Matrix::identity(x.cols()) - &row_space_projector(x, cfg)?;
    let r = (y * &complement).max_abs() / (1.0 + y.max_abs());
    Ok(PredicateVerdict::from_residual(r, cfg))
}

/// Tests `R(X) ⊆ R(Y)` through the residual `(I - YY†)X`.
pub fn range_included(x: &Matrix, y: &Matrix, cfg: &ToleranceConfig) -> Result<PredicateVerdict> {
    if x.rows() != y.rows() {
        return Err(Error::DimensionMismatch {
            op: "range_included",
            left: x.shape(),
            right: y.shape(),
        });
    }
    let complement = &Matrix::identity(y.rows()) - &range_projector(y, cfg)?;
    let r = (&complement * x).max_abs() / (1.0 + x.max_abs());
    Ok(PredicateVerdict::from_residual(r, cfg))
}

/// Range-Hermitian (EP) test: `AA† = A†A`.
pub fn is_range_hermitian(a: &Matrix, cfg: &ToleranceConfig) -> Result<PredicateVerdict> {
    require_square(a, "is_range_hermitian")?;
    let col = range_projector(a, cfg)?;
    let row = row_space_projector(a, cfg)?;
    Ok(PredicateVerdict::from_residual(
        ToleranceConfig::rel_residual(&col, &row),
        cfg,
    ))
}

/// `(A + Aᴴ) / 2`.
pub fn symmetric_part(a: &Matrix) -> Result<Matrix> {
    require_square(a, "symmetric_part")?;
    Ok((a + &a.adjoint()).scale(0.5))
}

/// Rank of `S(A)`, with the zero threshold taken relative to `A` itself so a
/// nearly skew-Hermitian `A` does not promote rounding noise to rank.
pub fn rank_of_symmetric_part(a: &Matrix, cfg: &ToleranceConfig) -> Result<usize> {
    let s = symmetric_part(a)?;
    let reference = svd(a, cfg)?.sigma_max();
    rank_ref(&s, reference, cfg)
}

/// `rank(S(A)) == 1`. The residual is `|rank(S(A)) - 1|`.
pub fn is_almost_skew_hermitian(a: &Matrix, cfg: &ToleranceConfig) -> Result<PredicateVerdict> {
    let r = rank_of_symmetric_part(a, cfg)?;
    Ok(PredicateVerdict {
        holds: r == 1,
        residual: (r as f64 - 1.0).abs(),
    })
}

/// Which of the four Penrose equations a candidate inverse satisfies.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GinverseClass {
    pub satisfies_1: bool,
    pub satisfies_2: bool,
    pub satisfies_3: bool,
    pub satisfies_4: bool,
    /// Relative residuals of `AGA = A`, `GAG = G`, `(AG)ᴴ = AG`, `(GA)ᴴ = GA`.
    pub residuals: [f64; 4],
}

impl GinverseClass {
    /// True when every listed equation (numbered 1 to 4) holds.
    pub fn contains(&self, equations: &[u8]) -> bool {
        equations.iter().all(|&k| match k {
            1 => self.satisfies_1,
            2 => self.satisfies_2,
            3 => self.satisfies_3,
            4 => self.satisfies_4,
            _ => panic!("Penrose equations are numbered 1 to 4"),
        })
    }

    pub fn is_moore_penrose(&self) -> bool {
        self.contains(&[1, 2, 3, 4])
    }
}

pub fn penrose_residuals(a: &Matrix, g: &Matrix) -> Result<[f64; 4]> {
    if g.rows() != a.cols() || g.cols() != a.rows() {
        return Err(Error::DimensionMismatch {
            op: "penrose_residuals",
            left: a.shape(),
            right: g.shape(),
        });
    }
    let ag = a * g;
    let ga = g * a;
    Ok([
        ToleranceConfig::rel_residual(&(&ag * a), a),
        ToleranceConfig::rel_residual(&(&ga * g), g),
        ToleranceConfig::rel_residual(&ag.adjoint(), &ag),
        ToleranceConfig::rel_residual(&ga.adjoint(), &ga),
    ])
}

pub fn classify_ginverse(a: &Matrix, g: &Matrix, cfg: &ToleranceConfig) -> Result<GinverseClass> {
    let r = penrose_residuals(a, g)?;
    Ok(GinverseClass {
        satisfies_1: r[0] <= cfg.eq_tol,
        satisfies_2: r[1] <= cfg.eq_tol,
        satisfies_3: r[2] <= cfg.eq_tol,
        satisfies_4: r[3] <= cfg.eq_tol,
        residuals: r,
    })
}
