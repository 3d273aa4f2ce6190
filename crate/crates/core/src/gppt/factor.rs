use super::partition::PartitionedMatrix;
use super::transform::{gppt_a, gppt_d};
use crate::error::Result;
use crate::numkern::{classify_ginverse, pinv, GinverseClass, Matrix, PredicateVerdict, ToleranceConfig};

/// Factors `X = [[A, B], [0, I]]`, `Y = [[I, 0], [C, D]]` and their partial
/// inverses `Z = [[A†, -A†B], [0, I]]`, `Ẑ = [[I, 0], [-D†C, D†]]`.
#[derive(Clone, Debug)]
pub struct Factorization {
    pub x: Matrix,
    pub y: Matrix,
    pub z: Matrix,
    pub zhat: Matrix,
    /// `Z` classified as a generalized inverse of `X`.
    pub z_class: GinverseClass,
    /// `Ẑ` classified as a generalized inverse of `Y`.
    pub zhat_class: GinverseClass,
    /// `YZ = gppt(M, A)`.
    pub yz_is_p: PredicateVerdict,
    /// `XẐ = gppt(M, D)`.
    pub xzhat_is_q: PredicateVerdict,
}

pub fn gppt_factorization(pm: &PartitionedMatrix, cfg: &ToleranceConfig) -> Result<Factorization> {
    let (a, b, c, d) = (pm.a(), pm.b(), pm.c(), pm.d());
    let (k, rest) = (a.rows(), d.rows());
    let ap = pinv(a, cfg)?;
    let dp = pinv(d, cfg)?;
    let ik = Matrix::identity(k);
    let ir = Matrix::identity(rest);

    let x = Matrix::from_blocks(a, b, &Matrix::zeros(rest, k), &ir)?;
    let y = Matrix::from_blocks(&ik, &Matrix::zeros(k, rest), c, d)?;
    let z = Matrix::from_blocks(&ap, &-&(&ap * b), &Matrix::zeros(rest, k), &ir)?;
    let zhat = Matrix::from_blocks(&ik, &Matrix::zeros(k, rest), &-&(&dp * c), &dp)?;

    let p = gppt_a(pm, cfg)?;
    let q = gppt_d(pm, cfg)?;
    let yz_is_p = PredicateVerdict::from_residual(ToleranceConfig::rel_residual(&(&y * &z), p.matrix()), cfg);
    let xzhat_is_q = PredicateVerdict::from_residual(ToleranceConfig::rel_residual(&(&x * &zhat), q.matrix()), cfg);

    Ok(Factorization {
        z_class: classify_ginverse(&x, &z, cfg)?,
        zhat_class: classify_ginverse(&y, &zhat, cfg)?,
        x,
        y,
        z,
        zhat,
        yz_is_p,
        xzhat_is_q,
    })
}
