use serde::{Deserialize, Serialize};

use super::partition::PartitionedMatrix;
use crate::error::{Error, Result};
use crate::numkern::{
    null_space_included, pinv, range_projector, row_space_projector, svd, Matrix, PredicateVerdict, ToleranceConfig,
};

/// Which diagonal block a transform pivots on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    A,
    D,
}

/// Generalized Schur complements `F = D - CA†B` and `G = A - BD†C`.
#[derive(Clone, Debug, PartialEq)]
pub struct SchurPair {
    pub f: Matrix,
    pub g: Matrix,
}

/// A named hypothesis together with its verdict.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Condition {
    pub name: &'static str,
    pub verdict: PredicateVerdict,
}

impl Condition {
    pub fn new(name: &'static str, verdict: PredicateVerdict) -> Self {
        Self { name, verdict }
    }
}

pub fn all_hold(conditions: &[Condition]) -> bool {
    conditions.iter().all(|c| c.verdict.holds)
}

pub fn failed_names(conditions: &[Condition]) -> Vec<String> {
    conditions
        .iter()
        .filter(|c| !c.verdict.holds)
        .map(|c| c.name.to_string())
        .collect()
}

/// `base - subtrahend`, with singular values that are cancellation residue
/// relative to the two terms truncated to zero. Keeps the rank of a Schur
/// complement stable when it vanishes in exact arithmetic.
pub(crate) fn clean_difference(base: &Matrix, subtrahend: &Matrix, cfg: &ToleranceConfig) -> Result<Matrix> {
    let diff = base - subtrahend;
    if diff.is_empty() {
        return Ok(diff);
    }
    let reference = base.frobenius().max(subtrahend.frobenius());
    let s = svd(&diff, cfg)?;
    let r = s.rank(reference, cfg);
    if r == s.sigma.len() {
        return Ok(diff);
    }
    let (m, n) = diff.shape();
    let mut out = Matrix::zeros(m, n);
    for k in 0..r {
        for i in 0..m {
            let us = s.u[(i, k)] * s.sigma[k];
            for j in 0..n {
                out[(i, j)] += us * s.v[(j, k)].conj();
            }
        }
    }
    Ok(out)
}

pub(crate) fn schur_f(pm: &PartitionedMatrix, a_pinv: &Matrix, cfg: &ToleranceConfig) -> Result<Matrix> {
    clean_difference(pm.d(), &(pm.c() * &(a_pinv * pm.b())), cfg)
}

pub(crate) fn schur_g(pm: &PartitionedMatrix, d_pinv: &Matrix, cfg: &ToleranceConfig) -> Result<Matrix> {
    clean_difference(pm.a(), &(pm.b() * &(d_pinv * pm.c())), cfg)
}

pub fn schur_complements(pm: &PartitionedMatrix, cfg: &ToleranceConfig) -> Result<SchurPair> {
    let ap = pinv(pm.a(), cfg)?;
    let dp = pinv(pm.d(), cfg)?;
    Ok(SchurPair {
        f: schur_f(pm, &ap, cfg)?,
        g: schur_g(pm, &dp, cfg)?,
    })
}

/// `gppt(M, A) = [[A†, -A†B], [CA†, D - CA†B]]`.
pub fn gppt_a(pm: &PartitionedMatrix, cfg: &ToleranceConfig) -> Result<PartitionedMatrix> {
    let ap = pinv(pm.a(), cfg)?;
    let f = schur_f(pm, &ap, cfg)?;
    let top_right = -&(&ap * pm.b());
    let bottom_left = pm.c() * &ap;
    PartitionedMatrix::from_blocks(&ap, &top_right, &bottom_left, &f)
}

/// `gppt(M, D) = [[A - BD†C, BD†], [-D†C, D†]]`.
pub fn gppt_d(pm: &PartitionedMatrix, cfg: &ToleranceConfig) -> Result<PartitionedMatrix> {
    let dp = pinv(pm.d(), cfg)?;
    let g = schur_g(pm, &dp, cfg)?;
    let top_right = pm.b() * &dp;
    let bottom_left = -&(&dp * pm.c());
    PartitionedMatrix::from_blocks(&g, &top_right, &bottom_left, &dp)
}

pub fn gppt(pm: &PartitionedMatrix, side: Side, cfg: &ToleranceConfig) -> Result<PartitionedMatrix> {
    match side {
        Side::A => gppt_a(pm, cfg),
        Side::D => gppt_d(pm, cfg),
    }
}

/// Decides `gppt(M,A)† = gppt(M,D)` through the two block identities
/// `CA†A = DD†C` and `AA†B = BD†D`, without pseudo-inverting the transform.
pub fn gppt_dagger_equals_complement(pm: &PartitionedMatrix, cfg: &ToleranceConfig) -> Result<PredicateVerdict> {
    let (first, second) = dagger_complement_residuals(pm, cfg)?;
    Ok(PredicateVerdict::from_residual(first.max(second), cfg))
}

/// Residuals of `CA†A = DD†C` and `AA†B = BD†D`.
pub fn dagger_complement_residuals(pm: &PartitionedMatrix, cfg: &ToleranceConfig) -> Result<(f64, f64)> {
    let (a, b, c, d) = (pm.a(), pm.b(), pm.c(), pm.d());
    let a_row = row_space_projector(a, cfg)?;
    let a_col = range_projector(a, cfg)?;
    let d_row = row_space_projector(d, cfg)?;
    let d_col = range_projector(d, cfg)?;
    let first = ToleranceConfig::rel_residual(&(c * &a_row), &(&d_col * c));
    let second = ToleranceConfig::rel_residual(&(&a_col * b), &(b * &d_row));
    Ok((first, second))
}

/// The four null-space inclusions `N(A) ⊆ N(DᴴC)`, `N(Aᴴ) ⊆ N(DBᴴ)`,
/// `N(D) ⊆ N(AᴴB)`, `N(Dᴴ) ⊆ N(ACᴴ)`, equivalent to the block identities of
/// [`gppt_dagger_equals_complement`].
pub fn dagger_complement_null_conditions(pm: &PartitionedMatrix, cfg: &ToleranceConfig) -> Result<Vec<Condition>> {
    let (a, b, c, d) = (pm.a(), pm.b(), pm.c(), pm.d());
    Ok(vec![
        Condition::new("N(A)<=N(D*C)", null_space_included(a, &(&d.adjoint() * c), cfg)?),
        Condition::new(
            "N(A*)<=N(DB*)",
            null_space_included(&a.adjoint(), &(d * &b.adjoint()), cfg)?,
        ),
        Condition::new("N(D)<=N(A*B)", null_space_included(d, &(&a.adjoint() * b), cfg)?),
        Condition::new(
            "N(D*)<=N(AC*)",
            null_space_included(&d.adjoint(), &(a * &c.adjoint()), cfg)?,
        ),
    ])
}

/// `gppt(gppt(M, A), A†)` computed literally. Equals
/// `[[A, AA†B], [CA†A, D]]` up to rounding.
pub fn double_gppt_a(pm: &PartitionedMatrix, cfg: &ToleranceConfig) -> Result<PartitionedMatrix> {
    gppt_a(&gppt_a(pm, cfg)?, cfg)
}

/// `gppt(gppt(M, D), D†)` computed literally.
pub fn double_gppt_d(pm: &PartitionedMatrix, cfg: &ToleranceConfig) -> Result<PartitionedMatrix> {
    gppt_d(&gppt_d(pm, cfg)?, cfg)
}

/// Hypotheses under which `M† = gppt(P, F)` (A side, `P = gppt(M,A)`) or
/// `M† = gppt(Q, E)` (D side, `Q = gppt(M,D)`).
pub fn mp_via_gppt_conditions(pm: &PartitionedMatrix, side: Side, cfg: &ToleranceConfig) -> Result<Vec<Condition>> {
    let (a, b, c, d) = (pm.a(), pm.b(), pm.c(), pm.d());
    let (bh, ch) = (b.adjoint(), c.adjoint());
    Ok(match side {
        Side::A => {
            let f = schur_f(pm, &pinv(a, cfg)?, cfg)?;
            vec![
                Condition::new("N(A)<=N(C)", null_space_included(a, c, cfg)?),
                Condition::new("N(A*)<=N(B*)", null_space_included(&a.adjoint(), &bh, cfg)?),
                Condition::new("N(F)<=N(B)", null_space_included(&f, b, cfg)?),
                Condition::new("N(F*)<=N(C*)", null_space_included(&f.adjoint(), &ch, cfg)?),
            ]
        }
        Side::D => {
            let e = schur_g(pm, &pinv(d, cfg)?, cfg)?;
            vec![
                Condition::new("N(D)<=N(B)", null_space_included(d, b, cfg)?),
                Condition::new("N(D*)<=N(C*)", null_space_included(&d.adjoint(), &ch, cfg)?),
                Condition::new("N(E)<=N(C)", null_space_included(&e, c, cfg)?),
                Condition::new("N(E*)<=N(B*)", null_space_included(&e.adjoint(), &bh, cfg)?),
            ]
        }
    })
}

/// `gppt(gppt(M,A), F)` or `gppt(gppt(M,D), E)` without checking hypotheses.
pub fn moore_penrose_via_gppt_unchecked(pm: &PartitionedMatrix, side: Side, cfg: &ToleranceConfig) -> Result<Matrix> {
    let out = match side {
        Side::A => gppt_d(&gppt_a(pm, cfg)?, cfg)?,
        Side::D => gppt_a(&gppt_d(pm, cfg)?, cfg)?,
    };
    Ok(out.into_matrix())
}

/// `M†` through a double transform. Fails with the list of violated
/// null-space inclusions when the hypotheses do not hold.
pub fn moore_penrose_via_gppt(pm: &PartitionedMatrix, side: Side, cfg: &ToleranceConfig) -> Result<Matrix> {
    let conditions = mp_via_gppt_conditions(pm, side, cfg)?;
    if !all_hold(&conditions) {
        return Err(Error::ConditionViolated(failed_names(&conditions)));
    }
    moore_penrose_via_gppt_unchecked(pm, side, cfg)
}
