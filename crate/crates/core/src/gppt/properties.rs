use serde::Serialize;

use super::partition::PartitionedMatrix;
use super::transform::{failed_names, gppt_a, gppt_d, gppt_dagger_equals_complement, Condition};
use crate::error::{Error, Result};
use crate::numkern::{
    is_range_hermitian, pinv, range_included, rank_of_symmetric_part, Matrix, PredicateVerdict, ToleranceConfig,
};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RankSymReport {
    pub hypotheses_hold: bool,
    /// Pivot block range-Hermitian.
    pub pivot_ep: PredicateVerdict,
    /// `R(B + Cᴴ) ⊆ R(A)` (A side) or `R(C + Bᴴ) ⊆ R(D)` (D side).
    pub range_condition: PredicateVerdict,
    pub rank_m: usize,
    pub rank_p: usize,
}

impl RankSymReport {
    pub fn ranks_equal(&self) -> bool {
        self.rank_m == self.rank_p
    }
}

/// Ranks of `S(M)` and `S(gppt(M, A))`, with the hypotheses `A` EP and
/// `R(B + Cᴴ) ⊆ R(A)`.
pub fn rank_sym_preserved_a(pm: &PartitionedMatrix, cfg: &ToleranceConfig) -> Result<RankSymReport> {
    let pivot_ep = is_range_hermitian(pm.a(), cfg)?;
    let range_condition = range_included(&(pm.b() + &pm.c().adjoint()), pm.a(), cfg)?;
    let p = gppt_a(pm, cfg)?;
    Ok(RankSymReport {
        hypotheses_hold: pivot_ep.holds && range_condition.holds,
        pivot_ep,
        range_condition,
        rank_m: rank_of_symmetric_part(pm.matrix(), cfg)?,
        rank_p: rank_of_symmetric_part(p.matrix(), cfg)?,
    })
}

/// Ranks of `S(M)` and `S(gppt(M, D))`, with the hypotheses `D` EP and
/// `R(C + Bᴴ) ⊆ R(D)`.
pub fn rank_sym_preserved_d(pm: &PartitionedMatrix, cfg: &ToleranceConfig) -> Result<RankSymReport> {
    let pivot_ep = is_range_hermitian(pm.d(), cfg)?;
    let range_condition = range_included(&(pm.c() + &pm.b().adjoint()), pm.d(), cfg)?;
    let q = gppt_d(pm, cfg)?;
    Ok(RankSymReport {
        hypotheses_hold: pivot_ep.holds && range_condition.holds,
        pivot_ep,
        range_condition,
        rank_m: rank_of_symmetric_part(pm.matrix(), cfg)?,
        rank_p: rank_of_symmetric_part(q.matrix(), cfg)?,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EpEquivalence {
    /// `CA†A = DD†C` and `AA†B = BD†D`.
    pub conditions: PredicateVerdict,
    pub conditions_hold: bool,
    pub p_ep: PredicateVerdict,
    pub q_ep: PredicateVerdict,
    pub a_ep: PredicateVerdict,
    pub d_ep: PredicateVerdict,
}

impl EpEquivalence {
    /// `p_ep ⇔ q_ep ⇔ (a_ep ∧ d_ep)`.
    pub fn equivalence_holds(&self) -> bool {
        let blocks = self.a_ep.holds && self.d_ep.holds;
        self.p_ep.holds == self.q_ep.holds && self.q_ep.holds == blocks
    }
}

pub fn ep_equivalence_check(pm: &PartitionedMatrix, cfg: &ToleranceConfig) -> Result<EpEquivalence> {
    let conditions = gppt_dagger_equals_complement(pm, cfg)?;
    Ok(EpEquivalence {
        conditions_hold: conditions.holds,
        conditions,
        p_ep: is_range_hermitian(gppt_a(pm, cfg)?.matrix(), cfg)?,
        q_ep: is_range_hermitian(gppt_d(pm, cfg)?.matrix(), cfg)?,
        a_ep: is_range_hermitian(pm.a(), cfg)?,
        d_ep: is_range_hermitian(pm.d(), cfg)?,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExchangeReport {
    #[serde(skip)]
    pub y1: Matrix,
    #[serde(skip)]
    pub y2: Matrix,
    pub forward_ok: PredicateVerdict,
    /// `R(B) ⊆ R(A)` and `y1 ∈ R(A)` (A side), mirrored on the D side.
    pub backward_applicable: bool,
    pub backward_ok: PredicateVerdict,
}

fn check_vector_dims(pm: &PartitionedMatrix, x1: &Matrix, x2: &Matrix, op: &'static str) -> Result<()> {
    let k = pm.split();
    let rest = pm.n() - k;
    if x1.shape() != (k, 1) || x2.shape() != (rest, 1) {
        return Err(Error::DimensionMismatch {
            op,
            left: x1.shape(),
            right: x2.shape(),
        });
    }
    Ok(())
}

fn stack(top: &Matrix, bottom: &Matrix) -> Matrix {
    top.vstack(bottom).expect("column vectors")
}

fn vector_verdict(x: &Matrix, y: &Matrix, cfg: &ToleranceConfig) -> PredicateVerdict {
    PredicateVerdict::from_residual(ToleranceConfig::rel_residual(x, y), cfg)
}

/// Forward: with `(y1; y2) = M(A†Ax1; x2)`, checks `gppt(M,A)(y1; x2) = (A†Ax1; y2)`.
/// Backward: runs [`exchange_backward_a`] from the `y1` so obtained.
pub fn domain_range_exchange_a(
    pm: &PartitionedMatrix,
    x1: &Matrix,
    x2: &Matrix,
    cfg: &ToleranceConfig,
) -> Result<ExchangeReport> {
    check_vector_dims(pm, x1, x2, "domain_range_exchange_a")?;
    let a = pm.a();
    let u = &(&pinv(a, cfg)? * a) * x1;
    let y = pm.matrix() * &stack(&u, x2);
    let (y1, y2) = pm.split_vector(&y);
    let p = gppt_a(pm, cfg)?;
    let forward_ok = vector_verdict(&(p.matrix() * &stack(&y1, x2)), &stack(&u, &y2), cfg);
    let (backward_applicable, backward_ok) = exchange_backward_a(pm, &y1, x2, cfg)?;
    Ok(ExchangeReport {
        y1,
        y2,
        forward_ok,
        backward_applicable,
        backward_ok,
    })
}

/// Converse direction on the A side: with `(w; y2) = gppt(M,A)(y1; x2)`, so
/// that `w = A†Aw` plays the role of `A†Ax1`, checks `M(w; x2) = (y1; y2)`.
/// Returns whether `R(B) ⊆ R(A)` and `y1 ∈ R(A)` hold, and the verdict.
pub fn exchange_backward_a(
    pm: &PartitionedMatrix,
    y1: &Matrix,
    x2: &Matrix,
    cfg: &ToleranceConfig,
) -> Result<(bool, PredicateVerdict)> {
    check_vector_dims(pm, y1, x2, "exchange_backward_a")?;
    let a = pm.a();
    let applicable = range_included(pm.b(), a, cfg)?.holds && range_included(y1, a, cfg)?.holds;
    let p = gppt_a(pm, cfg)?;
    let (w, y2) = pm.split_vector(&(p.matrix() * &stack(y1, x2)));
    let image = pm.matrix() * &stack(&w, x2);
    Ok((applicable, vector_verdict(&image, &stack(y1, &y2), cfg)))
}

/// Forward: with `(y1; y2) = M(x1; D†Dx2)`, checks `gppt(M,D)(x1; y2) = (y1; D†Dx2)`.
/// Backward: runs [`exchange_backward_d`] from the `y2` so obtained.
pub fn domain_range_exchange_d(
    pm: &PartitionedMatrix,
    x1: &Matrix,
    x2: &Matrix,
    cfg: &ToleranceConfig,
) -> Result<ExchangeReport> {
    check_vector_dims(pm, x1, x2, "domain_range_exchange_d")?;
    let d = pm.d();
    let v = &(&pinv(d, cfg)? * d) * x2;
    let y = pm.matrix() * &stack(x1, &v);
    let (y1, y2) = pm.split_vector(&y);
    let q = gppt_d(pm, cfg)?;
    let forward_ok = vector_verdict(&(q.matrix() * &stack(x1, &y2)), &stack(&y1, &v), cfg);
    let (backward_applicable, backward_ok) = exchange_backward_d(pm, x1, &y2, cfg)?;
    Ok(ExchangeReport {
        y1,
        y2,
        forward_ok,
        backward_applicable,
        backward_ok,
    })
}

/// Converse direction on the D side: with `(y1; w) = gppt(M,D)(x1; y2)`,
/// checks `M(x1; w) = (y1; y2)`. Applicable when `R(C) ⊆ R(D)` and `y2 ∈ R(D)`.
pub fn exchange_backward_d(
    pm: &PartitionedMatrix,
    x1: &Matrix,
    y2: &Matrix,
    cfg: &ToleranceConfig,
) -> Result<(bool, PredicateVerdict)> {
    check_vector_dims(pm, x1, y2, "exchange_backward_d")?;
    let d = pm.d();
    let applicable = range_included(pm.c(), d, cfg)?.holds && range_included(y2, d, cfg)?.holds;
    let q = gppt_d(pm, cfg)?;
    let (y1, w) = pm.split_vector(&(q.matrix() * &stack(x1, y2)));
    let image = pm.matrix() * &stack(x1, &w);
    Ok((applicable, vector_verdict(&image, &stack(&y1, y2), cfg)))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GramOneInverse {
    #[serde(skip)]
    pub k: Matrix,
    /// `R(B) ⊆ R(A)` for the column split `M = (A | B)`.
    pub range_condition: PredicateVerdict,
    /// `(MᴴM) K (MᴴM) = MᴴM`.
    pub is_one_inverse: PredicateVerdict,
}

/// `K = gppt(MᴴM, AᴴA)` for the column split `M = (A | B)` at `r`, without
/// enforcing `R(B) ⊆ R(A)`.
pub fn gram_gppt_one_inverse_unchecked(m_wide: &Matrix, r: usize, cfg: &ToleranceConfig) -> Result<GramOneInverse> {
    let n = m_wide.cols();
    if r > n {
        return Err(Error::InvalidSplit { k: r, n });
    }
    let a = m_wide.submatrix(0, m_wide.rows(), 0, r);
    let b = m_wide.submatrix(0, m_wide.rows(), r, n);
    let range_condition = range_included(&b, &a, cfg)?;
    let gram = &m_wide.adjoint() * m_wide;
    let k = gppt_a(&PartitionedMatrix::new(gram.clone(), r)?, cfg)?.into_matrix();
    let is_one_inverse =
        PredicateVerdict::from_residual(ToleranceConfig::rel_residual(&(&(&gram * &k) * &gram), &gram), cfg);
    Ok(GramOneInverse {
        k,
        range_condition,
        is_one_inverse,
    })
}

/// [`gram_gppt_one_inverse_unchecked`], failing when `R(B) ⊄ R(A)`.
pub fn gram_gppt_one_inverse(m_wide: &Matrix, r: usize, cfg: &ToleranceConfig) -> Result<GramOneInverse> {
    let out = gram_gppt_one_inverse_unchecked(m_wide, r, cfg)?;
    if !out.range_condition.holds {
        let cond = [Condition::new("R(B)<=R(A)", out.range_condition)];
        return Err(Error::ConditionViolated(failed_names(&cond)));
    }
    Ok(out)
}
