use serde::Serialize;

use super::partition::PartitionedMatrix;
use super::transform::{all_hold, schur_f, schur_g, Condition};
use crate::error::Result;
use crate::numkern::{pinv, range_included, Matrix, ToleranceConfig};

#[derive(Clone, Debug, Serialize)]
pub struct BlockPinv {
    #[serde(skip)]
    pub m_dagger: Matrix,
    pub conditions_hold: bool,
    pub conditions: Vec<Condition>,
}

/// `[[A† + A†BF†CA†, -A†BF†], [-F†CA†, F†]]`, which is `M†` exactly when
/// `R(Cᴴ) ⊆ R(Aᴴ)`, `R(B) ⊆ R(A)`, `R(C) ⊆ R(F)` and `R(Bᴴ) ⊆ R(Fᴴ)`.
pub fn block_pinv_a(pm: &PartitionedMatrix, cfg: &ToleranceConfig) -> Result<BlockPinv> {
    let (a, b, c) = (pm.a(), pm.b(), pm.c());
    let ap = pinv(a, cfg)?;
    let f = schur_f(pm, &ap, cfg)?;
    let fp = pinv(&f, cfg)?;
    let apb_fp = &(&ap * b) * &fp;
    let fp_cap = &(&fp * c) * &ap;
    let top_left = &ap + &(&apb_fp * &(c * &ap));
    let m_dagger = Matrix::from_blocks(&top_left, &-&apb_fp, &-&fp_cap, &fp)?;
    let conditions = vec![
        Condition::new("R(C*)<=R(A*)", range_included(&c.adjoint(), &a.adjoint(), cfg)?),
        Condition::new("R(B)<=R(A)", range_included(b, a, cfg)?),
        Condition::new("R(C)<=R(F)", range_included(c, &f, cfg)?),
        Condition::new("R(B*)<=R(F*)", range_included(&b.adjoint(), &f.adjoint(), cfg)?),
    ];
    Ok(BlockPinv {
        m_dagger,
        conditions_hold: all_hold(&conditions),
        conditions,
    })
}

/// `[[G†, -G†BD†], [-D†CG†, D† + D†CG†BD†]]`, which is `M†` exactly when
/// `R(Bᴴ) ⊆ R(Dᴴ)`, `R(C) ⊆ R(D)`, `R(B) ⊆ R(G)` and `R(Cᴴ) ⊆ R(Gᴴ)`.
pub fn block_pinv_d(pm: &PartitionedMatrix, cfg: &ToleranceConfig) -> Result<BlockPinv> {
    let (b, c, d) = (pm.b(), pm.c(), pm.d());
    let dp = pinv(d, cfg)?;
    let g = schur_g(pm, &dp, cfg)?;
    let gp = pinv(&g, cfg)?;
    let gp_bdp = &(&gp * b) * &dp;
    let dpc_gp = &(&dp * c) * &gp;
    let bottom_right = &dp + &(&dpc_gp * &(b * &dp));
    let m_dagger = Matrix::from_blocks(&gp, &-&gp_bdp, &-&dpc_gp, &bottom_right)?;
    let conditions = vec![
        Condition::new("R(B*)<=R(D*)", range_included(&b.adjoint(), &d.adjoint(), cfg)?),
        Condition::new("R(C)<=R(D)", range_included(c, d, cfg)?),
        Condition::new("R(B)<=R(G)", range_included(b, &g, cfg)?),
        Condition::new("R(C*)<=R(G*)", range_included(&c.adjoint(), &g.adjoint(), cfg)?),
    ];
    Ok(BlockPinv {
        m_dagger,
        conditions_hold: all_hold(&conditions),
        conditions,
    })
}
