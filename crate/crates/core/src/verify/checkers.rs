use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::generator::{gaussian, Field};
use super::report::{Clause, TheoremReport};
use crate::error::{Error, Result};
use crate::gppt::{
    all_hold, block_pinv_a, block_pinv_d, dagger_complement_null_conditions, dagger_complement_residuals,
    domain_range_exchange_a, domain_range_exchange_d, double_gppt_a, double_gppt_d, ep_equivalence_check,
    exchange_backward_a, exchange_backward_d, gppt_a, gppt_d, gppt_factorization, gram_gppt_one_inverse_unchecked,
    moore_penrose_via_gppt_unchecked, mp_via_gppt_conditions, rank_sym_preserved_a, rank_sym_preserved_d,
    schur_complements, PartitionedMatrix, Side,
};
use crate::lcpcone::{build_m0, build_m1, is_p_dagger, is_r_dagger, ClassifierMode};
use crate::numkern::{
    is_almost_skew_hermitian, is_range_hermitian, null_space_included, pinv, range_included, range_projector, Matrix,
    PredicateVerdict, ToleranceConfig,
};

/// Theorem identifiers accepted by [`check_theorem`], with a one-line gloss.
pub const THEOREM_IDS: &[(&str, &str)] = &[
    (
        "T31_EQUIV",
        "gppt(M,A)† = gppt(M,D) ⇔ CA†A = DD†C, AA†B = BD†D ⇔ four null-space inclusions",
    ),
    (
        "T32_INVOLUTION",
        "gppt(gppt(M,A),A†) = M ⇔ N(A) ⊆ N(C), N(Aᴴ) ⊆ N(Bᴴ); same for D",
    ),
    (
        "T33_MP_VIA_GPPT",
        "M† = gppt(gppt(M,A),F) under four null-space inclusions; same for D",
    ),
    ("L34_FACTORS", "factor lemma as printed: Z ∈ X{1,2,4}, Ẑ ∈ Y{1,2,3}"),
    (
        "L34_FACTORS_CORRECTED",
        "factor lemma: Z ∈ X{1,2,4}, Ẑ ∈ Y{1,2,4}, Ẑ = Y† ⇔ N(Dᴴ) ⊆ N(Cᴴ)",
    ),
    ("T_RANK_A", "A EP and R(B+Cᴴ) ⊆ R(A) ⇒ rank S(M) = rank S(gppt(M,A))"),
    ("T_RANK_D", "D EP and R(C+Bᴴ) ⊆ R(D) ⇒ rank S(M) = rank S(gppt(M,D))"),
    ("T_EP_EQUIV", "CA†A = DD†C, AA†B = BD†D ⇒ (P EP ⇔ Q EP ⇔ A and D EP)"),
    (
        "T_EXCHANGE",
        "domain-range exchange of gppt(M,A) and gppt(M,D), with converses",
    ),
    ("T_GRAM", "R(B) ⊆ R(A) ⇒ gppt(MᴴM, AᴴA) is a {1}-inverse of MᴴM"),
    (
        "T_BLOCK_PINV_A",
        "block formula for M† through A† and F† ⇔ four range inclusions",
    ),
    (
        "T_BLOCK_PINV_D",
        "block formula for M† through D† and G† ⇔ four range inclusions",
    ),
    (
        "T15_P_INHERIT",
        "R(C) ⊆ R(F), R(Bᵀ) ⊆ R(Fᵀ), M₀ P† ⇒ gppt(M,A), A, D P†",
    ),
    ("T15_CONVERSE", "R(C) ⊆ R(D), R(Bᵀ) ⊆ R(Dᵀ), gppt(M,A) P† ⇒ M₀, A, F P†"),
    (
        "T_P_INHERIT_D",
        "R(B) ⊆ R(G), R(Cᵀ) ⊆ R(Gᵀ), M₁ P† ⇒ gppt(M,D), A, D P†",
    ),
    (
        "T_P_INHERIT_D_CONVERSE",
        "R(B) ⊆ R(A), R(Cᵀ) ⊆ R(Aᵀ), gppt(M,D) P† ⇒ M₁, D, G P†",
    ),
    ("T99_R_INHERIT", "R(C) ⊆ R(F), R(Bᵀ) ⊆ R(Fᵀ), M₀ R† ⇒ gppt(M,A) R†"),
    ("T99_CONVERSE", "R(C) ⊆ R(D), R(Bᵀ) ⊆ R(Dᵀ), gppt(M,A) R† ⇒ M₀ R†"),
    ("T_END_R_INHERIT_D", "R(B) ⊆ R(G), R(Cᵀ) ⊆ R(Gᵀ), M₁ R† ⇒ gppt(M,D) R†"),
    (
        "T_END_R_INHERIT_D_CONVERSE",
        "R(B) ⊆ R(A), R(Cᵀ) ⊆ R(Aᵀ), gppt(M,D) R† ⇒ M₁ R†",
    ),
    (
        "COR_ASKEW_A",
        "A EP, R(B+Cᴴ) ⊆ R(A) ⇒ M, M†, P, P† almost skew-Hermitian together",
    ),
    (
        "COR_ASKEW_D",
        "D EP, R(C+Bᴴ) ⊆ R(D) ⇒ M, M†, Q, Q† almost skew-Hermitian together",
    ),
    (
        "REFUTED_DAGGER",
        "refuted claim: N(Dᴴ) ⊆ N(Cᴴ), N(Aᴴ) ⊆ N(Bᴴ) ⇒ gppt(M,A)† = gppt(M,D)",
    ),
];

/// Whether a theorem is stated for real matrices only.
pub fn requires_real(theorem_id: &str) -> bool {
    theorem_id.starts_with("T15")
        || theorem_id.starts_with("T99")
        || theorem_id.starts_with("T_P_INHERIT")
        || theorem_id.starts_with("T_END")
}

pub fn is_known_theorem(theorem_id: &str) -> bool {
    THEOREM_IDS.iter().any(|(id, _)| *id == theorem_id)
}

/// Evaluates hypotheses and conclusion of one theorem on `pm`. Auxiliary
/// random vectors (exchange theorem) are drawn from seed 0.
pub fn check_theorem(theorem_id: &str, pm: &PartitionedMatrix, cfg: &ToleranceConfig) -> Result<TheoremReport> {
    check_theorem_seeded(theorem_id, pm, cfg, 0)
}

pub fn check_theorem_seeded(
    theorem_id: &str,
    pm: &PartitionedMatrix,
    cfg: &ToleranceConfig,
    aux_seed: u64,
) -> Result<TheoremReport> {
    if !is_known_theorem(theorem_id) {
        return Err(Error::UnknownTheorem(theorem_id.to_string()));
    }
    if requires_real(theorem_id) && !pm.is_real() {
        return Err(Error::NotReal { op: "check_theorem" });
    }
    let mut ev = Evaluation::default();
    match theorem_id {
        "T31_EQUIV" => t31(pm, cfg, &mut ev)?,
        "T32_INVOLUTION" => t32(pm, cfg, &mut ev)?,
        "T33_MP_VIA_GPPT" => t33(pm, cfg, &mut ev)?,
        "L34_FACTORS" => l34(pm, cfg, &mut ev, false)?,
        "L34_FACTORS_CORRECTED" => l34(pm, cfg, &mut ev, true)?,
        "T_RANK_A" => rank_theorem(pm, Side::A, cfg, &mut ev)?,
        "T_RANK_D" => rank_theorem(pm, Side::D, cfg, &mut ev)?,
        "T_EP_EQUIV" => ep_equiv(pm, cfg, &mut ev)?,
        "T_EXCHANGE" => exchange(pm, cfg, aux_seed, &mut ev)?,
        "T_GRAM" => gram(pm, cfg, &mut ev)?,
        "T_BLOCK_PINV_A" => block_pinv(pm, Side::A, cfg, &mut ev)?,
        "T_BLOCK_PINV_D" => block_pinv(pm, Side::D, cfg, &mut ev)?,
        "T15_P_INHERIT" => inherit(pm, cfg, &mut ev, Inherit::P_FORWARD_A)?,
        "T15_CONVERSE" => inherit(pm, cfg, &mut ev, Inherit::P_CONVERSE_A)?,
        "T_P_INHERIT_D" => inherit(pm, cfg, &mut ev, Inherit::P_FORWARD_D)?,
        "T_P_INHERIT_D_CONVERSE" => inherit(pm, cfg, &mut ev, Inherit::P_CONVERSE_D)?,
        "T99_R_INHERIT" => inherit(pm, cfg, &mut ev, Inherit::R_FORWARD_A)?,
        "T99_CONVERSE" => inherit(pm, cfg, &mut ev, Inherit::R_CONVERSE_A)?,
        "T_END_R_INHERIT_D" => inherit(pm, cfg, &mut ev, Inherit::R_FORWARD_D)?,
        "T_END_R_INHERIT_D_CONVERSE" => inherit(pm, cfg, &mut ev, Inherit::R_CONVERSE_D)?,
        "COR_ASKEW_A" => askew(pm, Side::A, cfg, &mut ev)?,
        "COR_ASKEW_D" => askew(pm, Side::D, cfg, &mut ev)?,
        "REFUTED_DAGGER" => refuted(pm, cfg, &mut ev)?,
        _ => unreachable!("listed in THEOREM_IDS"),
    }
    Ok(TheoremReport::from_clauses(
        theorem_id,
        ev.clauses,
        ev.residuals,
        ev.flags,
    ))
}

#[derive(Default)]
struct Evaluation {
    clauses: Vec<Clause>,
    residuals: BTreeMap<String, f64>,
    flags: BTreeMap<String, bool>,
}

impl Evaluation {
    /// Records the verdict's residual under `name` and returns whether it holds.
    fn verdict(&mut self, name: &str, v: PredicateVerdict) -> bool {
        self.residuals.insert(name.to_string(), v.residual);
        v.holds
    }

    fn equal(&mut self, name: &str, x: &Matrix, y: &Matrix, cfg: &ToleranceConfig) -> bool {
        self.verdict(
            name,
            PredicateVerdict::from_residual(ToleranceConfig::rel_residual(x, y), cfg),
        )
    }

    fn flag(&mut self, name: &str, value: bool) -> bool {
        self.flags.insert(name.to_string(), value);
        value
    }
}

fn null_incl(x: &Matrix, y: &Matrix, cfg: &ToleranceConfig) -> Result<PredicateVerdict> {
    null_space_included(x, y, cfg)
}

fn t31(pm: &PartitionedMatrix, cfg: &ToleranceConfig, ev: &mut Evaluation) -> Result<()> {
    let p = gppt_a(pm, cfg)?;
    let q = gppt_d(pm, cfg)?;
    let direct = ev.equal("direct", &pinv(p.matrix(), cfg)?, q.matrix(), cfg);
    let (r1, r2) = dagger_complement_residuals(pm, cfg)?;
    ev.residuals.insert("ca_dd_c".into(), r1);
    ev.residuals.insert("aa_b_bd".into(), r2);
    let matrix_conditions = r1 <= cfg.eq_tol && r2 <= cfg.eq_tol;
    let null = dagger_complement_null_conditions(pm, cfg)?;
    for c in &null {
        ev.residuals.insert(c.name.to_string(), c.verdict.residual);
    }
    let null_conditions = all_hold(&null);
    ev.flag("direct", direct);
    ev.flag("matrix_conditions", matrix_conditions);
    ev.flag("null_conditions", null_conditions);
    let agree = direct == matrix_conditions && matrix_conditions == null_conditions;
    ev.flag("three_way_agree", agree);
    ev.clauses.push(Clause::always("three_way_agreement", agree));
    ev.clauses
        .push(Clause::iff("matrix_conditions_give_dagger", matrix_conditions, direct));
    Ok(())
}

fn t32(pm: &PartitionedMatrix, cfg: &ToleranceConfig, ev: &mut Evaluation) -> Result<()> {
    let (a, b, c, d) = (pm.a(), pm.b(), pm.c(), pm.d());
    let hyp_a = null_incl(a, c, cfg)?.and(null_incl(&a.adjoint(), &b.adjoint(), cfg)?);
    let hyp_d = null_incl(d, b, cfg)?.and(null_incl(&d.adjoint(), &c.adjoint(), cfg)?);
    let ha = ev.verdict("hyp_a", hyp_a);
    let hd = ev.verdict("hyp_d", hyp_d);
    let ca = ev.equal("involution_a", double_gppt_a(pm, cfg)?.matrix(), pm.matrix(), cfg);
    let cd = ev.equal("involution_d", double_gppt_d(pm, cfg)?.matrix(), pm.matrix(), cfg);
    ev.clauses.push(Clause::iff("involution_a", ha, ca));
    ev.clauses.push(Clause::iff("involution_d", hd, cd));
    Ok(())
}

fn t33(pm: &PartitionedMatrix, cfg: &ToleranceConfig, ev: &mut Evaluation) -> Result<()> {
    let m_dagger = pinv(pm.matrix(), cfg)?;
    for (side, tag) in [(Side::A, "a"), (Side::D, "d")] {
        let conds = mp_via_gppt_conditions(pm, side, cfg)?;
        let hyp = ev.flag(&format!("hyp_{tag}"), all_hold(&conds));
        let via = moore_penrose_via_gppt_unchecked(pm, side, cfg)?;
        let concl = ev.equal(&format!("mp_via_gppt_{tag}"), &via, &m_dagger, cfg);
        ev.clauses.push(Clause::iff(&format!("mp_via_gppt_{tag}"), hyp, concl));
    }
    Ok(())
}

fn l34(pm: &PartitionedMatrix, cfg: &ToleranceConfig, ev: &mut Evaluation, corrected: bool) -> Result<()> {
    let f = gppt_factorization(pm, cfg)?;
    let (a, b, c, d) = (pm.a(), pm.b(), pm.c(), pm.d());
    for (i, r) in f.z_class.residuals.iter().enumerate() {
        ev.residuals.insert(format!("z_penrose_{}", i + 1), *r);
    }
    for (i, r) in f.zhat_class.residuals.iter().enumerate() {
        ev.residuals.insert(format!("zhat_penrose_{}", i + 1), *r);
    }
    let yz = ev.verdict("yz_is_p", f.yz_is_p);
    let xzhat = ev.verdict("xzhat_is_q", f.xzhat_is_q);
    ev.clauses.push(Clause::always("yz_is_p", yz));
    ev.clauses.push(Clause::always("xzhat_is_q", xzhat));
    ev.clauses
        .push(Clause::always("z_in_x124", f.z_class.contains(&[1, 2, 4])));
    let z_mp = f.z_class.is_moore_penrose();
    let zhat_mp = f.zhat_class.is_moore_penrose();
    ev.clauses.push(Clause::iff(
        "z_is_x_dagger",
        null_incl(&a.adjoint(), &b.adjoint(), cfg)?.holds,
        z_mp,
    ));
    if corrected {
        ev.clauses
            .push(Clause::always("zhat_in_y124", f.zhat_class.contains(&[1, 2, 4])));
        ev.clauses.push(Clause::iff(
            "zhat_is_y_dagger",
            null_incl(&d.adjoint(), &c.adjoint(), cfg)?.holds,
            zhat_mp,
        ));
    } else {
        ev.clauses
            .push(Clause::always("zhat_in_y123", f.zhat_class.contains(&[1, 2, 3])));
        ev.clauses
            .push(Clause::iff("zhat_is_y_dagger", null_incl(a, c, cfg)?.holds, zhat_mp));
    }
    Ok(())
}

fn rank_theorem(pm: &PartitionedMatrix, side: Side, cfg: &ToleranceConfig, ev: &mut Evaluation) -> Result<()> {
    let r = match side {
        Side::A => rank_sym_preserved_a(pm, cfg)?,
        Side::D => rank_sym_preserved_d(pm, cfg)?,
    };
    ev.verdict("pivot_ep", r.pivot_ep);
    ev.verdict("range_condition", r.range_condition);
    ev.residuals.insert("rank_m".into(), r.rank_m as f64);
    ev.residuals.insert("rank_p".into(), r.rank_p as f64);
    ev.clauses
        .push(Clause::new("ranks_equal", r.hypotheses_hold, r.ranks_equal()));
    Ok(())
}

fn ep_equiv(pm: &PartitionedMatrix, cfg: &ToleranceConfig, ev: &mut Evaluation) -> Result<()> {
    let e = ep_equivalence_check(pm, cfg)?;
    ev.verdict("conditions", e.conditions);
    let p = ev.verdict("p_ep", e.p_ep);
    let q = ev.verdict("q_ep", e.q_ep);
    let a = ev.verdict("a_ep", e.a_ep);
    let d = ev.verdict("d_ep", e.d_ep);
    ev.clauses.push(Clause::new(
        "ep_equivalence",
        e.conditions_hold,
        p == q && q == (a && d),
    ));
    Ok(())
}

fn exchange(pm: &PartitionedMatrix, cfg: &ToleranceConfig, seed: u64, ev: &mut Evaluation) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let field = if pm.is_real() { Field::Real } else { Field::Complex };
    let k = pm.split();
    let rest = pm.n() - k;
    let x1 = gaussian(&mut rng, k, 1, field);
    let x2 = gaussian(&mut rng, rest, 1, field);
    let fa = domain_range_exchange_a(pm, &x1, &x2, cfg)?;
    let fd = domain_range_exchange_d(pm, &x1, &x2, cfg)?;
    let ok = ev.verdict("forward_a", fa.forward_ok);
    ev.clauses.push(Clause::always("forward_a", ok));
    let ok = ev.verdict("forward_d", fd.forward_ok);
    ev.clauses.push(Clause::always("forward_d", ok));

    let y1 = &range_projector(pm.a(), cfg)? * &gaussian(&mut rng, k, 1, field);
    let (applicable, v) = exchange_backward_a(pm, &y1, &x2, cfg)?;
    let ok = ev.verdict("backward_a", v);
    ev.clauses.push(Clause::new("backward_a", applicable, ok));
    let y2 = &range_projector(pm.d(), cfg)? * &gaussian(&mut rng, rest, 1, field);
    let (applicable, v) = exchange_backward_d(pm, &x1, &y2, cfg)?;
    let ok = ev.verdict("backward_d", v);
    ev.clauses.push(Clause::new("backward_d", applicable, ok));
    Ok(())
}

fn gram(pm: &PartitionedMatrix, cfg: &ToleranceConfig, ev: &mut Evaluation) -> Result<()> {
    let k = pm.split();
    let n = pm.n();
    let g = gram_gppt_one_inverse_unchecked(pm.matrix(), k, cfg)?;
    let hyp = ev.verdict("range_condition", g.range_condition);
    let one = ev.verdict("one_inverse", g.is_one_inverse);
    ev.clauses.push(Clause::new("one_inverse", hyp, one));
    let corner = g.k.submatrix(k, n, k, n);
    let zero = ev.equal("schur_block_zero", &corner, &Matrix::zeros(n - k, n - k), cfg);
    ev.clauses.push(Clause::iff("schur_block_zero", hyp, zero));
    Ok(())
}

fn block_pinv(pm: &PartitionedMatrix, side: Side, cfg: &ToleranceConfig, ev: &mut Evaluation) -> Result<()> {
    let b = match side {
        Side::A => block_pinv_a(pm, cfg)?,
        Side::D => block_pinv_d(pm, cfg)?,
    };
    for c in &b.conditions {
        ev.residuals.insert(c.name.to_string(), c.verdict.residual);
    }
    let concl = ev.equal("block_formula", &b.m_dagger, &pinv(pm.matrix(), cfg)?, cfg);
    ev.clauses.push(Clause::iff("block_formula", b.conditions_hold, concl));
    Ok(())
}

#[derive(Clone, Copy)]
struct Inherit {
    r_class: bool,
    side: Side,
    converse: bool,
}

impl Inherit {
    const P_FORWARD_A: Self = Self {
        r_class: false,
        side: Side::A,
        converse: false,
    };
    const P_CONVERSE_A: Self = Self {
        r_class: false,
        side: Side::A,
        converse: true,
    };
    const P_FORWARD_D: Self = Self {
        r_class: false,
        side: Side::D,
        converse: false,
    };
    const P_CONVERSE_D: Self = Self {
        r_class: false,
        side: Side::D,
        converse: true,
    };
    const R_FORWARD_A: Self = Self {
        r_class: true,
        side: Side::A,
        converse: false,
    };
    const R_CONVERSE_A: Self = Self {
        r_class: true,
        side: Side::A,
        converse: true,
    };
    const R_FORWARD_D: Self = Self {
        r_class: true,
        side: Side::D,
        converse: false,
    };
    const R_CONVERSE_D: Self = Self {
        r_class: true,
        side: Side::D,
        converse: true,
    };
}

fn inherit(pm: &PartitionedMatrix, cfg: &ToleranceConfig, ev: &mut Evaluation, t: Inherit) -> Result<()> {
    let (a, b, c, d) = (pm.a(), pm.b(), pm.c(), pm.d());
    let schur = schur_complements(pm, cfg)?;
    // Range conditions on the pivot's complement (forward) or on the other
    // diagonal block (converse).
    let (anchor, anchor_name, transform, bordered) = match t.side {
        Side::A => (
            if t.converse { d.clone() } else { schur.f.clone() },
            if t.converse { "D" } else { "F" },
            gppt_a(pm, cfg)?.into_matrix(),
            build_m0(pm, cfg)?,
        ),
        Side::D => (
            if t.converse { a.clone() } else { schur.g.clone() },
            if t.converse { "A" } else { "G" },
            gppt_d(pm, cfg)?.into_matrix(),
            build_m1(pm, cfg)?,
        ),
    };
    let (col_block, row_block) = match t.side {
        Side::A => (c, b),
        Side::D => (b, c),
    };
    let r1 = range_included(col_block, &anchor, cfg)?;
    let r2 = range_included(&row_block.transpose(), &anchor.transpose(), cfg)?;
    let r1_ok = ev.verdict(&format!("range_col_in_{anchor_name}"), r1);
    let r2_ok = ev.verdict(&format!("range_row_in_{anchor_name}"), r2);

    let member = |m: &Matrix| -> Result<bool> {
        Ok(if t.r_class {
            is_r_dagger(m, cfg)?.is_member
        } else {
            is_p_dagger(m, cfg, ClassifierMode::Exact)?.is_member
        })
    };
    let bordered_in = ev.flag("bordered_member", member(&bordered)?);
    let transform_in = ev.flag("transform_member", member(&transform)?);
    let (hyp_member, concl) = if t.converse {
        let mut concl = bordered_in;
        if !t.r_class {
            let (pivot, comp) = match t.side {
                Side::A => (a, &schur.f),
                Side::D => (d, &schur.g),
            };
            concl &= ev.flag("pivot_member", member(pivot)?);
            concl &= ev.flag("complement_member", member(comp)?);
        }
        (transform_in, concl)
    } else {
        let mut concl = transform_in;
        if !t.r_class {
            concl &= ev.flag("a_member", member(a)?);
            concl &= ev.flag("d_member", member(d)?);
        }
        (bordered_in, concl)
    };
    ev.clauses
        .push(Clause::new("inheritance", r1_ok && r2_ok && hyp_member, concl));
    Ok(())
}

fn askew(pm: &PartitionedMatrix, side: Side, cfg: &ToleranceConfig, ev: &mut Evaluation) -> Result<()> {
    let (a, b, c, d) = (pm.a(), pm.b(), pm.c(), pm.d());
    let (pivot, sum, transform) = match side {
        Side::A => (a, b + &c.adjoint(), gppt_a(pm, cfg)?.into_matrix()),
        Side::D => (d, c + &b.adjoint(), gppt_d(pm, cfg)?.into_matrix()),
    };
    let ep = ev.verdict("pivot_ep", is_range_hermitian(pivot, cfg)?);
    let range = ev.verdict("range_condition", range_included(&sum, pivot, cfg)?);
    let m = pm.matrix();
    let verdicts = [
        ("m", m.clone()),
        ("m_dagger", pinv(m, cfg)?),
        ("transform", transform.clone()),
        ("transform_dagger", pinv(&transform, cfg)?),
    ]
    .into_iter()
    .map(|(name, x)| Ok(ev.flag(name, is_almost_skew_hermitian(&x, cfg)?.holds)))
    .collect::<Result<Vec<bool>>>()?;
    let agree = verdicts.iter().all(|&v| v == verdicts[0]);
    ev.clauses
        .push(Clause::new("almost_skew_equivalence", ep && range, agree));
    Ok(())
}

fn refuted(pm: &PartitionedMatrix, cfg: &ToleranceConfig, ev: &mut Evaluation) -> Result<()> {
    let (a, b, c, d) = (pm.a(), pm.b(), pm.c(), pm.d());
    let h1 = ev.verdict("null_dstar_in_cstar", null_incl(&d.adjoint(), &c.adjoint(), cfg)?);
    let h2 = ev.verdict("null_astar_in_bstar", null_incl(&a.adjoint(), &b.adjoint(), cfg)?);
    let p = gppt_a(pm, cfg)?;
    let q = gppt_d(pm, cfg)?;
    let concl = ev.equal("direct", &pinv(p.matrix(), cfg)?, q.matrix(), cfg);
    ev.clauses
        .push(Clause::new("dagger_equals_complement", h1 && h2, concl));
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::report::Classification;

    fn cfg() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    fn pm(rows: &[&[f64]], k: usize) -> PartitionedMatrix {
        PartitionedMatrix::new(Matrix::from_real_rows(rows), k).unwrap()
    }

    fn all_ones_example() -> PartitionedMatrix {
        let one = [1.0, 1.0, 1.0, 1.0];
        pm(&[&one, &one, &one, &one], 2)
    }

    #[test]
    fn t31_on_all_ones_example_confirms() {
        let r = check_theorem("T31_EQUIV", &all_ones_example(), &cfg()).unwrap();
        assert_eq!(r.classification, Classification::Confirms);
        assert!(r.flags["direct"] && r.flags["matrix_conditions"] && r.flags["null_conditions"]);
    }

    #[test]
    fn t15_on_singular_schur_example_is_hypothesis_violated() {
        let m = pm(&[&[2.0, -2.0, 1.0], &[2.0, -2.0, 1.0], &[-1.0, 1.0, -0.5]], 2);
        let r = check_theorem("T15_P_INHERIT", &m, &cfg()).unwrap();
        assert_eq!(r.classification, Classification::HypothesisViolated);
        assert!(r.flags["bordered_member"]);
        assert!(!r.flags["transform_member"]);
    }

    #[test]
    fn t32_on_block_diagonal_confirms() {
        let m = pm(&[&[1.0, 2.0, 0.0], &[2.0, 4.0, 0.0], &[0.0, 0.0, 3.0]], 2);
        let r = check_theorem("T32_INVOLUTION", &m, &cfg()).unwrap();
        assert_eq!(r.classification, Classification::Confirms);
        assert!(r.residuals["involution_a"] < 1e-12);
    }

    #[test]
    fn refuted_claim_fails_on_its_counterexample() {
        let r = check_theorem("REFUTED_DAGGER", &pm(&[&[0.0, 0.0], &[1.0, 1.0]], 1), &cfg()).unwrap();
        assert_eq!(r.classification, Classification::Counterexample);
    }

    #[test]
    fn lemma_as_printed_fails_on_scalar_instance() {
        let m = pm(&[&[1.0, 0.0], &[1.0, 0.0]], 1);
        let printed = check_theorem("L34_FACTORS", &m, &cfg()).unwrap();
        assert_eq!(printed.classification, Classification::Counterexample);
        let corrected = check_theorem("L34_FACTORS_CORRECTED", &m, &cfg()).unwrap();
        assert_eq!(corrected.classification, Classification::Confirms);
    }

    #[test]
    fn rank_theorem_on_failing_example() {
        let r = check_theorem("T_RANK_A", &pm(&[&[0.0, -2.0], &[1.0, 0.0]], 1), &cfg()).unwrap();
        assert_eq!(r.classification, Classification::HypothesisViolated);
        assert_eq!(r.residuals["rank_m"], 2.0);
        assert_eq!(r.residuals["rank_p"], 0.0);
    }

    #[test]
    fn every_id_runs_on_a_small_instance() {
        let m = pm(&[&[2.0, 1.0, 0.0], &[1.0, 3.0, 1.0], &[0.0, 1.0, 2.0]], 2);
        for (id, _) in THEOREM_IDS {
            let r = check_theorem(id, &m, &cfg()).unwrap();
            assert_eq!(r.theorem_id, *id);
        }
    }

    #[test]
    fn errors() {
        let m = all_ones_example();
        assert!(matches!(check_theorem("T0", &m, &cfg()), Err(Error::UnknownTheorem(_))));
        let z = crate::numkern::C64::new(0.0, 1.0);
        let complex = PartitionedMatrix::new(Matrix::identity(2).scale_complex(z), 1).unwrap();
        assert!(matches!(
            check_theorem("T15_P_INHERIT", &complex, &cfg()),
            Err(Error::NotReal { .. })
        ));
        assert!(check_theorem("T31_EQUIV", &complex, &cfg()).is_ok());
    }
}
