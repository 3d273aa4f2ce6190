use std::fmt;

use serde::Serialize;

use super::checkers::check_theorem;
use super::report::Classification;
use crate::error::Result;
use crate::gppt::{gppt_a, gppt_d, schur_complements, PartitionedMatrix};
use crate::lcpcone::{build_m0, build_m1, is_p_dagger, is_r_dagger, ClassifierMode};
use crate::numkern::{
    is_almost_skew_hermitian, is_range_hermitian, null_space_included, pinv, range_included, rank_of_symmetric_part,
    Matrix, ToleranceConfig,
};

/// Entrywise tolerance for equality facts.
pub const FIXTURE_EQ_TOL: f64 = 1e-9;
/// Inequality facts need a relative residual above this.
pub const FIXTURE_NEQ_TOL: f64 = 1e-6;

/// A matrix derived from a fixture's partitioned matrix.
#[derive(Clone, Debug, PartialEq)]
pub enum Quantity {
    M,
    A,
    B,
    C,
    D,
    /// `D - CA†B`
    F,
    /// `A - BD†C`
    G,
    GpptA,
    GpptD,
    PinvA,
    PinvD,
    PinvGpptA,
    M0,
    M1,
    BplusCstar,
    Adj(Box<Quantity>),
    Literal(Matrix),
}

impl Quantity {
    pub fn adj(self) -> Self {
        Quantity::Adj(Box::new(self))
    }

    pub fn eval(&self, pm: &PartitionedMatrix, cfg: &ToleranceConfig) -> Result<Matrix> {
        Ok(match self {
            Quantity::M => pm.matrix().clone(),
            Quantity::A => pm.a().clone(),
            Quantity::B => pm.b().clone(),
            Quantity::C => pm.c().clone(),
            Quantity::D => pm.d().clone(),
            Quantity::F => schur_complements(pm, cfg)?.f,
            Quantity::G => schur_complements(pm, cfg)?.g,
            Quantity::GpptA => gppt_a(pm, cfg)?.into_matrix(),
            Quantity::GpptD => gppt_d(pm, cfg)?.into_matrix(),
            Quantity::PinvA => pinv(pm.a(), cfg)?,
            Quantity::PinvD => pinv(pm.d(), cfg)?,
            Quantity::PinvGpptA => pinv(gppt_a(pm, cfg)?.matrix(), cfg)?,
            Quantity::M0 => build_m0(pm, cfg)?,
            Quantity::M1 => build_m1(pm, cfg)?,
            Quantity::BplusCstar => pm.b() + &pm.c().adjoint(),
            Quantity::Adj(q) => q.eval(pm, cfg)?.adjoint(),
            Quantity::Literal(m) => m.clone(),
        })
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quantity::Adj(q) => write!(f, "{q}*"),
            Quantity::Literal(m) => write!(f, "{m:?}"),
            Quantity::BplusCstar => f.write_str("B+C*"),
            Quantity::PinvGpptA => f.write_str("gppt(M,A)†"),
            Quantity::GpptA => f.write_str("gppt(M,A)"),
            Quantity::GpptD => f.write_str("gppt(M,D)"),
            Quantity::PinvA => f.write_str("A†"),
            Quantity::PinvD => f.write_str("D†"),
            other => write!(f, "{other:?}"),
        }
    }
}

/// A fact asserted about a fixture.
#[derive(Clone, Debug, PartialEq)]
pub enum Fact {
    /// Entrywise equal within [`FIXTURE_EQ_TOL`].
    Equal(Quantity, Quantity),
    /// Relative residual above [`FIXTURE_NEQ_TOL`].
    Differ(Quantity, Quantity),
    NullIncluded(Quantity, Quantity, bool),
    RangeIncluded(Quantity, Quantity, bool),
    RangeHermitian(Quantity, bool),
    AlmostSkew(Quantity, bool),
    RankSymmetricPart(Quantity, usize),
    PDagger(Quantity, bool),
    RDagger(Quantity, bool),
    /// `x ≠ 0`, `x ∈ R(Wᵀ)` and `x_i (Wx)_i <= 0` for every `i`.
    PWitness(Quantity, Vec<f64>),
    Theorem(&'static str, Classification),
}

impl fmt::Display for Fact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Fact::Equal(x, y) => write!(f, "{x} = {y}"),
            Fact::Differ(x, y) => write!(f, "{x} != {y}"),
            Fact::NullIncluded(x, y, e) => write!(f, "N({x}) <= N({y}) is {e}"),
            Fact::RangeIncluded(x, y, e) => write!(f, "R({x}) <= R({y}) is {e}"),
            Fact::RangeHermitian(x, e) => write!(f, "{x} range-Hermitian is {e}"),
            Fact::AlmostSkew(x, e) => write!(f, "{x} almost skew-Hermitian is {e}"),
            Fact::RankSymmetricPart(x, r) => write!(f, "rank S({x}) = {r}"),
            Fact::PDagger(x, e) => write!(f, "{x} P† is {e}"),
            Fact::RDagger(x, e) => write!(f, "{x} R† is {e}"),
            Fact::PWitness(x, v) => write!(f, "{v:?} witnesses {x} not P†"),
            Fact::Theorem(id, c) => write!(f, "{id} classifies as {c:?}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Fixture {
    pub name: &'static str,
    pub pm: PartitionedMatrix,
    pub facts: Vec<Fact>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FactOutcome {
    pub fact: String,
    pub passed: bool,
    /// Residual or observed value behind the decision.
    pub observed: f64,
}

fn real(rows: &[&[f64]]) -> Matrix {
    Matrix::from_real_rows(rows)
}

fn lit(rows: &[&[f64]]) -> Quantity {
    Quantity::Literal(real(rows))
}

fn fixture(name: &'static str, rows: &[&[f64]], k: usize, facts: Vec<Fact>) -> Fixture {
    Fixture {
        name,
        pm: PartitionedMatrix::new(real(rows), k).expect("fixture shapes are valid"),
        facts,
    }
}

const P1: [&[f64]; 3] = [&[2.0, -2.0, 1.0], &[2.0, -2.0, 1.0], &[-1.0, 1.0, -0.5]];
const H: [&[f64]; 3] = [&[0.125, 0.125, -0.25], &[-0.125, -0.125, 0.25], &[-0.25, -0.25, 0.0]];

/// The worked examples and counterexamples, with every fact they assert.
pub fn paper_fixtures() -> Vec<Fixture> {
    use Fact::*;
    use Quantity as Q;
    vec![
        fixture(
            "EX_REFUTE",
            &[&[0.0, 0.0], &[1.0, 1.0]],
            1,
            vec![
                Equal(Q::GpptA, lit(&[&[0.0, 0.0], &[0.0, 1.0]])),
                Equal(Q::GpptD, lit(&[&[0.0, 0.0], &[-1.0, 1.0]])),
                Equal(Q::PinvGpptA, Q::GpptA),
                Differ(Q::PinvGpptA, Q::GpptD),
                NullIncluded(Q::D.adj(), Q::C.adj(), true),
                NullIncluded(Q::C.adj(), Q::D.adj(), true),
                NullIncluded(Q::A.adj(), Q::B.adj(), true),
                NullIncluded(Q::B.adj(), Q::A.adj(), true),
                Theorem("REFUTED_DAGGER", Classification::Counterexample),
                Theorem("T31_EQUIV", Classification::Confirms),
            ],
        ),
        fixture(
            "EX_WEAKER",
            &[
                &[1.0, 1.0, 0.0, 1.0],
                &[1.0, 1.0, 1.0, 0.0],
                &[0.0, 1.0, 1.0, 1.0],
                &[1.0, 0.0, 1.0, 1.0],
            ],
            2,
            vec![
                Equal(Q::PinvA, lit(&[&[0.25, 0.25], &[0.25, 0.25]])),
                Equal(Q::PinvD, lit(&[&[0.25, 0.25], &[0.25, 0.25]])),
                NullIncluded(Q::A, Q::C, false),
                NullIncluded(Q::A.adj(), Q::B.adj(), false),
                NullIncluded(Q::D, Q::B, false),
                NullIncluded(Q::D.adj(), Q::C.adj(), false),
                Equal(
                    Q::GpptA,
                    lit(&[
                        &[0.25, 0.25, -0.25, -0.25],
                        &[0.25, 0.25, -0.25, -0.25],
                        &[0.25, 0.25, 0.75, 0.75],
                        &[0.25, 0.25, 0.75, 0.75],
                    ]),
                ),
                Equal(
                    Q::PinvGpptA,
                    lit(&[
                        &[0.75, 0.75, 0.25, 0.25],
                        &[0.75, 0.75, 0.25, 0.25],
                        &[-0.25, -0.25, 0.25, 0.25],
                        &[-0.25, -0.25, 0.25, 0.25],
                    ]),
                ),
                Equal(Q::PinvGpptA, Q::GpptD),
                Theorem("T31_EQUIV", Classification::Confirms),
            ],
        ),
        fixture(
            "EX_REMARK",
            &[&[1.0, 1.0, 0.0], &[1.0, 1.0, 1.0], &[1.0, 0.0, 1.0]],
            2,
            vec![
                Equal(Q::BplusCstar, lit(&[&[1.0], &[1.0]])),
                RangeIncluded(Q::BplusCstar, Q::A, true),
                RangeIncluded(Q::A, Q::BplusCstar, true),
                RangeHermitian(Q::A, true),
                NullIncluded(Q::A, Q::C, false),
                NullIncluded(Q::A.adj(), Q::B.adj(), false),
                Theorem("T_RANK_A", Classification::Confirms),
            ],
        ),
        fixture(
            "EX_RANK_FAIL",
            &[&[0.0, -2.0], &[1.0, 0.0]],
            1,
            vec![
                Equal(Q::GpptA, lit(&[&[0.0, 0.0], &[0.0, 0.0]])),
                RankSymmetricPart(Q::M, 2),
                RankSymmetricPart(Q::GpptA, 0),
                RangeIncluded(Q::BplusCstar, Q::A, false),
                AlmostSkew(Q::M, false),
                Theorem("T_RANK_A", Classification::HypothesisViolated),
            ],
        ),
        fixture(
            "EX_P1",
            &P1,
            2,
            vec![
                Equal(Q::PinvA, lit(&[&[0.125, 0.125], &[-0.125, -0.125]])),
                Equal(Q::M0, Q::M),
                Equal(Q::F, lit(&[&[0.0]])),
                RangeIncluded(Q::C, Q::F, false),
                RangeIncluded(Q::B.adj(), Q::F.adj(), false),
                PDagger(Q::M0, true),
                Equal(Q::GpptA, Q::Literal(real(&H))),
                PWitness(Q::GpptA, vec![0.0, 0.0, -1.0]),
                PDagger(Q::GpptA, false),
                PDagger(Q::A, true),
                PWitness(Q::D, vec![1.0]),
                PDagger(Q::D, false),
                Theorem("T15_P_INHERIT", Classification::HypothesisViolated),
            ],
        ),
        fixture(
            "EX_P2",
            &H,
            2,
            vec![
                Equal(Q::GpptA, Q::Literal(real(&P1))),
                Equal(Q::M0, Q::M),
                RangeIncluded(Q::C, Q::D, false),
                RangeIncluded(Q::B.adj(), Q::D.adj(), false),
                PDagger(Q::GpptA, true),
                PDagger(Q::M0, false),
                Theorem("T15_CONVERSE", Classification::HypothesisViolated),
                Theorem("T15_P_INHERIT", Classification::HypothesisViolated),
            ],
        ),
    ]
}

/// Scalar instance on which the factor lemma fails as printed.
pub fn lemma_counterexample() -> Fixture {
    use Fact::*;
    fixture(
        "LEMMA_FACTORS",
        &[&[1.0, 0.0], &[1.0, 0.0]],
        1,
        vec![
            NullIncluded(Quantity::A, Quantity::C, true),
            NullIncluded(Quantity::D.adj(), Quantity::C.adj(), false),
            Theorem("L34_FACTORS", Classification::Counterexample),
            Theorem("L34_FACTORS_CORRECTED", Classification::Confirms),
        ],
    )
}

/// Evaluates every fact of `fixture`.
pub fn replay(fixture: &Fixture, cfg: &ToleranceConfig) -> Result<Vec<FactOutcome>> {
    fixture.facts.iter().map(|f| replay_fact(&fixture.pm, f, cfg)).collect()
}

fn bool_outcome(fact: &Fact, holds: bool, expected: bool, residual: f64) -> FactOutcome {
    FactOutcome {
        fact: fact.to_string(),
        passed: holds == expected,
        observed: residual,
    }
}

fn replay_fact(pm: &PartitionedMatrix, fact: &Fact, cfg: &ToleranceConfig) -> Result<FactOutcome> {
    let ev = |q: &Quantity| q.eval(pm, cfg);
    Ok(match fact {
        Fact::Equal(x, y) => {
            let (x, y) = (ev(x)?, ev(y)?);
            let diff = if x.shape() == y.shape() {
                (&x - &y).max_abs()
            } else {
                f64::INFINITY
            };
            FactOutcome {
                fact: fact.to_string(),
                passed: diff <= FIXTURE_EQ_TOL,
                observed: diff,
            }
        }
        Fact::Differ(x, y) => {
            let (x, y) = (ev(x)?, ev(y)?);
            let r = if x.shape() == y.shape() {
                ToleranceConfig::rel_residual(&x, &y)
            } else {
                f64::INFINITY
            };
            FactOutcome {
                fact: fact.to_string(),
                passed: r > FIXTURE_NEQ_TOL,
                observed: r,
            }
        }
        Fact::NullIncluded(x, y, e) => {
            let v = null_space_included(&ev(x)?, &ev(y)?, cfg)?;
            bool_outcome(fact, v.holds, *e, v.residual)
        }
        Fact::RangeIncluded(x, y, e) => {
            let v = range_included(&ev(x)?, &ev(y)?, cfg)?;
            bool_outcome(fact, v.holds, *e, v.residual)
        }
        Fact::RangeHermitian(x, e) => {
            let v = is_range_hermitian(&ev(x)?, cfg)?;
            bool_outcome(fact, v.holds, *e, v.residual)
        }
        Fact::AlmostSkew(x, e) => {
            let v = is_almost_skew_hermitian(&ev(x)?, cfg)?;
            bool_outcome(fact, v.holds, *e, v.residual)
        }
        Fact::RankSymmetricPart(x, r) => {
            let got = rank_of_symmetric_part(&ev(x)?, cfg)?;
            FactOutcome {
                fact: fact.to_string(),
                passed: got == *r,
                observed: got as f64,
            }
        }
        Fact::PDagger(x, e) => {
            let v = is_p_dagger(&ev(x)?, cfg, ClassifierMode::Exact)?;
            bool_outcome(fact, v.is_member, *e, 0.0)
        }
        Fact::RDagger(x, e) => {
            let v = is_r_dagger(&ev(x)?, cfg)?;
            bool_outcome(fact, v.is_member, *e, 0.0)
        }
        Fact::PWitness(x, v) => {
            let w = ev(x)?;
            let xv = Matrix::column(v);
            let in_row_space = range_included(&xv, &w.adjoint(), cfg)?.holds;
            let wx = &w * &xv;
            let worst = (0..v.len())
                .map(|i| v[i] * wx[(i, 0)].re)
                .fold(f64::NEG_INFINITY, f64::max);
            let nonzero = v.iter().any(|&t| t != 0.0);
            FactOutcome {
                fact: fact.to_string(),
                passed: nonzero && in_row_space && worst <= cfg.eq_tol,
                observed: worst,
            }
        }
        Fact::Theorem(id, c) => {
            let r = check_theorem(id, pm, cfg)?;
            FactOutcome {
                fact: fact.to_string(),
                passed: r.classification == *c,
                observed: f64::from(u8::from(r.conclusion_holds)),
            }
        }
    })
}
