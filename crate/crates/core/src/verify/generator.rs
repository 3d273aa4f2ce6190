use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gppt::PartitionedMatrix;
use crate::numkern::{
    is_almost_skew_hermitian, is_range_hermitian, null_space_included, pinv, range_included, range_projector,
    row_space_projector, svd, Matrix, PredicateVerdict, ToleranceConfig, C64,
};

pub const MAX_RETRIES: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    Real,
    Complex,
}

macro_rules! constraints {
    ($($variant:ident => $name:literal, $doc:literal;)*) => {
        /// Structural constraint a generated instance must satisfy.
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
        pub enum Constraint {
            $(#[doc = $doc] #[serde(rename = $name)] $variant,)*
        }

        impl Constraint {
            pub const ALL: &'static [Constraint] = &[$(Constraint::$variant,)*];

            pub fn name(self) -> &'static str {
                match self {
                    $(Constraint::$variant => $name,)*
                }
            }
        }
    };
}

constraints! {
    NullAInC => "null_A_in_C", "`N(A) ⊆ N(C)`";
    NullAstarInBstar => "null_Astar_in_Bstar", "`N(Aᴴ) ⊆ N(Bᴴ)`";
    NullDInB => "null_D_in_B", "`N(D) ⊆ N(B)`";
    NullDstarInCstar => "null_Dstar_in_Cstar", "`N(Dᴴ) ⊆ N(Cᴴ)`";
    RangeBInA => "range_B_in_A", "`R(B) ⊆ R(A)`";
    RangeCtInAt => "range_Ct_in_At", "`R(Cᴴ) ⊆ R(Aᴴ)`";
    RangeCInF => "range_C_in_F", "`R(C) ⊆ R(F)`";
    RangeBtInFt => "range_Bt_in_Ft", "`R(Bᴴ) ⊆ R(Fᴴ)`";
    RangeCInD => "range_C_in_D", "`R(C) ⊆ R(D)`";
    RangeBtInDt => "range_Bt_in_Dt", "`R(Bᴴ) ⊆ R(Dᴴ)`";
    RangeBInG => "range_B_in_G", "`R(B) ⊆ R(G)`";
    RangeCtInGt => "range_Ct_in_Gt", "`R(Cᴴ) ⊆ R(Gᴴ)`";
    AEp => "A_ep", "`A` range-Hermitian";
    DEp => "D_ep", "`D` range-Hermitian";
    BplusCstarInRangeA => "BplusCstar_in_rangeA", "`R(B + Cᴴ) ⊆ R(A)`";
    CplusBstarInRangeD => "CplusBstar_in_rangeD", "`R(C + Bᴴ) ⊆ R(D)`";
    APosdef => "A_posdef", "`A` Hermitian, positive definite on its range";
    DPosdef => "D_posdef", "`D` Hermitian, positive definite on its range";
    FPosdef => "F_posdef", "`F` Hermitian, positive definite on its range";
    GPosdef => "G_posdef", "`G` Hermitian, positive definite on its range";
    MAlmostSkew => "M_almost_skew", "`rank(S(M)) = 1`";
    GramColsBInA => "gram_cols_B_in_A", "column split `M = (A | B)` at `k` with `R(B) ⊆ R(A)`";
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Constraint {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Constraint::ALL
            .iter()
            .copied()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::InvalidSpec(format!("unknown constraint `{s}`")))
    }
}

/// Recipe for a random partitioned matrix.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub n: usize,
    pub k: usize,
    pub field: Field,
    pub constraints: BTreeSet<Constraint>,
    /// Rank of `A` (of `G` when a `G` constraint is present); random when absent.
    pub rank_a: Option<usize>,
    /// Rank of `D` (of `F` when an `F` constraint is present); random when absent.
    pub rank_d: Option<usize>,
    pub seed: u64,
    /// Scale of the free factors coupling the diagonal blocks.
    pub coupling: f64,
}

impl GeneratorSpec {
    pub fn new(n: usize, k: usize, field: Field, seed: u64) -> Self {
        Self {
            n,
            k,
            field,
            constraints: BTreeSet::new(),
            rank_a: None,
            rank_d: None,
            seed,
            coupling: 1.0,
        }
    }

    pub fn with(mut self, constraints: &[Constraint]) -> Self {
        self.constraints.extend(constraints.iter().copied());
        self
    }

    pub fn with_ranks(mut self, rank_a: Option<usize>, rank_d: Option<usize>) -> Self {
        self.rank_a = rank_a;
        self.rank_d = rank_d;
        self
    }

    pub fn with_coupling(mut self, coupling: f64) -> Self {
        self.coupling = coupling;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    fn has(&self, c: Constraint) -> bool {
        self.constraints.contains(&c)
    }

    fn has_any(&self, cs: &[Constraint]) -> bool {
        cs.iter().any(|&c| self.has(c))
    }

    fn validate(&self) -> Result<Path> {
        use Constraint::*;
        if self.k > self.n {
            return Err(Error::InvalidSpec(format!("split {} exceeds size {}", self.k, self.n)));
        }
        if self.rank_a.is_some_and(|r| r > self.k) || self.rank_d.is_some_and(|r| r > self.n - self.k) {
            return Err(Error::InvalidSpec("target rank exceeds block size".into()));
        }
        if !(self.coupling.is_finite() && self.coupling >= 0.0) {
            return Err(Error::InvalidSpec("coupling must be finite and nonnegative".into()));
        }
        let f_path = self.has_any(&[RangeCInF, RangeBtInFt, FPosdef]);
        let g_path = self.has_any(&[RangeBInG, RangeCtInGt, GPosdef]);
        let whole = self.has_any(&[MAlmostSkew, GramColsBInA]);
        let path = match (f_path, g_path, whole) {
            (false, false, false) => Path::Plain,
            (true, false, false) => Path::Schur,
            (false, true, false) => Path::SchurD,
            (false, false, true) if !self.has(MAlmostSkew) || !self.has(GramColsBInA) => Path::Whole,
            _ => return Err(Error::InvalidSpec("constraints need incompatible constructions".into())),
        };
        let derived_d = path == Path::Schur && self.has_any(&[DEp, DPosdef, CplusBstarInRangeD]);
        let derived_a = path == Path::SchurD && self.has_any(&[AEp, APosdef, BplusCstarInRangeA]);
        if derived_d || derived_a {
            return Err(Error::InvalidSpec(
                "a derived diagonal block cannot be shaped directly".into(),
            ));
        }
        Ok(path)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Path {
    Plain,
    /// Build `A` and `F`, then `D = F + CA†B`.
    Schur,
    /// Build `D` and `G`, then `A = G + BD†C`.
    SchurD,
    Whole,
}

/// Random instance satisfying every requested constraint, verified with the
/// default tolerances.
pub fn generate(spec: &GeneratorSpec) -> Result<PartitionedMatrix> {
    generate_with(spec, &ToleranceConfig::default())
}

pub fn generate_with(spec: &GeneratorSpec, cfg: &ToleranceConfig) -> Result<PartitionedMatrix> {
    let path = spec.validate()?;
    for attempt in 0..MAX_RETRIES {
        let mut rng = ChaCha8Rng::seed_from_u64(sub_seed(spec.seed, attempt as u64));
        let pm = build(spec, path, &mut rng, cfg)?;
        if well_conditioned(&pm, cfg)?
            && spec
                .constraints
                .iter()
                .all(|&c| constraint_verdict(c, &pm, cfg).is_ok_and(|v| v.holds))
        {
            return Ok(pm);
        }
    }
    Err(Error::GeneratorExhausted {
        constraints: spec.constraints.iter().map(|c| c.name().to_string()).collect(),
        retries: MAX_RETRIES,
    })
}

/// Smallest ratio `σ / max(1, σ_max(M))` accepted for a nonzero singular
/// value of `A`, `D`, `F` or `G`.
pub const MIN_RELATIVE_GAP: f64 = 1e-4;

/// Every block that gets pseudo-inverted has its nonzero singular values well
/// separated from zero.
pub fn well_conditioned(pm: &PartitionedMatrix, cfg: &ToleranceConfig) -> Result<bool> {
    let scale = svd(pm.matrix(), cfg)?.sigma_max().max(1.0);
    let schur = crate::gppt::schur_complements(pm, cfg)?;
    for x in [pm.a(), pm.d(), &schur.f, &schur.g] {
        let s = svd(x, cfg)?;
        let r = s.rank(scale, cfg);
        if s.sigma[..r].iter().any(|&v| v < MIN_RELATIVE_GAP * scale) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// SplitMix64 of `seed + index`, used to derive independent sub-seeds.
pub fn sub_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed
        .wrapping_add(index.wrapping_mul(0x9E37_79B9_7F4A_7C15))
        .wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Checks one constraint on an instance.
pub fn constraint_verdict(c: Constraint, pm: &PartitionedMatrix, cfg: &ToleranceConfig) -> Result<PredicateVerdict> {
    use Constraint::*;
    let (a, b, cc, d) = (pm.a(), pm.b(), pm.c(), pm.d());
    let schur = || crate::gppt::schur_complements(pm, cfg);
    Ok(match c {
        NullAInC => null_space_included(a, cc, cfg)?,
        NullAstarInBstar => null_space_included(&a.adjoint(), &b.adjoint(), cfg)?,
        NullDInB => null_space_included(d, b, cfg)?,
        NullDstarInCstar => null_space_included(&d.adjoint(), &cc.adjoint(), cfg)?,
        RangeBInA => range_included(b, a, cfg)?,
        RangeCtInAt => range_included(&cc.adjoint(), &a.adjoint(), cfg)?,
        RangeCInF => range_included(cc, &schur()?.f, cfg)?,
        RangeBtInFt => range_included(&b.adjoint(), &schur()?.f.adjoint(), cfg)?,
        RangeCInD => range_included(cc, d, cfg)?,
        RangeBtInDt => range_included(&b.adjoint(), &d.adjoint(), cfg)?,
        RangeBInG => range_included(b, &schur()?.g, cfg)?,
        RangeCtInGt => range_included(&cc.adjoint(), &schur()?.g.adjoint(), cfg)?,
        AEp => is_range_hermitian(a, cfg)?,
        DEp => is_range_hermitian(d, cfg)?,
        BplusCstarInRangeA => range_included(&(b + &cc.adjoint()), a, cfg)?,
        CplusBstarInRangeD => range_included(&(cc + &b.adjoint()), d, cfg)?,
        APosdef => hermitian_verdict(a, cfg),
        DPosdef => hermitian_verdict(d, cfg),
        FPosdef => hermitian_verdict(&schur()?.f, cfg),
        GPosdef => hermitian_verdict(&schur()?.g, cfg),
        MAlmostSkew => is_almost_skew_hermitian(pm.matrix(), cfg)?,
        GramColsBInA => {
            let m = pm.matrix();
            let (n, k) = (pm.n(), pm.split());
            range_included(&m.submatrix(0, n, k, n), &m.submatrix(0, n, 0, k), cfg)?
        }
    })
}

fn hermitian_verdict(x: &Matrix, cfg: &ToleranceConfig) -> PredicateVerdict {
    PredicateVerdict::from_residual(ToleranceConfig::rel_residual(x, &x.adjoint()), cfg)
}

fn scalar(rng: &mut ChaCha8Rng, field: Field) -> C64 {
    let re: f64 = StandardNormal.sample(rng);
    match field {
        Field::Real => C64::new(re, 0.0),
        Field::Complex => C64::new(re, StandardNormal.sample(rng)) / std::f64::consts::SQRT_2,
    }
}

/// Matrix of independent standard Gaussian entries.
pub fn gaussian(rng: &mut ChaCha8Rng, rows: usize, cols: usize, field: Field) -> Matrix {
    Matrix::from_fn(rows, cols, |_, _| scalar(rng, field))
}

/// `rows × r` matrix with orthonormal columns (modified Gram–Schmidt on a
/// Gaussian sample).
pub fn orthonormal_columns(rng: &mut ChaCha8Rng, rows: usize, r: usize, field: Field) -> Matrix {
    assert!(r <= rows);
    loop {
        let mut q = gaussian(rng, rows, r, field);
        let mut ok = true;
        for j in 0..r {
            for p in 0..j {
                let proj: C64 = (0..rows).map(|i| q[(i, p)].conj() * q[(i, j)]).sum();
                for i in 0..rows {
                    let v = q[(i, p)];
                    q[(i, j)] -= proj * v;
                }
            }
            let norm = (0..rows).map(|i| q[(i, j)].norm_sqr()).sum::<f64>().sqrt();
            if norm < 1e-8 {
                ok = false;
                break;
            }
            for i in 0..rows {
                q[(i, j)] /= norm;
            }
        }
        if ok {
            return q;
        }
    }
}

fn singular_values(rng: &mut ChaCha8Rng, r: usize) -> Vec<f64> {
    (0..r).map(|_| rng.random_range(0.5..2.0)).collect()
}

/// Rank-`r` matrix `U Σ Vᴴ` with singular values in `[0.5, 2)`.
pub fn random_rank(rng: &mut ChaCha8Rng, rows: usize, cols: usize, r: usize, field: Field) -> Matrix {
    let u = orthonormal_columns(rng, rows, r, field);
    let v = orthonormal_columns(rng, cols, r, field);
    let s = Matrix::diag_real(&singular_values(rng, r));
    &(&u * &s) * &v.adjoint()
}

/// Range-Hermitian `n × n` matrix of rank `r`: `Q T Qᴴ` with `Q` having
/// orthonormal columns and `T` nonsingular (Hermitian positive definite when
/// `posdef`).
pub fn random_ep(rng: &mut ChaCha8Rng, n: usize, r: usize, field: Field, posdef: bool) -> Matrix {
    let q = orthonormal_columns(rng, n, r, field);
    let t = if posdef {
        let w = orthonormal_columns(rng, r, r, field);
        let s = Matrix::diag_real(&singular_values(rng, r));
        &(&w * &s) * &w.adjoint()
    } else {
        random_rank(rng, r, r, r, field)
    };
    &(&q * &t) * &q.adjoint()
}

fn pick_rank(rng: &mut ChaCha8Rng, target: Option<usize>, max: usize) -> usize {
    target.unwrap_or_else(|| rng.random_range(0..=max))
}

fn block(rng: &mut ChaCha8Rng, n: usize, r: usize, field: Field, ep: bool, posdef: bool) -> Matrix {
    if posdef || ep {
        random_ep(rng, n, r, field, posdef)
    } else {
        random_rank(rng, n, n, r, field)
    }
}

fn build(spec: &GeneratorSpec, path: Path, rng: &mut ChaCha8Rng, cfg: &ToleranceConfig) -> Result<PartitionedMatrix> {
    use Constraint::*;
    let (n, k, field) = (spec.n, spec.k, spec.field);
    let rest = n - k;
    let rank_a = pick_rank(rng, spec.rank_a, k);
    let rank_d = pick_rank(rng, spec.rank_d, rest);
    let identity_or = |cond: bool, p: &dyn Fn() -> Result<Matrix>, size: usize| -> Result<Matrix> {
        if cond {
            p()
        } else {
            Ok(Matrix::identity(size))
        }
    };

    let free = |rng: &mut ChaCha8Rng, rows: usize, cols: usize| gaussian(rng, rows, cols, field).scale(spec.coupling);

    let (a, b, c, d) = match path {
        Path::Whole => return build_whole(spec, rank_a, rng),
        Path::Plain => {
            let a = block(rng, k, rank_a, field, spec.has(AEp), spec.has(APosdef));
            let d = block(rng, rest, rank_d, field, spec.has(DEp), spec.has(DPosdef));
            let left_b = identity_or(
                spec.has_any(&[RangeBInA, NullAstarInBstar]),
                &|| range_projector(&a, cfg),
                k,
            )?;
            let right_b = identity_or(
                spec.has_any(&[RangeBtInDt, NullDInB]),
                &|| row_space_projector(&d, cfg),
                rest,
            )?;
            let left_c = identity_or(
                spec.has_any(&[RangeCInD, NullDstarInCstar]),
                &|| range_projector(&d, cfg),
                rest,
            )?;
            let right_c = identity_or(
                spec.has_any(&[RangeCtInAt, NullAInC]),
                &|| row_space_projector(&a, cfg),
                k,
            )?;
            let mut b = &(&left_b * &free(rng, k, rest)) * &right_b;
            let mut c = &(&left_c * &free(rng, rest, k)) * &right_c;
            if spec.has(BplusCstarInRangeA) {
                b = &(&a * &free(rng, k, rest)) - &c.adjoint();
            }
            if spec.has(CplusBstarInRangeD) {
                c = &(&d * &free(rng, rest, k)) - &b.adjoint();
            }
            (a, b, c, d)
        }
        Path::Schur => {
            let a = block(rng, k, rank_a, field, spec.has(AEp), spec.has(APosdef));
            let f = block(rng, rest, rank_d, field, false, spec.has(FPosdef));
            let left_c = if spec.has(RangeCInF) {
                f.clone()
            } else {
                Matrix::identity(rest)
            };
            let right_c = identity_or(
                spec.has_any(&[RangeCtInAt, NullAInC]),
                &|| row_space_projector(&a, cfg),
                k,
            )?;
            let left_b = identity_or(
                spec.has_any(&[RangeBInA, NullAstarInBstar]),
                &|| range_projector(&a, cfg),
                k,
            )?;
            let right_b = if spec.has(RangeBtInFt) {
                f.clone()
            } else {
                Matrix::identity(rest)
            };
            let c = &(&left_c * &free(rng, rest, k)) * &right_c;
            let b = &(&left_b * &free(rng, k, rest)) * &right_b;
            let d = &f + &(&c * &(&pinv(&a, cfg)? * &b));
            (a, b, c, d)
        }
        Path::SchurD => {
            let d = block(rng, rest, rank_d, field, spec.has(DEp), spec.has(DPosdef));
            let g = block(rng, k, rank_a, field, false, spec.has(GPosdef));
            let left_b = if spec.has(RangeBInG) {
                g.clone()
            } else {
                Matrix::identity(k)
            };
            let right_b = identity_or(
                spec.has_any(&[RangeBtInDt, NullDInB]),
                &|| row_space_projector(&d, cfg),
                rest,
            )?;
            let left_c = identity_or(
                spec.has_any(&[RangeCInD, NullDstarInCstar]),
                &|| range_projector(&d, cfg),
                rest,
            )?;
            let right_c = if spec.has(RangeCtInGt) {
                g.clone()
            } else {
                Matrix::identity(k)
            };
            let b = &(&left_b * &free(rng, k, rest)) * &right_b;
            let c = &(&left_c * &free(rng, rest, k)) * &right_c;
            let a = &g + &(&b * &(&pinv(&d, cfg)? * &c));
            (a, b, c, d)
        }
    };
    PartitionedMatrix::from_blocks(&a, &b, &c, &d)
}

fn build_whole(spec: &GeneratorSpec, rank_a: usize, rng: &mut ChaCha8Rng) -> Result<PartitionedMatrix> {
    let (n, k, field) = (spec.n, spec.k, spec.field);
    let m = if spec.has(Constraint::MAlmostSkew) {
        // Skew-Hermitian part plus a rank-one Hermitian part.
        let g = gaussian(rng, n, n, field);
        let skew = (&g - &g.adjoint()).scale(0.5);
        let v = gaussian(rng, n, 1, field);
        let sigma = rng.random_range(0.5..2.0) * if rng.random_bool(0.5) { 1.0 } else { -1.0 };
        &skew + &(&v * &v.adjoint()).scale(sigma)
    } else {
        let left = random_rank(rng, n, k, rank_a, field);
        let right = &left * &gaussian(rng, k, n - k, field).scale(spec.coupling);
        left.hstack(&right)?
    };
    PartitionedMatrix::new(m, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkern::rank;

    fn cfg() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    #[test]
    fn unconstrained_is_deterministic() {
        let spec = GeneratorSpec::new(4, 2, Field::Complex, 11);
        let x = generate(&spec).unwrap();
        let y = generate(&spec).unwrap();
        assert_eq!(x, y);
        assert_ne!(x, generate(&spec.clone().with_seed(12)).unwrap());
    }

    #[test]
    fn range_constraint_is_satisfied() {
        for seed in 0..20 {
            let spec = GeneratorSpec::new(5, 2, Field::Real, seed).with(&[Constraint::RangeBInA]);
            let pm = generate(&spec).unwrap();
            assert!(range_included(pm.b(), pm.a(), &cfg()).unwrap().holds);
        }
    }

    #[test]
    fn ep_block_of_requested_rank() {
        let spec = GeneratorSpec::new(4, 2, Field::Complex, 5)
            .with(&[Constraint::AEp])
            .with_ranks(Some(1), None);
        let pm = generate(&spec).unwrap();
        assert!(is_range_hermitian(pm.a(), &cfg()).unwrap().holds);
        assert_eq!(rank(pm.a(), &cfg()).unwrap(), 1);
    }

    #[test]
    fn every_single_constraint_is_generated() {
        for &c in Constraint::ALL {
            for (n, k) in [(2, 1), (4, 2), (6, 3)] {
                for field in [Field::Real, Field::Complex] {
                    let spec = GeneratorSpec::new(n, k, field, 3).with(&[c]);
                    let pm = generate(&spec).unwrap_or_else(|e| panic!("{c}: {e}"));
                    assert!(constraint_verdict(c, &pm, &cfg()).unwrap().holds, "{c}");
                }
            }
        }
    }

    #[test]
    fn constraint_names_round_trip() {
        for &c in Constraint::ALL {
            assert_eq!(c.name().parse::<Constraint>().unwrap(), c);
        }
        assert!("nope".parse::<Constraint>().is_err());
    }

    #[test]
    fn invalid_specs() {
        assert!(generate(&GeneratorSpec::new(2, 3, Field::Real, 0)).is_err());
        let both = GeneratorSpec::new(4, 2, Field::Real, 0).with(&[Constraint::RangeCInF, Constraint::RangeBInG]);
        assert!(matches!(generate(&both), Err(Error::InvalidSpec(_))));
        let rank = GeneratorSpec::new(4, 2, Field::Real, 0).with_ranks(Some(3), None);
        assert!(matches!(generate(&rank), Err(Error::InvalidSpec(_))));
    }

    #[test]
    fn sub_seeds_differ() {
        let seeds: BTreeSet<u64> = (0..100).map(|i| sub_seed(7, i)).collect();
        assert_eq!(seeds.len(), 100);
    }
}
