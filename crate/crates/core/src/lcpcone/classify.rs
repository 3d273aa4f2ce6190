use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use super::simplex::LinearSystem;
use crate::error::{Error, Result};
use crate::numkern::{null_space_basis, row_space_projector, Matrix, ToleranceConfig, C64};

/// Largest `n` accepted by the exact enumeration procedures by default.
pub const DEFAULT_SIZE_CAP: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ExactEnumeration,
    RandomizedFalsifier,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ClassifierMode {
    Exact,
    Randomized { samples: usize, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassVerdict {
    pub is_member: bool,
    /// A nonzero violating vector when `is_member` is false.
    pub witness: Option<Vec<f64>>,
    pub method: Method,
    /// Coordinate products `x_i (Mx)_i` of the witness; empty for members.
    pub residuals: Vec<f64>,
}

impl ClassVerdict {
    fn member(method: Method) -> Self {
        Self {
            is_member: true,
            witness: None,
            method,
            residuals: Vec::new(),
        }
    }

    fn violated(m: &Dense, x: Vec<f64>, method: Method) -> Self {
        let mx = m.apply(&x);
        let residuals = x.iter().zip(&mx).map(|(a, b)| a * b).collect();
        Self {
            is_member: false,
            witness: Some(x),
            method,
            residuals,
        }
    }
}

/// Real square matrix in row-major `Vec<Vec<f64>>` form.
#[derive(Clone, Debug)]
pub(crate) struct Dense {
    pub n: usize,
    pub rows: Vec<Vec<f64>>,
}

impl Dense {
    pub fn from_matrix(m: &Matrix, op: &'static str) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::NotSquare {
                op,
                rows: m.rows(),
                cols: m.cols(),
            });
        }
        if !m.is_real() {
            return Err(Error::NotReal { op });
        }
        let n = m.rows();
        let data = m.real_parts();
        Ok(Self {
            n,
            rows: data.chunks(n.max(1)).take(n).map(|r| r.to_vec()).collect(),
        })
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        self.rows
            .iter()
            .map(|r| r.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn max_abs(&self) -> f64 {
        self.rows.iter().flatten().fold(0.0, |m, v| m.max(v.abs()))
    }
}

pub(crate) fn check_size(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        Err(Error::SizeCap { n, cap })
    } else {
        Ok(())
    }
}

/// `M†M` as a real matrix: the orthogonal projector onto `R(Mᵀ)`.
pub fn restricted_row_space_projector(m: &Matrix, cfg: &ToleranceConfig) -> Result<Matrix> {
    Dense::from_matrix(m, "restricted_row_space_projector")?;
    Ok(row_space_projector(m, cfg)?.map(|z| z.re.into()))
}

/// Orthonormal real basis of `N(M)` as rows, together with the rank of `M`.
/// Entries below the rank tolerance are flushed to zero.
/// `x ∈ R(Mᵀ)` iff every row annihilates `x`.
pub(crate) fn row_space_complement(m: &Matrix, cfg: &ToleranceConfig) -> Result<(Dense, usize)> {
    Dense::from_matrix(m, "row_space_complement")?;
    let n = m.cols();
    let basis = null_space_basis(m, cfg)?;
    let noise = cfg.rank_tol_rel.max(16.0 * f64::EPSILON) * n as f64;
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for j in 0..basis.cols() {
        let col: Vec<C64> = (0..n).map(|i| basis[(i, j)]).collect();
        let pivot = col
            .iter()
            .copied()
            .fold(C64::new(0.0, 0.0), |p, z| if z.norm() > p.norm() { z } else { p });
        let phase = pivot.conj() / pivot.norm();
        let rotated: Vec<C64> = col.iter().map(|z| z * phase).collect();
        for part in [
            rotated.iter().map(|z| z.re).collect::<Vec<f64>>(),
            rotated.iter().map(|z| z.im).collect(),
        ] {
            let mut v = part;
            for r in &rows {
                let d: f64 = r.iter().zip(&v).map(|(a, b)| a * b).sum();
                v.iter_mut().zip(r).for_each(|(x, y)| *x -= d * y);
            }
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm > 1e-8 {
                rows.push(
                    v.iter()
                        .map(|x| x / norm)
                        .map(|x| if x.abs() <= noise { 0.0 } else { x })
                        .collect(),
                );
            }
        }
    }
    Ok((Dense { n, rows }, n - basis.cols()))
}

fn in_row_space(comp: &Dense, x: &[f64], cfg: &ToleranceConfig) -> bool {
    let scale = x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let r = comp.apply(x).iter().fold(0.0f64, |m, v| m.max(v.abs()));
    r <= 10.0 * cfg.eq_tol * scale
}

/// Independent re-check of a P† violation: nonzero, in `R(Mᵀ)`, and every
/// `x_i (Mx)_i <= 0` within `10 eq_tol`.
pub(crate) fn is_p_violation(m: &Dense, comp: &Dense, x: &[f64], cfg: &ToleranceConfig) -> bool {
    let scale = x.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    if scale == 0.0 || !in_row_space(comp, x, cfg) {
        return false;
    }
    let mx = m.apply(x);
    let bound = 10.0 * cfg.eq_tol * (1.0 + m.max_abs()) * scale * scale;
    x.iter().zip(&mx).all(|(a, b)| a * b <= bound)
}

/// Feasibility of `{x = S u : u >= 0, Nᵀx = 0, s_i (Mx)_i <= 0, Σu = 1}` with
/// `N` an orthonormal basis of `N(M)`.
/// Coordinates flagged in `zero` are forced to vanish and their product
/// constraint is dropped.
fn sign_pattern_lp(m: &Dense, comp: &Dense, signs: &[f64], zero: &[bool]) -> Result<Option<Vec<f64>>> {
    let n = m.n;
    let mut sys = LinearSystem::new(n);
    for i in (0..n).filter(|&i| zero[i]) {
        let mut row = vec![0.0; n];
        row[i] = 1.0;
        sys.push_eq(row, 0.0);
    }
    for row in &comp.rows {
        sys.push_eq((0..n).map(|j| row[j] * signs[j]).collect(), 0.0);
    }
    for (i, row) in m.rows.iter().enumerate().filter(|&(i, _)| !zero[i]) {
        sys.push_le((0..n).map(|j| signs[i] * row[j] * signs[j]).collect(), 0.0);
    }
    sys.push_eq(vec![1.0; n], 1.0);
    Ok(sys
        .feasible_point()?
        .map(|u| u.iter().zip(signs).map(|(a, s)| a * s).collect()))
}

/// Greedily zeroes coordinates of a violation within its sign pattern,
/// leaving a witness whose support cannot shrink one entry at a time.
fn sparsify(m: &Dense, comp: &Dense, signs: &[f64], x: Vec<f64>, cfg: &ToleranceConfig) -> Result<Vec<f64>> {
    let n = m.n;
    let mut zero: Vec<bool> = x.iter().map(|v| v.abs() <= 1e-12).collect();
    let mut best = x;
    for i in 0..n {
        if zero[i] {
            continue;
        }
        zero[i] = true;
        match sign_pattern_lp(m, comp, signs, &zero)? {
            Some(y) if is_p_violation(m, comp, &y, cfg) => best = y,
            _ => zero[i] = false,
        }
    }
    Ok(best)
}

pub fn is_p_dagger(m: &Matrix, cfg: &ToleranceConfig, mode: ClassifierMode) -> Result<ClassVerdict> {
    is_p_dagger_with_cap(m, cfg, mode, DEFAULT_SIZE_CAP)
}

/// P† test: member iff no nonzero `x ∈ R(Mᵀ)` has `x_i (Mx)_i <= 0` for all `i`.
///
/// Exact mode solves one linear feasibility problem per sign pattern with
/// `s_1 = +1`; `x` and `-x` violate together, so the other half is redundant.
/// Randomized mode searches the unit sphere of `R(Mᵀ)` and can only refute.
pub fn is_p_dagger_with_cap(
    m: &Matrix,
    cfg: &ToleranceConfig,
    mode: ClassifierMode,
    cap: usize,
) -> Result<ClassVerdict> {
    let dense = Dense::from_matrix(m, "is_p_dagger")?;
    let n = dense.n;
    match mode {
        ClassifierMode::Exact => {
            check_size(n, cap)?;
            let (comp, rank) = row_space_complement(m, cfg)?;
            if rank == 0 {
                return Ok(ClassVerdict::member(Method::ExactEnumeration));
            }
            for mask in 0..1usize << (n - 1) {
                let signs: Vec<f64> = (0..n)
                    .map(|i| if i > 0 && mask >> (i - 1) & 1 == 1 { -1.0 } else { 1.0 })
                    .collect();
                if let Some(x) = sign_pattern_lp(&dense, &comp, &signs, &vec![false; n])? {
                    if is_p_violation(&dense, &comp, &x, cfg) {
                        let x = sparsify(&dense, &comp, &signs, x, cfg)?;
                        return Ok(ClassVerdict::violated(&dense, x, Method::ExactEnumeration));
                    }
                }
            }
            Ok(ClassVerdict::member(Method::ExactEnumeration))
        }
        ClassifierMode::Randomized { samples, seed } => randomized_p_dagger(m, &dense, cfg, samples, seed),
    }
}

fn randomized_p_dagger(
    m: &Matrix,
    dense: &Dense,
    cfg: &ToleranceConfig,
    samples: usize,
    seed: u64,
) -> Result<ClassVerdict> {
    let n = dense.n;
    let p = Dense::from_matrix(&restricted_row_space_projector(m, cfg)?, "is_p_dagger")?;
    let (comp, rank) = row_space_complement(m, cfg)?;
    if rank == 0 {
        return Ok(ClassVerdict::member(Method::RandomizedFalsifier));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let scale = 1.0 + dense.max_abs();
    let objective = |x: &[f64]| {
        let mx = dense.apply(x);
        x.iter().zip(&mx).map(|(a, b)| a * b).fold(f64::NEG_INFINITY, f64::max)
    };
    let project = |v: Vec<f64>| -> Option<Vec<f64>> {
        let x = p.apply(&v);
        let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        (norm > 1e-12).then(|| x.into_iter().map(|v| v / norm).collect())
    };
    let gauss = |rng: &mut ChaCha8Rng| -> Vec<f64> { (0..n).map(|_| StandardNormal.sample(rng)).collect() };

    for _ in 0..samples {
        let Some(mut x) = project(gauss(&mut rng)) else {
            continue;
        };
        let mut f = objective(&x);
        let mut step = 0.5;
        for _ in 0..40 {
            if f <= 0.0 {
                break;
            }
            let g = gauss(&mut rng);
            let trial: Vec<f64> = x.iter().zip(&g).map(|(a, b)| a + step * b).collect();
            if let Some(y) = project(trial) {
                let fy = objective(&y);
                if fy < f {
                    x = y;
                    f = fy;
                    continue;
                }
            }
            step *= 0.8;
        }
        if f <= 1e-3 * scale {
            if is_p_violation(dense, &comp, &x, cfg) {
                return Ok(ClassVerdict::violated(dense, x, Method::RandomizedFalsifier));
            }
            // Polish within the orthant the search ended in.
            let mx = dense.apply(&x);
            let signs: Vec<f64> = x
                .iter()
                .zip(&mx)
                .map(|(a, b)| {
                    if a.abs() > 1e-6 {
                        a.signum()
                    } else if *b > 0.0 {
                        -1.0
                    } else {
                        1.0
                    }
                })
                .collect();
            if let Some(w) = sign_pattern_lp(dense, &comp, &signs, &vec![false; n])? {
                if is_p_violation(dense, &comp, &w, cfg) {
                    return Ok(ClassVerdict::violated(dense, w, Method::RandomizedFalsifier));
                }
            }
        }
    }
    Ok(ClassVerdict::member(Method::RandomizedFalsifier))
}

pub fn is_r_dagger(m: &Matrix, cfg: &ToleranceConfig) -> Result<ClassVerdict> {
    is_r_dagger_with_cap(m, cfg, DEFAULT_SIZE_CAP)
}

/// R† test: member iff the only `x ∈ R(Mᵀ)` with `x >= 0`, `Mx >= 0`,
/// `xᵀMx = 0` is zero. One feasibility problem per nonempty support `α`:
/// `x` vanishes off `α`, `(Mx)_α = 0`, `Mx >= 0`, `x ⊥ N(M)`, `Σx_α = 1`.
pub fn is_r_dagger_with_cap(m: &Matrix, cfg: &ToleranceConfig, cap: usize) -> Result<ClassVerdict> {
    let dense = Dense::from_matrix(m, "is_r_dagger")?;
    let n = dense.n;
    check_size(n, cap)?;
    let (comp, rank) = row_space_complement(m, cfg)?;
    if rank == 0 {
        return Ok(ClassVerdict::member(Method::ExactEnumeration));
    }
    for mask in 1..1usize << n {
        let support: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let mut sys = LinearSystem::new(support.len());
        let restrict = |row: &[f64]| support.iter().map(|&j| row[j]).collect::<Vec<f64>>();
        for (i, row) in dense.rows.iter().enumerate() {
            if mask >> i & 1 == 1 {
                sys.push_eq(restrict(row), 0.0);
            } else {
                sys.push_le(restrict(row).into_iter().map(|v| -v).collect(), 0.0);
            }
        }
        for row in &comp.rows {
            sys.push_eq(restrict(row), 0.0);
        }
        sys.push_eq(vec![1.0; support.len()], 1.0);
        if let Some(z) = sys.feasible_point()? {
            let mut x = vec![0.0; n];
            for (&j, v) in support.iter().zip(z) {
                x[j] = v;
            }
            if is_r_violation(&dense, &comp, &x, cfg) {
                return Ok(ClassVerdict::violated(&dense, x, Method::ExactEnumeration));
            }
        }
    }
    Ok(ClassVerdict::member(Method::ExactEnumeration))
}

/// Independent re-check of an R† violation: nonzero `x >= 0` in `R(Mᵀ)`
/// with `Mx >= 0` and `xᵀMx = 0` within `10 eq_tol`.
pub(crate) fn is_r_violation(m: &Dense, comp: &Dense, x: &[f64], cfg: &ToleranceConfig) -> bool {
    let scale = x.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    if scale == 0.0 || !in_row_space(comp, x, cfg) {
        return false;
    }
    let bound = 10.0 * cfg.eq_tol * (1.0 + m.max_abs()) * scale;
    let mx = m.apply(x);
    x.iter().all(|&v| v >= -bound)
        && mx.iter().all(|&v| v >= -bound)
        && x.iter().zip(&mx).map(|(a, b)| a * b).sum::<f64>().abs() <= bound * scale
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkern::pinv;

    fn cfg() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    fn m0() -> Matrix {
        Matrix::from_real_rows(&[[2.0, -2.0, 1.0], [2.0, -2.0, 1.0], [-1.0, 1.0, -0.5]])
    }

    fn h() -> Matrix {
        Matrix::from_real_rows(&[[0.125, 0.125, -0.25], [-0.125, -0.125, 0.25], [-0.25, -0.25, 0.0]])
    }

    #[test]
    fn projector_examples() {
        let p = restricted_row_space_projector(&Matrix::identity(3), &cfg()).unwrap();
        assert!((&p - &Matrix::identity(3)).max_abs() < 1e-14);
        assert_eq!(
            restricted_row_space_projector(&Matrix::zeros(2, 2), &cfg()).unwrap(),
            Matrix::zeros(2, 2)
        );
        // R(M0ᵀ) = span{(2,-2,1)}: projector vvᵀ/9.
        let v = Matrix::column(&[2.0, -2.0, 1.0]);
        let expected = (&v * &v.transpose()).scale(1.0 / 9.0);
        assert!((&restricted_row_space_projector(&m0(), &cfg()).unwrap() - &expected).max_abs() < 1e-14);
        assert!(matches!(
            restricted_row_space_projector(&Matrix::zeros(2, 3), &cfg()),
            Err(Error::NotSquare { .. })
        ));
    }

    #[test]
    fn p_dagger_examples() {
        assert!(is_p_dagger(&m0(), &cfg(), ClassifierMode::Exact).unwrap().is_member);
        assert!(
            is_p_dagger(&Matrix::identity(3), &cfg(), ClassifierMode::Exact)
                .unwrap()
                .is_member
        );
        let v = is_p_dagger(&h(), &cfg(), ClassifierMode::Exact).unwrap();
        assert!(!v.is_member);
        let w = v.witness.unwrap();
        assert!(v.residuals.iter().all(|&r| r <= 1e-12));
        let dense = Dense::from_matrix(&h(), "t").unwrap();
        let (comp, _) = row_space_complement(&h(), &cfg()).unwrap();
        assert!(is_p_violation(&dense, &comp, &w, &cfg()));
        assert!(is_p_violation(&dense, &comp, &[0.0, 0.0, -1.0], &cfg()));
    }

    #[test]
    fn p_dagger_edge_cases() {
        assert!(
            is_p_dagger(&Matrix::zeros(3, 3), &cfg(), ClassifierMode::Exact)
                .unwrap()
                .is_member
        );
        assert!(
            !is_p_dagger(&Matrix::identity(2).scale(-1.0), &cfg(), ClassifierMode::Exact)
                .unwrap()
                .is_member
        );
        assert!(matches!(
            is_p_dagger(&Matrix::identity(9), &cfg(), ClassifierMode::Exact),
            Err(Error::SizeCap { n: 9, cap: 8 })
        ));
        let c = Matrix::identity(2).scale_complex(crate::numkern::C64::new(0.0, 1.0));
        assert!(matches!(
            is_p_dagger(&c, &cfg(), ClassifierMode::Exact),
            Err(Error::NotReal { .. })
        ));
    }

    #[test]
    fn p_dagger_duality_on_examples() {
        for m in [m0(), h()] {
            let direct = is_p_dagger(&m, &cfg(), ClassifierMode::Exact).unwrap().is_member;
            let inverse = is_p_dagger(&pinv(&m, &cfg()).unwrap(), &cfg(), ClassifierMode::Exact)
                .unwrap()
                .is_member;
            assert_eq!(direct, inverse);
        }
    }

    #[test]
    fn randomized_finds_h_witness_and_respects_members() {
        let mode = ClassifierMode::Randomized { samples: 200, seed: 3 };
        assert!(!is_p_dagger(&h(), &cfg(), mode).unwrap().is_member);
        assert!(is_p_dagger(&m0(), &cfg(), mode).unwrap().is_member);
        assert!(
            !is_p_dagger(&Matrix::identity(2).scale(-1.0), &cfg(), mode)
                .unwrap()
                .is_member
        );
    }

    #[test]
    fn r_dagger_examples() {
        assert!(is_r_dagger(&Matrix::identity(3), &cfg()).unwrap().is_member);
        // x >= 0 and -x >= 0 force x = 0.
        assert!(is_r_dagger(&Matrix::identity(2).scale(-1.0), &cfg()).unwrap().is_member);
        assert!(is_r_dagger(&m0(), &cfg()).unwrap().is_member);
        // R(Mᵀ) = span{e2} in both cases; M e2 = (1, -1) is not >= 0, M e2 = (1, 0) is.
        let member = Matrix::from_real_rows(&[[0.0, 1.0], [0.0, -1.0]]);
        assert!(is_r_dagger(&member, &cfg()).unwrap().is_member);
        let v = is_r_dagger(&Matrix::from_real_rows(&[[0.0, 1.0], [0.0, 0.0]]), &cfg()).unwrap();
        assert_eq!(v.witness, Some(vec![0.0, 1.0]));
        assert!(!v.is_member);
    }
}
