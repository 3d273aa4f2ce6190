use super::classify::{check_size, row_space_complement, Dense, DEFAULT_SIZE_CAP};
use super::simplex::LinearSystem;
use crate::error::{Error, Result};
use crate::numkern::{Matrix, ToleranceConfig};

/// `LCP(Q, q)`: find `x >= 0` with `y = Qx + q >= 0` and `xᵀy = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct LcpInstance {
    q_matrix: Matrix,
    q_vector: Vec<f64>,
}

impl LcpInstance {
    pub fn new(q_matrix: Matrix, q_vector: Vec<f64>) -> Result<Self> {
        Dense::from_matrix(&q_matrix, "LcpInstance::new")?;
        if q_vector.len() != q_matrix.rows() {
            return Err(Error::DimensionMismatch {
                op: "LcpInstance::new",
                left: q_matrix.shape(),
                right: (q_vector.len(), 1),
            });
        }
        if !q_vector.iter().all(|v| v.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { q_matrix, q_vector })
    }

    pub fn q_matrix(&self) -> &Matrix {
        &self.q_matrix
    }

    pub fn q_vector(&self) -> &[f64] {
        &self.q_vector
    }

    /// Largest violation of `x >= 0`, `Qx + q >= 0` and `|xᵀ(Qx + q)|`.
    pub fn violation(&self, x: &[f64]) -> f64 {
        let dense = Dense::from_matrix(&self.q_matrix, "LcpInstance::violation").expect("validated");
        let y: Vec<f64> = dense.apply(x).iter().zip(&self.q_vector).map(|(a, b)| a + b).collect();
        let neg = x.iter().chain(&y).fold(0.0f64, |m, &v| m.max(-v));
        let comp = x.iter().zip(&y).map(|(a, b)| a * b).sum::<f64>().abs();
        neg.max(comp)
    }
}

/// One solution per feasible complementary support, deduplicated.
pub fn solve_lcp_enumerate(inst: &LcpInstance, cfg: &ToleranceConfig) -> Result<Vec<Vec<f64>>> {
    enumerate(inst, None, cfg, DEFAULT_SIZE_CAP)
}

/// [`solve_lcp_enumerate`] restricted to solutions in `R(Qᵀ)`.
pub fn solve_lcp_enumerate_in_row_space(inst: &LcpInstance, cfg: &ToleranceConfig) -> Result<Vec<Vec<f64>>> {
    let (comp, _) = row_space_complement(&inst.q_matrix, cfg)?;
    enumerate(inst, Some(&comp), cfg, DEFAULT_SIZE_CAP)
}

/// Either solver with an explicit size cap; `row_space` restricts solutions
/// to `R(Qᵀ)`.
pub fn solve_lcp_enumerate_with_cap(
    inst: &LcpInstance,
    row_space: bool,
    cfg: &ToleranceConfig,
    cap: usize,
) -> Result<Vec<Vec<f64>>> {
    if row_space {
        let (comp, _) = row_space_complement(&inst.q_matrix, cfg)?;
        enumerate(inst, Some(&comp), cfg, cap)
    } else {
        enumerate(inst, None, cfg, cap)
    }
}

fn enumerate(inst: &LcpInstance, comp: Option<&Dense>, cfg: &ToleranceConfig, cap: usize) -> Result<Vec<Vec<f64>>> {
    let q = Dense::from_matrix(&inst.q_matrix, "solve_lcp_enumerate")?;
    let n = q.n;
    check_size(n, cap)?;
    let mut found: Vec<Vec<f64>> = Vec::new();
    for mask in 0..1usize << n {
        let support: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let restrict = |row: &[f64]| support.iter().map(|&j| row[j]).collect::<Vec<f64>>();
        let mut sys = LinearSystem::new(support.len());
        for (i, row) in q.rows.iter().enumerate() {
            if mask >> i & 1 == 1 {
                sys.push_eq(restrict(row), -inst.q_vector[i]);
            } else {
                sys.push_le(restrict(row).into_iter().map(|v| -v).collect(), inst.q_vector[i]);
            }
        }
        if let Some(c) = comp {
            for row in &c.rows {
                sys.push_eq(restrict(row), 0.0);
            }
        }
        if let Some(z) = sys.feasible_point()? {
            let mut x = vec![0.0; n];
            for (&j, v) in support.iter().zip(z) {
                x[j] = v;
            }
            let scale = 1.0 + x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            let duplicate = found
                .iter()
                .any(|s| s.iter().zip(&x).all(|(a, b)| (a - b).abs() <= cfg.eq_tol * scale));
            if !duplicate {
                found.push(x);
            }
        }
    }
    Ok(found)
}
