use crate::error::Result;
use crate::gppt::PartitionedMatrix;
use crate::numkern::{range_projector, row_space_projector, Matrix, ToleranceConfig};

/// `M₀ = [[A, AA†B], [CA†A, D]]`.
pub fn build_m0(pm: &PartitionedMatrix, cfg: &ToleranceConfig) -> Result<Matrix> {
    let a = pm.a();
    let b = &range_projector(a, cfg)? * pm.b();
    let c = pm.c() * &row_space_projector(a, cfg)?;
    Matrix::from_blocks(a, &b, &c, pm.d())
}

/// `M₁ = [[A, BD†D], [DD†C, D]]`.
pub fn build_m1(pm: &PartitionedMatrix, cfg: &ToleranceConfig) -> Result<Matrix> {
    let d = pm.d();
    let b = pm.b() * &row_space_projector(d, cfg)?;
    let c = &range_projector(d, cfg)? * pm.c();
    Matrix::from_blocks(pm.a(), &b, &c, d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    fn close(x: &Matrix, y: &Matrix) -> bool {
        (x - y).max_abs() < 1e-14
    }

    #[test]
    fn m0_examples() {
        let m = Matrix::from_real_rows(&[[2.0, -2.0, 1.0], [2.0, -2.0, 1.0], [-1.0, 1.0, -0.5]]);
        let pm = PartitionedMatrix::new(m.clone(), 2).unwrap();
        assert!(close(&build_m0(&pm, &cfg()).unwrap(), &m));

        let z = Matrix::zeros(2, 1);
        let diag =
            PartitionedMatrix::from_blocks(&Matrix::zeros(2, 2), &z, &z.transpose(), &Matrix::identity(1)).unwrap();
        assert_eq!(build_m0(&diag, &cfg()).unwrap(), diag.matrix().clone());

        let inv_a = Matrix::from_real_rows(&[[1.0, 2.0, 5.0], [3.0, 4.0, 6.0], [7.0, 8.0, 9.0]]);
        let pm = PartitionedMatrix::new(inv_a.clone(), 2).unwrap();
        assert!((&build_m0(&pm, &cfg()).unwrap() - &inv_a).max_abs() < 1e-13);
    }

    #[test]
    fn m1_examples() {
        // D = 0 kills both off-diagonal blocks.
        let m = Matrix::from_real_rows(&[[1.0, 2.0], [3.0, 0.0]]);
        let pm = PartitionedMatrix::new(m, 1).unwrap();
        assert_eq!(
            build_m1(&pm, &cfg()).unwrap(),
            Matrix::from_real_rows(&[[1.0, 0.0], [0.0, 0.0]])
        );

        // D = diag(1, 0): BD†D keeps the first column of B, DD†C the first row of C.
        let m = Matrix::from_real_rows(&[[5.0, 1.0, 2.0], [3.0, 1.0, 0.0], [4.0, 0.0, 0.0]]);
        let pm = PartitionedMatrix::new(m, 1).unwrap();
        let expected = Matrix::from_real_rows(&[[5.0, 1.0, 0.0], [3.0, 1.0, 0.0], [0.0, 0.0, 0.0]]);
        assert!(close(&build_m1(&pm, &cfg()).unwrap(), &expected));

        let inv_d = Matrix::from_real_rows(&[[1.0, 2.0, 5.0], [3.0, 4.0, 6.0], [7.0, 8.0, 9.0]]);
        let pm = PartitionedMatrix::new(inv_d.clone(), 1).unwrap();
        assert!((&build_m1(&pm, &cfg()).unwrap() - &inv_d).max_abs() < 1e-13);
    }
}
