use crate::error::{Error, Result};
use crate::numkern::Matrix;

/// Square matrix `M = [[A, B], [C, D]]` split at index `k`, so `A` is `k×k`
/// and `D` is `(n-k)×(n-k)`. `k = 0` and `k = n` give empty blocks.
#[derive(Clone, Debug, PartialEq)]
pub struct PartitionedMatrix {
    m: Matrix,
    k: usize,
    a: Matrix,
    b: Matrix,
    c: Matrix,
    d: Matrix,
}

impl PartitionedMatrix {
    pub fn new(m: Matrix, k: usize) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::NotSquare {
                op: "PartitionedMatrix::new",
                rows: m.rows(),
                cols: m.cols(),
            });
        }
        let n = m.rows();
        if k > n {
            return Err(Error::InvalidSplit { k, n });
        }
        if !m.is_finite() {
            return Err(Error::NonFinite);
        }
        Ok(Self {
            a: m.submatrix(0, k, 0, k),
            b: m.submatrix(0, k, k, n),
            c: m.submatrix(k, n, 0, k),
            d: m.submatrix(k, n, k, n),
            m,
            k,
        })
    }

    /// Assembles from blocks; `A` and `D` must be square.
    pub fn from_blocks(a: &Matrix, b: &Matrix, c: &Matrix, d: &Matrix) -> Result<Self> {
        if !a.is_square() || !d.is_square() {
            return Err(Error::NotSquare {
                op: "PartitionedMatrix::from_blocks",
                rows: a.rows(),
                cols: a.cols(),
            });
        }
        let m = Matrix::from_blocks(a, b, c, d)?;
        Self::new(m, a.rows())
    }

    pub fn matrix(&self) -> &Matrix {
        &self.m
    }

    pub fn into_matrix(self) -> Matrix {
        self.m
    }

    pub fn split(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.m.rows()
    }

    pub fn a(&self) -> &Matrix {
        &self.a
    }

    pub fn b(&self) -> &Matrix {
        &self.b
    }

    pub fn c(&self) -> &Matrix {
        &self.c
    }

    pub fn d(&self) -> &Matrix {
        &self.d
    }

    pub fn is_real(&self) -> bool {
        self.m.is_real()
    }

    /// Same matrix with the blocks swapped end for end: `[[D, C], [B, A]]`
    /// split at `n - k`. Maps A-side statements onto D-side ones.
    pub fn flipped(&self) -> Self {
        Self::from_blocks(&self.d, &self.c, &self.b, &self.a).expect("blocks of a valid partition")
    }

    /// Splits a length-n column vector into its top `k` and bottom `n-k` parts.
    pub fn split_vector(&self, v: &Matrix) -> (Matrix, Matrix) {
        let n = self.n();
        (v.submatrix(0, self.k, 0, v.cols()), v.submatrix(self.k, n, 0, v.cols()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn blocks_and_split() {
        let m = Matrix::from_real_rows(&[[0.0, 0.0], [1.0, 1.0]]);
        let pm = PartitionedMatrix::new(m.clone(), 1).unwrap();
        assert_eq!(pm.a(), &Matrix::from_real_rows(&[[0.0]]));
        assert_eq!(pm.c(), &Matrix::from_real_rows(&[[1.0]]));
        assert_eq!(pm.split(), 1);
        let again = PartitionedMatrix::from_blocks(pm.a(), pm.b(), pm.c(), pm.d()).unwrap();
        assert_eq!(again.matrix(), &m);
    }

    #[test]
    fn extreme_splits_are_allowed() {
        let m = Matrix::identity(3);
        let lo = PartitionedMatrix::new(m.clone(), 0).unwrap();
        assert_eq!(lo.a().shape(), (0, 0));
        assert_eq!(lo.d(), &m);
        let hi = PartitionedMatrix::new(m.clone(), 3).unwrap();
        assert_eq!(hi.b().shape(), (3, 0));
        assert_eq!(hi.a(), &m);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            PartitionedMatrix::new(Matrix::identity(2), 3),
            Err(Error::InvalidSplit { k: 3, n: 2 })
        ));
        assert!(PartitionedMatrix::new(Matrix::zeros(2, 3), 1).is_err());
    }

    #[test]
    fn flip_swaps_roles() {
        let m = Matrix::from_real_rows(&[[1.0, 2.0, 3.0], [4.0, 5.0, 6.0], [7.0, 8.0, 9.0]]);
        let pm = PartitionedMatrix::new(m, 1).unwrap();
        let f = pm.flipped();
        assert_eq!(f.split(), 2);
        assert_eq!(f.a(), pm.d());
        assert_eq!(f.d(), pm.a());
        assert_eq!(f.b(), pm.c());
        assert_eq!(f.flipped(), pm);
    }
}
