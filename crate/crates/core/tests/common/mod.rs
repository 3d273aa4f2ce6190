//! Independent dense routines for cross-checking the library, built on
//! nalgebra's Hermitian eigensolver.

#![allow(dead_code)]

use ::gppt::numkern::{Matrix, C64};
use ::gppt::verify::{random_rank, Field};
use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn to_na(m: &Matrix) -> DMatrix<C64> {
    DMatrix::from_fn(m.rows(), m.cols(), |i, j| m[(i, j)])
}

pub fn from_na(m: &DMatrix<C64>) -> Matrix {
    Matrix::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
}

pub fn max_abs(m: &DMatrix<C64>) -> f64 {
    m.iter().fold(0.0, |a, z| a.max(z.norm()))
}

/// `max|X - Y| / (1 + max(max|X|, max|Y|))`.
pub fn rel(x: &DMatrix<C64>, y: &DMatrix<C64>) -> f64 {
    max_abs(&(x - y)) / (1.0 + max_abs(x).max(max_abs(y)))
}

type Eigenpairs = (Vec<(f64, DMatrix<C64>)>, Vec<DMatrix<C64>>);

/// Eigenpairs of `AᴴA`, split into those above and at most `1e-20 ∨ 1e-12·λmax`.
fn gram_eigen(a: &DMatrix<C64>) -> Eigenpairs {
    let eig = (a.adjoint() * a).symmetric_eigen();
    let lmax = eig.eigenvalues.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let cut = 1e-20_f64.max(1e-12 * lmax);
    let (mut big, mut small) = (Vec::new(), Vec::new());
    for (j, &l) in eig.eigenvalues.iter().enumerate() {
        let v = eig.eigenvectors.column(j).into_owned();
        let v = DMatrix::from_column_slice(v.nrows(), 1, v.as_slice());
        if l > cut {
            big.push((l, v));
        } else {
            small.push(v);
        }
    }
    (big, small)
}

/// `A† = (AᴴA)†Aᴴ`.
pub fn pinv(a: &DMatrix<C64>) -> DMatrix<C64> {
    let n = a.ncols();
    let mut g = DMatrix::zeros(n, n);
    for (l, v) in gram_eigen(a).0 {
        g += (&v * v.adjoint()).map(|z| z / l);
    }
    g * a.adjoint()
}

pub fn rank(a: &DMatrix<C64>) -> usize {
    gram_eigen(a).0.len()
}

/// Orthonormal basis of `N(A)` as columns.
pub fn null_basis(a: &DMatrix<C64>) -> Vec<DMatrix<C64>> {
    gram_eigen(a).1
}

pub fn penrose(a: &DMatrix<C64>, g: &DMatrix<C64>) -> [f64; 4] {
    let ag = a * g;
    let ga = g * a;
    [
        rel(&(&ag * a), a),
        rel(&(&ga * g), g),
        rel(&ag.adjoint(), &ag),
        rel(&ga.adjoint(), &ga),
    ]
}

pub fn field(complex: bool) -> Field {
    if complex {
        Field::Complex
    } else {
        Field::Real
    }
}

/// Random `rows × cols` matrix of random rank.
pub fn random_matrix(seed: u64, rows: usize, cols: usize, complex: bool) -> Matrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let r = rng.random_range(0..=rows.min(cols));
    random_rank(&mut rng, rows, cols, r, field(complex))
}
