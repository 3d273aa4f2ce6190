mod common;

use ::gppt::lcpcone::{
    is_p_dagger, is_r_dagger, solve_lcp_enumerate, ClassVerdict, ClassifierMode, LcpInstance, Method,
};
use ::gppt::numkern::{pinv, Matrix, ToleranceConfig};
use ::gppt::verify::{gaussian, orthonormal_columns, random_rank, Field};
use common::to_na;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn cfg() -> ToleranceConfig {
    ToleranceConfig::default()
}

/// Small real matrix with entries from a coarse grid, often singular.
fn coarse(seed: u64, n: usize) -> Matrix {
    const VALUES: [f64; 7] = [-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Matrix::from_fn(n, n, |_, _| VALUES[rng.random_range(0..VALUES.len())].into())
}

/// Real matrix of random rank.
fn low_rank(seed: u64, n: usize) -> Matrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let r = rng.random_range(0..=n);
    random_rank(&mut rng, n, n, r, Field::Real)
}

fn candidates(seed: u64, n: usize) -> Matrix {
    if seed.is_multiple_of(2) {
        coarse(seed, n)
    } else {
        low_rank(seed, n)
    }
}

/// Independent re-check of a witness within `10 eq_tol`.
fn recheck(m: &Matrix, v: &ClassVerdict, p_dagger: bool) -> bool {
    let Some(x) = &v.witness else { return false };
    let na = to_na(m);
    let xv = to_na(&Matrix::column(x));
    let scale = common::max_abs(&xv);
    let proj = common::pinv(&na) * &na;
    let tol = 10.0 * cfg().eq_tol;
    if scale == 0.0 || common::max_abs(&(&proj * &xv - &xv)) > tol * scale {
        return false;
    }
    let mx: Vec<f64> = (&na * &xv).iter().map(|z| z.re).collect();
    let bound = tol * (1.0 + common::max_abs(&na)) * scale;
    if p_dagger {
        x.iter().zip(&mx).all(|(a, b)| a * b <= bound * scale)
    } else {
        x.iter().all(|v| *v >= -bound)
            && mx.iter().all(|v| *v >= -bound)
            && x.iter().zip(&mx).map(|(a, b)| a * b).sum::<f64>().abs() <= bound * scale
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn p_dagger_duality(seed in any::<u64>(), n in 1usize..=5) {
        let m = candidates(seed, n);
        let direct = is_p_dagger(&m, &cfg(), ClassifierMode::Exact).unwrap();
        let dual = is_p_dagger(&pinv(&m, &cfg()).unwrap(), &cfg(), ClassifierMode::Exact).unwrap();
        prop_assert_eq!(direct.is_member, dual.is_member);
    }

    #[test]
    fn exact_witnesses_recheck(seed in any::<u64>(), n in 1usize..=5) {
        let m = candidates(seed, n);
        let p = is_p_dagger(&m, &cfg(), ClassifierMode::Exact).unwrap();
        prop_assert_eq!(p.method, Method::ExactEnumeration);
        if !p.is_member {
            prop_assert!(recheck(&m, &p, true), "{:?}", p);
        }
        let r = is_r_dagger(&m, &cfg()).unwrap();
        if !r.is_member {
            prop_assert!(recheck(&m, &r, false), "{:?}", r);
        }
    }

    #[test]
    fn p_dagger_implies_r_dagger(seed in any::<u64>(), n in 1usize..=5) {
        let m = candidates(seed, n);
        if is_p_dagger(&m, &cfg(), ClassifierMode::Exact).unwrap().is_member {
            prop_assert!(is_r_dagger(&m, &cfg()).unwrap().is_member);
        }
    }

    #[test]
    fn positive_definite_is_p_dagger(seed in any::<u64>(), n in 1usize..=6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = orthonormal_columns(&mut rng, n, n, Field::Real);
        let d = Matrix::diag_real(&(0..n).map(|_| rng.random_range(0.1..3.0)).collect::<Vec<_>>());
        let skew = {
            let g = gaussian(&mut rng, n, n, Field::Real);
            &g - &g.transpose()
        };
        let m = &(&(&q * &d) * &q.transpose()) + &skew;
        prop_assert!(is_p_dagger(&m, &cfg(), ClassifierMode::Exact).unwrap().is_member);
    }

    #[test]
    fn lcp_solutions_are_complementary(seed in any::<u64>(), n in 1usize..=5) {
        let m = candidates(seed, n);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 1);
        let q: Vec<f64> = (0..n).map(|_| rng.random_range(-2.0..2.0)).collect();
        let inst = LcpInstance::new(m.clone(), q.clone()).unwrap();
        for x in solve_lcp_enumerate(&inst, &cfg()).unwrap() {
            let y: Vec<f64> = (0..n).map(|i| (0..n).map(|j| m[(i, j)].re * x[j]).sum::<f64>() + q[i]).collect();
            prop_assert!(x.iter().all(|v| *v >= -1e-9));
            prop_assert!(y.iter().all(|v| *v >= -1e-8));
            prop_assert!(x.iter().zip(&y).map(|(a, b)| a * b).sum::<f64>().abs() <= 1e-8);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn randomized_never_contradicts_exact(seed in any::<u64>(), n in 2usize..=4) {
        let m = candidates(seed, n);
        let exact = is_p_dagger(&m, &cfg(), ClassifierMode::Exact).unwrap();
        let sampled = is_p_dagger(&m, &cfg(), ClassifierMode::Randomized { samples: 10_000, seed }).unwrap();
        if exact.is_member {
            prop_assert!(sampled.is_member, "{:?}", sampled);
        }
    }
}

#[test]
fn zero_matrix_is_vacuously_a_member() {
    let z = Matrix::zeros(3, 3);
    assert!(is_p_dagger(&z, &cfg(), ClassifierMode::Exact).unwrap().is_member);
    assert!(is_r_dagger(&z, &cfg()).unwrap().is_member);
}

#[test]
fn identity_lcp_has_the_projection_solution() {
    let inst = LcpInstance::new(Matrix::identity(3), vec![-1.0, 2.0, -0.5]).unwrap();
    let sols = solve_lcp_enumerate(&inst, &cfg()).unwrap();
    assert_eq!(sols.len(), 1);
    for (a, b) in sols[0].iter().zip([1.0, 0.0, 0.5]) {
        assert!((a - b).abs() < 1e-12);
    }
}
