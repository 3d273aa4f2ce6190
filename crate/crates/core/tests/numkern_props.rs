mod common;

use ::gppt::numkern::{
    classify_ginverse, is_range_hermitian, null_space_included, pinv, rank, svd, Matrix, ToleranceConfig, C64,
};
use ::gppt::verify::{gaussian, random_ep};
use common::{field, random_matrix, to_na};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn cfg() -> ToleranceConfig {
    ToleranceConfig::default()
}

fn shape() -> impl Strategy<Value = (u64, usize, usize, bool)> {
    (any::<u64>(), 1usize..=8, 1usize..=8, any::<bool>())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn penrose_residuals_are_small((seed, m, n, complex) in shape()) {
        let a = random_matrix(seed, m, n, complex);
        let g = pinv(&a, &cfg()).unwrap();
        let bound = 1e-9 * (1.0 + a.frobenius());
        for r in common::penrose(&to_na(&a), &to_na(&g)) {
            prop_assert!(r <= bound, "residual {r:e}");
        }
        prop_assert!(common::rel(&to_na(&g), &common::pinv(&to_na(&a))) <= 1e-9);
    }

    #[test]
    fn pinv_is_an_involution((seed, m, n, complex) in shape()) {
        let a = random_matrix(seed, m, n, complex);
        let back = pinv(&pinv(&a, &cfg()).unwrap(), &cfg()).unwrap();
        prop_assert!(ToleranceConfig::rel_residual(&back, &a) <= cfg().eq_tol);
    }

    #[test]
    fn rank_agrees_across_adjoint_pinv_and_oracle((seed, m, n, complex) in shape()) {
        let a = random_matrix(seed, m, n, complex);
        let r = rank(&a, &cfg()).unwrap();
        prop_assert_eq!(r, rank(&a.adjoint(), &cfg()).unwrap());
        prop_assert_eq!(r, rank(&pinv(&a, &cfg()).unwrap(), &cfg()).unwrap());
        prop_assert_eq!(r, common::rank(&to_na(&a)));
    }

    #[test]
    fn pinv_is_moore_penrose((seed, m, n, complex) in shape()) {
        let a = random_matrix(seed, m, n, complex);
        let c = classify_ginverse(&a, &pinv(&a, &cfg()).unwrap(), &cfg()).unwrap();
        prop_assert!(c.is_moore_penrose(), "{:?}", c.residuals);
    }

    #[test]
    fn svd_factors_are_unitary_and_reconstruct((seed, m, n, complex) in shape()) {
        let a = random_matrix(seed, m, n, complex);
        let s = svd(&a, &cfg()).unwrap();
        prop_assert_eq!(s.sigma.len(), m.min(n));
        prop_assert!(s.sigma.windows(2).all(|w| w[0] >= w[1]) && s.sigma.iter().all(|v| *v >= 0.0));
        let tol = 1e-12;
        prop_assert!(ToleranceConfig::rel_residual(&(&s.u.adjoint() * &s.u), &Matrix::identity(m)) <= tol);
        prop_assert!(ToleranceConfig::rel_residual(&(&s.v.adjoint() * &s.v), &Matrix::identity(n)) <= tol);
        let mut sig = Matrix::zeros(m, n);
        for (i, v) in s.sigma.iter().enumerate() {
            sig[(i, i)] = C64::new(*v, 0.0);
        }
        let back = &(&s.u * &sig) * &s.v.adjoint();
        prop_assert!(ToleranceConfig::rel_residual(&back, &a) <= tol * (1.0 + a.frobenius()));
        let na: Vec<f64> = to_na(&a).singular_values().iter().copied().collect();
        let mut na = na;
        na.sort_by(|x, y| y.partial_cmp(x).unwrap());
        for (x, y) in s.sigma.iter().zip(&na) {
            prop_assert!((x - y).abs() <= 1e-12 * (1.0 + na[0]));
        }
    }

    #[test]
    fn ep_constructions_are_range_hermitian(seed in any::<u64>(), n in 1usize..=8, complex in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r = (seed as usize) % (n + 1);
        let a = random_ep(&mut rng, n, r, field(complex), false);
        prop_assert!(is_range_hermitian(&a, &cfg()).unwrap().holds);
        let g = common::pinv(&to_na(&a));
        let na = to_na(&a);
        prop_assert!(common::rel(&(&na * &g), &(&g * &na)) <= 1e-9);
    }

    #[test]
    fn nilpotent_constructions_are_not_range_hermitian(seed in any::<u64>(), n in 2usize..=8, complex in any::<bool>()) {
        // Strictly upper triangular with nonzero superdiagonal: R(A) ≠ R(Aᴴ).
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = gaussian(&mut rng, n, n, field(complex));
        let a = Matrix::from_fn(n, n, |i, j| {
            if j == i + 1 {
                g[(i, j)] + g[(i, j)] / g[(i, j)].norm().max(1e-3)
            } else if j > i {
                g[(i, j)]
            } else {
                C64::new(0.0, 0.0)
            }
        });
        prop_assert!(!is_range_hermitian(&a, &cfg()).unwrap().holds);
    }

    #[test]
    fn null_inclusion_matches_basis_oracle(seed in any::<u64>(), m in 1usize..=6, p in 1usize..=6, n in 1usize..=6, complex in any::<bool>(), shared in any::<bool>()) {
        let x = random_matrix(seed, m, n, complex);
        // Y = W X makes the inclusion hold; an independent Y usually breaks it.
        let y = if shared {
            &random_matrix(seed ^ 0x5555, p, m, complex) * &x
        } else {
            random_matrix(seed ^ 0xAAAA, p, n, complex)
        };
        let verdict = null_space_included(&x, &y, &cfg()).unwrap();
        let ny = to_na(&y);
        let oracle = common::null_basis(&to_na(&x))
            .iter()
            .all(|v| common::max_abs(&(&ny * v)) <= 1e-9 * (1.0 + common::max_abs(&ny)));
        prop_assert_eq!(verdict.holds, oracle);
        if shared {
            prop_assert!(verdict.holds);
        }
    }
}

#[test]
fn pinv_of_zero_and_empty() {
    let z = Matrix::zeros(3, 2);
    assert_eq!(pinv(&z, &cfg()).unwrap(), Matrix::zeros(2, 3));
    let e = Matrix::zeros(0, 4);
    assert_eq!(pinv(&e, &cfg()).unwrap().shape(), (4, 0));
}
