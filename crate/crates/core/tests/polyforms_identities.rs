use bggc::exactla::{ExactScalar, LinearMap};
use bggc::polyforms::{
    d_matrix, evaluate, homotopy_p_matrix, k_matrix, koszul_second_matrix, l_matrix, s_lift_matrix, PolySpace,
};
use proptest::prelude::*;

fn id(space: &PolySpace) -> LinearMap {
    LinearMap::identity(space.dim())
}

/// `dK̃ − K̃d = S` on `P_{≤r} ⊗ Alt^{i,J}`.
fn check_dkt(space: PolySpace) {
    let kt = koszul_second_matrix(&space);
    let d_after = d_matrix(&space.with(space.r + 1, space.i, space.j - 1));
    let d = d_matrix(&space);
    let kt_after = koszul_second_matrix(&space.with(space.r - 1, space.i + 1, space.j));
    let lhs = &(&d_after * &kt) - &(&kt_after * &d);
    assert_eq!(lhs, s_lift_matrix(&space), "{space}");
}

/// `dP + Pd = id − L` on `P_{≤r} ⊗ Alt^{i,J}`.
fn check_homotopy(space: PolySpace) {
    let n = space.n;
    let dp = if space.i >= 1 {
        let p = homotopy_p_matrix(&space);
        &d_matrix(&space.with(space.r + 1, space.i - 1, space.j)) * &p
    } else {
        LinearMap::zeros(space.dim(), space.dim())
    };
    let pd = if space.i < n {
        let d = d_matrix(&space);
        &homotopy_p_matrix(&space.with(space.r - 1, space.i + 1, space.j)) * &d
    } else {
        LinearMap::zeros(space.dim(), space.dim())
    };
    assert_eq!(&dp + &pd, &id(&space) - &l_matrix(&space), "{space}");
}

/// `dK − Kd = S` on `P_{≤r} ⊗ Alt^{i,J}`.
fn check_dk(space: PolySpace) {
    let k = k_matrix(&space);
    let d_after = d_matrix(&space.with(space.r + 1, space.i, space.j - 1));
    let d = d_matrix(&space);
    let k_after = k_matrix(&space.with(space.r - 1, space.i + 1, space.j));
    let lhs = &(&d_after * &k) - &(&k_after * &d);
    assert_eq!(lhs, s_lift_matrix(&space), "{space}");
}

#[test]
fn koszul_identity_all_small() {
    for n in 1..=3 {
        for r in 0..=3 {
            for i in 0..=n {
                for j in 1..=n {
                    check_dkt(PolySpace::new(n, r, i, j));
                }
            }
        }
    }
}

#[test]
fn homotopy_identity_all_small() {
    for n in 1..=3 {
        for r in 0..=3 {
            for i in 0..=n {
                for j in 0..=n {
                    check_homotopy(PolySpace::new(n, r, i, j));
                }
            }
        }
    }
}

#[test]
fn k_identity_all_small() {
    for n in 1..=3 {
        for r in 0..=3 {
            for i in 0..=n {
                for j in 1..=n {
                    check_dk(PolySpace::new(n, r, i, j));
                }
            }
        }
    }
}

#[test]
fn l_commutes_with_d() {
    for n in 1..=3 {
        for i in 0..n {
            let s = PolySpace::new(n, 3, i, 1);
            let t = s.with(2, i + 1, 1);
            assert_eq!(&d_matrix(&s) * &l_matrix(&s), &l_matrix(&t) * &d_matrix(&s));
        }
    }
}

/// The `L K̃` correction in `K` is identically zero in the polynomial model:
/// `K̃` raises polynomial degree, so its image has no constant term.
#[test]
fn lk_correction_vanishes() {
    for n in 1..=3 {
        for j in 1..=n {
            let s = PolySpace::new(n, 3, 0, j);
            let kt = koszul_second_matrix(&s);
            let l = l_matrix(&s.with(4, 0, j - 1));
            assert!((&l * &kt).is_zero());
        }
    }
}

#[test]
fn d_of_linear_scalar_is_constant_gradient() {
    // f = 2 x1 - 3 x3 on R^3; df = 2 dx1 - 3 dx3 everywhere.
    let s = PolySpace::new(3, 1, 0, 0);
    let mut f = vec![ExactScalar::zero(); s.dim()];
    f[1] = ExactScalar::from_int(2);
    f[3] = ExactScalar::from_int(-3);
    let df = d_matrix(&s).apply(&f);
    let t = s.with(0, 1, 0);
    let p = [ExactScalar::new(1, 2), ExactScalar::from_int(7), ExactScalar::new(-5, 3)];
    let v = evaluate(&t, &df, &p);
    assert_eq!(v, vec![ExactScalar::from_int(2), ExactScalar::zero(), ExactScalar::from_int(-3)]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn identities_random_spaces(n in 1usize..=4, r in 0i64..=4, i in 0usize..=4, j in 1usize..=4) {
        prop_assume!(i <= n && j <= n);
        check_dkt(PolySpace::new(n, r, i, j));
        check_dk(PolySpace::new(n, r, i, j));
        check_homotopy(PolySpace::new(n, r, i, j));
    }
}
