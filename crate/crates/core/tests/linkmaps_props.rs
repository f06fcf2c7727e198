use bggc::exactla::{rank, LinearMap};
use bggc::linkmaps::{check_inj_surj, s_matrix, t_matrix, y_block_check};
use bggc::multilinear::{binomial, wedge_coeff, wedge_left_matrix, AltBasis, AltIJBasis};
use proptest::prelude::*;

/// `s = Σ_l (dx^l ∧ ·) ⊗ ι_{e_l}`, with the contraction written as the
/// transpose of the wedge.
fn s_by_contractions(n: usize, i: usize, j: usize) -> LinearMap {
    let rows = AltIJBasis::new(n, i + 1, j - 1).dim();
    let cols = AltIJBasis::new(n, i, j).dim();
    (0..n as u8).fold(LinearMap::zeros(rows, cols), |acc, l| {
        let term = LinearMap::kron(&wedge_left_matrix(n, i, l), &wedge_left_matrix(n, j - 1, l).transpose());
        &acc + &term
    })
}

fn subset(n: usize) -> impl Strategy<Value = Vec<u8>> {
    proptest::collection::btree_set(0..n as u8, 0..=n).prop_map(|s| s.into_iter().collect())
}

#[test]
fn s_equals_sum_of_wedge_and_contraction() {
    for n in 1..=5 {
        for i in 0..n {
            for j in 1..=n {
                assert_eq!(s_matrix(n, i, j), s_by_contractions(n, i, j), "n={n} i={i} J={j}");
            }
        }
    }
}

#[test]
fn injectivity_law_holds_up_to_dimension_six() {
    for n in 1..=6 {
        for j in 0..n {
            for i in 0..n {
                let r = check_inj_surj(n, i, j);
                assert!(r.passed, "{r:?}");
                assert_eq!(r.source_dim, binomial(n, i) * binomial(n, j + 1));
            }
        }
    }
}

#[test]
fn y_blocks_up_to_dimension_five() {
    for n in 1..=5 {
        for k in 0..=n {
            for m in 1..=n - k {
                let r = y_block_check(n, k, m);
                assert!(r.passed, "{r:?}");
            }
        }
    }
}

#[test]
fn bijective_diagonal_has_equal_dimensions() {
    for n in 1..=6 {
        for j in 0..n {
            let s = s_matrix(n, j, j + 1);
            assert!(s.is_square());
            assert_eq!(rank(&s), s.nrows(), "n={n} J={j}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn wedge_is_graded_commutative(n in 1usize..=6, a in subset(6), b in subset(6)) {
        let a: Vec<u8> = a.into_iter().filter(|&x| (x as usize) < n).collect();
        let b: Vec<u8> = b.into_iter().filter(|&x| (x as usize) < n).collect();
        let ab = wedge_coeff(&a, &b);
        let ba = wedge_coeff(&b, &a);
        match (ab, ba) {
            (Some((s1, t1)), Some((s2, t2))) => {
                prop_assert_eq!(t1, t2);
                let sign = if (a.len() * b.len()) % 2 == 0 { 1 } else { -1 };
                prop_assert_eq!(s1, sign * s2);
            }
            (None, None) => {}
            _ => prop_assert!(false, "wedge vanishes on one side only"),
        }
    }

    #[test]
    fn wedge_is_associative(a in subset(5), b in subset(5), c in subset(5)) {
        let left = wedge_coeff(&a, &b).and_then(|(s, ab)| wedge_coeff(&ab, &c).map(|(t, abc)| (s * t, abc)));
        let right = wedge_coeff(&b, &c).and_then(|(s, bc)| wedge_coeff(&a, &bc).map(|(t, abc)| (s * t, abc)));
        prop_assert_eq!(left, right);
    }

    #[test]
    fn t_is_the_pseudoinverse_of_s(n in 1usize..=4, i in 0usize..4, j in 1usize..=4) {
        prop_assume!(i < n && j <= n);
        let s = s_matrix(n, i, j);
        let t = t_matrix(n, i, j);
        prop_assert_eq!(&(&s * &t) * &s, s.clone());
        prop_assert_eq!(&(&t * &s) * &t, t.clone());
        let st = &s * &t;
        prop_assert_eq!(st.transpose(), st.clone());
        let ts = &t * &s;
        prop_assert_eq!(ts.transpose(), ts.clone());
        if rank(&s) == s.ncols() {
            prop_assert_eq!(ts, LinearMap::identity(s.ncols()));
        }
        if rank(&s) == s.nrows() {
            prop_assert_eq!(st, LinearMap::identity(s.nrows()));
        }
    }

    #[test]
    fn alt_basis_indices_roundtrip(n in 1usize..=6, k in 0usize..=6) {
        prop_assume!(k <= n);
        let b = AltBasis::new(n, k);
        prop_assert_eq!(b.dim(), binomial(n, k));
        for (idx, e) in b.elems().iter().enumerate() {
            prop_assert_eq!(b.index_of(e), Some(idx));
        }
    }
}
