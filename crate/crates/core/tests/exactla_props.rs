use bggc::exactla::{
    canonical_basis, inverse, kernel_projector, map_from_json, map_to_csv, map_to_json, min_norm_solve, nullspace,
    pinv, range_projector, rank, solve, ExactScalar, LinearMap,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

/// Plain dense Gaussian elimination over `BigRational`.
fn oracle_rank(m: &LinearMap) -> usize {
    let mut a: Vec<Vec<BigRational>> = m
        .to_dense()
        .iter()
        .map(|r| r.iter().map(ExactScalar::to_big).collect())
        .collect();
    let (rows, cols) = m.shape();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for r in 0..rows {
            if r != rank && !a[r][c].is_zero() {
                let f = &a[r][c] / &a[rank][c];
                for k in c..cols {
                    let v = &a[rank][k] * &f;
                    a[r][k] -= v;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn scalar() -> impl Strategy<Value = ExactScalar> {
    prop_oneof![
        3 => Just(ExactScalar::zero()),
        4 => (-4i64..=4, 1i64..=3).prop_map(|(p, q)| ExactScalar::new(p, q)),
        1 => (any::<i64>(), 1i64..=1_000_000).prop_map(|(p, q)| ExactScalar::new(p, q)),
    ]
}

fn small_scalar() -> impl Strategy<Value = ExactScalar> {
    prop_oneof![
        3 => Just(ExactScalar::zero()),
        4 => (-4i64..=4, 1i64..=3).prop_map(|(p, q)| ExactScalar::new(p, q)),
    ]
}

fn matrix() -> impl Strategy<Value = LinearMap> {
    (1usize..=6, 1usize..=6).prop_flat_map(|(r, c)| {
        proptest::collection::vec(proptest::collection::vec(small_scalar(), c), r)
            .prop_map(|rows| LinearMap::from_dense(&rows))
    })
}

fn big(x: &ExactScalar) -> BigRational {
    x.to_big()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn scalar_ops_match_bigrational(a in scalar(), b in scalar()) {
        prop_assert_eq!(big(&(&a + &b)), big(&a) + big(&b));
        prop_assert_eq!(big(&(&a - &b)), big(&a) - big(&b));
        prop_assert_eq!(big(&(&a * &b)), big(&a) * big(&b));
        if !b.is_zero() {
            prop_assert_eq!(big(&(&a / &b)), big(&a) / big(&b));
        }
        prop_assert_eq!(a.cmp(&b), big(&a).cmp(&big(&b)));
        prop_assert_eq!(a.abs().to_big(), big(&a).abs());
    }

    #[test]
    fn scalar_pq_roundtrip(a in scalar()) {
        let s = a.to_pq();
        prop_assert!(s.contains('/'));
        let back: ExactScalar = s.parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn rank_matches_oracle(m in matrix()) {
        prop_assert_eq!(rank(&m), oracle_rank(&m));
        prop_assert_eq!(rank(&m), rank(&m.transpose()));
    }

    #[test]
    fn rank_nullity(m in matrix()) {
        let k = nullspace(&m);
        prop_assert_eq!(k.ncols() + rank(&m), m.ncols());
        prop_assert!((&m * &k).is_zero());
        prop_assert_eq!(rank(&k), k.ncols());
    }

    #[test]
    fn penrose_conditions(m in matrix()) {
        let p = pinv(&m);
        prop_assert_eq!(&(&m * &p) * &m, m.clone());
        prop_assert_eq!(&(&p * &m) * &p, p.clone());
        let mp = &m * &p;
        prop_assert_eq!(mp.transpose(), mp);
        let pm = &p * &m;
        prop_assert_eq!(pm.transpose(), pm);
    }

    #[test]
    fn projectors_are_orthogonal_and_complementary(m in matrix()) {
        let pr = range_projector(&m);
        prop_assert_eq!(&pr * &pr, pr.clone());
        prop_assert_eq!(pr.transpose(), pr.clone());
        prop_assert_eq!(rank(&pr), rank(&m));
        let pk = kernel_projector(&m);
        prop_assert!((&m * &pk).is_zero());
        prop_assert_eq!(rank(&pk) + rank(&m), m.ncols());
    }

    #[test]
    fn solve_finds_solutions_in_range(m in matrix(), x in proptest::collection::vec(small_scalar(), 6)) {
        let x = LinearMap::column(&x[..m.ncols()]);
        let b = &m * &x;
        let y = solve(&m, &b).expect("b is in the range");
        prop_assert_eq!(&m * &y, b.clone());
        let z = min_norm_solve(&m, &b).unwrap();
        prop_assert_eq!(&m * &z, b);
        prop_assert!((&kernel_projector(&m) * &z).is_zero());
    }

    #[test]
    fn canonical_basis_depends_only_on_span(m in matrix(), c in proptest::collection::vec(small_scalar(), 36)) {
        let k = m.ncols();
        let mix = LinearMap::from_dense(&(0..k).map(|i| (0..k).map(|j| {
            if i == j { &c[i * 6 + j] + &ExactScalar::from_int(5) } else { c[i * 6 + j].clone() }
        }).collect()).collect::<Vec<_>>());
        prop_assume!(inverse(&mix).is_ok());
        prop_assert_eq!(canonical_basis(&m), canonical_basis(&(&m * &mix)));
    }

    #[test]
    fn json_and_csv_roundtrip(m in matrix()) {
        let j = map_to_json(&m);
        let text = serde_json::to_string(&j).unwrap();
        let back = map_from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        prop_assert_eq!(back, m.clone());
        let csv = map_to_csv(&m).unwrap();
        prop_assert_eq!(csv.lines().count(), m.nrows());
        prop_assert!(!csv.contains('"'));
    }
}

#[test]
fn small_to_big_promotion() {
    let a = ExactScalar::from_int(i64::MAX);
    let b = &a + &a;
    assert_eq!(b.to_big(), BigRational::from_integer(BigInt::from(i64::MAX) * 2));
    let c = &b - &a;
    assert_eq!(c, a);
}

#[test]
fn inverse_of_singular_fails() {
    assert!(inverse(&LinearMap::from_i64(&[&[1, 2], &[2, 4]])).is_err());
    let a = LinearMap::from_i64(&[&[2, 1], &[1, 1]]);
    assert_eq!(&a * &inverse(&a).unwrap(), LinearMap::identity(2));
}

#[test]
fn composition_checks_shapes() {
    let a = LinearMap::zeros(2, 3);
    let b = LinearMap::zeros(2, 3);
    assert!(a.compose(&b).is_err());
}
