//! Independent oracle for the committed dimension tables.
//!
//! Every output operator is homogeneous: it lowers polynomial degree by its
//! order. The oracle splits each assembled matrix into blocks by degree,
//! checks that no entry leaves its block, clears denominators row by row and
//! runs dense fraction-free Bareiss elimination over `BigInt` per block. None
//! of the library's elimination code is used.
//!
//! Set `BGGC_WRITE_GOLDEN=1` to regenerate `golden/dimensions.json`.

use std::collections::BTreeMap;

use bggc::bgg::ComplexSpec;
use bggc::cli::{golden, GoldenEntry, GoldenFile, Target};
use num_bigint::BigInt;
use num_traits::{One, Zero};

fn bareiss_rank(mut a: Vec<Vec<BigInt>>) -> usize {
    let rows = a.len();
    if rows == 0 {
        return 0;
    }
    let cols = a[0].len();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for r in rank + 1..rows {
            for k in c + 1..cols {
                let v = (&a[rank][c] * &a[r][k] - &a[r][c] * &a[rank][k]) / &prev;
                a[r][k] = v;
            }
            a[r][c] = BigInt::zero();
        }
        prev = a[rank][c].clone();
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Polynomial degree of each basis coordinate of a space.
fn coordinate_degrees(c: &ComplexSpec, i: usize) -> Vec<usize> {
    let s = &c.spaces[i];
    let f = s.fiber.dim();
    let mons = s.monomials();
    (0..s.dim()).map(|k| mons.degree(k / f)).collect()
}

fn oracle_rank(c: &ComplexSpec, i: usize) -> usize {
    let m = c.operator_in_basis(i);
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0;
    }
    let order = c.orders[i] as usize;
    let col_deg = coordinate_degrees(c, i);
    let row_deg = coordinate_degrees(c, i + 1);
    // Degree block -> (row, col, value) entries.
    let mut blocks: BTreeMap<usize, Vec<(usize, usize, bggc::exactla::ExactScalar)>> = BTreeMap::new();
    for (r, col, v) in m.triplets() {
        assert_eq!(row_deg[r] + order, col_deg[col], "{} operator {i} is not homogeneous", c.name);
        blocks.entry(col_deg[col]).or_default().push((r, col, v.clone()));
    }
    blocks
        .into_values()
        .map(|entries| {
            let mut rows: Vec<usize> = entries.iter().map(|e| e.0).collect();
            let mut cols: Vec<usize> = entries.iter().map(|e| e.1).collect();
            rows.sort_unstable();
            rows.dedup();
            cols.sort_unstable();
            cols.dedup();
            let mut dense = vec![vec![BigInt::zero(); cols.len()]; rows.len()];
            let mut denoms = vec![BigInt::one(); rows.len()];
            for (r, _, v) in &entries {
                let ri = rows.binary_search(r).unwrap();
                let d = v.denom();
                let g = num_integer_gcd(&denoms[ri], &d);
                denoms[ri] = &denoms[ri] / &g * &d;
            }
            for (r, col, v) in &entries {
                let ri = rows.binary_search(r).unwrap();
                let ci = cols.binary_search(col).unwrap();
                dense[ri][ci] = v.numer() * (&denoms[ri] / v.denom());
            }
            bareiss_rank(dense)
        })
        .sum()
}

fn num_integer_gcd(a: &BigInt, b: &BigInt) -> BigInt {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_zero() {
        let t = &a % &b;
        a = b;
        b = t;
    }
    if a < BigInt::zero() {
        -a
    } else {
        a
    }
}

fn oracle_entry(target: &Target, degree: i64) -> GoldenEntry {
    let built = target.build(degree).expect("target builds");
    let c = built.complex();
    let ranks: Vec<usize> = (0..c.diffs.len()).map(|i| oracle_rank(c, i)).collect();
    assert_eq!(ranks, c.ranks(), "{} ranks disagree with the library", target.label());
    let dims = c.dims();
    let cohomology = (0..dims.len())
        .map(|i| {
            let out = if i < ranks.len() { ranks[i] } else { 0 };
            let inc = if i > 0 { ranks[i - 1] } else { 0 };
            dims[i] - out - inc
        })
        .collect();
    GoldenEntry {
        name: target.label(),
        degree,
        dims,
        cohomology,
    }
}

fn golden_targets() -> Vec<(Target, i64)> {
    let mut t: Vec<(Target, i64)> = bggc::proxies::VALID_NAMED.iter().map(|n| (Target::named(n), 8)).collect();
    t.push((Target::named("conformal_elasticity3d"), 10));
    for j in 0..2 {
        t.push((Target::altij(2, j), 6));
    }
    for j in 0..3 {
        t.push((Target::altij(3, j), 8));
    }
    t.push((Target::derham(2), 6));
    t.push((Target::derham(3), 8));
    t
}

#[test]
fn bareiss_small_cases() {
    let m = |v: &[&[i64]]| v.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect::<Vec<Vec<BigInt>>>();
    assert_eq!(bareiss_rank(m(&[&[1, 2], &[2, 4]])), 1);
    assert_eq!(bareiss_rank(m(&[&[0, 1], &[1, 0]])), 2);
    assert_eq!(bareiss_rank(m(&[&[0, 0, 0]])), 0);
    assert_eq!(bareiss_rank(m(&[&[2, 3, 5], &[4, 6, 10], &[1, 0, 1]])), 2);
}

#[test]
fn golden_file_matches_oracle() {
    let entries: Vec<GoldenEntry> = golden_targets().iter().map(|(t, r)| oracle_entry(t, *r)).collect();
    let file = GoldenFile {
        oracle: "per-degree dense BigInt Bareiss rank on assembled operator matrices".into(),
        entries,
    };
    if std::env::var("BGGC_WRITE_GOLDEN").is_ok() {
        let path = concat!(env!("CARGO_MANIFEST_DIR"), "/golden/dimensions.json");
        let mut text = serde_json::to_string_pretty(&file).unwrap();
        text.push('\n');
        std::fs::write(path, text).unwrap();
        return;
    }
    assert_eq!(golden(), file);
}

#[test]
fn golden_covers_named_expectations() {
    let g = golden();
    let coh = |name: &str, degree: i64| {
        g.entries
            .iter()
            .find(|e| e.name == name && e.degree == degree)
            .map(|e| e.cohomology.clone())
            .unwrap_or_else(|| panic!("{name} at degree {degree} missing"))
    };
    assert_eq!(coh("hessian3d", 8), [4, 0, 0, 0]);
    assert_eq!(coh("elasticity3d", 8), [6, 0, 0, 0]);
    assert_eq!(coh("divdiv3d", 8), [4, 0, 0, 0]);
    assert_eq!(coh("gradcurl3d", 8), [1, 3, 0, 0, 0, 0]);
    assert_eq!(coh("curldiv3d", 8), [3, 1, 0, 0, 0]);
    assert_eq!(coh("graddiv3d", 8), [1, 0, 1, 0, 0, 0]);
    assert_eq!(coh("conformal_elasticity3d", 10), [10, 0, 0, 0]);
    assert_eq!(coh("conformal_hessian3d_a", 8), coh("conformal_hessian3d_b", 8));
    assert_eq!(coh("gradrot2d", 8)[1], 1);
}
