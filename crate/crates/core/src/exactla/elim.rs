//! Sparse exact Gaussian elimination.
//!
//! Matrices are first split into the connected components of their
//! row/column incidence graph; each component is then eliminated with a
//! Markowitz-style pivot order (sparsest column, then sparsest row). The
//! polynomial operators handled by this crate respect one or more gradings,
//! so the components are small even when the matrix is large.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use rayon::prelude::*;

use super::{ExactScalar, LinearMap, SparseRow};

/// Result of eliminating one block, in block-local column numbering.
struct BlockResult {
    /// `(local pivot column, stored pivot row)` in elimination order.
    pivots: Vec<(usize, SparseRow)>,
    /// Rows left with nonzeros only in non-pivotable columns.
    residual: Vec<SparseRow>,
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// A block of rows over a local column range. Columns `0..eligible` may be
/// pivots; columns `eligible..` carry right-hand sides.
struct Block {
    cols: Vec<usize>,
    eligible: usize,
    rows: Vec<SparseRow>,
}

fn split_components(a: &LinearMap, eligible: usize) -> (Vec<Block>, Vec<SparseRow>) {
    let ncols = a.ncols();
    let mut parent: Vec<usize> = (0..eligible).collect();
    for r in a.rows() {
        let mut first: Option<usize> = None;
        for (j, _) in r.iter().take_while(|(j, _)| *j < eligible) {
            match first {
                None => first = Some(find(&mut parent, *j)),
                Some(f) => {
                    let rj = find(&mut parent, *j);
                    if rj != f {
                        parent[rj] = f;
                    }
                }
            }
        }
    }
    let mut comp_of_root = vec![usize::MAX; eligible];
    let mut comp_rows: Vec<Vec<usize>> = Vec::new();
    let mut orphan: Vec<SparseRow> = Vec::new();
    for (i, r) in a.rows().iter().enumerate() {
        match r.first() {
            Some((j, _)) if *j < eligible => {
                let root = find(&mut parent, *j);
                if comp_of_root[root] == usize::MAX {
                    comp_of_root[root] = comp_rows.len();
                    comp_rows.push(Vec::new());
                }
                comp_rows[comp_of_root[root]].push(i);
            }
            Some(_) => orphan.push(r.clone()),
            None => {}
        }
    }
    let mut local = vec![usize::MAX; ncols];
    let mut blocks = Vec::with_capacity(comp_rows.len());
    for rows in comp_rows {
        let mut cols: Vec<usize> = Vec::new();
        for &i in &rows {
            for (j, _) in a.row(i) {
                if local[*j] == usize::MAX {
                    local[*j] = 0;
                    cols.push(*j);
                }
            }
        }
        cols.sort_unstable();
        let elig = cols.iter().take_while(|&&j| j < eligible).count();
        for (k, &j) in cols.iter().enumerate() {
            local[j] = k;
        }
        let brows = rows
            .iter()
            .map(|&i| a.row(i).iter().map(|(j, v)| (local[*j], v.clone())).collect())
            .collect();
        for &j in &cols {
            local[j] = usize::MAX;
        }
        blocks.push(Block {
            cols,
            eligible: elig,
            rows: brows,
        });
    }
    (blocks, orphan)
}

fn eliminate_block(block: &Block) -> BlockResult {
    let ncols = block.cols.len();
    let elig = block.eligible;
    let mut rows: Vec<Option<SparseRow>> = block.rows.iter().cloned().map(Some).collect();
    let mut count = vec![0usize; elig];
    let mut col_rows: Vec<Vec<usize>> = vec![Vec::new(); elig];
    for (i, r) in block.rows.iter().enumerate() {
        for (j, _) in r.iter().take_while(|(j, _)| *j < elig) {
            count[*j] += 1;
            col_rows[*j].push(i);
        }
    }
    let mut done = vec![false; elig];
    let mut heap: BinaryHeap<Reverse<(usize, usize)>> = (0..elig)
        .filter(|&j| count[j] > 0)
        .map(|j| Reverse((count[j], j)))
        .collect();
    let mut pivots = Vec::new();
    let _ = ncols;

    while let Some(Reverse((c, col))) = heap.pop() {
        if done[col] || count[col] != c || c == 0 {
            continue;
        }
        // Candidate rows that still hold this column.
        let mut cands: Vec<usize> = Vec::with_capacity(c);
        for &i in &col_rows[col] {
            if let Some(r) = &rows[i] {
                if r.binary_search_by_key(&col, |e| e.0).is_ok() {
                    cands.push(i);
                }
            }
        }
        cands.sort_unstable();
        cands.dedup();
        col_rows[col] = cands.clone();
        let prow_idx = *cands
            .iter()
            .min_by_key(|&&i| {
                let r = rows[i].as_ref().unwrap();
                let k = r.binary_search_by_key(&col, |e| e.0).unwrap();
                (r.len(), r[k].1.height())
            })
            .unwrap();
        let prow = rows[prow_idx].take().unwrap();
        let pk = prow.binary_search_by_key(&col, |e| e.0).unwrap();
        let pinv = prow[pk].1.recip();
        for (j, _) in prow.iter().take_while(|(j, _)| *j < elig) {
            count[*j] -= 1;
        }
        for &i in &cands {
            if i == prow_idx {
                continue;
            }
            let r = rows[i].take().unwrap();
            let k = r.binary_search_by_key(&col, |e| e.0).unwrap();
            let f = &r[k].1 * &pinv;
            // new = r - f * prow, tracking pattern changes in eligible columns.
            let mut out: SparseRow = Vec::with_capacity(r.len() + prow.len());
            let (mut a, mut b) = (0, 0);
            while a < r.len() || b < prow.len() {
                if b >= prow.len() || (a < r.len() && r[a].0 < prow[b].0) {
                    out.push(r[a].clone());
                    a += 1;
                } else if a >= r.len() || prow[b].0 < r[a].0 {
                    let j = prow[b].0;
                    let v = -(&f * &prow[b].1);
                    if !v.is_zero() {
                        if j < elig {
                            count[j] += 1;
                            col_rows[j].push(i);
                            heap.push(Reverse((count[j], j)));
                        }
                        out.push((j, v));
                    }
                    b += 1;
                } else {
                    let j = r[a].0;
                    let v = r[a].1.sub_mul(&f, &prow[b].1);
                    if v.is_zero() {
                        if j < elig {
                            count[j] -= 1;
                            heap.push(Reverse((count[j], j)));
                        }
                    } else {
                        out.push((j, v));
                    }
                    a += 1;
                    b += 1;
                }
            }
            rows[i] = Some(out);
        }
        for (j, _) in prow.iter().take_while(|(j, _)| *j < elig) {
            if *j != col && !done[*j] {
                heap.push(Reverse((count[*j], *j)));
            }
        }
        done[col] = true;
        count[col] = 0;
        pivots.push((col, prow));
    }
    let residual = rows.into_iter().flatten().filter(|r| !r.is_empty()).collect();
    BlockResult { pivots, residual }
}

fn run_blocks(blocks: &[Block]) -> Vec<BlockResult> {
    let total: usize = blocks.iter().map(|b| b.rows.len()).sum();
    if blocks.len() > 1 && total > 256 {
        blocks.par_iter().map(eliminate_block).collect()
    } else {
        blocks.iter().map(eliminate_block).collect()
    }
}

/// Exact rank.
pub fn rank(a: &LinearMap) -> usize {
    let (blocks, _) = split_components(a, a.ncols());
    run_blocks(&blocks).iter().map(|r| r.pivots.len()).sum()
}

/// Columns of `a` (sorted) forming a basis of its column space.
pub fn pivot_columns(a: &LinearMap) -> Vec<usize> {
    let (blocks, _) = split_components(a, a.ncols());
    let results = run_blocks(&blocks);
    let mut cols: Vec<usize> = blocks
        .iter()
        .zip(results.iter())
        .flat_map(|(b, r)| r.pivots.iter().map(move |(c, _)| b.cols[*c]))
        .collect();
    cols.sort_unstable();
    cols
}

/// Back-substitution over the stored pivot rows. `x` is indexed by local
/// column and must already contain the values of free columns; `rhs(row)`
/// gives the right-hand side of a pivot row.
fn back_substitute<F>(pivots: &[(usize, SparseRow)], eligible: usize, x: &mut [ExactScalar], rhs: F)
where
    F: Fn(&SparseRow) -> ExactScalar,
{
    for (col, row) in pivots.iter().rev() {
        let mut acc = rhs(row);
        let mut pv = ExactScalar::zero();
        for (j, v) in row.iter().take_while(|(j, _)| *j < eligible) {
            if j == col {
                pv = v.clone();
            } else if !x[*j].is_zero() {
                acc = acc.sub_mul(v, &x[*j]);
            }
        }
        x[*col] = &acc / &pv;
    }
}

/// Basis of the null space, as the columns of an `ncols x nullity` map.
pub fn nullspace(a: &LinearMap) -> LinearMap {
    let n = a.ncols();
    let (blocks, _) = split_components(a, n);
    let results = run_blocks(&blocks);
    let mut covered = vec![false; n];
    let per_block: Vec<Vec<Vec<(usize, ExactScalar)>>> = blocks
        .par_iter()
        .zip(results.par_iter())
        .map(|(b, r)| {
            let mut is_pivot = vec![false; b.eligible];
            for (c, _) in &r.pivots {
                is_pivot[*c] = true;
            }
            let mut vecs = Vec::new();
            for f in 0..b.eligible {
                if is_pivot[f] {
                    continue;
                }
                let mut x = vec![ExactScalar::zero(); b.eligible];
                x[f] = ExactScalar::one();
                back_substitute(&r.pivots, b.eligible, &mut x, |_| ExactScalar::zero());
                vecs.push(
                    x.into_iter()
                        .enumerate()
                        .filter(|(_, v)| !v.is_zero())
                        .map(|(k, v)| (b.cols[k], v))
                        .collect(),
                );
            }
            vecs
        })
        .collect();
    for b in &blocks {
        for &c in &b.cols {
            covered[c] = true;
        }
    }
    // Columns never touched by any row are free with trivial dependence.
    let mut columns: Vec<Vec<(usize, ExactScalar)>> = per_block.into_iter().flatten().collect();
    for (c, cov) in covered.iter().enumerate() {
        if !cov {
            columns.push(vec![(c, ExactScalar::one())]);
        }
    }
    columns.sort_by(|x, y| x.last().map(|e| e.0).cmp(&y.last().map(|e| e.0)));
    let trip = columns
        .iter()
        .enumerate()
        .flat_map(|(k, col)| col.iter().map(move |(i, v)| (*i, k, v.clone())));
    LinearMap::from_triplets(n, columns.len(), trip)
}

/// Solves `a x = b` for every column of `b`. Free variables are set to zero.
/// Returns `None` when the system is inconsistent.
pub fn solve(a: &LinearMap, b: &LinearMap) -> Option<LinearMap> {
    assert_eq!(a.nrows(), b.nrows(), "solve: row mismatch");
    let n = a.ncols();
    let k = b.ncols();
    let aug = LinearMap::hstack(&[a, b]);
    let (blocks, orphan) = split_components(&aug, n);
    if !orphan.is_empty() {
        return None;
    }
    let results = run_blocks(&blocks);
    if results.iter().any(|r| !r.residual.is_empty()) {
        return None;
    }
    let parts: Vec<Vec<(usize, usize, ExactScalar)>> = blocks
        .par_iter()
        .zip(results.par_iter())
        .map(|(blk, r)| {
            let mut trip = Vec::new();
            let rhs_local: Vec<(usize, usize)> = blk.cols[blk.eligible..]
                .iter()
                .enumerate()
                .map(|(t, &g)| (blk.eligible + t, g - n))
                .collect();
            for &(lc, rhs_col) in &rhs_local {
                let mut x = vec![ExactScalar::zero(); blk.eligible];
                back_substitute(&r.pivots, blk.eligible, &mut x, |row| {
                    match row.binary_search_by_key(&lc, |e| e.0) {
                        Ok(p) => row[p].1.clone(),
                        Err(_) => ExactScalar::zero(),
                    }
                });
                for (c, v) in x.into_iter().enumerate() {
                    if !v.is_zero() {
                        trip.push((blk.cols[c], rhs_col, v));
                    }
                }
            }
            trip
        })
        .collect();
    Some(LinearMap::from_triplets(n, k, parts.into_iter().flatten()))
}

/// Dense reduced row echelon form, for small matrices. Returns the nonzero
/// rows and pivot columns.
pub fn rref(a: &LinearMap) -> (Vec<Vec<ExactScalar>>, Vec<usize>) {
    let mut m = a.to_dense();
    let (nr, nc) = a.shape();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..nc {
        if r == nr {
            break;
        }
        let Some(p) = (r..nr).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for v in m[r].iter_mut() {
            *v = &*v * &inv;
        }
        for i in 0..nr {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let (pr, ri) = if i < r {
                    let (lo, hi) = m.split_at_mut(r);
                    (&hi[0], &mut lo[i])
                } else {
                    let (lo, hi) = m.split_at_mut(i);
                    (&lo[r], &mut hi[0])
                };
                for (x, y) in ri.iter_mut().zip(pr.iter()) {
                    if !y.is_zero() {
                        *x = x.sub_mul(&f, y);
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

/// Residual rows helper used by tests of the splitting logic.
#[cfg(test)]
fn component_count(a: &LinearMap) -> usize {
    split_components(a, a.ncols()).0.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dense_rank(a: &LinearMap) -> usize {
        rref(a).1.len()
    }

    #[test]
    fn rank_basic() {
        let a = LinearMap::from_i64(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rank(&a), 2);
        assert_eq!(dense_rank(&a), 2);
        assert_eq!(rank(&LinearMap::zeros(3, 4)), 0);
        assert_eq!(rank(&LinearMap::identity(5)), 5);
    }

    #[test]
    fn nullspace_is_kernel() {
        let a = LinearMap::from_i64(&[&[1, 2, 3, 0], &[2, 4, 6, 0], &[1, 0, 1, 0]]);
        let n = nullspace(&a);
        assert_eq!(n.ncols(), 2);
        assert!((&a * &n).is_zero());
        assert_eq!(rank(&n), 2);
    }

    #[test]
    fn solve_consistent_and_not() {
        let a = LinearMap::from_i64(&[&[1, 1], &[1, -1], &[2, 0]]);
        let b = LinearMap::from_i64(&[&[3], &[1], &[4]]);
        let x = solve(&a, &b).unwrap();
        assert_eq!(&a * &x, b);
        let bad = LinearMap::from_i64(&[&[3], &[1], &[5]]);
        assert!(solve(&a, &bad).is_none());
    }

    #[test]
    fn components_split() {
        let a = LinearMap::from_i64(&[&[1, 0, 0], &[0, 1, 1], &[0, 2, 2]]);
        assert_eq!(component_count(&a), 2);
        assert_eq!(rank(&a), 2);
    }

    #[test]
    fn pivot_columns_span() {
        let a = LinearMap::from_i64(&[&[1, 2, 3], &[2, 4, 7]]);
        let p = pivot_columns(&a);
        assert_eq!(p.len(), 2);
        assert_eq!(rank(&a.select_columns(&p)), 2);
    }
}
