use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::{ExactScalar, LaError};

/// Basis descriptor attached to the domain or codomain of a map. The empty
/// label is anonymous and matches anything.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Label(Arc<str>);

impl Label {
    pub fn new(s: impl AsRef<str>) -> Self {
        Label(Arc::from(s.as_ref()))
    }

    pub fn anonymous() -> Self {
        Label(Arc::from(""))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn is_anonymous(&self) -> bool {
        self.0.is_empty()
    }

    pub fn compatible(&self, other: &Label) -> bool {
        self.is_anonymous() || other.is_anonymous() || self == other
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

pub type SparseRow = Vec<(usize, ExactScalar)>;

/// Exact rational matrix stored by rows, each row sorted by column with no
/// explicit zeros.
#[derive(Clone)]
pub struct LinearMap {
    nrows: usize,
    ncols: usize,
    rows: Vec<SparseRow>,
    pub domain: Label,
    pub codomain: Label,
}

impl PartialEq for LinearMap {
    fn eq(&self, other: &Self) -> bool {
        self.nrows == other.nrows && self.ncols == other.ncols && self.rows == other.rows
    }
}

impl Eq for LinearMap {}

impl fmt::Debug for LinearMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "LinearMap {}x{} ({} -> {}), nnz={}",
            self.nrows,
            self.ncols,
            self.domain,
            self.codomain,
            self.nnz()
        )?;
        if self.nrows <= 12 && self.ncols <= 12 {
            for i in 0..self.nrows {
                let row: Vec<String> = (0..self.ncols).map(|j| self.get(i, j).to_string()).collect();
                writeln!(f, "  [{}]", row.join(", "))?;
            }
        }
        Ok(())
    }
}

fn merge_axpy(a: &[(usize, ExactScalar)], f: &ExactScalar, b: &[(usize, ExactScalar)]) -> SparseRow {
    // a + f * b
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i >= a.len() || b[j].0 < a[i].0 {
            let v = f * &b[j].1;
            if !v.is_zero() {
                out.push((b[j].0, v));
            }
            j += 1;
        } else {
            let v = &a[i].1 + &(f * &b[j].1);
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

impl LinearMap {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        LinearMap {
            nrows,
            ncols,
            rows: vec![Vec::new(); nrows],
            domain: Label::anonymous(),
            codomain: Label::anonymous(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.rows[i].push((i, ExactScalar::one()));
        }
        m
    }

    pub fn diagonal(d: &[ExactScalar]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, v) in d.iter().enumerate() {
            if !v.is_zero() {
                m.rows[i].push((i, v.clone()));
            }
        }
        m
    }

    /// Builds from `(row, col, value)` triplets; duplicates are summed.
    pub fn from_triplets<I>(nrows: usize, ncols: usize, triplets: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, ExactScalar)>,
    {
        let mut rows: Vec<SparseRow> = vec![Vec::new(); nrows];
        for (i, j, v) in triplets {
            assert!(i < nrows && j < ncols, "triplet ({i},{j}) out of bounds {nrows}x{ncols}");
            if !v.is_zero() {
                rows[i].push((j, v));
            }
        }
        for row in rows.iter_mut() {
            row.sort_by_key(|e| e.0);
            let mut merged: SparseRow = Vec::with_capacity(row.len());
            for (j, v) in row.drain(..) {
                match merged.last_mut() {
                    Some(last) if last.0 == j => last.1 += &v,
                    _ => merged.push((j, v)),
                }
            }
            merged.retain(|e| !e.1.is_zero());
            *row = merged;
        }
        LinearMap {
            nrows,
            ncols,
            rows,
            domain: Label::anonymous(),
            codomain: Label::anonymous(),
        }
    }

    /// Builds from sorted sparse rows; zero entries are dropped.
    pub fn from_sparse_rows(ncols: usize, rows: Vec<SparseRow>) -> Self {
        let nrows = rows.len();
        let rows = rows
            .into_iter()
            .map(|mut r| {
                r.retain(|e| !e.1.is_zero());
                debug_assert!(r.windows(2).all(|w| w[0].0 < w[1].0));
                debug_assert!(r.iter().all(|e| e.0 < ncols));
                r
            })
            .collect();
        LinearMap {
            nrows,
            ncols,
            rows,
            domain: Label::anonymous(),
            codomain: Label::anonymous(),
        }
    }

    pub fn from_dense(rows: &[Vec<ExactScalar>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut out = Self::zeros(nrows, ncols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), ncols, "ragged dense matrix");
            out.rows[i] = r
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(j, v)| (j, v.clone()))
                .collect();
        }
        out
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let dense: Vec<Vec<ExactScalar>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| ExactScalar::from_int(v)).collect())
            .collect();
        if dense.is_empty() {
            return Self::zeros(0, 0);
        }
        Self::from_dense(&dense)
    }

    /// Column vector.
    pub fn column(v: &[ExactScalar]) -> Self {
        let rows: Vec<Vec<ExactScalar>> = v.iter().map(|x| vec![x.clone()]).collect();
        if rows.is_empty() {
            return Self::zeros(0, 1);
        }
        Self::from_dense(&rows)
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(nrows: usize, cols: &[Vec<ExactScalar>]) -> Self {
        let mut trip = Vec::new();
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), nrows);
            for (i, v) in c.iter().enumerate() {
                if !v.is_zero() {
                    trip.push((i, j, v.clone()));
                }
            }
        }
        Self::from_triplets(nrows, cols.len(), trip)
    }

    pub fn with_labels(mut self, domain: Label, codomain: Label) -> Self {
        self.domain = domain;
        self.codomain = codomain;
        self
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.nrows, self.ncols)
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    pub fn row(&self, i: usize) -> &[(usize, ExactScalar)] {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[SparseRow] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<SparseRow> {
        self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> ExactScalar {
        match self.rows[i].binary_search_by_key(&j, |e| e.0) {
            Ok(k) => self.rows[i][k].1.clone(),
            Err(_) => ExactScalar::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.is_empty())
    }

    pub fn is_square(&self) -> bool {
        self.nrows == self.ncols
    }

    pub fn to_dense(&self) -> Vec<Vec<ExactScalar>> {
        let mut out = vec![vec![ExactScalar::zero(); self.ncols]; self.nrows];
        for (i, r) in self.rows.iter().enumerate() {
            for (j, v) in r {
                out[i][*j] = v.clone();
            }
        }
        out
    }

    pub fn to_f64_dense(&self) -> Vec<Vec<f64>> {
        let mut out = vec![vec![0.0; self.ncols]; self.nrows];
        for (i, r) in self.rows.iter().enumerate() {
            for (j, v) in r {
                out[i][*j] = v.to_f64();
            }
        }
        out
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &ExactScalar)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().map(move |(j, v)| (i, *j, v)))
    }

    pub fn transpose(&self) -> Self {
        let mut rows: Vec<SparseRow> = vec![Vec::new(); self.ncols];
        for (i, r) in self.rows.iter().enumerate() {
            for (j, v) in r {
                rows[*j].push((i, v.clone()));
            }
        }
        LinearMap {
            nrows: self.ncols,
            ncols: self.nrows,
            rows,
            domain: self.codomain.clone(),
            codomain: self.domain.clone(),
        }
    }

    pub fn scale(&self, s: &ExactScalar) -> Self {
        if s.is_zero() {
            return Self::zeros(self.nrows, self.ncols).with_labels(self.domain.clone(), self.codomain.clone());
        }
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().map(|(j, v)| (*j, v * s)).collect())
            .collect();
        LinearMap { rows, ..self.clone_shape() }
    }

    fn clone_shape(&self) -> Self {
        LinearMap {
            nrows: self.nrows,
            ncols: self.ncols,
            rows: Vec::new(),
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
        }
    }

    /// `self + f * other`.
    pub fn axpy(&self, f: &ExactScalar, other: &LinearMap) -> Self {
        assert_eq!(self.shape(), other.shape(), "shape mismatch in sum");
        let rows = self
            .rows
            .iter()
            .zip(other.rows.iter())
            .map(|(a, b)| merge_axpy(a, f, b))
            .collect();
        LinearMap { rows, ..self.clone_shape() }
    }

    /// Checked composition `self ∘ rhs`; shapes must agree and labels must match.
    pub fn compose(&self, rhs: &LinearMap) -> Result<LinearMap, LaError> {
        if self.ncols != rhs.nrows {
            return Err(LaError::ShapeMismatch {
                left: self.shape(),
                right: rhs.shape(),
            });
        }
        if !self.domain.compatible(&rhs.codomain) {
            return Err(LaError::LabelMismatch {
                left: self.domain.to_string(),
                right: rhs.codomain.to_string(),
            });
        }
        Ok(self.matmul(rhs))
    }

    fn matmul(&self, rhs: &LinearMap) -> LinearMap {
        assert_eq!(self.ncols, rhs.nrows, "shape mismatch in product");
        let n = rhs.ncols;
        let mut acc: Vec<Option<ExactScalar>> = vec![None; n];
        let mut touched: Vec<usize> = Vec::new();
        let mut rows = Vec::with_capacity(self.nrows);
        for r in &self.rows {
            for (k, a) in r {
                for (j, b) in &rhs.rows[*k] {
                    let p = a * b;
                    match &mut acc[*j] {
                        Some(v) => *v += &p,
                        slot @ None => {
                            *slot = Some(p);
                            touched.push(*j);
                        }
                    }
                }
            }
            touched.sort_unstable();
            let mut out = Vec::with_capacity(touched.len());
            for &j in &touched {
                let v = acc[j].take().unwrap();
                if !v.is_zero() {
                    out.push((j, v));
                }
            }
            touched.clear();
            rows.push(out);
        }
        LinearMap {
            nrows: self.nrows,
            ncols: n,
            rows,
            domain: rhs.domain.clone(),
            codomain: self.codomain.clone(),
        }
    }

    pub fn apply(&self, x: &[ExactScalar]) -> Vec<ExactScalar> {
        assert_eq!(x.len(), self.ncols);
        self.rows
            .iter()
            .map(|r| r.iter().map(|(j, v)| v * &x[*j]).sum())
            .collect()
    }

    pub fn kron(a: &LinearMap, b: &LinearMap) -> LinearMap {
        let (br, bc) = b.shape();
        let mut rows = Vec::with_capacity(a.nrows * br);
        for ra in &a.rows {
            for rb in &b.rows {
                let mut row = Vec::with_capacity(ra.len() * rb.len());
                for (ja, va) in ra {
                    for (jb, vb) in rb {
                        row.push((ja * bc + jb, va * vb));
                    }
                }
                rows.push(row);
            }
        }
        LinearMap::from_sparse_rows(a.ncols * bc, rows)
    }

    /// `I_k ⊗ b`, block diagonal with `k` copies of `b`.
    pub fn block_diag_repeat(k: usize, b: &LinearMap) -> LinearMap {
        let (br, bc) = b.shape();
        let mut rows = Vec::with_capacity(k * br);
        for blk in 0..k {
            for rb in &b.rows {
                rows.push(rb.iter().map(|(j, v)| (blk * bc + j, v.clone())).collect());
            }
        }
        LinearMap::from_sparse_rows(k * bc, rows)
    }

    pub fn block_diag(blocks: &[&LinearMap]) -> LinearMap {
        let ncols: usize = blocks.iter().map(|b| b.ncols).sum();
        let mut rows = Vec::new();
        let mut off = 0;
        for b in blocks {
            for r in &b.rows {
                rows.push(r.iter().map(|(j, v)| (off + j, v.clone())).collect());
            }
            off += b.ncols;
        }
        LinearMap::from_sparse_rows(ncols, rows)
    }

    pub fn hstack(blocks: &[&LinearMap]) -> LinearMap {
        let nrows = blocks.first().map_or(0, |b| b.nrows);
        assert!(blocks.iter().all(|b| b.nrows == nrows), "hstack row mismatch");
        let ncols: usize = blocks.iter().map(|b| b.ncols).sum();
        let mut rows: Vec<SparseRow> = vec![Vec::new(); nrows];
        let mut off = 0;
        for b in blocks {
            for (i, r) in b.rows.iter().enumerate() {
                rows[i].extend(r.iter().map(|(j, v)| (off + j, v.clone())));
            }
            off += b.ncols;
        }
        LinearMap::from_sparse_rows(ncols, rows)
    }

    pub fn vstack(blocks: &[&LinearMap]) -> LinearMap {
        let ncols = blocks.first().map_or(0, |b| b.ncols);
        assert!(blocks.iter().all(|b| b.ncols == ncols), "vstack column mismatch");
        let mut rows = Vec::new();
        for b in blocks {
            rows.extend(b.rows.iter().cloned());
        }
        LinearMap::from_sparse_rows(ncols, rows)
    }

    /// 2x2 block matrix `[[a, b], [c, d]]`.
    pub fn block2(a: &LinearMap, b: &LinearMap, c: &LinearMap, d: &LinearMap) -> LinearMap {
        let top = LinearMap::hstack(&[a, b]);
        let bot = LinearMap::hstack(&[c, d]);
        LinearMap::vstack(&[&top, &bot])
    }

    pub fn select_columns(&self, cols: &[usize]) -> LinearMap {
        let mut pos = vec![usize::MAX; self.ncols];
        for (k, &c) in cols.iter().enumerate() {
            pos[c] = k;
        }
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut out: SparseRow = r
                    .iter()
                    .filter(|(j, _)| pos[*j] != usize::MAX)
                    .map(|(j, v)| (pos[*j], v.clone()))
                    .collect();
                out.sort_by_key(|e| e.0);
                out
            })
            .collect();
        LinearMap::from_sparse_rows(cols.len(), rows)
    }

    pub fn select_rows(&self, rows: &[usize]) -> LinearMap {
        LinearMap::from_sparse_rows(self.ncols, rows.iter().map(|&i| self.rows[i].clone()).collect())
    }

    /// Column `j` as a dense vector.
    pub fn column_vec(&self, j: usize) -> Vec<ExactScalar> {
        (0..self.nrows).map(|i| self.get(i, j)).collect()
    }

    /// Maximum absolute entry, for diagnostics.
    pub fn max_abs(&self) -> ExactScalar {
        self.rows
            .iter()
            .flat_map(|r| r.iter().map(|e| e.1.abs()))
            .max()
            .unwrap_or_default()
    }

    /// Frobenius inner product `tr(selfᵀ other)`.
    pub fn frobenius_dot(&self, other: &LinearMap) -> ExactScalar {
        assert_eq!(self.shape(), other.shape());
        let mut acc = ExactScalar::zero();
        for (a, b) in self.rows.iter().zip(other.rows.iter()) {
            let (mut i, mut j) = (0, 0);
            while i < a.len() && j < b.len() {
                if a[i].0 < b[j].0 {
                    i += 1;
                } else if b[j].0 < a[i].0 {
                    j += 1;
                } else {
                    acc += &(&a[i].1 * &b[j].1);
                    i += 1;
                    j += 1;
                }
            }
        }
        acc
    }
}

impl Mul<&LinearMap> for &LinearMap {
    type Output = LinearMap;
    fn mul(self, rhs: &LinearMap) -> LinearMap {
        self.matmul(rhs)
    }
}

impl Mul<LinearMap> for LinearMap {
    type Output = LinearMap;
    fn mul(self, rhs: LinearMap) -> LinearMap {
        self.matmul(&rhs)
    }
}

impl Mul<&LinearMap> for LinearMap {
    type Output = LinearMap;
    fn mul(self, rhs: &LinearMap) -> LinearMap {
        self.matmul(rhs)
    }
}

impl Mul<LinearMap> for &LinearMap {
    type Output = LinearMap;
    fn mul(self, rhs: LinearMap) -> LinearMap {
        self.matmul(&rhs)
    }
}

impl Add<&LinearMap> for &LinearMap {
    type Output = LinearMap;
    fn add(self, rhs: &LinearMap) -> LinearMap {
        self.axpy(&ExactScalar::one(), rhs)
    }
}

impl Add<LinearMap> for LinearMap {
    type Output = LinearMap;
    fn add(self, rhs: LinearMap) -> LinearMap {
        self.axpy(&ExactScalar::one(), &rhs)
    }
}

impl Sub<&LinearMap> for &LinearMap {
    type Output = LinearMap;
    fn sub(self, rhs: &LinearMap) -> LinearMap {
        self.axpy(&-ExactScalar::one(), rhs)
    }
}

impl Sub<LinearMap> for LinearMap {
    type Output = LinearMap;
    fn sub(self, rhs: LinearMap) -> LinearMap {
        self.axpy(&-ExactScalar::one(), &rhs)
    }
}

impl Neg for &LinearMap {
    type Output = LinearMap;
    fn neg(self) -> LinearMap {
        self.scale(&-ExactScalar::one())
    }
}

impl Neg for LinearMap {
    type Output = LinearMap;
    fn neg(self) -> LinearMap {
        self.scale(&-ExactScalar::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_transpose() {
        let a = LinearMap::from_i64(&[&[1, 2], &[0, 1], &[3, 0]]);
        let b = LinearMap::from_i64(&[&[1, 0, 1], &[2, 1, 0]]);
        let c = &a * &b;
        assert_eq!(c, LinearMap::from_i64(&[&[5, 2, 1], &[2, 1, 0], &[3, 0, 3]]));
        assert_eq!((&a * &b).transpose(), &b.transpose() * &a.transpose());
    }

    #[test]
    fn labels_guard_composition() {
        let a = LinearMap::identity(2).with_labels(Label::new("X"), Label::new("Y"));
        let b = LinearMap::identity(2).with_labels(Label::new("Z"), Label::new("W"));
        assert!(a.compose(&b).is_err());
        let c = LinearMap::identity(2).with_labels(Label::new("Z"), Label::new("X"));
        let ac = a.compose(&c).unwrap();
        assert_eq!(ac.domain, Label::new("Z"));
        assert_eq!(ac.codomain, Label::new("Y"));
        let d = LinearMap::identity(3);
        assert!(matches!(a.compose(&d), Err(LaError::ShapeMismatch { .. })));
    }

    #[test]
    fn kron_matches_blocks() {
        let a = LinearMap::from_i64(&[&[1, 2], &[3, 4]]);
        let i2 = LinearMap::identity(2);
        assert_eq!(LinearMap::kron(&i2, &a), LinearMap::block_diag(&[&a, &a]));
        assert_eq!(LinearMap::block_diag_repeat(2, &a), LinearMap::block_diag(&[&a, &a]));
    }
}
