//! Exact rational linear algebra over sparse matrices.

mod elim;
mod io;
mod matrix;
mod scalar;

pub use elim::{nullspace, pivot_columns, rank, rref, solve};
pub use io::{
    map_from_json, map_from_sparse_json, map_to_csv, map_to_json, map_to_sparse_json, MapJson, SparseMapJson,
};
pub use matrix::{Label, LinearMap, SparseRow};
pub use scalar::ExactScalar;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LaError {
    #[error("shape mismatch: {left:?} composed with {right:?}")]
    ShapeMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("basis label mismatch: domain `{left}` vs codomain `{right}`")]
    LabelMismatch { left: String, right: String },
    #[error("system is inconsistent")]
    Inconsistent,
    #[error("matrix is singular")]
    Singular,
    #[error("cannot parse rational `{0}`")]
    Parse(String),
    #[error("malformed matrix data: {0}")]
    Malformed(String),
}

/// Basis of the column space, taken as a subset of the columns of `a`.
pub fn column_space(a: &LinearMap) -> LinearMap {
    a.select_columns(&pivot_columns(a))
}

pub fn is_injective(a: &LinearMap) -> bool {
    rank(a) == a.ncols()
}

pub fn is_surjective(a: &LinearMap) -> bool {
    rank(a) == a.nrows()
}

/// Inverse of a square nonsingular matrix.
pub fn inverse(a: &LinearMap) -> Result<LinearMap, LaError> {
    if !a.is_square() {
        return Err(LaError::Singular);
    }
    let x = solve(a, &LinearMap::identity(a.nrows())).ok_or(LaError::Singular)?;
    if (a * &x) != LinearMap::identity(a.nrows()) {
        return Err(LaError::Singular);
    }
    Ok(x)
}

/// Minimum-norm solution of `a x = b` (columnwise): `x = aᵀ y` with
/// `a aᵀ y = b`, which lies in the orthogonal complement of the kernel.
pub fn min_norm_solve(a: &LinearMap, b: &LinearMap) -> Result<LinearMap, LaError> {
    let at = a.transpose();
    let gram = a * &at;
    let y = solve(&gram, b).ok_or(LaError::Inconsistent)?;
    Ok(&at * &y)
}

/// Moore–Penrose pseudoinverse via a rank factorisation `a = C F` with `C`
/// made of pivot columns: `a⁺ = Fᵀ (F Fᵀ)⁻¹ (Cᵀ C)⁻¹ Cᵀ`.
pub fn pinv(a: &LinearMap) -> LinearMap {
    let piv = pivot_columns(a);
    if piv.is_empty() {
        return LinearMap::zeros(a.ncols(), a.nrows())
            .with_labels(a.codomain.clone(), a.domain.clone());
    }
    let c = a.select_columns(&piv);
    let ct = c.transpose();
    let ctc_inv = inverse(&(&ct * &c)).expect("pivot columns are independent");
    let f = &ctc_inv * &(&ct * a);
    let ft = f.transpose();
    let fft_inv = inverse(&(&f * &ft)).expect("factor rows are independent");
    let p = &ft * &(&fft_inv * &(&ctc_inv * &ct));
    p.with_labels(a.codomain.clone(), a.domain.clone())
}

/// Orthogonal projector onto the range of `a`.
pub fn range_projector(a: &LinearMap) -> LinearMap {
    a * &pinv(a)
}

/// Orthogonal projector onto the kernel of `a`.
pub fn kernel_projector(a: &LinearMap) -> LinearMap {
    &LinearMap::identity(a.ncols()) - &(&pinv(a) * a)
}

/// Orthogonal projector onto the column space of a full-column-rank basis.
pub fn basis_projector(b: &LinearMap) -> LinearMap {
    if b.ncols() == 0 {
        return LinearMap::zeros(b.nrows(), b.nrows());
    }
    let bt = b.transpose();
    let g = inverse(&(&bt * b)).expect("basis columns are independent");
    b * &(&g * &bt)
}

/// The canonical basis of a column space: the transposed nonzero rows of the
/// reduced row echelon form of `aᵀ`. Equal subspaces give equal bases.
pub fn canonical_basis(a: &LinearMap) -> LinearMap {
    let (rows, _) = rref(&a.transpose());
    if rows.is_empty() {
        return LinearMap::zeros(a.nrows(), 0);
    }
    LinearMap::from_dense(&rows).transpose()
}

/// Checks that the columns of `b` are pairwise orthogonal under the
/// standard inner product.
pub fn columns_orthogonal(b: &LinearMap) -> bool {
    let g = &b.transpose() * b;
    let ok = g.triplets().all(|(i, j, _)| i == j);
    ok
}
