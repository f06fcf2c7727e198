use std::fmt;
use std::sync::Arc;

use crate::exactla::{basis_projector, canonical_basis, Label, LinearMap};
use crate::polyforms::MonomialBasis;

/// A fiber: a subspace of an ambient coordinate space `R^m` carrying the
/// standard inner product. The basis is canonical (reduced echelon), so
/// equal subspaces have equal bases.
#[derive(Clone, Debug)]
pub struct Fiber {
    pub name: String,
    pub ambient_name: String,
    pub ambient_dim: usize,
    pub basis: LinearMap,
    pub projector: LinearMap,
}

impl Fiber {
    pub fn full(name: impl Into<String>, dim: usize) -> Self {
        let name = name.into();
        Fiber {
            ambient_name: name.clone(),
            name,
            ambient_dim: dim,
            basis: LinearMap::identity(dim),
            projector: LinearMap::identity(dim),
        }
    }

    /// Subspace spanned by the columns of `spanning`.
    pub fn span(name: impl Into<String>, ambient_name: impl Into<String>, spanning: &LinearMap) -> Self {
        let basis = canonical_basis(spanning);
        let projector = basis_projector(&basis);
        Fiber {
            name: name.into(),
            ambient_name: ambient_name.into(),
            ambient_dim: spanning.nrows(),
            basis,
            projector,
        }
    }

    pub fn zero(ambient_name: impl Into<String>, ambient_dim: usize) -> Self {
        Fiber {
            name: "0".into(),
            ambient_name: ambient_name.into(),
            ambient_dim,
            basis: LinearMap::zeros(ambient_dim, 0),
            projector: LinearMap::zeros(ambient_dim, ambient_dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    /// Leading coordinate of each basis vector. The basis is in reduced
    /// echelon form, so the coordinates of a vector of the fiber in this
    /// basis are its entries at these positions.
    pub fn pivots(&self) -> Vec<usize> {
        let t = self.basis.transpose();
        (0..t.nrows()).map(|c| t.row(c)[0].0).collect()
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }
}

/// `P_{≤cap}(R^n) ⊗ F`, stored in ambient coordinates
/// `(monomial, ambient fiber index)` with the monomial index outermost.
#[derive(Clone, Debug)]
pub struct Space {
    pub n: usize,
    pub cap: i64,
    pub fiber: Arc<Fiber>,
}

impl Space {
    pub fn new(n: usize, cap: i64, fiber: Fiber) -> Self {
        Space {
            n,
            cap,
            fiber: Arc::new(fiber),
        }
    }

    pub fn with_fiber(n: usize, cap: i64, fiber: Arc<Fiber>) -> Self {
        Space { n, cap, fiber }
    }

    pub fn monomials(&self) -> Arc<MonomialBasis> {
        MonomialBasis::get(self.n, self.cap)
    }

    pub fn num_monomials(&self) -> usize {
        self.monomials().len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.num_monomials() * self.fiber.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.num_monomials() * self.fiber.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn label(&self) -> Label {
        Label::new(format!("P<={}(R^{})⊗{}", self.cap, self.n, self.fiber.ambient_name))
    }

    /// Same monomial set and same ambient fiber.
    pub fn same_ambient(&self, other: &Space) -> bool {
        self.n == other.n
            && self.num_monomials() == other.num_monomials()
            && (self.num_monomials() == 0 || self.cap == other.cap)
            && self.fiber.ambient_dim == other.fiber.ambient_dim
    }

    /// `id ⊗ f` for a fiber map `f` into the fiber of `target` (same monomials).
    pub fn lift_to(&self, target: &Space, f: &LinearMap) -> LinearMap {
        assert_eq!(f.ncols(), self.fiber.ambient_dim, "fiber map domain");
        assert_eq!(f.nrows(), target.fiber.ambient_dim, "fiber map codomain");
        if self.ambient_dim() == 0 || target.ambient_dim() == 0 {
            return self.zero_map_to(target);
        }
        let k = self.num_monomials();
        assert_eq!(k, target.num_monomials(), "lift between different caps");
        LinearMap::block_diag_repeat(k, f).with_labels(self.label(), target.label())
    }

    /// Orthogonal projector onto this space inside its ambient coordinates.
    pub fn projector(&self) -> LinearMap {
        if self.fiber.is_full() {
            return LinearMap::identity(self.ambient_dim()).with_labels(self.label(), self.label());
        }
        self.lift_to(self, &self.fiber.projector)
    }

    /// Embedding `dim × ambient` basis matrix (`id ⊗ basis`).
    pub fn embedding(&self) -> LinearMap {
        let k = self.num_monomials();
        LinearMap::block_diag_repeat(k, &self.fiber.basis).with_labels(Label::anonymous(), self.label())
    }

    /// Expresses the columns of `m`, which must lie in this space, in the
    /// basis `embedding()`.
    pub fn coordinates(&self, m: &LinearMap) -> LinearMap {
        let piv = self.fiber.pivots();
        let amb = self.fiber.ambient_dim;
        let rows: Vec<usize> = (0..self.num_monomials())
            .flat_map(|k| piv.iter().map(move |&p| k * amb + p))
            .collect();
        m.select_rows(&rows)
    }

    pub fn identity(&self) -> LinearMap {
        LinearMap::identity(self.ambient_dim()).with_labels(self.label(), self.label())
    }

    pub fn zero_map_to(&self, target: &Space) -> LinearMap {
        LinearMap::zeros(target.ambient_dim(), self.ambient_dim()).with_labels(self.label(), target.label())
    }

    /// Polynomial degree of the monomial carrying an ambient coordinate.
    pub fn degree_of(&self, ambient_index: usize) -> usize {
        self.monomials().degree(ambient_index / self.fiber.ambient_dim.max(1))
    }

    pub fn describe(&self) -> String {
        format!("P<={}⊗{}", self.cap, self.fiber.name)
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}
