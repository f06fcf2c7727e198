use std::sync::OnceLock;

use rayon::prelude::*;
use serde::Serialize;

use super::space::Space;
use super::BggError;
use crate::exactla::{column_space, nullspace, rank, Label, LinearMap};

/// Chain homotopy data: `h[i]: Z^{i+1} → Z^i` and `l[i]: Z^i → Z^i` with
/// `D^{i-1} h[i-1] + h[i] D^i = id − l[i]` on every space.
#[derive(Clone, Debug)]
pub struct Homotopy {
    pub h: Vec<LinearMap>,
    pub l: Vec<LinearMap>,
}

/// A finite cochain complex of polynomial spaces. Differentials are stored
/// in ambient coordinates and vanish on the orthogonal complement of each
/// space.
#[derive(Debug)]
pub struct ComplexSpec {
    pub name: String,
    pub spaces: Vec<Space>,
    pub diffs: Vec<LinearMap>,
    pub orders: Vec<u32>,
    pub homotopy: Option<Homotopy>,
    ranks: OnceLock<Vec<usize>>,
}

impl Clone for ComplexSpec {
    fn clone(&self) -> Self {
        ComplexSpec {
            name: self.name.clone(),
            spaces: self.spaces.clone(),
            diffs: self.diffs.clone(),
            orders: self.orders.clone(),
            homotopy: self.homotopy.clone(),
            ranks: self.ranks.clone(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct HodgeDecomposition {
    pub index: usize,
    pub dim: usize,
    pub ran_prev: usize,
    pub harmonic: usize,
    pub ran_adjoint: usize,
    pub orthogonal: bool,
    pub complete: bool,
    pub contained: bool,
}

impl HodgeDecomposition {
    pub fn passed(&self) -> bool {
        self.orthogonal && self.complete && self.contained
    }
}

impl ComplexSpec {
    pub fn new(
        name: impl Into<String>,
        spaces: Vec<Space>,
        diffs: Vec<LinearMap>,
        orders: Vec<u32>,
    ) -> Result<Self, BggError> {
        let c = ComplexSpec {
            name: name.into(),
            spaces,
            diffs,
            orders,
            homotopy: None,
            ranks: OnceLock::new(),
        };
        c.check_shapes()?;
        Ok(c)
    }

    pub fn with_homotopy(mut self, h: Homotopy) -> Self {
        self.homotopy = Some(h);
        self
    }

    fn check_shapes(&self) -> Result<(), BggError> {
        let n = self.spaces.len();
        if n == 0 || self.diffs.len() + 1 != n || self.orders.len() != self.diffs.len() {
            return Err(BggError::ShapeMismatch(format!(
                "{}: {} spaces, {} differentials, {} orders",
                self.name,
                n,
                self.diffs.len(),
                self.orders.len()
            )));
        }
        for (i, d) in self.diffs.iter().enumerate() {
            let want = (self.spaces[i + 1].ambient_dim(), self.spaces[i].ambient_dim());
            if d.shape() != want {
                return Err(BggError::ShapeMismatch(format!(
                    "{}: differential {i} has shape {:?}, expected {:?}",
                    self.name,
                    d.shape(),
                    want
                )));
            }
        }
        Ok(())
    }

    /// Number of spaces.
    pub fn len(&self) -> usize {
        self.spaces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spaces.is_empty()
    }

    /// Last index `N` (spaces are `0..=N`).
    pub fn top_index(&self) -> usize {
        self.spaces.len() - 1
    }

    pub fn dims(&self) -> Vec<usize> {
        self.spaces.iter().map(|s| s.dim()).collect()
    }

    /// `D^i` for `0 ≤ i < N`, or a zero map at the ends.
    pub fn d(&self, i: isize) -> Option<&LinearMap> {
        if i < 0 {
            return None;
        }
        self.diffs.get(i as usize)
    }

    pub fn d_squared_zero(&self) -> Vec<bool> {
        self.diffs
            .windows(2)
            .map(|w| (&w[1] * &w[0]).is_zero())
            .collect()
    }

    /// `D^i` restricted to the space: `D^i E_i`.
    pub fn restricted(&self, i: usize) -> LinearMap {
        &self.diffs[i] * &self.spaces[i].embedding()
    }

    /// `D^i` as a matrix between the bases of `space i` and `space i+1`.
    pub fn operator_in_basis(&self, i: usize) -> LinearMap {
        self.spaces[i + 1]
            .coordinates(&self.restricted(i))
            .with_labels(Label::new(self.spaces[i].describe()), Label::new(self.spaces[i + 1].describe()))
    }

    pub fn ranks(&self) -> &[usize] {
        self.ranks.get_or_init(|| {
            (0..self.diffs.len())
                .into_par_iter()
                .map(|i| rank(&self.restricted(i)))
                .collect()
        })
    }

    pub fn cohomology_dims(&self) -> Vec<usize> {
        let ranks = self.ranks();
        (0..self.len())
            .map(|i| {
                let out = if i < ranks.len() { ranks[i] } else { 0 };
                let inc = if i > 0 { ranks[i - 1] } else { 0 };
                self.spaces[i].dim() - out - inc
            })
            .collect()
    }

    /// Basis of the harmonic space `ker D^i ∩ (ran D^{i-1})^⊥`, as ambient
    /// columns.
    pub fn harmonic_basis(&self, i: usize) -> LinearMap {
        let e = self.spaces[i].embedding();
        let mut blocks: Vec<LinearMap> = Vec::new();
        if i < self.diffs.len() {
            blocks.push(&self.diffs[i] * &e);
        }
        if i > 0 {
            blocks.push(&self.diffs[i - 1].transpose() * &e);
        }
        if blocks.is_empty() {
            return e;
        }
        let refs: Vec<&LinearMap> = blocks.iter().collect();
        let stacked = LinearMap::vstack(&refs);
        &e * &nullspace(&stacked)
    }

    pub fn hodge(&self, i: usize) -> HodgeDecomposition {
        let p = self.spaces[i].projector();
        let amb = self.spaces[i].ambient_dim();
        let prev = if i > 0 {
            column_space(&self.diffs[i - 1])
        } else {
            LinearMap::zeros(amb, 0)
        };
        let adj = if i < self.diffs.len() {
            column_space(&self.diffs[i].transpose())
        } else {
            LinearMap::zeros(amb, 0)
        };
        let harm = self.harmonic_basis(i);
        let orthogonal = (&prev.transpose() * &harm).is_zero()
            && (&prev.transpose() * &adj).is_zero()
            && (&harm.transpose() * &adj).is_zero();
        let all = LinearMap::hstack(&[&prev, &harm, &adj]);
        let contained = &p * &all == all;
        let dim = self.spaces[i].dim();
        let complete = prev.ncols() + harm.ncols() + adj.ncols() == dim && rank(&all) == dim;
        HodgeDecomposition {
            index: i,
            dim,
            ran_prev: prev.ncols(),
            harmonic: harm.ncols(),
            ran_adjoint: adj.ncols(),
            orthogonal,
            complete,
            contained,
        }
    }

    /// Floating-point estimate of the discrete Poincaré constant of `D^i`
    /// in coefficient norms: the reciprocal of the smallest nonzero singular
    /// value. Returns `None` if the map is zero or larger than `max_dim`.
    pub fn poincare_estimate(&self, i: usize, max_dim: usize) -> Option<f64> {
        let d = &self.diffs[i];
        if d.nrows().max(d.ncols()) > max_dim || d.is_zero() {
            return None;
        }
        let dense = d.to_f64_dense();
        let m = nalgebra::DMatrix::from_fn(d.nrows(), d.ncols(), |r, c| dense[r][c]);
        let sv = m.singular_values();
        let smax = sv.iter().cloned().fold(0.0f64, f64::max);
        let tol = smax * 1e-10 * (d.nrows().max(d.ncols()) as f64);
        sv.iter()
            .cloned()
            .filter(|&s| s > tol)
            .fold(None, |acc: Option<f64>, s| Some(acc.map_or(s, |a| a.min(s))))
            .map(|s| 1.0 / s)
    }

    /// Checks `D^{i-1} h[i-1] + h[i] D^i = P_i − l[i]` on every space, plus
    /// `l D = 0` and `D l = 0`.
    pub fn homotopy_identity(&self) -> Option<Vec<bool>> {
        let h = self.homotopy.as_ref()?;
        let out = (0..self.len())
            .into_par_iter()
            .map(|i| {
                let p = self.spaces[i].projector();
                let mut lhs = LinearMap::zeros(p.nrows(), p.ncols());
                if i > 0 {
                    lhs = &lhs + &(&self.diffs[i - 1] * &h.h[i - 1]);
                }
                if i < self.diffs.len() {
                    lhs = &lhs + &(&h.h[i] * &self.diffs[i]);
                }
                let ok = lhs == &p - &h.l[i];
                let ld = i == 0 || (&h.l[i] * &self.diffs[i - 1]).is_zero();
                let dl = i >= self.diffs.len() || (&self.diffs[i] * &h.l[i]).is_zero();
                ok && ld && dl
            })
            .collect();
        Some(out)
    }
}
