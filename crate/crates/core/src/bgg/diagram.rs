use std::sync::OnceLock;

use rayon::prelude::*;

use super::complex::ComplexSpec;
use super::space::Space;
use super::BggError;
use crate::exactla::{pinv, rank, LinearMap};

/// Two complexes `(Z, D)` and `(Z̃, D̃)` of equal length joined by
/// algebraic links `S^i = id ⊗ s^i: Z̃^i → Z^{i+1}`.
///
/// `links[i]` is the fiber map `s^i` between ambient fiber coordinates.
#[derive(Clone, Debug)]
pub struct BGGDiagram {
    pub name: String,
    pub top: ComplexSpec,
    pub bottom: ComplexSpec,
    pub links: Vec<LinearMap>,
}

/// A diagram that passed validation, together with the lifted operators
/// derived from its links.
#[derive(Debug)]
pub struct Bgg {
    pub diagram: BGGDiagram,
    /// The index where the link is bijective.
    pub j: usize,
    /// Top index `N`; spaces are numbered `0..=N`.
    pub n: usize,
    /// `s^i` restricted to the bottom fiber, `0 ≤ i < N`.
    pub s_fiber: Vec<LinearMap>,
    /// `t^i = (s^i)⁺`.
    pub t_fiber: Vec<LinearMap>,
    /// Projector onto `ran s^{i-1}` inside the top fiber `i`, `0 ≤ i ≤ N`.
    pub ran_fiber: Vec<LinearMap>,
    /// Projector onto `ker s^i` inside the bottom fiber `i`, `0 ≤ i ≤ N`.
    pub ker_fiber: Vec<LinearMap>,
    pub injective: Vec<bool>,
    pub surjective: Vec<bool>,
    lifted: OnceLock<Lifted>,
    k_ops: OnceLock<Result<Vec<LinearMap>, BggError>>,
    pub(crate) output: OnceLock<ComplexSpec>,
}

/// Operators on the polynomial spaces.
#[derive(Debug)]
pub struct Lifted {
    /// `S^i: Z̃^i → Z^{i+1}`.
    pub s: Vec<LinearMap>,
    /// `T^{i+1} = id ⊗ t^i: Z^{i+1} → Z̃^i`.
    pub t: Vec<LinearMap>,
    pub p_ran: Vec<LinearMap>,
    pub p_ran_perp: Vec<LinearMap>,
    pub p_ker: Vec<LinearMap>,
    pub p_ker_perp: Vec<LinearMap>,
}

impl BGGDiagram {
    pub fn new(name: impl Into<String>, top: ComplexSpec, bottom: ComplexSpec, links: Vec<LinearMap>) -> Self {
        BGGDiagram {
            name: name.into(),
            top,
            bottom,
            links,
        }
    }

    pub fn top_index(&self) -> usize {
        self.top.top_index()
    }

    fn check_shapes(&self) -> Result<(), BggError> {
        let n = self.top.len();
        if self.bottom.len() != n {
            return Err(BggError::ShapeMismatch(format!(
                "rows have {} and {} spaces",
                n,
                self.bottom.len()
            )));
        }
        if self.links.len() + 1 != n {
            return Err(BggError::ShapeMismatch(format!(
                "{} links for {} spaces; expected {}",
                self.links.len(),
                n,
                n - 1
            )));
        }
        for (i, s) in self.links.iter().enumerate() {
            let from = &self.bottom.spaces[i];
            let to = &self.top.spaces[i + 1];
            if s.shape() != (to.fiber.ambient_dim, from.fiber.ambient_dim) {
                return Err(BggError::ShapeMismatch(format!(
                    "link {i} has shape {:?}, fibers need {:?}",
                    s.shape(),
                    (to.fiber.ambient_dim, from.fiber.ambient_dim)
                )));
            }
            let padded = from.ambient_dim() == 0 || to.ambient_dim() == 0;
            if from.n != to.n || (!padded && from.num_monomials() != to.num_monomials()) {
                return Err(BggError::ShapeMismatch(format!(
                    "link {i} joins degree caps {} and {}",
                    from.cap, to.cap
                )));
            }
        }
        Ok(())
    }

    /// Checks the hypotheses in order: shapes, rows are complexes, links map
    /// fibers into fibers, anticommutativity, and the existence of `J`.
    pub fn validate(self) -> Result<Bgg, BggError> {
        self.check_shapes()?;
        for row in [&self.top, &self.bottom] {
            if let Some(i) = row.d_squared_zero().iter().position(|ok| !ok) {
                return Err(BggError::NotAComplex {
                    row: row.name.clone(),
                    index: i,
                });
            }
        }
        let n = self.top_index();
        let mut s_fiber = Vec::with_capacity(n);
        for i in 0..n {
            let pb = &self.bottom.spaces[i].fiber.projector;
            let pt = &self.top.spaces[i + 1].fiber.projector;
            let s = &self.links[i] * pb;
            if &(pt * &s) != &s {
                return Err(BggError::LinkLeavesFiber { index: i });
            }
            s_fiber.push(s);
        }
        // Anticommutativity S^{i+1} D̃^i + D^{i+1} S^i = 0.
        let lifts: Vec<LinearMap> = (0..n)
            .map(|i| self.bottom.spaces[i].lift_to(&self.top.spaces[i + 1], &s_fiber[i]))
            .collect();
        let bad: Vec<usize> = (0..n.saturating_sub(1))
            .into_par_iter()
            .filter(|&i| {
                let a = &lifts[i + 1] * &self.bottom.diffs[i];
                let b = &self.top.diffs[i + 1] * &lifts[i];
                !(&a + &b).is_zero()
            })
            .collect();
        if let Some(&i) = bad.first() {
            let a = &lifts[i + 1] * &self.bottom.diffs[i];
            let b = &self.top.diffs[i + 1] * &lifts[i];
            let defect = &a + &b;
            return Err(BggError::AnticommutativityViolation {
                index: i,
                nonzeros: defect.nnz(),
                max_abs: defect.max_abs().to_pq(),
            });
        }
        let ranks: Vec<usize> = s_fiber.iter().map(rank).collect();
        let injective: Vec<bool> = (0..n).map(|i| ranks[i] == self.bottom.spaces[i].fiber.dim()).collect();
        let surjective: Vec<bool> = (0..n).map(|i| ranks[i] == self.top.spaces[i + 1].fiber.dim()).collect();
        let j = (0..n).find(|&j| (0..=j).all(|i| injective[i]) && (j..n).all(|i| surjective[i]));
        let Some(j) = j else {
            return Err(BggError::NoValidJ { injective, surjective });
        };
        let t_fiber: Vec<LinearMap> = s_fiber.iter().map(pinv).collect();
        let mut ran_fiber = Vec::with_capacity(n + 1);
        let mut ker_fiber = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let ft = &self.top.spaces[i].fiber;
            ran_fiber.push(if i == 0 {
                LinearMap::zeros(ft.ambient_dim, ft.ambient_dim)
            } else {
                &s_fiber[i - 1] * &t_fiber[i - 1]
            });
            let fb = &self.bottom.spaces[i].fiber;
            ker_fiber.push(if i == n {
                fb.projector.clone()
            } else {
                &fb.projector - &(&t_fiber[i] * &s_fiber[i])
            });
        }
        Ok(Bgg {
            diagram: self,
            j,
            n,
            s_fiber,
            t_fiber,
            ran_fiber,
            ker_fiber,
            injective,
            surjective,
            lifted: OnceLock::new(),
            k_ops: OnceLock::new(),
            output: OnceLock::new(),
        })
    }
}

impl Bgg {
    pub fn name(&self) -> &str {
        &self.diagram.name
    }

    pub fn top(&self) -> &ComplexSpec {
        &self.diagram.top
    }

    pub fn bottom(&self) -> &ComplexSpec {
        &self.diagram.bottom
    }

    pub fn z(&self, i: usize) -> &Space {
        &self.diagram.top.spaces[i]
    }

    pub fn zt(&self, i: usize) -> &Space {
        &self.diagram.bottom.spaces[i]
    }

    pub fn lifted(&self) -> &Lifted {
        self.lifted.get_or_init(|| {
            let n = self.n;
            let s = (0..n).map(|i| self.zt(i).lift_to(self.z(i + 1), &self.s_fiber[i])).collect();
            let t = (0..n).map(|i| self.z(i + 1).lift_to(self.zt(i), &self.t_fiber[i])).collect();
            let p_ran: Vec<LinearMap> = (0..=n).map(|i| self.z(i).lift_to(self.z(i), &self.ran_fiber[i])).collect();
            let p_ran_perp = (0..=n)
                .map(|i| {
                    let f = &self.z(i).fiber.projector - &self.ran_fiber[i];
                    self.z(i).lift_to(self.z(i), &f)
                })
                .collect();
            let p_ker: Vec<LinearMap> = (0..=n).map(|i| self.zt(i).lift_to(self.zt(i), &self.ker_fiber[i])).collect();
            let p_ker_perp = (0..=n)
                .map(|i| {
                    let f = &self.zt(i).fiber.projector - &self.ker_fiber[i];
                    self.zt(i).lift_to(self.zt(i), &f)
                })
                .collect();
            Lifted {
                s,
                t,
                p_ran,
                p_ran_perp,
                p_ker,
                p_ker_perp,
            }
        })
    }

    /// `S^i`, or a zero map for `i = N`.
    pub fn s_op(&self, i: usize) -> LinearMap {
        if i < self.n {
            self.lifted().s[i].clone()
        } else {
            LinearMap::zeros(0, self.zt(i).ambient_dim())
        }
    }

    /// `T^{i+1}: Z^{i+1} → Z̃^i`, zero when `i ≥ N`.
    pub fn t_op(&self, i: usize) -> Option<&LinearMap> {
        self.lifted().t.get(i)
    }

    pub fn d(&self, i: usize) -> Option<&LinearMap> {
        self.diagram.top.diffs.get(i)
    }

    pub fn dt(&self, i: usize) -> Option<&LinearMap> {
        self.diagram.bottom.diffs.get(i)
    }

    /// The operators `K^i: Z̃^i → Z^i` with `S^i = D^i K^i − K^{i+1} D̃^i`,
    /// assembled from the row homotopies as
    /// `K^i = h^i S^i − L^i S^{i-1} h̃^{i-1}`.
    pub fn k_ops(&self) -> Result<&Vec<LinearMap>, BggError> {
        self.k_ops
            .get_or_init(|| self.build_k())
            .as_ref()
            .map_err(|e| e.clone())
    }

    fn build_k(&self) -> Result<Vec<LinearMap>, BggError> {
        let (Some(h), Some(ht)) = (&self.diagram.top.homotopy, &self.diagram.bottom.homotopy) else {
            return Err(BggError::MissingHomotopy(self.name().to_string()));
        };
        let n = self.n;
        let lf = self.lifted();
        let k: Vec<LinearMap> = (0..=n)
            .into_par_iter()
            .map(|i| {
                let mut k = self.zt(i).zero_map_to(self.z(i));
                if i < n {
                    k = &k + &(&h.h[i] * &lf.s[i]);
                }
                if i > 0 {
                    let corr = &h.l[i] * &(&lf.s[i - 1] * &ht.h[i - 1]);
                    k = &k - &corr;
                }
                k
            })
            .collect();
        for i in 0..n {
            let lhs = &(&self.diagram.top.diffs[i] * &k[i]) - &(&k[i + 1] * &self.diagram.bottom.diffs[i]);
            if lhs != lf.s[i] {
                return Err(BggError::KConditionViolation { index: i });
            }
        }
        Ok(k)
    }
}
