//! The twisted complex `Y^i = Z^i ⊕ Z̃^i`, the projection `Π` onto the copy
//! of the output complex inside it, and the maps relating the three.

use std::sync::Arc;

use rayon::prelude::*;

use super::complex::{ComplexSpec, Homotopy};
use super::diagram::Bgg;
use super::space::{Fiber, Space};
use super::BggError;
use crate::exactla::LinearMap;
use crate::proxies::fiber_name;

fn zeros(r: usize, c: usize) -> LinearMap {
    LinearMap::zeros(r, c)
}

impl Bgg {
    pub fn y_ambient(&self, i: usize) -> usize {
        self.z(i).ambient_dim() + self.zt(i).ambient_dim()
    }

    pub fn y_dim(&self, i: usize) -> usize {
        self.z(i).dim() + self.zt(i).dim()
    }

    /// Basis of `Y^i` in ambient coordinates.
    pub fn y_embedding(&self, i: usize) -> LinearMap {
        LinearMap::block_diag(&[&self.z(i).embedding(), &self.zt(i).embedding()])
    }

    /// `𝒜^i = [[D^i, −S^i], [0, D̃^i]]: Y^i → Y^{i+1}`.
    pub fn twisted(&self, i: usize) -> LinearMap {
        let s = &self.lifted().s[i];
        let d = self.d(i).unwrap();
        let dt = self.dt(i).unwrap();
        LinearMap::block2(d, &-s, &zeros(dt.nrows(), d.ncols()), dt)
    }

    /// `T^{i+1} D^i` as a map `Z^i → Z̃^i`, zero at the top index.
    fn td(&self, i: usize) -> LinearMap {
        match (self.t_op(i), self.d(i)) {
            (Some(t), Some(d)) => t * d,
            _ => zeros(self.zt(i).ambient_dim(), self.z(i).ambient_dim()),
        }
    }

    /// `D̃^{i-1} T^i` as a map `Z^i → Z̃^i`, zero at index 0.
    fn dtt(&self, i: usize) -> LinearMap {
        if i == 0 {
            return zeros(self.zt(0).ambient_dim(), self.z(0).ambient_dim());
        }
        self.dt(i - 1).unwrap() * self.t_op(i - 1).unwrap()
    }

    /// `Π^i`. For `i ≤ J`: `(ω, μ) ↦ (P_ran⊥ ω, T D P_ran⊥ ω)`; for `i > J`:
    /// `(ω, μ) ↦ (0, P_ker(μ + D̃ T ω))`.
    pub fn pi(&self, i: usize) -> LinearMap {
        let lf = self.lifted();
        let (za, zta) = (self.z(i).ambient_dim(), self.zt(i).ambient_dim());
        if i <= self.j {
            let pp = &lf.p_ran_perp[i];
            let lower = &self.td(i) * pp;
            LinearMap::block2(pp, &zeros(za, zta), &lower, &zeros(zta, zta))
        } else {
            let pk = &lf.p_ker[i];
            let lower = pk * &self.dtt(i);
            LinearMap::block2(&zeros(za, za), &zeros(za, zta), &lower, pk)
        }
    }

    /// `Φ^i`: the `Z^i` component for `i ≤ J`, the `Z̃^i` component otherwise.
    pub fn phi(&self, i: usize) -> LinearMap {
        let (za, zta) = (self.z(i).ambient_dim(), self.zt(i).ambient_dim());
        if i <= self.j {
            LinearMap::hstack(&[&LinearMap::identity(za), &zeros(za, zta)])
        } else {
            LinearMap::hstack(&[&zeros(zta, za), &LinearMap::identity(zta)])
        }
    }

    /// Inverse of `Φ^i` on `ΠY^i`: `ω ↦ (ω, T D ω)` or `μ ↦ (0, μ)`.
    pub fn phi_inv(&self, i: usize) -> LinearMap {
        let lf = self.lifted();
        if i <= self.j {
            let pp = &lf.p_ran_perp[i];
            LinearMap::vstack(&[pp, &(&self.td(i) * pp)])
        } else {
            let pk = &lf.p_ker[i];
            LinearMap::vstack(&[&zeros(self.z(i).ambient_dim(), pk.ncols()), pk])
        }
    }

    /// `Q^i = [[I, K^i], [0, I]]` with `𝒜 Q = Q (D ⊕ D̃)`.
    pub fn q(&self, i: usize) -> Result<LinearMap, BggError> {
        let k = &self.k_ops()?[i];
        let (za, zta) = (self.z(i).ambient_dim(), self.zt(i).ambient_dim());
        Ok(LinearMap::block2(
            &LinearMap::identity(za),
            k,
            &zeros(zta, za),
            &LinearMap::identity(zta),
        ))
    }

    pub fn q_inv(&self, i: usize) -> Result<LinearMap, BggError> {
        let k = &self.k_ops()?[i];
        let (za, zta) = (self.z(i).ambient_dim(), self.zt(i).ambient_dim());
        Ok(LinearMap::block2(
            &LinearMap::identity(za),
            &-k,
            &zeros(zta, za),
            &LinearMap::identity(zta),
        ))
    }

    /// `D^i ⊕ D̃^i`.
    pub fn sum_diff(&self, i: usize) -> LinearMap {
        LinearMap::block_diag(&[self.d(i).unwrap(), self.dt(i).unwrap()])
    }

    /// The cochain map `𝒦^i` from `Z^i ⊕ Z̃^i` to `Υ^i`:
    /// `P_ran⊥(ω + K μ)` for `i ≤ J` and
    /// `P_ker[D̃ T ω + (I + D̃ T K) μ]` for `i > J`.
    pub fn cochain_k(&self, i: usize) -> Result<LinearMap, BggError> {
        let k = &self.k_ops()?[i];
        let lf = self.lifted();
        if i <= self.j {
            let pp = &lf.p_ran_perp[i];
            Ok(LinearMap::hstack(&[pp, &(pp * k)]))
        } else {
            let pk = &lf.p_ker[i];
            let dtt = self.dtt(i);
            let right = &self.zt(i).identity() + &(&dtt * k);
            Ok(LinearMap::hstack(&[&(pk * &dtt), &(pk * &right)]))
        }
    }

    /// Projector onto `Υ^i` inside its ambient space.
    pub fn upsilon_projector(&self, i: usize) -> LinearMap {
        let lf = self.lifted();
        if i <= self.j {
            lf.p_ran_perp[i].clone()
        } else {
            lf.p_ker[i].clone()
        }
    }

    fn output_space(&self, i: usize) -> Space {
        if i <= self.j {
            let z = self.z(i);
            let f = &z.fiber.projector - &self.ran_fiber[i];
            let fiber = fiber_from_projector(&z.fiber.ambient_name, &f, &z.fiber);
            Space::with_fiber(z.n, z.cap, fiber)
        } else {
            let zt = self.zt(i);
            let fiber = fiber_from_projector(&zt.fiber.ambient_name, &self.ker_fiber[i], &zt.fiber);
            Space::with_fiber(zt.n, zt.cap, fiber)
        }
    }

    /// `𝒟^i`: `P_ran⊥ D^i` below `J`, `D̃^J (S^J)⁻¹ D^J` at `J`, and `D̃^i`
    /// above, each restricted to `Υ^i`.
    pub fn output_diff(&self, i: usize) -> LinearMap {
        let lf = self.lifted();
        let p = self.upsilon_projector(i);
        if i < self.j {
            &(&lf.p_ran_perp[i + 1] * self.d(i).unwrap()) * &p
        } else if i == self.j {
            &(self.dt(i).unwrap() * &self.td(i)) * &p
        } else {
            self.dt(i).unwrap() * &p
        }
    }

    /// The output complex, with a chain homotopy attached when both rows
    /// carry one.
    pub fn output_complex(&self) -> &ComplexSpec {
        self.output.get_or_init(|| {
            let n = self.n;
            let spaces: Vec<Space> = (0..=n).map(|i| self.output_space(i)).collect();
            let diffs: Vec<LinearMap> = (0..n)
                .into_par_iter()
                .map(|i| {
                    let (dom, cod) = (spaces[i].label(), spaces[i + 1].label());
                    self.output_diff(i).with_labels(dom, cod)
                })
                .collect();
            let top = &self.diagram.top.orders;
            let bot = &self.diagram.bottom.orders;
            let orders = (0..n)
                .map(|i| {
                    if i < self.j {
                        top[i]
                    } else if i == self.j {
                        top[i] + bot[i]
                    } else {
                        bot[i]
                    }
                })
                .collect();
            let mut c = ComplexSpec::new(format!("{} output", self.name()), spaces, diffs, orders)
                .expect("output complex shapes are consistent");
            if let Ok(h) = self.output_homotopy() {
                c = c.with_homotopy(h);
            }
            c
        })
    }

    /// Transports the row homotopies to the output complex:
    /// `h_Υ = Φ Π Q (h ⊕ h̃) Q⁻¹ Φ⁻¹` and `L_Υ = Φ Π Q (L ⊕ L̃) Q⁻¹ Φ⁻¹`.
    fn output_homotopy(&self) -> Result<Homotopy, BggError> {
        let (Some(h), Some(ht)) = (&self.diagram.top.homotopy, &self.diagram.bottom.homotopy) else {
            return Err(BggError::MissingHomotopy(self.name().to_string()));
        };
        self.k_ops()?;
        let n = self.n;
        let left: Vec<LinearMap> = (0..=n)
            .into_par_iter()
            .map(|i| &(&self.phi(i) * &self.pi(i)) * &self.q(i).unwrap())
            .collect();
        let right: Vec<LinearMap> = (0..=n)
            .into_par_iter()
            .map(|i| &self.q_inv(i).unwrap() * &self.phi_inv(i))
            .collect();
        let hs: Vec<LinearMap> = (0..n)
            .into_par_iter()
            .map(|i| {
                let hsum = LinearMap::block_diag(&[&h.h[i], &ht.h[i]]);
                &(&left[i] * &hsum) * &right[i + 1]
            })
            .collect();
        let ls: Vec<LinearMap> = (0..=n)
            .into_par_iter()
            .map(|i| {
                let lsum = LinearMap::block_diag(&[&h.l[i], &ht.l[i]]);
                &(&left[i] * &lsum) * &right[i]
            })
            .collect();
        Ok(Homotopy { h: hs, l: ls })
    }
}

fn fiber_from_projector(ambient_name: &str, projector: &LinearMap, parent: &Fiber) -> Arc<Fiber> {
    if projector == &parent.projector {
        return Arc::new(parent.clone());
    }
    let name = fiber_name(ambient_name, projector).unwrap_or_else(|| {
        format!("{}⊂{}", crate::exactla::rank(projector), ambient_name)
    });
    let f = Fiber::span(name, ambient_name, projector);
    if f.dim() == 0 {
        return Arc::new(Fiber::zero(ambient_name, projector.nrows()));
    }
    Arc::new(f)
}
