//! Exact verification reports for a validated diagram. Every check is an
//! equality of rational matrices or a comparison of exact ranks.

use rayon::prelude::*;
use serde::Serialize;

use super::complex::{ComplexSpec, HodgeDecomposition};
use super::diagram::Bgg;
use super::BggError;
use crate::exactla::{column_space, min_norm_solve, rank, LinearMap};

#[derive(Debug, Clone, Serialize)]
pub struct IndexCheck {
    pub index: usize,
    pub passed: bool,
}

fn all_passed(v: &[IndexCheck]) -> bool {
    v.iter().all(|c| c.passed)
}

fn checks(range: std::ops::Range<usize>, f: impl Fn(usize) -> bool + Sync) -> Vec<IndexCheck> {
    range
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|i| IndexCheck { index: i, passed: f(i) })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct Lemma8Report {
    pub id1: Vec<IndexCheck>,
    pub id2: Vec<IndexCheck>,
    pub id3: Vec<IndexCheck>,
    pub id4: Vec<IndexCheck>,
    pub id5: Vec<IndexCheck>,
}

impl Lemma8Report {
    pub fn passed(&self) -> bool {
        [&self.id1, &self.id2, &self.id3, &self.id4, &self.id5]
            .iter()
            .all(|v| all_passed(v))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ProjectionReport {
    pub twisted_is_complex: Vec<IndexCheck>,
    pub idempotent: Vec<IndexCheck>,
    pub commutes: Vec<IndexCheck>,
    /// `rank(Π^i) = dim Υ^i`.
    pub rank_matches: Vec<IndexCheck>,
}

impl ProjectionReport {
    pub fn passed(&self) -> bool {
        all_passed(&self.twisted_is_complex)
            && all_passed(&self.idempotent)
            && all_passed(&self.commutes)
            && all_passed(&self.rank_matches)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ExactnessIndex {
    pub index: usize,
    pub dim: usize,
    pub kernel: usize,
    pub range_prev: usize,
    pub exact: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExactnessReport {
    pub indices: Vec<ExactnessIndex>,
}

impl ExactnessReport {
    pub fn passed(&self) -> bool {
        self.indices.iter().all(|e| e.exact)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PhiReport {
    /// `𝒟^i Φ^i Π^i = Φ^{i+1} 𝒜^i Π^i`.
    pub intertwines: Vec<IndexCheck>,
    /// `Φ^i` maps `ΠY^i` onto `Υ^i`.
    pub bijective: Vec<IndexCheck>,
    /// `Φ⁻¹ Φ Π = Π` and `Φ Φ⁻¹ = P_Υ`.
    pub inverse: Vec<IndexCheck>,
}

impl PhiReport {
    pub fn passed(&self) -> bool {
        all_passed(&self.intertwines) && all_passed(&self.bijective) && all_passed(&self.inverse)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct StructuralReport {
    pub name: String,
    pub j: usize,
    pub anticommutativity: bool,
    pub output_is_complex: bool,
    pub projection: ProjectionReport,
    pub exactness: ExactnessReport,
    pub phi: PhiReport,
    pub lemma8: Lemma8Report,
}

impl StructuralReport {
    pub fn passed(&self) -> bool {
        self.anticommutativity
            && self.output_is_complex
            && self.projection.passed()
            && self.exactness.passed()
            && self.phi.passed()
            && self.lemma8.passed()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DimensionIndex {
    pub index: usize,
    pub output: usize,
    pub top: usize,
    pub bottom: usize,
    /// Rank of the map induced by `S^{i-1}` on cohomology.
    pub link_rank_in: usize,
    /// Rank of the map induced by `S^i` on cohomology.
    pub link_rank_out: usize,
    /// `S^i ker D̃^i ⊂ ran D^i`.
    pub snr: bool,
    pub inequality: bool,
    pub equality: bool,
    /// `dim H^i(Υ) = dim H^i(Z) + dim H^i(Z̃) − link_rank_in − link_rank_out`.
    pub exact_sequence: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct DimensionReport {
    pub name: String,
    pub indices: Vec<DimensionIndex>,
    pub snr_all: bool,
    pub equality_all: bool,
}

impl DimensionReport {
    pub fn output_dims(&self) -> Vec<usize> {
        self.indices.iter().map(|d| d.output).collect()
    }

    /// The inequality holds everywhere, equality holds exactly when the
    /// link condition does, and each index matches the long exact sequence.
    pub fn passed(&self) -> bool {
        self.indices.iter().all(|d| d.inequality && d.exact_sequence) && self.equality_all == self.snr_all
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CochainKIndex {
    pub index: usize,
    pub commutes: bool,
    pub factorizes: bool,
    pub cohomology_dim: usize,
    pub induced_rank: usize,
    pub full_rank: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CochainKReport {
    pub name: String,
    /// `𝒜 Q = Q (D ⊕ D̃)` and `Q Q⁻¹ = I`.
    pub q_intertwines: Vec<IndexCheck>,
    pub indices: Vec<CochainKIndex>,
}

impl CochainKReport {
    pub fn passed(&self) -> bool {
        all_passed(&self.q_intertwines)
            && self
                .indices
                .iter()
                .all(|k| k.commutes && k.factorizes && k.full_rank)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TwistedCohomologyIndex {
    pub index: usize,
    pub representatives: usize,
    pub expected: usize,
    pub in_kernel: bool,
    pub direct: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct HomotopyReport {
    pub name: String,
    pub top: Option<Vec<bool>>,
    pub bottom: Option<Vec<bool>>,
    pub output: Option<Vec<bool>>,
}

impl HomotopyReport {
    pub fn passed(&self) -> bool {
        [&self.top, &self.bottom, &self.output]
            .iter()
            .all(|v| v.as_ref().map_or(true, |v| v.iter().all(|&b| b)))
    }
}

/// Harmonic representatives of a complex at index `i`, as ambient columns.
pub fn harmonic(c: &ComplexSpec, i: usize) -> LinearMap {
    c.harmonic_basis(i)
}

/// Hodge decomposition of every space of a complex.
pub fn hodge_report(c: &ComplexSpec) -> Vec<HodgeDecomposition> {
    (0..c.len()).into_par_iter().map(|i| c.hodge(i)).collect()
}

impl Bgg {
    pub fn lemma8(&self) -> Lemma8Report {
        let n = self.n;
        let lf = self.lifted();
        let d = |i: usize| self.d(i).unwrap();
        let dt = |i: usize| self.dt(i).unwrap();
        let id1 = checks(1..n, |i| {
            let lhs = &(&lf.p_ker_perp[i] * dt(i - 1)) * &lf.t[i - 1];
            let rhs = &(&lf.t[i] * d(i)) * &lf.p_ran[i];
            lhs == -&rhs
        });
        let id2 = checks(0..n, |i| (&(&lf.p_ran_perp[i + 1] * d(i)) * &lf.p_ran[i]).is_zero());
        let id3 = checks(0..n.saturating_sub(1), |i| {
            let lhs = &(d(i + 1) * &lf.p_ran[i + 1]) * d(i);
            let rhs = &(d(i + 1) * &lf.p_ran_perp[i + 1]) * d(i);
            lhs == -&rhs
        });
        let id4 = checks(0..n.saturating_sub(1), |i| {
            let m = &(&(&lf.p_ran_perp[i + 2] * d(i + 1)) * &lf.p_ran_perp[i + 1]) * d(i);
            m.is_zero()
        });
        let id5 = checks(0..n, |i| {
            let rhs = dt(i) * &lf.p_ker[i];
            &lf.p_ker[i + 1] * &rhs == rhs
        });
        Lemma8Report { id1, id2, id3, id4, id5 }
    }

    pub fn projection_report(&self) -> ProjectionReport {
        let n = self.n;
        let pis: Vec<LinearMap> = (0..=n).into_par_iter().map(|i| self.pi(i)).collect();
        let twisted: Vec<LinearMap> = (0..n).into_par_iter().map(|i| self.twisted(i)).collect();
        let twisted_is_complex = checks(0..n.saturating_sub(1), |i| (&twisted[i + 1] * &twisted[i]).is_zero());
        let idempotent = checks(0..n + 1, |i| &pis[i] * &pis[i] == pis[i]);
        let commutes = checks(0..n, |i| &pis[i + 1] * &twisted[i] == &twisted[i] * &pis[i]);
        let out = self.output_complex();
        let rank_matches = checks(0..n + 1, |i| rank(&(&pis[i] * &self.y_embedding(i))) == out.spaces[i].dim());
        ProjectionReport {
            twisted_is_complex,
            idempotent,
            commutes,
            rank_matches,
        }
    }

    /// Exactness of `((I − Π)Y, 𝒜)`, by ranks of `𝒜^i (I − Π^i)` on `Y^i`.
    pub fn exactness_report(&self) -> ExactnessReport {
        let n = self.n;
        let data: Vec<(usize, usize)> = (0..=n)
            .into_par_iter()
            .map(|i| {
                let e = self.y_embedding(i);
                let comp = &e - &(&self.pi(i) * &e);
                let dim = rank(&comp);
                let img = if i < n { rank(&(&self.twisted(i) * &comp)) } else { 0 };
                (dim, img)
            })
            .collect();
        let indices = (0..=n)
            .map(|i| {
                let (dim, img) = data[i];
                let kernel = dim - img;
                let range_prev = if i > 0 { data[i - 1].1 } else { 0 };
                ExactnessIndex {
                    index: i,
                    dim,
                    kernel,
                    range_prev,
                    exact: kernel == range_prev,
                }
            })
            .collect();
        ExactnessReport { indices }
    }

    pub fn phi_report(&self) -> PhiReport {
        let n = self.n;
        let out = self.output_complex();
        let phipi: Vec<LinearMap> = (0..=n).into_par_iter().map(|i| &self.phi(i) * &self.pi(i)).collect();
        let intertwines = checks(0..n, |i| {
            let lhs = &out.diffs[i] * &phipi[i];
            let rhs = &(&self.phi(i + 1) * &self.twisted(i)) * &self.pi(i);
            lhs == rhs
        });
        let bijective = checks(0..n + 1, |i| {
            let r = rank(&(&phipi[i] * &self.y_embedding(i)));
            r == out.spaces[i].dim() && r == rank(&(&self.pi(i) * &self.y_embedding(i)))
        });
        let inverse = checks(0..n + 1, |i| {
            let pi = self.pi(i);
            let back = &self.phi_inv(i) * &phipi[i];
            let fwd = &self.phi(i) * &self.phi_inv(i);
            back == pi && fwd == self.upsilon_projector(i)
        });
        PhiReport {
            intertwines,
            bijective,
            inverse,
        }
    }

    pub fn structural_report(&self) -> StructuralReport {
        let out = self.output_complex();
        StructuralReport {
            name: self.name().to_string(),
            j: self.j,
            anticommutativity: true,
            output_is_complex: out.d_squared_zero().iter().all(|&b| b),
            projection: self.projection_report(),
            exactness: self.exactness_report(),
            phi: self.phi_report(),
            lemma8: self.lemma8(),
        }
    }

    /// `S^i ker D̃^i ⊂ ran D^i`, tested as: the harmonic part of `S^i μ`
    /// vanishes for every `μ ∈ ker D̃^i`.
    pub fn snr(&self, i: usize) -> bool {
        let e = self.zt(i).embedding();
        let dte = self.dt(i).unwrap() * &e;
        let h = self.top().harmonic_basis(i + 1);
        let proj = &(&h.transpose() * &self.lifted().s[i]) * &e;
        rank(&LinearMap::vstack(&[&dte, &proj])) == rank(&dte)
    }

    /// Rank of the map `H^i(Z̃) → H^{i+1}(Z)` induced by `S^i`.
    pub fn induced_link_rank(&self, i: usize) -> usize {
        let ht = self.bottom().harmonic_basis(i);
        let h = self.top().harmonic_basis(i + 1);
        if ht.ncols() == 0 || h.ncols() == 0 {
            return 0;
        }
        rank(&(&(&h.transpose() * &self.lifted().s[i]) * &ht))
    }

    pub fn dimension_report(&self) -> DimensionReport {
        let n = self.n;
        let out = self.output_complex().cohomology_dims();
        let top = self.top().cohomology_dims();
        let bot = self.bottom().cohomology_dims();
        let link: Vec<(usize, bool)> = (0..n)
            .into_par_iter()
            .map(|i| (self.induced_link_rank(i), self.snr(i)))
            .collect();
        let indices: Vec<DimensionIndex> = (0..=n)
            .map(|i| {
                let link_rank_in = if i > 0 { link[i - 1].0 } else { 0 };
                let link_rank_out = if i < n { link[i].0 } else { 0 };
                let snr = i >= n || link[i].1;
                let sum = top[i] + bot[i];
                DimensionIndex {
                    index: i,
                    output: out[i],
                    top: top[i],
                    bottom: bot[i],
                    link_rank_in,
                    link_rank_out,
                    snr,
                    inequality: out[i] <= sum,
                    equality: out[i] == sum,
                    exact_sequence: out[i] + link_rank_in + link_rank_out == sum,
                }
            })
            .collect();
        let snr_all = indices.iter().all(|d| d.snr);
        let equality_all = indices.iter().all(|d| d.equality);
        DimensionReport {
            name: self.name().to_string(),
            indices,
            snr_all,
            equality_all,
        }
    }

    /// Certificate that `𝒦` is a cochain map inducing an isomorphism on
    /// cohomology: each harmonic class of the sum complex is mapped through
    /// `𝒦` and paired with the harmonic space of the output complex.
    pub fn cochain_k_report(&self) -> Result<CochainKReport, BggError> {
        self.k_ops()?;
        let n = self.n;
        let out = self.output_complex();
        let out_dims = out.cohomology_dims();
        let q_intertwines = checks(0..n, |i| {
            let lhs = &self.twisted(i) * &self.q(i).unwrap();
            let rhs = &self.q(i + 1).unwrap() * &self.sum_diff(i);
            let qq = &self.q(i).unwrap() * &self.q_inv(i).unwrap();
            lhs == rhs && qq == LinearMap::identity(self.y_ambient(i))
        });
        let indices = (0..=n)
            .into_par_iter()
            .map(|i| {
                let k = self.cochain_k(i).unwrap();
                let commutes = i == n || &out.diffs[i] * &k == &self.cochain_k(i + 1).unwrap() * &self.sum_diff(i);
                let factorizes = k == &(&self.phi(i) * &self.pi(i)) * &self.q(i).unwrap();
                let hsum = LinearMap::block_diag(&[&self.top().harmonic_basis(i), &self.bottom().harmonic_basis(i)]);
                let hout = out.harmonic_basis(i);
                let induced_rank = if hsum.ncols() == 0 || hout.ncols() == 0 {
                    0
                } else {
                    rank(&(&(&hout.transpose() * &k) * &hsum))
                };
                CochainKIndex {
                    index: i,
                    commutes,
                    factorizes,
                    cohomology_dim: out_dims[i],
                    induced_rank,
                    full_rank: induced_rank == out_dims[i] && induced_rank == hsum.ncols(),
                }
            })
            .collect();
        Ok(CochainKReport {
            name: self.name().to_string(),
            q_intertwines,
            indices,
        })
    }

    /// Representatives of `H^i(Y, 𝒜)`: `(h, 0)` for harmonic `h` of the top
    /// row and `(l S h̃, h̃)` for harmonic `h̃` of the bottom row, where `l`
    /// is the minimum-norm preimage under `D^i`.
    pub fn twisted_cohomology_basis(&self, i: usize) -> Result<LinearMap, BggError> {
        let h = self.top().harmonic_basis(i);
        let ht = self.bottom().harmonic_basis(i);
        let za = self.z(i).ambient_dim();
        let lower = if i < self.n && ht.ncols() > 0 {
            let sh = &self.lifted().s[i] * &ht;
            min_norm_solve(self.d(i).unwrap(), &sh).map_err(|_| BggError::SnrViolation { index: i })?
        } else {
            LinearMap::zeros(za, ht.ncols())
        };
        let zeros = LinearMap::zeros(ht.nrows(), h.ncols());
        Ok(LinearMap::block2(&h, &lower, &zeros, &ht))
    }

    pub fn twisted_cohomology_report(&self) -> Result<Vec<TwistedCohomologyIndex>, BggError> {
        let n = self.n;
        (0..=n)
            .into_par_iter()
            .map(|i| {
                let reps = self.twisted_cohomology_basis(i)?;
                let e = self.y_embedding(i);
                let ker = if i < n { e.ncols() - rank(&(&self.twisted(i) * &e)) } else { e.ncols() };
                let prev = if i > 0 {
                    column_space(&(&self.twisted(i - 1) * &self.y_embedding(i - 1)))
                } else {
                    LinearMap::zeros(e.nrows(), 0)
                };
                let in_kernel = i == n || (&self.twisted(i) * &reps).is_zero();
                let stacked = LinearMap::hstack(&[&prev, &reps]);
                let direct = rank(&stacked) == stacked.ncols();
                Ok(TwistedCohomologyIndex {
                    index: i,
                    representatives: reps.ncols(),
                    expected: ker - prev.ncols(),
                    in_kernel,
                    direct,
                })
            })
            .collect()
    }

    pub fn homotopy_report(&self) -> HomotopyReport {
        HomotopyReport {
            name: self.name().to_string(),
            top: self.top().homotopy_identity(),
            bottom: self.bottom().homotopy_identity(),
            output: self.output_complex().homotopy_identity(),
        }
    }
}
