//! Polynomial forms `P_{≤r}(R^n) ⊗ Alt^{i,J}(R^n)` and the operators acting
//! on them: the exterior derivative on the first factor, the two Koszul
//! contractions, the homotopy `P`, the projection `L` and `K = P S + L K̃`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;

use crate::exactla::{ExactScalar, Label, LinearMap};
use crate::linkmaps::s_matrix;
use crate::multilinear::{binomial, wedge_coeff, AltIJBasis, MultiIndex};

pub type Exponent = Vec<u8>;

/// Monomials `x^α` in `n` variables with `|α| ≤ cap`, in graded
/// lexicographic order (ascending degree, then lexicographically
/// descending exponents).
#[derive(Debug)]
pub struct MonomialBasis {
    pub n: usize,
    pub cap: i64,
    elems: Vec<Exponent>,
    index: HashMap<Exponent, usize>,
}

fn compositions(n: usize, deg: usize, out: &mut Vec<Exponent>) {
    fn rec(pos: usize, n: usize, left: usize, cur: &mut Exponent, out: &mut Vec<Exponent>) {
        if pos == n - 1 {
            cur[pos] = left as u8;
            out.push(cur.clone());
            return;
        }
        for v in (0..=left).rev() {
            cur[pos] = v as u8;
            rec(pos + 1, n, left - v, cur, out);
        }
    }
    if n == 0 {
        if deg == 0 {
            out.push(Vec::new());
        }
        return;
    }
    let mut cur = vec![0u8; n];
    rec(0, n, deg, &mut cur, out);
}

impl MonomialBasis {
    fn build(n: usize, cap: i64) -> Self {
        let mut elems = Vec::new();
        if cap >= 0 {
            for d in 0..=cap as usize {
                compositions(n, d, &mut elems);
            }
        }
        let index = elems.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        MonomialBasis { n, cap, elems, index }
    }

    /// Shared, cached instance.
    pub fn get(n: usize, cap: i64) -> Arc<MonomialBasis> {
        static CACHE: OnceLock<Mutex<HashMap<(usize, i64), Arc<MonomialBasis>>>> = OnceLock::new();
        let cap = cap.max(-1);
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = cache.lock().unwrap();
        guard
            .entry((n, cap))
            .or_insert_with(|| Arc::new(MonomialBasis::build(n, cap)))
            .clone()
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn elems(&self) -> &[Exponent] {
        &self.elems
    }

    pub fn exponent(&self, i: usize) -> &Exponent {
        &self.elems[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.elems[i].iter().map(|&e| e as usize).sum()
    }

    pub fn index_of(&self, e: &[u8]) -> Option<usize> {
        self.index.get(e).copied()
    }
}

/// `P_{≤r}(R^n) ⊗ Alt^i ⊗ Alt^J`. A negative cap denotes the zero space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PolySpace {
    pub n: usize,
    pub r: i64,
    pub i: usize,
    pub j: usize,
}

impl PolySpace {
    pub fn new(n: usize, r: i64, i: usize, j: usize) -> Self {
        PolySpace { n, r, i, j }
    }

    pub fn monomials(&self) -> Arc<MonomialBasis> {
        MonomialBasis::get(self.n, self.r)
    }

    pub fn fiber(&self) -> AltIJBasis {
        AltIJBasis::new(self.n, self.i, self.j)
    }

    pub fn fiber_dim(&self) -> usize {
        if self.i > self.n || self.j > self.n {
            0
        } else {
            binomial(self.n, self.i) * binomial(self.n, self.j)
        }
    }

    pub fn dim(&self) -> usize {
        if self.r < 0 {
            return 0;
        }
        binomial(self.n + self.r as usize, self.n) * self.fiber_dim()
    }

    pub fn label(&self) -> Label {
        Label::new(self.to_string())
    }

    pub fn with(&self, r: i64, i: usize, j: usize) -> PolySpace {
        PolySpace { n: self.n, r, i, j }
    }
}

impl fmt::Display for PolySpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P<={}(R^{})⊗Alt^{{{};{}}}", self.r, self.n, self.i, self.j)
    }
}

fn labelled(m: LinearMap, from: &PolySpace, to: &PolySpace) -> LinearMap {
    m.with_labels(from.label(), to.label())
}

fn zero_map(from: &PolySpace, to: &PolySpace) -> LinearMap {
    labelled(LinearMap::zeros(to.dim(), from.dim()), from, to)
}

/// Exterior derivative on the first factor:
/// `d(x^α dx^σ ⊗ dx^τ) = Σ_l α_l x^{α-e_l} dx^l ∧ dx^σ ⊗ dx^τ`.
pub fn d_matrix(space: &PolySpace) -> LinearMap {
    let to = space.with(space.r - 1, space.i + 1, space.j);
    if space.i >= space.n || space.dim() == 0 || to.dim() == 0 {
        return zero_map(space, &to);
    }
    let (src_m, dst_m) = (space.monomials(), to.monomials());
    let (src_f, dst_f) = (space.fiber(), to.fiber());
    let fd_src = src_f.dim();
    let fd_dst = dst_f.dim();
    // Fiber-level wedge table: (l, src fiber index) -> (sign, dst fiber index).
    let mut table: Vec<Vec<Option<(i64, usize)>>> = vec![vec![None; fd_src]; space.n];
    for (l, row) in table.iter_mut().enumerate() {
        for (fi, slot) in row.iter_mut().enumerate() {
            let (s, t) = src_f.pair(fi);
            if let Some((sign, s2)) = wedge_coeff(&[l as u8], s) {
                *slot = Some((sign as i64, dst_f.index_of(&s2, t).unwrap()));
            }
        }
    }
    let mut trip = Vec::new();
    for (mi, alpha) in src_m.elems().iter().enumerate() {
        for l in 0..space.n {
            if alpha[l] == 0 {
                continue;
            }
            let mut beta = alpha.clone();
            beta[l] -= 1;
            let mj = dst_m.index_of(&beta).unwrap();
            let a = alpha[l] as i64;
            for fi in 0..fd_src {
                if let Some((sign, fj)) = table[l][fi] {
                    trip.push((mj * fd_dst + fj, mi * fd_src + fi, ExactScalar::from_int(sign * a)));
                }
            }
        }
    }
    labelled(LinearMap::from_triplets(to.dim(), space.dim(), trip), space, &to)
}

/// Koszul contraction on the second factor:
/// `K̃(x^α dx^σ ⊗ dx^τ) = Σ_j (-1)^{j-1} x^{α+e_{τ_j}} dx^σ ⊗ dx^{τ∖τ_j}`.
pub fn koszul_second_matrix(space: &PolySpace) -> LinearMap {
    koszul_generic(space, false)
}

/// Koszul contraction on the first factor:
/// `κ(x^α dx^σ ⊗ dx^τ) = Σ_j (-1)^{j-1} x^{α+e_{σ_j}} dx^{σ∖σ_j} ⊗ dx^τ`.
pub fn koszul_first_matrix(space: &PolySpace) -> LinearMap {
    koszul_generic(space, true)
}

fn koszul_generic(space: &PolySpace, first: bool) -> LinearMap {
    let deg = if first { space.i } else { space.j };
    let to = if first {
        space.with(space.r + 1, space.i.saturating_sub(1), space.j)
    } else {
        space.with(space.r + 1, space.i, space.j.saturating_sub(1))
    };
    if deg == 0 {
        return LinearMap::zeros(0, space.dim()).with_labels(space.label(), Label::new("0"));
    }
    if space.dim() == 0 {
        return zero_map(space, &to);
    }
    let (src_m, dst_m) = (space.monomials(), to.monomials());
    let (src_f, dst_f) = (space.fiber(), to.fiber());
    let (fd_src, fd_dst) = (src_f.dim(), dst_f.dim());
    // Fiber table: src fiber index -> list of (sign, variable, dst fiber index).
    let mut table: Vec<Vec<(i64, usize, usize)>> = vec![Vec::new(); fd_src];
    for (fi, entry) in table.iter_mut().enumerate() {
        let (s, t) = src_f.pair(fi);
        let target: &MultiIndex = if first { s } else { t };
        for (j, &v) in target.iter().enumerate() {
            let rest: MultiIndex = target.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, &x)| x).collect();
            let fj = if first {
                dst_f.index_of(&rest, t).unwrap()
            } else {
                dst_f.index_of(s, &rest).unwrap()
            };
            let sign = if j % 2 == 0 { 1 } else { -1 };
            entry.push((sign, v as usize, fj));
        }
    }
    let mut trip = Vec::new();
    for (mi, alpha) in src_m.elems().iter().enumerate() {
        for (fi, entry) in table.iter().enumerate() {
            for &(sign, v, fj) in entry {
                let mut beta = alpha.clone();
                beta[v] += 1;
                let mj = dst_m.index_of(&beta).unwrap();
                trip.push((mj * fd_dst + fj, mi * fd_src + fi, ExactScalar::from_int(sign)));
            }
        }
    }
    labelled(LinearMap::from_triplets(to.dim(), space.dim(), trip), space, &to)
}

/// The homotopy `P`: on the part of homogeneous polynomial degree `m` of an
/// `i`-form it is `κ/(m+i)`. Zero on 0-forms.
pub fn homotopy_p_matrix(space: &PolySpace) -> LinearMap {
    let kappa = koszul_first_matrix(space);
    if space.i == 0 || kappa.nrows() == 0 {
        return kappa;
    }
    let mons = space.monomials();
    let fd = space.fiber_dim();
    let scale: Vec<ExactScalar> = (0..space.dim())
        .map(|c| ExactScalar::new(1, (mons.degree(c / fd) + space.i) as i64))
        .collect();
    let (dom, cod) = (kappa.domain.clone(), kappa.codomain.clone());
    (&kappa * &LinearMap::diagonal(&scale)).with_labels(dom, cod)
}

/// `L`: the projection onto constants on 0-forms, zero otherwise.
pub fn l_matrix(space: &PolySpace) -> LinearMap {
    let n = space.dim();
    if space.i != 0 || n == 0 {
        return zero_map(space, space);
    }
    let fd = space.fiber_dim();
    let trip = (0..fd).map(|f| (f, f, ExactScalar::one()));
    labelled(LinearMap::from_triplets(n, n, trip), space, space)
}

/// `S = id ⊗ s^{i,J}` on `P_{≤r} ⊗ Alt^{i,J}`.
pub fn s_lift_matrix(space: &PolySpace) -> LinearMap {
    let to = space.with(space.r, space.i + 1, space.j.wrapping_sub(1));
    if space.j == 0 || space.i >= space.n {
        return LinearMap::zeros(0, space.dim()).with_labels(space.label(), Label::new("0"));
    }
    let s = s_matrix(space.n, space.i, space.j);
    let k = space.monomials().len();
    labelled(LinearMap::block_diag_repeat(k, &s), space, &to)
}

/// `K = P S + L K̃` from `P_{≤r} ⊗ Alt^{i,J}` to `P_{≤r+1} ⊗ Alt^{i,J-1}`.
pub fn k_matrix(space: &PolySpace) -> LinearMap {
    assert!(space.j >= 1, "K needs a value degree of at least one");
    let s = s_lift_matrix(space);
    let s_target = space.with(space.r, space.i + 1, space.j - 1);
    let ps = if space.i < space.n {
        &homotopy_p_matrix(&s_target) * &s
    } else {
        LinearMap::zeros(space.with(space.r + 1, space.i, space.j - 1).dim(), space.dim())
    };
    let kt = koszul_second_matrix(space);
    let l = l_matrix(&space.with(space.r + 1, space.i, space.j - 1));
    let out = &ps + &(&l * &kt);
    out.with_labels(space.label(), space.with(space.r + 1, space.i, space.j - 1).label())
}

/// Evaluates a coefficient vector at a rational point, returning the
/// `Alt^{i,J}` coefficients.
pub fn evaluate(space: &PolySpace, coeffs: &[ExactScalar], point: &[ExactScalar]) -> Vec<ExactScalar> {
    assert_eq!(coeffs.len(), space.dim());
    assert_eq!(point.len(), space.n);
    let mons = space.monomials();
    let fd = space.fiber_dim();
    let mut out = vec![ExactScalar::zero(); fd];
    for (mi, alpha) in mons.elems().iter().enumerate() {
        let mut val = ExactScalar::one();
        for (x, &e) in point.iter().zip(alpha.iter()) {
            for _ in 0..e {
                val = &val * x;
            }
        }
        for f in 0..fd {
            let c = &coeffs[mi * fd + f];
            if !c.is_zero() {
                out[f] += &(c * &val);
            }
        }
    }
    out
}

/// Exact status of the polynomial identities on one space.
#[derive(Debug, Clone, Serialize)]
pub struct IdentityReport {
    pub n: usize,
    pub r: i64,
    pub i: usize,
    pub j: usize,
    /// `dK̃ − K̃d = S`; absent when `J = 0`.
    pub koszul: Option<bool>,
    /// `dP + Pd = id − L`.
    pub homotopy: bool,
    /// `dL = Ld`.
    pub l_commutes: bool,
    /// `dK − Kd = S`; absent when `J = 0`.
    pub k_identity: Option<bool>,
    pub passed: bool,
}

/// Checks the Koszul and homotopy identities on `P_{≤r} ⊗ Alt^{i,J}`.
pub fn identity_report(space: &PolySpace) -> IdentityReport {
    let (n, r, i, j) = (space.n, space.r, space.i, space.j);
    let d = d_matrix(space);
    let after = space.with(r - 1, i + 1, j);
    let commutator = |op: fn(&PolySpace) -> LinearMap| {
        let d_after = d_matrix(&space.with(r + 1, i, j - 1));
        let lhs = &(&d_after * &op(space)) - &(&op(&space.with(r - 1, i + 1, j)) * &d);
        lhs == s_lift_matrix(space)
    };
    let (koszul, k_identity) = if j >= 1 {
        (Some(commutator(koszul_second_matrix)), Some(commutator(k_matrix)))
    } else {
        (None, None)
    };
    let dim = space.dim();
    let dp = if i >= 1 {
        &d_matrix(&space.with(r + 1, i - 1, j)) * &homotopy_p_matrix(space)
    } else {
        LinearMap::zeros(dim, dim)
    };
    let pd = if i < n {
        &homotopy_p_matrix(&after) * &d
    } else {
        LinearMap::zeros(dim, dim)
    };
    let homotopy = &dp + &pd == &LinearMap::identity(dim) - &l_matrix(space);
    let l_commutes = i >= n || &d * &l_matrix(space) == &l_matrix(&after) * &d;
    let passed = homotopy && l_commutes && koszul.unwrap_or(true) && k_identity.unwrap_or(true);
    IdentityReport {
        n,
        r,
        i,
        j,
        koszul,
        homotopy,
        l_commutes,
        k_identity,
        passed,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_order_is_graded_lex() {
        let m = MonomialBasis::get(3, 2);
        assert_eq!(m.len(), 10);
        assert_eq!(m.exponent(0), &vec![0, 0, 0]);
        assert_eq!(m.exponent(1), &vec![1, 0, 0]);
        assert_eq!(m.exponent(3), &vec![0, 0, 1]);
        assert_eq!(m.exponent(4), &vec![2, 0, 0]);
        assert_eq!(m.exponent(5), &vec![1, 1, 0]);
    }

    #[test]
    fn dims() {
        assert_eq!(PolySpace::new(3, 2, 1, 1).dim(), 10 * 9);
        assert_eq!(PolySpace::new(3, -1, 0, 0).dim(), 0);
    }

    #[test]
    fn d_squares_to_zero() {
        for i in 0..2 {
            let s = PolySpace::new(3, 3, i, 1);
            let d1 = d_matrix(&s);
            let d2 = d_matrix(&s.with(2, i + 1, 1));
            assert!((&d2 * &d1).is_zero());
        }
    }
}
