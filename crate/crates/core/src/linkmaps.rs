//! The algebraic link `s: Alt^{i,J} → Alt^{i+1,J-1}` and the structure used
//! to prove its injectivity/surjectivity pattern.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::exactla::{pinv, rank, ExactScalar, LinearMap};
use crate::multilinear::{binomial, sort_with_sign, wedge_coeff, AltBasis, AltIJBasis, MultiIndex};

/// Image of a basis element under `s`:
/// `s(dx^σ ⊗ dx^τ) = Σ_j (-1)^{j-1} (dx^{τ_j} ∧ dx^σ) ⊗ dx^{τ∖τ_j}`.
pub fn s_image(sigma: &[u8], tau: &[u8]) -> Vec<(i8, MultiIndex, MultiIndex)> {
    let mut out = Vec::new();
    for (j, &t) in tau.iter().enumerate() {
        if let Some((sign, s2)) = wedge_coeff(&[t], sigma) {
            let rest: MultiIndex = tau.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, &x)| x).collect();
            let sgn = if j % 2 == 0 { sign } else { -sign };
            out.push((sgn, s2, rest));
        }
    }
    out
}

/// Matrix of `s^{i,J}` from `Alt^{i,J}(R^n)` to `Alt^{i+1,J-1}(R^n)`. For
/// `J = 0` or `i = n` the target is zero.
pub fn s_matrix(n: usize, i: usize, j: usize) -> LinearMap {
    let src = AltIJBasis::new(n, i, j);
    if j == 0 || i >= n {
        return LinearMap::zeros(0, src.dim());
    }
    let dst = AltIJBasis::new(n, i + 1, j - 1);
    let mut trip = Vec::new();
    for c in 0..src.dim() {
        let (sigma, tau) = src.pair(c);
        for (sgn, s2, t2) in s_image(sigma, tau) {
            let r = dst.index_of(&s2, &t2).expect("target basis element");
            trip.push((r, c, ExactScalar::from_int(sgn as i64)));
        }
    }
    LinearMap::from_triplets(dst.dim(), src.dim(), trip)
}

/// Pseudoinverse of `s^{i,J}`.
pub fn t_matrix(n: usize, i: usize, j: usize) -> LinearMap {
    pinv(&s_matrix(n, i, j))
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct InjSurjReport {
    pub n: usize,
    pub i: usize,
    /// Value degree of the source, so the map is `s^{i,J+1}` with `J = value_degree - 1`.
    pub j: usize,
    pub rank: usize,
    pub source_dim: usize,
    pub target_dim: usize,
    pub injective: bool,
    pub surjective: bool,
    pub expect_injective: bool,
    pub expect_surjective: bool,
    pub passed: bool,
}

/// Checks `s^{i,J+1}: Alt^{i,J+1} → Alt^{i+1,J}` against the law: injective
/// when `i ≤ J`, surjective when `i ≥ J`. Only the stated directions are
/// required.
pub fn check_inj_surj(n: usize, i: usize, j: usize) -> InjSurjReport {
    let s = s_matrix(n, i, j + 1);
    let r = rank(&s);
    let injective = r == s.ncols();
    let surjective = r == s.nrows();
    let expect_injective = i <= j;
    let expect_surjective = i >= j;
    InjSurjReport {
        n,
        i,
        j,
        rank: r,
        source_dim: s.ncols(),
        target_dim: s.nrows(),
        injective,
        surjective,
        expect_injective,
        expect_surjective,
        passed: (!expect_injective || injective) && (!expect_surjective || surjective),
    }
}

/// Coordinates of the vectors `ω(I)`, `#I = k`, spanning `W(n,k)` inside
/// `Alt^{k,n-k}(R^n)`, one column per subset `I` in lexicographic order.
/// `ω(I) = sign(σ) dx^σ` where `σ` lists `I` then its complement.
pub fn w_basis(n: usize, k: usize) -> LinearMap {
    let amb = AltIJBasis::new(n, k, n - k);
    let subsets = AltBasis::new(n, k);
    let mut trip = Vec::new();
    for (c, set) in subsets.elems().iter().enumerate() {
        let comp: MultiIndex = (0..n as u8).filter(|x| !set.contains(x)).collect();
        let mut perm: Vec<u8> = set.iter().chain(comp.iter()).copied().collect();
        let (sign, _) = sort_with_sign(&mut perm).unwrap();
        let r = amb.index_of(set, &comp).unwrap();
        trip.push((r, c, ExactScalar::from_int(sign as i64)));
    }
    LinearMap::from_triplets(amb.dim(), subsets.dim(), trip)
}

#[derive(Debug, Clone, Serialize)]
pub struct SidentReport {
    pub n: usize,
    pub k: usize,
    pub s_preserves_w: bool,
    pub s_formula: bool,
    pub adjoint_formula: bool,
    pub identity_holds: bool,
    pub passed: bool,
}

/// Checks on `W(n,k)`:
/// `sω(I) = (-1)^k Σ_{j∉I} ω(I∪{j})`, `s*ω(J) = (-1)^k Σ_{j∈J} ω(J∖{j})` and
/// `⟨sρ,sτ⟩ = ⟨s*ρ,s*τ⟩ + (n-2k)⟨ρ,τ⟩` on `W(n,k)`.
pub fn sident_check(n: usize, k: usize) -> SidentReport {
    let w = w_basis(n, k);
    let s = s_matrix(n, k, n - k);
    let sw = &s * &w;
    let sign = if k % 2 == 0 { 1 } else { -1 };
    let src_sets = AltBasis::new(n, k);

    // s on W(n,k) by the closed formula, expressed in W(n,k+1) coordinates.
    let (s_formula, s_preserves_w) = if k < n {
        let w1 = w_basis(n, k + 1);
        let dst_sets = AltBasis::new(n, k + 1);
        let mut trip = Vec::new();
        for (c, set) in src_sets.elems().iter().enumerate() {
            for j in 0..n as u8 {
                if !set.contains(&j) {
                    let mut u = set.clone();
                    u.push(j);
                    u.sort_unstable();
                    trip.push((dst_sets.index_of(&u).unwrap(), c, ExactScalar::from_int(sign)));
                }
            }
        }
        let coeff = LinearMap::from_triplets(dst_sets.dim(), src_sets.dim(), trip);
        let expected = &w1 * &coeff;
        let in_w = rank(&LinearMap::hstack(&[&w1, &sw])) == rank(&w1);
        (expected == sw, in_w)
    } else {
        (sw.is_zero(), true)
    };

    // Adjoint of s^{k-1} restricted to W: W(n,k) → W(n,k-1), using the
    // orthonormality of the ω(I).
    let adjoint_formula = if k >= 1 {
        let wm = w_basis(n, k - 1);
        let sm = s_matrix(n, k - 1, n - k + 1);
        let star = &(&wm.transpose() * &sm.transpose()) * &w;
        let sgn_prev = if (k - 1) % 2 == 0 { 1 } else { -1 };
        let prev_sets = AltBasis::new(n, k - 1);
        let mut trip = Vec::new();
        for (c, set) in src_sets.elems().iter().enumerate() {
            for (pos, _) in set.iter().enumerate() {
                let mut u = set.clone();
                u.remove(pos);
                trip.push((prev_sets.index_of(&u).unwrap(), c, ExactScalar::from_int(sgn_prev)));
            }
        }
        star == LinearMap::from_triplets(prev_sets.dim(), src_sets.dim(), trip)
    } else {
        true
    };

    // Gram identity on W(n,k): Wᵀ sᵀ s W = Wᵀ s⁻ s⁻ᵀ W + (n-2k) Wᵀ W.
    let lhs = &sw.transpose() * &sw;
    let star_part = if k >= 1 {
        let sm = s_matrix(n, k - 1, n - k + 1);
        let smt_w = &sm.transpose() * &w;
        &smt_w.transpose() * &smt_w
    } else {
        LinearMap::zeros(w.ncols(), w.ncols())
    };
    let c = ExactScalar::from_int(n as i64 - 2 * k as i64);
    let rhs = star_part.axpy(&c, &(&w.transpose() * &w));
    let identity_holds = lhs == rhs;
    SidentReport {
        n,
        k,
        s_preserves_w,
        s_formula,
        adjoint_formula,
        identity_holds,
        passed: s_preserves_w && s_formula && adjoint_formula && identity_holds,
    }
}

/// One block of the splitting of `Alt^{k,m}` by the sorted concatenation of
/// `σ` and `τ`.
#[derive(Debug, Clone, Serialize)]
pub struct YBlock {
    pub key: MultiIndex,
    pub repeated: usize,
    pub indices: Vec<usize>,
}

pub fn y_block_decomposition(n: usize, k: usize, m: usize) -> Vec<YBlock> {
    let basis = AltIJBasis::new(n, k, m);
    let mut blocks: BTreeMap<MultiIndex, Vec<usize>> = BTreeMap::new();
    for idx in 0..basis.dim() {
        let (s, t) = basis.pair(idx);
        let mut key: MultiIndex = s.iter().chain(t.iter()).copied().collect();
        key.sort_unstable();
        blocks.entry(key).or_default().push(idx);
    }
    blocks
        .into_iter()
        .map(|(key, indices)| {
            let repeated = key.windows(2).filter(|w| w[0] == w[1]).count();
            YBlock {
                key,
                repeated,
                indices,
            }
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct YBlockReport {
    pub n: usize,
    pub k: usize,
    pub m: usize,
    pub blocks: usize,
    pub block_diagonal: bool,
    pub dims_match_w: bool,
    pub ranks_match_w: bool,
    pub passed: bool,
}

/// Checks that `s^{k,m}` maps each block into the block with the same key,
/// and that on a block with `l` repeated entries it behaves like `s` on
/// `W(k+m-2l, k-l)` (same dimension and rank).
pub fn y_block_check(n: usize, k: usize, m: usize) -> YBlockReport {
    let s = s_matrix(n, k, m);
    let src = y_block_decomposition(n, k, m);
    let dst_basis = AltIJBasis::new(n, k + 1, m.saturating_sub(1));
    let mut block_diagonal = true;
    let mut dims_match_w = true;
    let mut ranks_match_w = true;
    let src_basis = AltIJBasis::new(n, k, m);
    for b in &src {
        for &c in &b.indices {
            let (s0, t0) = src_basis.pair(c);
            for (_, s2, t2) in s_image(s0, t0) {
                let mut key: MultiIndex = s2.iter().chain(t2.iter()).copied().collect();
                key.sort_unstable();
                if key != b.key {
                    block_diagonal = false;
                }
                let _ = dst_basis.index_of(&s2, &t2);
            }
        }
        let p = k + m;
        let q = p - 2 * b.repeated;
        let kw = k - b.repeated.min(k);
        if b.repeated > k || b.repeated > m {
            dims_match_w = false;
            continue;
        }
        if b.indices.len() != binomial(q, kw) {
            dims_match_w = false;
        }
        let sub = s.select_columns(&b.indices);
        let wq = s_matrix(q, kw, q - kw);
        let w = w_basis(q, kw);
        if rank(&sub) != rank(&(&wq * &w)) {
            ranks_match_w = false;
        }
    }
    YBlockReport {
        n,
        k,
        m,
        blocks: src.len(),
        block_diagonal,
        dims_match_w,
        ranks_match_w,
        passed: block_diagonal && dims_match_w && ranks_match_w,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s_base_cases() {
        // Alt^{0,1} → Alt^{1,0} is the identity on covectors.
        assert_eq!(s_matrix(3, 0, 1), LinearMap::identity(3));
        assert_eq!(s_matrix(2, 0, 1), LinearMap::identity(2));
        assert_eq!(s_matrix(3, 1, 0).nrows(), 0);
    }

    #[test]
    fn s_dimensions() {
        let s = s_matrix(4, 1, 2);
        assert_eq!(s.shape(), (6 * 4, 4 * 6));
    }

    #[test]
    fn injsur_law_small() {
        for n in 1..=4 {
            for i in 0..n {
                for j in 0..n {
                    assert!(check_inj_surj(n, i, j).passed, "n={n} i={i} j={j}");
                }
            }
        }
    }

    #[test]
    fn sident_small() {
        for n in 1..=5 {
            for k in 0..=n {
                assert!(sident_check(n, k).passed, "n={n} k={k}: {:?}", sident_check(n, k));
            }
        }
    }

    #[test]
    fn y_blocks_small() {
        for n in 1..=4 {
            for k in 0..n {
                for m in 1..=n {
                    assert!(y_block_check(n, k, m).passed, "n={n} k={k} m={m}");
                }
            }
        }
    }
}
