//! Alternating forms on `R^n` and pairs of them.
//!
//! Indices are zero-based internally; `dx^σ` for `σ = (σ₁ < … < σ_k)` is
//! the basis of `Alt^k`, listed lexicographically.

use std::collections::HashMap;
use std::fmt;

use crate::exactla::{ExactScalar, LinearMap};

pub type MultiIndex = Vec<u8>;

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}

/// Sign and sorted tuple of the concatenation `a ‖ b`, or `None` when an
/// index repeats (the wedge product vanishes).
pub fn wedge_coeff(a: &[u8], b: &[u8]) -> Option<(i8, MultiIndex)> {
    let mut v: Vec<u8> = a.iter().chain(b.iter()).copied().collect();
    sort_with_sign(&mut v)
}

/// Sorts in place and returns the permutation sign, or `None` on repeats.
pub fn sort_with_sign(v: &mut [u8]) -> Option<(i8, MultiIndex)> {
    let mut sign = 1i8;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some((sign, v.to_vec()))
    }
}

fn combinations(n: usize, k: usize) -> Vec<MultiIndex> {
    let mut out = Vec::new();
    let mut cur: Vec<u8> = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<u8>, out: &mut Vec<MultiIndex>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i as u8);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Basis `dx^σ` of `Alt^k(R^n)` in lexicographic order.
#[derive(Clone, Debug)]
pub struct AltBasis {
    pub n: usize,
    pub k: usize,
    elems: Vec<MultiIndex>,
    index: HashMap<MultiIndex, usize>,
}

impl AltBasis {
    pub fn new(n: usize, k: usize) -> Self {
        let elems = combinations(n, k);
        let index = elems.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        AltBasis { n, k, elems, index }
    }

    pub fn dim(&self) -> usize {
        self.elems.len()
    }

    pub fn elems(&self) -> &[MultiIndex] {
        &self.elems
    }

    pub fn get(&self, i: usize) -> &MultiIndex {
        &self.elems[i]
    }

    pub fn index_of(&self, s: &[u8]) -> Option<usize> {
        self.index.get(s).copied()
    }
}

/// Basis `dx^σ ⊗ dx^τ` of `Alt^{i,J}(R^n) = Alt^i ⊗ Alt^J`, ordered
/// lexicographically in `σ` and then `τ`.
#[derive(Clone, Debug)]
pub struct AltIJBasis {
    pub n: usize,
    pub i: usize,
    pub j: usize,
    pub first: AltBasis,
    pub second: AltBasis,
}

impl AltIJBasis {
    pub fn new(n: usize, i: usize, j: usize) -> Self {
        AltIJBasis {
            n,
            i,
            j,
            first: AltBasis::new(n, i),
            second: AltBasis::new(n, j),
        }
    }

    pub fn dim(&self) -> usize {
        self.first.dim() * self.second.dim()
    }

    pub fn index(&self, a: usize, b: usize) -> usize {
        a * self.second.dim() + b
    }

    pub fn split(&self, idx: usize) -> (usize, usize) {
        (idx / self.second.dim(), idx % self.second.dim())
    }

    pub fn index_of(&self, s: &[u8], t: &[u8]) -> Option<usize> {
        Some(self.index(self.first.index_of(s)?, self.second.index_of(t)?))
    }

    pub fn pair(&self, idx: usize) -> (&MultiIndex, &MultiIndex) {
        let (a, b) = self.split(idx);
        (self.first.get(a), self.second.get(b))
    }

    pub fn label(&self) -> String {
        format!("Alt^{{{};{}}}(R^{})", self.i, self.j, self.n)
    }
}

impl fmt::Display for AltIJBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Matrix of `ω ↦ dx^l ∧ ω` from `Alt^k` to `Alt^{k+1}`.
pub fn wedge_left_matrix(n: usize, k: usize, l: u8) -> LinearMap {
    let src = AltBasis::new(n, k);
    let dst = AltBasis::new(n, k + 1);
    let mut trip = Vec::new();
    for (c, s) in src.elems().iter().enumerate() {
        if let Some((sign, t)) = wedge_coeff(&[l], s) {
            let r = dst.index_of(&t).unwrap();
            trip.push((r, c, ExactScalar::from_int(sign as i64)));
        }
    }
    LinearMap::from_triplets(dst.dim(), src.dim(), trip)
}
