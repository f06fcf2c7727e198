//! Scalar, vector and matrix proxies for `Alt^{i,J}` in two and three
//! dimensions, the pointwise algebraic maps between them, and the named
//! diagrams assembled from them.

mod identities;
mod named;

pub use identities::{operator_identity_check, IdentityReport, IDENTITY_NAMES};
pub use named::{min_degree, named_bgg, named_complex, named_diagram, NamedError, NAMED, VALID_NAMED};

use thiserror::Error;

use crate::bgg::{ComplexSpec, Fiber, Homotopy, Space};
use crate::bgg::family::alt_row;
use crate::exactla::{ExactScalar, LinearMap};
use crate::multilinear::binomial;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ProxyError {
    #[error("unknown algebraic map {0:?}")]
    UnknownMap(String),
    #[error("proxies exist only in dimensions 2 and 3, not {0}")]
    UnsupportedDim(usize),
    #[error("unknown fiber {0:?}")]
    UnknownFiber(String),
}

fn check_dim(n: usize) -> Result<(), ProxyError> {
    if n == 2 || n == 3 {
        Ok(())
    } else {
        Err(ProxyError::UnsupportedDim(n))
    }
}

/// Proxy of `Alt^k(R^n)`: `R` for `k ∈ {0, n}`, `V` otherwise.
pub fn alt_proxy_name(n: usize, k: usize) -> &'static str {
    if k == 0 || k == n {
        "R"
    } else {
        "V"
    }
}

/// Proxy name of `Alt^{i,J}`: `R`, `V` or `M`.
pub fn ambient_name(n: usize, i: usize, j: usize) -> &'static str {
    match (alt_proxy_name(n, i), alt_proxy_name(n, j)) {
        ("R", "R") => "R",
        ("V", "V") => "M",
        _ => "V",
    }
}

/// Signed permutation from `Alt^k` coordinates to proxy coordinates:
/// `dx^a ↦ e_a`, and in 3D `dx^{23} ↦ e_1`, `dx^{13} ↦ −e_2`, `dx^{12} ↦ e_3`.
pub fn alt_to_proxy(n: usize, k: usize) -> LinearMap {
    if n == 3 && k == 2 {
        return LinearMap::from_i64(&[&[0, 0, 1], &[0, -1, 0], &[1, 0, 0]]);
    }
    LinearMap::identity(binomial(n, k))
}

/// The dictionary on `Alt^{i,J} = Alt^i ⊗ Alt^J`: the form factor indexes
/// rows and the value factor indexes columns of the proxy.
pub fn dictionary(n: usize, i: usize, j: usize) -> LinearMap {
    LinearMap::kron(&alt_to_proxy(n, i), &alt_to_proxy(n, j))
}

fn e(n: usize, a: usize, b: usize) -> usize {
    a * n + b
}

fn matrix_columns(n: usize, cols: Vec<Vec<(usize, i64)>>) -> LinearMap {
    let trip = cols
        .iter()
        .enumerate()
        .flat_map(|(c, col)| col.iter().map(move |&(r, v)| (r, c, ExactScalar::from_int(v))));
    LinearMap::from_triplets(n * n, cols.len(), trip)
}

/// Named subspaces of `M`: `S` (symmetric), `K` (skew), `T` (trace-free)
/// and `S∩T`.
pub fn matrix_fiber(n: usize, name: &str) -> Result<Fiber, ProxyError> {
    check_dim(n)?;
    let mut cols: Vec<Vec<(usize, i64)>> = Vec::new();
    let sym = name == "S" || name == "S∩T";
    let traceless = name == "T" || name == "S∩T";
    match name {
        "M" => return Ok(Fiber::full("M", n * n)),
        "S" | "T" | "S∩T" => {
            for a in 0..n {
                for b in 0..n {
                    if a == b {
                        continue;
                    }
                    if sym {
                        if a < b {
                            cols.push(vec![(e(n, a, b), 1), (e(n, b, a), 1)]);
                        }
                    } else {
                        cols.push(vec![(e(n, a, b), 1)]);
                    }
                }
            }
            for a in 0..n {
                if traceless {
                    if a + 1 < n {
                        cols.push(vec![(e(n, a, a), 1), (e(n, n - 1, n - 1), -1)]);
                    }
                } else {
                    cols.push(vec![(e(n, a, a), 1)]);
                }
            }
        }
        "K" => {
            for a in 0..n {
                for b in a + 1..n {
                    cols.push(vec![(e(n, a, b), 1), (e(n, b, a), -1)]);
                }
            }
        }
        other => return Err(ProxyError::UnknownFiber(other.to_string())),
    }
    Ok(Fiber::span(name, "M", &matrix_columns(n, cols)))
}

/// Recognizes a subspace of a proxy fiber by its orthogonal projector.
pub fn fiber_name(ambient: &str, projector: &LinearMap) -> Option<String> {
    let m = projector.nrows();
    if projector.is_zero() {
        return Some("0".into());
    }
    if *projector == LinearMap::identity(m) {
        return Some(ambient.to_string());
    }
    if ambient != "M" {
        return None;
    }
    let n = match m {
        4 => 2,
        9 => 3,
        _ => return None,
    };
    ["S", "T", "K", "S∩T"]
        .into_iter()
        .find(|name| matrix_fiber(n, name).map(|f| f.projector == *projector).unwrap_or(false))
        .map(String::from)
}

fn q(p: i64, d: i64) -> ExactScalar {
    ExactScalar::new(p, d)
}

/// The pointwise maps in `M` coordinates (row-major): `skw`, `sym`, `tr`,
/// `iota`, `dev`, `mskw`, `vskw` (3D), `sskw` (2D), `Sop` (`u ↦ uᵀ − tr(u) I`),
/// `transpose` and `id_V`, `id_M`.
pub fn algebraic_map(name: &str, n: usize) -> Result<LinearMap, ProxyError> {
    check_dim(n)?;
    let nn = n * n;
    let mut t: Vec<(usize, usize, ExactScalar)> = Vec::new();
    let (rows, cols) = match name {
        "id_V" => return Ok(LinearMap::identity(n)),
        "id_M" => return Ok(LinearMap::identity(nn)),
        "transpose" => {
            for a in 0..n {
                for b in 0..n {
                    t.push((e(n, b, a), e(n, a, b), q(1, 1)));
                }
            }
            (nn, nn)
        }
        "skw" | "sym" => {
            let sign = if name == "skw" { -1 } else { 1 };
            for a in 0..n {
                for b in 0..n {
                    t.push((e(n, a, b), e(n, a, b), q(1, 2)));
                    t.push((e(n, a, b), e(n, b, a), q(sign, 2)));
                }
            }
            (nn, nn)
        }
        "tr" => {
            for a in 0..n {
                t.push((0, e(n, a, a), q(1, 1)));
            }
            (1, nn)
        }
        "iota" => {
            for a in 0..n {
                t.push((e(n, a, a), 0, q(1, 1)));
            }
            (nn, 1)
        }
        "dev" => {
            for k in 0..nn {
                t.push((k, k, q(1, 1)));
            }
            for a in 0..n {
                for b in 0..n {
                    t.push((e(n, a, a), e(n, b, b), q(-1, n as i64)));
                }
            }
            (nn, nn)
        }
        "Sop" => {
            for a in 0..n {
                for b in 0..n {
                    t.push((e(n, b, a), e(n, a, b), q(1, 1)));
                }
                for b in 0..n {
                    t.push((e(n, a, a), e(n, b, b), q(-1, 1)));
                }
            }
            (nn, nn)
        }
        "mskw" if n == 3 => {
            // mskw(v) w = v × w.
            t.push((e(3, 0, 1), 2, q(-1, 1)));
            t.push((e(3, 0, 2), 1, q(1, 1)));
            t.push((e(3, 1, 0), 2, q(1, 1)));
            t.push((e(3, 1, 2), 0, q(-1, 1)));
            t.push((e(3, 2, 0), 1, q(-1, 1)));
            t.push((e(3, 2, 1), 0, q(1, 1)));
            (nn, 3)
        }
        "mskw" => {
            t.push((e(2, 0, 1), 0, q(1, 1)));
            t.push((e(2, 1, 0), 0, q(-1, 1)));
            (nn, 1)
        }
        "vskw" if n == 3 => {
            t.push((0, e(3, 2, 1), q(1, 2)));
            t.push((0, e(3, 1, 2), q(-1, 2)));
            t.push((1, e(3, 0, 2), q(1, 2)));
            t.push((1, e(3, 2, 0), q(-1, 2)));
            t.push((2, e(3, 1, 0), q(1, 2)));
            t.push((2, e(3, 0, 1), q(-1, 2)));
            (3, nn)
        }
        "sskw" if n == 2 => {
            t.push((0, e(2, 0, 1), q(1, 2)));
            t.push((0, e(2, 1, 0), q(-1, 2)));
            (1, nn)
        }
        other => return Err(ProxyError::UnknownMap(other.to_string())),
    };
    Ok(LinearMap::from_triplets(rows, cols, t))
}

/// `c · map`, for building labeled links.
pub fn scaled_map(name: &str, n: usize, c: i64) -> Result<LinearMap, ProxyError> {
    Ok(algebraic_map(name, n)?.scale(&ExactScalar::from_int(c)))
}

/// Row `J` of the proxy diagram: the `Alt^{i,J}` row conjugated by the
/// dictionary, with full proxy fibers.
pub fn proxy_row(n: usize, j: usize, cap: i64) -> Result<ComplexSpec, ProxyError> {
    check_dim(n)?;
    let alt = alt_row(n, j, cap);
    let spaces: Vec<Space> = (0..=n)
        .map(|i| {
            let amb = ambient_name(n, i, j);
            let s = &alt.spaces[i];
            Space::new(n, s.cap, Fiber::full(amb, s.fiber.ambient_dim))
        })
        .collect();
    let lifts: Vec<LinearMap> = (0..=n)
        .map(|i| LinearMap::block_diag_repeat(spaces[i].num_monomials(), &dictionary(n, i, j)))
        .collect();
    let conj = |m: &LinearMap, from: usize, to: usize| {
        (&(&lifts[to] * m) * &lifts[from].transpose()).with_labels(spaces[from].label(), spaces[to].label())
    };
    let diffs = (0..n).map(|i| conj(&alt.diffs[i], i, i + 1)).collect();
    let h = alt.homotopy.as_ref().expect("alt rows carry a homotopy");
    let homotopy = Homotopy {
        h: (0..n).map(|i| conj(&h.h[i], i + 1, i)).collect(),
        l: (0..=n).map(|i| conj(&h.l[i], i, i)).collect(),
    };
    let names: Vec<&str> = (0..=n).map(|i| ambient_name(n, i, j)).collect();
    Ok(ComplexSpec::new(format!("row {j} ({})", names.join(",")), spaces, diffs, vec![1; n])
        .expect("consistent row")
        .with_homotopy(homotopy))
}

/// The `Alt^{i,J}` link `s^{i,J}` expressed in proxy coordinates.
pub fn proxy_link(n: usize, i: usize, j: usize) -> LinearMap {
    let s = crate::linkmaps::s_matrix(n, i, j);
    &(&dictionary(n, i + 1, j - 1) * &s) * &dictionary(n, i, j).transpose()
}
