use thiserror::Error;

use super::{algebraic_map, proxy_row, scaled_map, ProxyError};
use crate::bgg::{BGGDiagram, Bgg, BggError, ComplexSpec, Fiber, Homotopy, Space};
use crate::exactla::LinearMap;

/// All named diagrams, including the one expected to be rejected.
pub const NAMED: [&str; 13] = [
    "hessian3d",
    "elasticity3d",
    "divdiv3d",
    "gradcurl3d",
    "curldiv3d",
    "graddiv3d",
    "conformal_elasticity3d",
    "conformal_hessian3d_a",
    "conformal_hessian3d_b",
    "hessian2d",
    "elasticity2d",
    "gradrot2d",
    "conformal2d_fail",
];

/// The named diagrams that satisfy every hypothesis.
pub const VALID_NAMED: [&str; 12] = [
    "hessian3d",
    "elasticity3d",
    "divdiv3d",
    "gradcurl3d",
    "curldiv3d",
    "graddiv3d",
    "conformal_elasticity3d",
    "conformal_hessian3d_a",
    "conformal_hessian3d_b",
    "hessian2d",
    "elasticity2d",
    "gradrot2d",
];

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum NamedError {
    #[error("unknown named diagram {0:?}")]
    UnknownName(String),
    #[error("degree cap {0} is too small for {1}")]
    DegreeTooSmall(i64, String),
    #[error(transparent)]
    Proxy(#[from] ProxyError),
    #[error(transparent)]
    Invalid(#[from] BggError),
}

fn map(name: &str, n: usize) -> LinearMap {
    algebraic_map(name, n).expect("known map")
}

fn scaled(name: &str, n: usize, c: i64) -> LinearMap {
    scaled_map(name, n, c).expect("known map")
}

fn zero_space(n: usize, cap: i64) -> Space {
    Space::new(n, cap, Fiber::zero("0", 0))
}

/// Adds `before` zero spaces in front of a row and `after` behind it.
fn pad(row: ComplexSpec, before: usize, after: usize) -> ComplexSpec {
    let n = row.spaces[0].n;
    let first_cap = row.spaces[0].cap;
    let last_cap = row.spaces.last().unwrap().cap;
    let mut spaces: Vec<Space> = (0..before).map(|k| zero_space(n, first_cap + (before - k) as i64)).collect();
    spaces.extend(row.spaces.iter().cloned());
    spaces.extend((0..after).map(|k| zero_space(n, last_cap - 1 - k as i64)));
    let zero = |from: usize, to: usize| spaces[from].zero_map_to(&spaces[to]);
    let len = spaces.len();
    let diffs: Vec<LinearMap> = (0..len - 1)
        .map(|i| {
            if i >= before && i + 1 < before + row.len() {
                row.diffs[i - before].clone()
            } else {
                zero(i, i + 1)
            }
        })
        .collect();
    let orders: Vec<u32> = (0..len - 1)
        .map(|i| {
            if i >= before && i + 1 < before + row.len() {
                row.orders[i - before]
            } else {
                0
            }
        })
        .collect();
    let homotopy = row.homotopy.as_ref().map(|h| Homotopy {
        h: (0..len - 1)
            .map(|i| {
                if i >= before && i + 1 < before + row.len() {
                    h.h[i - before].clone()
                } else {
                    zero(i + 1, i)
                }
            })
            .collect(),
        l: (0..len)
            .map(|i| {
                if i >= before && i < before + row.len() {
                    h.l[i - before].clone()
                } else {
                    zero(i, i)
                }
            })
            .collect(),
    });
    let mut c = ComplexSpec::new(row.name.clone(), spaces, diffs, orders).expect("padded row");
    if let Some(h) = homotopy {
        c = c.with_homotopy(h);
    }
    c
}

fn zero_link(from: usize, to: usize) -> LinearMap {
    LinearMap::zeros(to, from)
}

fn output_of(name: &str, cap: i64) -> Result<ComplexSpec, NamedError> {
    let bgg = named_bgg(name, cap)?;
    let mut c = bgg.output_complex().clone();
    c.name = name.to_string();
    Ok(c)
}

/// Smallest degree cap accepted for a named diagram.
pub fn min_degree(name: &str) -> Option<i64> {
    match name {
        "conformal_elasticity3d" | "graddiv3d" | "gradcurl3d" | "curldiv3d" => Some(6),
        "conformal_hessian3d_a" | "conformal_hessian3d_b" => Some(6),
        _ if NAMED.contains(&name) => Some(4),
        _ => None,
    }
}

/// Builds a named diagram whose top-left space has polynomial degree cap
/// `r`. The diagram is not validated.
pub fn named_diagram(name: &str, r: i64) -> Result<BGGDiagram, NamedError> {
    let min = min_degree(name).ok_or_else(|| NamedError::UnknownName(name.to_string()))?;
    if r < min {
        return Err(NamedError::DegreeTooSmall(r, name.to_string()));
    }
    let (top, bottom, links) = match name {
        "hessian3d" => (
            proxy_row(3, 0, r)?,
            proxy_row(3, 1, r - 1)?,
            vec![map("id_V", 3), scaled("vskw", 3, 2), map("tr", 3)],
        ),
        "elasticity3d" => (
            proxy_row(3, 1, r)?,
            proxy_row(3, 2, r - 1)?,
            vec![scaled("mskw", 3, -1), map("Sop", 3), scaled("vskw", 3, 2)],
        ),
        "divdiv3d" => (
            proxy_row(3, 2, r)?,
            proxy_row(3, 3, r - 1)?,
            vec![map("iota", 3), scaled("mskw", 3, -1), map("id_V", 3)],
        ),
        "gradcurl3d" => (
            pad(proxy_row(3, 0, r)?, 0, 2),
            pad(proxy_row(3, 2, r - 2)?, 1, 1),
            vec![
                zero_link(0, 3),
                map("id_V", 3),
                scaled("tr", 3, -1),
                zero_link(9, 0),
                zero_link(3, 0),
            ],
        ),
        "curldiv3d" => (
            pad(proxy_row(3, 1, r)?, 0, 1),
            pad(proxy_row(3, 3, r - 2)?, 1, 0),
            vec![zero_link(0, 9), map("iota", 3), scaled("id_V", 3, -1), zero_link(3, 0)],
        ),
        "graddiv3d" => (
            pad(proxy_row(3, 0, r)?, 0, 2),
            pad(proxy_row(3, 3, r - 3)?, 2, 0),
            vec![
                zero_link(0, 3),
                zero_link(0, 3),
                LinearMap::identity(1),
                zero_link(3, 0),
                zero_link(3, 0),
            ],
        ),
        "conformal_elasticity3d" => (
            output_of("divdiv3d", r)?,
            output_of("elasticity3d", r - 1)?,
            vec![scaled("mskw", 3, -1), map("Sop", 3), map("tr", 3)],
        ),
        "conformal_hessian3d_a" => (
            output_of("hessian3d", r)?,
            proxy_row(3, 0, r - 2)?,
            vec![map("iota", 3), scaled("mskw", 3, -1), map("id_V", 3)],
        ),
        "conformal_hessian3d_b" => (
            proxy_row(3, 0, r)?,
            output_of("divdiv3d", r - 1)?,
            vec![map("id_V", 3), scaled("vskw", 3, 2), map("tr", 3)],
        ),
        "hessian2d" => (
            proxy_row(2, 0, r)?,
            proxy_row(2, 1, r - 1)?,
            vec![map("id_V", 2), scaled("sskw", 2, -2)],
        ),
        "elasticity2d" => (
            proxy_row(2, 1, r)?,
            proxy_row(2, 2, r - 1)?,
            vec![map("mskw", 2), map("id_V", 2)],
        ),
        "gradrot2d" => (
            pad(proxy_row(2, 0, r)?, 0, 2),
            pad(proxy_row(2, 2, r - 2)?, 1, 1),
            vec![zero_link(0, 2), LinearMap::identity(1), zero_link(2, 0), zero_link(1, 0)],
        ),
        "conformal2d_fail" => (
            output_of("elasticity2d", r)?,
            output_of("hessian2d", r - 1)?,
            vec![scaled("iota", 2, -1), map("tr", 2)],
        ),
        _ => unreachable!(),
    };
    Ok(BGGDiagram::new(name, top, bottom, links))
}

/// Builds and validates a named diagram.
pub fn named_bgg(name: &str, r: i64) -> Result<Bgg, NamedError> {
    Ok(named_diagram(name, r)?.validate()?)
}

/// The output complex of a named diagram.
pub fn named_complex(name: &str, r: i64) -> Result<ComplexSpec, NamedError> {
    let bgg = named_bgg(name, r)?;
    let mut c = bgg.output_complex().clone();
    c.name = name.to_string();
    Ok(c)
}
