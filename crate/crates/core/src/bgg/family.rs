//! The `Alt^{i,J}`-valued de Rham rows in `n` dimensions and the diagrams
//! joining consecutive rows.

use super::complex::{ComplexSpec, Homotopy};
use super::diagram::BGGDiagram;
use super::space::{Fiber, Space};
use crate::linkmaps::s_matrix;
use crate::multilinear::binomial;
use crate::polyforms::{d_matrix, homotopy_p_matrix, l_matrix, PolySpace};

pub fn fiber_label(i: usize, j: usize) -> String {
    format!("Alt^{{{i};{j}}}")
}

/// `P_{≤cap-i} ⊗ Alt^{i,J}` for `i = 0..=n`, with `d` as differential and
/// the Koszul homotopy `P` and constant projector `L`.
pub fn alt_row(n: usize, j: usize, cap: i64) -> ComplexSpec {
    let poly: Vec<PolySpace> = (0..=n).map(|i| PolySpace::new(n, cap - i as i64, i, j)).collect();
    let spaces: Vec<Space> = poly
        .iter()
        .map(|p| {
            let dim = binomial(n, p.i) * binomial(n, j);
            Space::new(n, p.r, Fiber::full(fiber_label(p.i, j), dim))
        })
        .collect();
    let diffs = (0..n)
        .map(|i| d_matrix(&poly[i]).with_labels(spaces[i].label(), spaces[i + 1].label()))
        .collect();
    let h = (0..n)
        .map(|i| homotopy_p_matrix(&poly[i + 1]).with_labels(spaces[i + 1].label(), spaces[i].label()))
        .collect();
    let l = poly
        .iter()
        .zip(&spaces)
        .map(|(p, s)| l_matrix(p).with_labels(s.label(), s.label()))
        .collect();
    ComplexSpec::new(format!("de Rham ⊗ Alt^{j} (n={n})"), spaces, diffs, vec![1; n])
        .expect("consistent row")
        .with_homotopy(Homotopy { h, l })
}

/// Rows `J` and `J+1` joined by `s^{i,J+1}`; `cap` is the degree cap of
/// the first space of the top row.
pub fn alt_diagram(n: usize, j: usize, cap: i64) -> BGGDiagram {
    let top = alt_row(n, j, cap);
    let bottom = alt_row(n, j + 1, cap - 1);
    let links = (0..n).map(|i| s_matrix(n, i, j + 1)).collect();
    BGGDiagram::new(format!("altij n={n} J={j}"), top, bottom, links)
}
