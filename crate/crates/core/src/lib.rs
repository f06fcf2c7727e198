//! Exact linear algebra for deriving complexes from pairs of complexes
//! joined by algebraic links, over polynomial differential forms.

pub mod bgg;
pub mod cli;
pub mod exactla;
pub mod linkmaps;
pub mod multilinear;
pub mod polyforms;
pub mod proxies;
