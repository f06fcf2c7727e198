use std::fmt::Write as _;

use serde::Serialize;

use super::{emit, Built, DeriveArgs, Format, UsageError, EXIT_OK};
use crate::bgg::ComplexSpec;
use crate::exactla::{map_to_sparse_json, SparseMapJson};

#[derive(Debug, Serialize)]
pub struct SpaceRecord {
    pub index: usize,
    pub fiber: String,
    pub ambient: String,
    pub cap: i64,
    pub fiber_dim: usize,
    pub dim: usize,
    pub cohomology: usize,
}

#[derive(Debug, Serialize)]
pub struct OperatorRecord {
    pub index: usize,
    pub order: u32,
    pub rank: usize,
    /// In the bases of the domain and codomain spaces.
    pub matrix: SparseMapJson,
}

#[derive(Debug, Serialize)]
pub struct RowSummary {
    pub name: String,
    pub dims: Vec<usize>,
    pub cohomology: Vec<usize>,
}

#[derive(Debug, Serialize)]
pub struct DeriveReport {
    pub name: String,
    pub degree: i64,
    pub j: Option<usize>,
    pub top: Option<RowSummary>,
    pub bottom: Option<RowSummary>,
    pub spaces: Vec<SpaceRecord>,
    pub cohomology: Vec<usize>,
    pub operators: Vec<OperatorRecord>,
}

fn summary(c: &ComplexSpec) -> RowSummary {
    RowSummary {
        name: c.name.clone(),
        dims: c.dims(),
        cohomology: c.cohomology_dims(),
    }
}

pub(crate) fn report(name: String, degree: i64, built: &Built) -> DeriveReport {
    let c = built.complex();
    let coh = c.cohomology_dims();
    let ranks = c.ranks();
    let spaces = c
        .spaces
        .iter()
        .enumerate()
        .map(|(i, s)| SpaceRecord {
            index: i,
            fiber: s.fiber.name.clone(),
            ambient: s.fiber.ambient_name.clone(),
            cap: s.cap,
            fiber_dim: s.fiber.dim(),
            dim: s.dim(),
            cohomology: coh[i],
        })
        .collect();
    let operators = (0..c.diffs.len())
        .map(|i| OperatorRecord {
            index: i,
            order: c.orders[i],
            rank: ranks[i],
            matrix: map_to_sparse_json(&c.operator_in_basis(i)),
        })
        .collect();
    let (j, top, bottom) = match built {
        Built::Diagram(b) => (Some(b.j), Some(summary(b.top())), Some(summary(b.bottom()))),
        Built::Complex(_) => (None, None, None),
    };
    DeriveReport {
        name,
        degree,
        j,
        top,
        bottom,
        spaces,
        cohomology: coh,
        operators,
    }
}

fn csv_table(r: &DeriveReport) -> Result<String, UsageError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let err = |e: csv::Error| UsageError(e.to_string());
    w.write_record(["index", "fiber", "cap", "dim", "cohomology"]).map_err(err)?;
    for s in &r.spaces {
        w.write_record([
            s.index.to_string(),
            s.fiber.clone(),
            s.cap.to_string(),
            s.dim.to_string(),
            s.cohomology.to_string(),
        ])
        .map_err(err)?;
    }
    let bytes = w.into_inner().map_err(|e| UsageError(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| UsageError(e.to_string()))
}

fn pretty(r: &DeriveReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{} (degree {})", r.name, r.degree);
    if let Some(j) = r.j {
        let _ = writeln!(s, "J = {j}");
    }
    let _ = writeln!(s, "{:>5}  {:<14} {:>5} {:>7} {:>4}", "index", "space", "cap", "dim", "H");
    for sp in &r.spaces {
        let _ = writeln!(
            s,
            "{:>5}  {:<14} {:>5} {:>7} {:>4}",
            sp.index,
            format!("P<={}⊗{}", sp.cap, sp.fiber),
            sp.cap,
            sp.dim,
            sp.cohomology
        );
    }
    for op in &r.operators {
        let _ = writeln!(
            s,
            "D^{}: order {}, {}x{}, rank {}",
            op.index, op.order, op.matrix.rows, op.matrix.cols, op.rank
        );
    }
    s
}

pub(super) fn run(a: &DeriveArgs) -> Result<i32, UsageError> {
    let degree = a.degree.unwrap_or_else(|| a.target.default_degree());
    let built = a.target.build(degree)?;
    let r = report(a.target.label(), degree, &built);
    let text = match a.output.format {
        Format::Json => {
            let mut t = serde_json::to_string_pretty(&r).map_err(|e| UsageError(e.to_string()))?;
            t.push('\n');
            t
        }
        Format::Csv => csv_table(&r)?,
        Format::Pretty => pretty(&r),
    };
    emit(&a.output, text.as_bytes())?;
    Ok(EXIT_OK)
}
