use super::{emit, Format, MatrixArgs, UsageError, EXIT_OK};
use crate::exactla::{map_to_csv, map_to_json};
use crate::proxies::min_degree;

pub(super) fn run(a: &MatrixArgs) -> Result<i32, UsageError> {
    // Space caps shift with the top-left cap at slope one, so probe a small
    // instance to find the offset of the requested domain.
    let probe = match &a.target.named {
        Some(name) => min_degree(name).expect("validated by clap"),
        None => a.target.dim.unwrap_or(1) as i64 + 1,
    };
    let probe_built = a.target.build(probe)?;
    let c = probe_built.complex();
    if a.index >= c.diffs.len() {
        return Err(UsageError(format!(
            "operator index {} out of range; the complex has {} operators",
            a.index,
            c.diffs.len()
        )));
    }
    if a.degree < 0 {
        return Err(UsageError(format!("domain degree {} is negative", a.degree)));
    }
    let degree = a.degree + probe - c.spaces[a.index].cap;
    let built = if degree == probe { probe_built } else { a.target.build(degree)? };
    let m = built.complex().operator_in_basis(a.index);
    let text = match a.output.format {
        Format::Json => {
            let mut t = serde_json::to_string_pretty(&map_to_json(&m)).map_err(|e| UsageError(e.to_string()))?;
            t.push('\n');
            t
        }
        Format::Csv => map_to_csv(&m).map_err(|e| UsageError(e.to_string()))?,
        Format::Pretty => {
            let mut t = format!("{}x{} {} -> {}\n", m.nrows(), m.ncols(), m.domain, m.codomain);
            t.push_str(&map_to_csv(&m).map_err(|e| UsageError(e.to_string()))?);
            t
        }
    };
    emit(&a.output, text.as_bytes())?;
    Ok(EXIT_OK)
}
