use serde::{Deserialize, Serialize};

use super::{ExactScalar, LaError, Label, LinearMap};

/// Serialized matrix: dense row-major entries as `p/q` strings plus the
/// basis labels.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct MapJson {
    pub rows: usize,
    pub cols: usize,
    pub domain: String,
    pub codomain: String,
    pub entries: Vec<Vec<ExactScalar>>,
}

pub fn map_to_json(m: &LinearMap) -> MapJson {
    MapJson {
        rows: m.nrows(),
        cols: m.ncols(),
        domain: m.domain.to_string(),
        codomain: m.codomain.to_string(),
        entries: m.to_dense(),
    }
}

/// Serialized matrix as `(row, col, "p/q")` triplets of its nonzero entries,
/// in row-major order.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct SparseMapJson {
    pub rows: usize,
    pub cols: usize,
    pub domain: String,
    pub codomain: String,
    pub entries: Vec<(usize, usize, ExactScalar)>,
}

pub fn map_to_sparse_json(m: &LinearMap) -> SparseMapJson {
    SparseMapJson {
        rows: m.nrows(),
        cols: m.ncols(),
        domain: m.domain.to_string(),
        codomain: m.codomain.to_string(),
        entries: m.triplets().map(|(r, c, v)| (r, c, v.clone())).collect(),
    }
}

pub fn map_from_sparse_json(j: &SparseMapJson) -> Result<LinearMap, LaError> {
    if j.entries.iter().any(|&(r, c, _)| r >= j.rows || c >= j.cols) {
        return Err(LaError::Malformed(format!("entry outside {}x{}", j.rows, j.cols)));
    }
    let m = LinearMap::from_triplets(j.rows, j.cols, j.entries.iter().cloned());
    Ok(m.with_labels(Label::new(&j.domain), Label::new(&j.codomain)))
}

pub fn map_from_json(j: &MapJson) -> Result<LinearMap, LaError> {
    if j.entries.len() != j.rows || j.entries.iter().any(|r| r.len() != j.cols) {
        return Err(LaError::Malformed(format!(
            "declared {}x{} does not match entries",
            j.rows, j.cols
        )));
    }
    let m = if j.rows == 0 {
        LinearMap::zeros(0, j.cols)
    } else {
        LinearMap::from_dense(&j.entries)
    };
    Ok(m.with_labels(Label::new(&j.domain), Label::new(&j.codomain)))
}

/// Dense CSV, one matrix row per record, entries as `p/q`.
pub fn map_to_csv(m: &LinearMap) -> Result<String, csv::Error> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    for row in m.to_dense() {
        w.write_record(row.iter().map(|v| v.to_pq()))?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_roundtrip() {
        let m = LinearMap::from_dense(&[
            vec![ExactScalar::new(1, 2), ExactScalar::zero()],
            vec![ExactScalar::new(-3, 7), ExactScalar::from_int(5)],
        ])
        .with_labels(Label::new("A"), Label::new("B"));
        let s = serde_json::to_string(&map_to_json(&m)).unwrap();
        assert!(s.contains("\"-3/7\""));
        let back: MapJson = serde_json::from_str(&s).unwrap();
        let m2 = map_from_json(&back).unwrap();
        assert_eq!(m, m2);
        assert_eq!(m2.domain, Label::new("A"));
    }

    #[test]
    fn sparse_json_roundtrip() {
        let m = LinearMap::from_i64(&[&[0, 3], &[-1, 0]]);
        let j = map_to_sparse_json(&m);
        assert_eq!(j.entries.len(), 2);
        let s = serde_json::to_string(&j).unwrap();
        assert!(s.contains(r#"[0,1,"3/1"]"#), "{s}");
        let back = map_from_sparse_json(&serde_json::from_str(&s).unwrap()).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn csv_format() {
        let m = LinearMap::from_i64(&[&[1, 0], &[0, -2]]);
        assert_eq!(map_to_csv(&m).unwrap(), "1/1,0/1\n0/1,-2/1\n");
    }
}
