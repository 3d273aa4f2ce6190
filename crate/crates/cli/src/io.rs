//! Matrix files: CSV (one row per line, entries `a`, `a+bi` or `a-bi`) and
//! JSON (`{rows, cols, entries, split}` with row-major entries given as bare
//! reals or `[re, im]` pairs).

use std::path::Path;
use std::str::FromStr;

use gppt::{Matrix, C64};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn from_path(path: &Path) -> Format {
        match path.extension().and_then(|e| e.to_str()) {
            Some(e) if e.eq_ignore_ascii_case("json") => Format::Json,
            _ => Format::Csv,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Real(f64),
    Complex([f64; 2]),
}

impl Entry {
    fn value(self) -> C64 {
        match self {
            Entry::Real(re) => C64::new(re, 0.0),
            Entry::Complex([re, im]) => C64::new(re, im),
        }
    }
}

/// JSON form of a matrix with an optional split index.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Entry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub split: Option<usize>,
}

impl MatrixJson {
    pub fn from_matrix(m: &Matrix, split: Option<usize>) -> Self {
        let real = m.is_real();
        let entries = m
            .as_slice()
            .iter()
            .map(|z| {
                if real {
                    Entry::Real(z.re)
                } else {
                    Entry::Complex([z.re, z.im])
                }
            })
            .collect();
        Self {
            rows: m.rows(),
            cols: m.cols(),
            entries,
            split,
        }
    }

    pub fn to_matrix(&self) -> Result<Matrix, CliError> {
        let data = self.entries.iter().map(|e| e.value()).collect();
        Matrix::from_vec(self.rows, self.cols, data).map_err(|e| CliError::Parse(e.to_string()))
    }
}

/// A matrix read from disk, with the split index when the file carries one.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixFile {
    pub matrix: Matrix,
    pub split: Option<usize>,
}

pub fn parse_scalar(s: &str) -> Result<C64, CliError> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let z = C64::from_str(&compact).map_err(|_| CliError::Parse(format!("bad matrix entry `{s}`")))?;
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(CliError::Parse(format!("non-finite matrix entry `{s}`")))
    }
}

pub fn parse_csv(text: &str) -> Result<Matrix, CliError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let mut rows: Vec<Vec<C64>> = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| CliError::Parse(e.to_string()))?;
        if record.iter().all(|f| f.is_empty()) {
            continue;
        }
        rows.push(record.iter().map(parse_scalar).collect::<Result<_, _>>()?);
    }
    let cols = rows.first().map_or(0, Vec::len);
    if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != cols) {
        return Err(CliError::Parse(format!(
            "row {} has {} entries, expected {cols}",
            i + 1,
            r.len()
        )));
    }
    Ok(Matrix::from_complex_rows(&rows))
}

pub fn parse_json(text: &str) -> Result<MatrixFile, CliError> {
    let j: MatrixJson = serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
    Ok(MatrixFile {
        matrix: j.to_matrix()?,
        split: j.split,
    })
}

pub fn read_matrix(path: &Path, format: Option<Format>) -> Result<MatrixFile, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    match format.unwrap_or_else(|| Format::from_path(path)) {
        Format::Json => parse_json(&text),
        Format::Csv => Ok(MatrixFile {
            matrix: parse_csv(&text)?,
            split: None,
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Seventeen significant digits, enough to round-trip any `f64`.
    fn format_scalar(z: C64) -> String {
        if z.im == 0.0 {
            format!("{:.16e}", z.re)
        } else if z.im < 0.0 {
            format!("{:.16e}-{:.16e}i", z.re, -z.im)
        } else {
            format!("{:.16e}+{:.16e}i", z.re, z.im)
        }
    }

    fn write_csv(m: &Matrix) -> String {
        let mut out = String::new();
        for i in 0..m.rows() {
            let row: Vec<String> = (0..m.cols()).map(|j| format_scalar(m[(i, j)])).collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    #[test]
    fn scalar_grammar() {
        assert_eq!(parse_scalar("1.5").unwrap(), C64::new(1.5, 0.0));
        assert_eq!(parse_scalar(" 1 + 2i ").unwrap(), C64::new(1.0, 2.0));
        assert_eq!(parse_scalar("1-2i").unwrap(), C64::new(1.0, -2.0));
        assert_eq!(parse_scalar("-0.5e-3+1e2i").unwrap(), C64::new(-0.5e-3, 100.0));
        assert_eq!(parse_scalar("3i").unwrap(), C64::new(0.0, 3.0));
        assert!(parse_scalar("x").is_err());
        assert!(parse_scalar("inf").is_err());
    }

    #[test]
    fn scalar_round_trip() {
        for z in [
            C64::new(0.1, 0.0),
            C64::new(1.0 / 3.0, -2.0 / 7.0),
            C64::new(-1e-300, 5e300),
            C64::new(2.0, 1e-17),
        ] {
            assert_eq!(parse_scalar(&format_scalar(z)).unwrap(), z);
        }
    }

    #[test]
    fn csv_round_trip() {
        let m = Matrix::from_complex_rows(&[
            [C64::new(0.1, 0.0), C64::new(1.0 / 3.0, -1.0)],
            [C64::new(-2.5, 1e-20), C64::new(0.0, 0.0)],
        ]);
        assert_eq!(parse_csv(&write_csv(&m)).unwrap(), m);
    }

    #[test]
    fn csv_comments_and_blank_lines() {
        let m = parse_csv("# header\n1, 2\n\n3, 4\n").unwrap();
        assert_eq!(m, Matrix::from_real_rows(&[[1.0, 2.0], [3.0, 4.0]]));
        assert!(parse_csv("1,2\n3\n").is_err());
    }

    #[test]
    fn json_round_trip() {
        let m = Matrix::from_complex_rows(&[[C64::new(1.0, 0.5)], [C64::new(1.0 / 3.0, 0.0)]]);
        let text = serde_json::to_string(&MatrixJson::from_matrix(&m, Some(1))).unwrap();
        let back = parse_json(&text).unwrap();
        assert_eq!(back.matrix, m);
        assert_eq!(back.split, Some(1));
    }

    #[test]
    fn json_mixed_entries() {
        let f = parse_json(r#"{"rows": 1, "cols": 2, "entries": [1.0, [0.0, -1.0]]}"#).unwrap();
        assert_eq!(f.matrix[(0, 1)], C64::new(0.0, -1.0));
        assert_eq!(f.split, None);
        assert!(parse_json(r#"{"rows": 2, "cols": 2, "entries": [1.0]}"#).is_err());
    }
}
