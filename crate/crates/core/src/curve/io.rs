//! Curve ingestion (plain text and JSON point lists) and field dumps.

use std::io::Write;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::distance::FieldSample;
use super::{CurveKind, GeometryError};

/// JSON form `{"points": [[x, y], ...], "kind": "trig_poly" | "periodic_spline"}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointList {
    pub points: Vec<[f64; 2]>,
    #[serde(default)]
    pub kind: CurveKind,
}

impl PointList {
    pub fn complex_points(&self) -> Vec<Complex64> {
        self.points.iter().map(|p| Complex64::new(p[0], p[1])).collect()
    }
}

/// Parses `x y` pairs, one per line. Blank lines and `#` comments are skipped;
/// commas are accepted as separators.
pub fn parse_plain_points(text: &str) -> Result<Vec<Complex64>, GeometryError> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .collect();
        if fields.len() != 2 {
            return Err(GeometryError::Parse(format!(
                "line {}: expected two coordinates, got {}",
                lineno + 1,
                fields.len()
            )));
        }
        let parse = |s: &str| {
            s.parse::<f64>()
                .map_err(|e| GeometryError::Parse(format!("line {}: {s:?}: {e}", lineno + 1)))
        };
        out.push(Complex64::new(parse(fields[0])?, parse(fields[1])?));
    }
    Ok(out)
}

pub fn parse_json_points(text: &str) -> Result<PointList, GeometryError> {
    serde_json::from_str(text).map_err(|e| GeometryError::Parse(e.to_string()))
}

/// Reads a point file; `.json` files use [`PointList`], anything else the
/// plain format (with the given default kind).
pub fn read_points(path: &Path, default_kind: CurveKind) -> Result<(Vec<Complex64>, CurveKind), GeometryError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| GeometryError::Parse(format!("{}: {e}", path.display())))?;
    if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json")) {
        let list = parse_json_points(&text)?;
        Ok((list.complex_points(), list.kind))
    } else {
        Ok((parse_plain_points(&text)?, default_kind))
    }
}

/// Writes `x,y,d,nu_x,nu_y,kappa_foot` rows.
pub fn write_field_csv<W: Write>(out: W, rows: &[FieldSample]) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}
