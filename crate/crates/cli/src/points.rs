//! Point lists from CSV: one point per row, comma-separated reals, with an
//! optional header row.

use std::io::Read;
use std::path::Path;
use std::str::FromStr;

use fermat_dc::{ConvexSet, Role, Vector, WeightedSet};

use crate::error::{CliError, CliResult};

/// Shape built around every point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PointShape {
    Point,
    /// Axis-aligned square (cube) with the given half side.
    Square(f64),
}

impl FromStr for PointShape {
    type Err = String;

    /// `point`, `square:H` or `square(H)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "point" {
            return Ok(PointShape::Point);
        }
        let half = s
            .strip_prefix("square:")
            .or_else(|| s.strip_prefix("square(").and_then(|r| r.strip_suffix(')')))
            .ok_or_else(|| format!("unknown shape {s:?}, expected point or square:H"))?;
        let h: f64 = half
            .trim()
            .parse()
            .map_err(|_| format!("bad half side {half:?}"))?;
        if !(h > 0.0 && h.is_finite()) {
            return Err(format!("half side must be positive, got {h}"));
        }
        Ok(PointShape::Square(h))
    }
}

impl PointShape {
    pub fn build(&self, point: Vector) -> fermat_dc::Result<ConvexSet> {
        match self {
            PointShape::Point => ConvexSet::singleton(point),
            PointShape::Square(h) => ConvexSet::square(&point, *h),
        }
    }
}

pub fn parse_points<R: Read>(reader: R, source_name: &str) -> CliResult<Vec<Vector>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let mut points = Vec::new();
    let mut width = None;
    for (i, record) in rdr.records().enumerate() {
        let row = i as u64 + 1;
        let record = record.map_err(|e| CliError::Csv {
            source_name: source_name.to_string(),
            row,
            message: e.to_string(),
        })?;
        if record.iter().all(str::is_empty) {
            continue;
        }
        let parsed: Result<Vec<f64>, _> = record.iter().map(str::parse::<f64>).collect();
        let coords = match parsed {
            Ok(c) => c,
            Err(_) if i == 0 => continue,
            Err(_) => {
                return Err(CliError::Csv {
                    source_name: source_name.to_string(),
                    row,
                    message: format!(
                        "non-numeric field in {:?}",
                        record.iter().collect::<Vec<_>>()
                    ),
                })
            }
        };
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(CliError::Csv {
                source_name: source_name.to_string(),
                row,
                message: "coordinates must be finite".into(),
            });
        }
        match width {
            None => width = Some(coords.len()),
            Some(w) if w != coords.len() => {
                return Err(CliError::Csv {
                    source_name: source_name.to_string(),
                    row,
                    message: format!("expected {w} coordinates, found {}", coords.len()),
                })
            }
            _ => {}
        }
        points.push(Vector::from_vec(coords));
    }
    if points.is_empty() {
        return Err(CliError::Csv {
            source_name: source_name.to_string(),
            row: 0,
            message: "empty group: no points".into(),
        });
    }
    Ok(points)
}

/// Reads a point list and wraps every point in `shape` with weight `weight`.
pub fn load_points_csv(
    path: &Path,
    role: Role,
    shape: PointShape,
    weight: f64,
) -> CliResult<Vec<WeightedSet>> {
    let file = std::fs::File::open(path).map_err(|e| CliError::io(path, e))?;
    let points = parse_points(file, &path.display().to_string())?;
    wrap_points(points, role, shape, weight)
}

pub fn wrap_points(
    points: Vec<Vector>,
    role: Role,
    shape: PointShape,
    weight: f64,
) -> CliResult<Vec<WeightedSet>> {
    if !(weight > 0.0 && weight.is_finite()) {
        return Err(CliError::Validation(format!(
            "{role} weight must be positive, got {weight}"
        )));
    }
    points
        .into_iter()
        .map(|p| Ok(WeightedSet::new(shape.build(p)?, weight)))
        .collect()
}

pub fn write_points_csv(path: &Path, header: &[&str], points: &[Vector]) -> CliResult<()> {
    let mut wtr = csv::Writer::from_path(path).map_err(|e| CliError::io(path, e.into()))?;
    let io = |e: csv::Error| CliError::io(path, e.into());
    wtr.write_record(header).map_err(io)?;
    for p in points {
        wtr.write_record(p.iter().map(|c| c.to_string()))
            .map_err(io)?;
    }
    wtr.flush().map_err(|e| CliError::io(path, e))
}
