//! JSON instance documents.
//!
//! ```json
//! {
//!   "dimension": 2,
//!   "attractions": [{ "shape": { "kind": "point", "at": [1, 0] }, "weight": 1 }],
//!   "repulsions": [{ "shape": { "kind": "ball", "center": [0, 0], "radius": 1 }, "weight": 1 }],
//!   "constraint": { "kind": "box", "lower": ["-inf", 0], "upper": ["inf", 0] }
//! }
//! ```
//!
//! Box bounds are numbers or the strings `"inf"` and `"-inf"`. Halfspaces are
//! `{ "kind": "halfspace", "normal": [..], "offset": b }` for `<normal, x> <= b`.

use std::path::Path;

use fermat_dc::{ConvexSet, ProblemInstance, Role, Vector, WeightedSet};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Bound {
    Finite(f64),
    Text(String),
}

impl Bound {
    fn from_f64(b: f64) -> Self {
        if b == f64::INFINITY {
            Bound::Text("inf".into())
        } else if b == f64::NEG_INFINITY {
            Bound::Text("-inf".into())
        } else {
            Bound::Finite(b)
        }
    }

    fn to_f64(&self) -> Result<f64, String> {
        match self {
            Bound::Finite(b) => Ok(*b),
            Bound::Text(t) => match t.as_str() {
                "inf" | "+inf" => Ok(f64::INFINITY),
                "-inf" => Ok(f64::NEG_INFINITY),
                other => Err(format!(
                    "box bound must be a number, \"inf\" or \"-inf\", got {other:?}"
                )),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ShapeDoc {
    Point {
        at: Vec<f64>,
    },
    Ball {
        center: Vec<f64>,
        radius: f64,
    },
    Box {
        lower: Vec<Bound>,
        upper: Vec<Bound>,
    },
    Halfspace {
        normal: Vec<f64>,
        offset: f64,
    },
}

impl ShapeDoc {
    pub fn from_set(set: &ConvexSet) -> Self {
        let v = |x: &Vector| x.iter().copied().collect::<Vec<_>>();
        match set {
            ConvexSet::Singleton { point } => ShapeDoc::Point { at: v(point) },
            ConvexSet::Ball { center, radius } => ShapeDoc::Ball {
                center: v(center),
                radius: *radius,
            },
            ConvexSet::AxisBox { lower, upper } => ShapeDoc::Box {
                lower: lower.iter().map(|&b| Bound::from_f64(b)).collect(),
                upper: upper.iter().map(|&b| Bound::from_f64(b)).collect(),
            },
            ConvexSet::Halfspace { normal, offset } => ShapeDoc::Halfspace {
                normal: v(normal),
                offset: *offset,
            },
        }
    }

    pub fn to_set(&self) -> Result<ConvexSet, String> {
        let set = match self {
            ShapeDoc::Point { at } => ConvexSet::singleton(Vector::from_column_slice(at)),
            ShapeDoc::Ball { center, radius } => {
                ConvexSet::ball(Vector::from_column_slice(center), *radius)
            }
            ShapeDoc::Box { lower, upper } => {
                let lower = lower
                    .iter()
                    .map(Bound::to_f64)
                    .collect::<Result<Vec<_>, _>>()?;
                let upper = upper
                    .iter()
                    .map(Bound::to_f64)
                    .collect::<Result<Vec<_>, _>>()?;
                ConvexSet::axis_box(lower, upper)
            }
            ShapeDoc::Halfspace { normal, offset } => {
                ConvexSet::halfspace(Vector::from_column_slice(normal), *offset)
            }
        };
        set.map_err(|e| e.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightedDoc {
    pub shape: ShapeDoc,
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceDoc {
    pub dimension: usize,
    pub attractions: Vec<WeightedDoc>,
    #[serde(default)]
    pub repulsions: Vec<WeightedDoc>,
    pub constraint: ShapeDoc,
}

impl InstanceDoc {
    pub fn from_instance(inst: &ProblemInstance) -> Self {
        let weighted = |sets: &[WeightedSet]| {
            sets.iter()
                .map(|ws| WeightedDoc {
                    shape: ShapeDoc::from_set(&ws.set),
                    weight: ws.weight,
                })
                .collect()
        };
        InstanceDoc {
            dimension: inst.dimension,
            attractions: weighted(&inst.attractions),
            repulsions: weighted(&inst.repulsions),
            constraint: ShapeDoc::from_set(&inst.constraint),
        }
    }

    pub fn to_instance(&self) -> CliResult<ProblemInstance> {
        let n = self.dimension;
        let convert = |role: Role, index: usize, shape: &ShapeDoc| -> CliResult<ConvexSet> {
            let set = shape
                .to_set()
                .map_err(|e| CliError::Validation(format!("{role} {index}: {e}")))?;
            if set.dim() != n {
                return Err(CliError::Validation(format!(
                    "{role} {index}: dimension {}, expected {n}",
                    set.dim()
                )));
            }
            Ok(set)
        };
        let weighted = |role: Role, docs: &[WeightedDoc]| -> CliResult<Vec<WeightedSet>> {
            docs.iter()
                .enumerate()
                .map(|(i, d)| Ok(WeightedSet::new(convert(role, i, &d.shape)?, d.weight)))
                .collect()
        };
        let attractions = weighted(Role::Attraction, &self.attractions)?;
        let repulsions = weighted(Role::Repulsion, &self.repulsions)?;
        let constraint = convert(Role::Constraint, 0, &self.constraint)?;
        ProblemInstance::new(attractions, repulsions, constraint)
            .map_err(|e| CliError::Validation(e.to_string()))
    }
}

pub fn parse_instance(text: &str, source_name: &str) -> CliResult<ProblemInstance> {
    let doc: InstanceDoc = serde_json::from_str(text).map_err(|e| CliError::Parse {
        source_name: source_name.to_string(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    doc.to_instance()
}

pub fn load_instance(path: &Path) -> CliResult<ProblemInstance> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_instance(&text, &path.display().to_string())
}

pub fn write_instance(inst: &ProblemInstance) -> String {
    let mut text = serde_json::to_string_pretty(&InstanceDoc::from_instance(inst))
        .expect("instance documents always serialize");
    text.push('\n');
    text
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXAMPLE: &str = r#"{
        "dimension": 2,
        "attractions": [{"shape": {"kind": "box", "lower": ["-inf", 0], "upper": ["inf", 0]}, "weight": 1}],
        "repulsions": [
            {"shape": {"kind": "halfspace", "normal": [0, 1], "offset": -1}, "weight": 1},
            {"shape": {"kind": "halfspace", "normal": [0, -1], "offset": -1}, "weight": 1}
        ],
        "constraint": {"kind": "ball", "center": [0, 0], "radius": 10}
    }"#;

    #[test]
    fn parses_and_round_trips() {
        let inst = parse_instance(EXAMPLE, "example").unwrap();
        assert_eq!(inst.dimension, 2);
        assert_eq!(inst.attractions.len(), 1);
        assert_eq!(inst.repulsions.len(), 2);
        let again = parse_instance(&write_instance(&inst), "written").unwrap();
        assert_eq!(again, inst);
    }

    #[test]
    fn rejects_bad_weight_and_dimension() {
        let bad_weight = EXAMPLE.replacen("\"weight\": 1", "\"weight\": -1", 1);
        assert!(matches!(
            parse_instance(&bad_weight, "w"),
            Err(CliError::Validation(_))
        ));
        let bad_dim = EXAMPLE.replace("[0, 0]", "[0, 0, 0]");
        assert!(matches!(
            parse_instance(&bad_dim, "d"),
            Err(CliError::Validation(_))
        ));
    }

    #[test]
    fn reports_parse_location() {
        let err = parse_instance("{\n  \"dimension\": 2,\n  \"attractions\": [}\n", "broken")
            .unwrap_err();
        let CliError::Parse { line, .. } = err else {
            panic!("expected a parse error, got {err}");
        };
        assert_eq!(line, 3);
        let err = parse_instance(&EXAMPLE.replace("\"-inf\"", "\"minus\""), "bound").unwrap_err();
        assert!(err.to_string().contains("minus"));
    }
}
