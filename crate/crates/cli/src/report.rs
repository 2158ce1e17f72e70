//! Report documents written by the commands, and the trajectory CSV.

use std::path::Path;

use fermat_dc::analysis::{Decision, PointClass, ReducedMax, ReducedMaxKind, SpecialSolution};
use fermat_dc::dca::{MultiStartReport, TrajectoryPoint};
use fermat_dc::oracle::OracleResult;
use fermat_dc::{ExistenceReport, Vector};
use serde::Serialize;

use crate::error::{CliError, CliResult};

/// Names the generator behind every random start.
pub const PRNG: &str = "chacha8 seeded with --seed, stream = start index";

fn coords(x: &Vector) -> Vec<f64> {
    x.iter().copied().collect()
}

#[derive(Debug, Serialize)]
pub struct StartDoc {
    pub index: usize,
    pub x0: Vec<f64>,
    pub final_x: Vec<f64>,
    pub final_value: f64,
    pub outer_iterations: usize,
    pub criticality_residual: f64,
}

#[derive(Debug, Serialize)]
pub struct SolveDoc {
    pub final_x: Vec<f64>,
    pub final_value: f64,
    pub outer_iterations: usize,
    pub termination: &'static str,
    pub criticality_residual: f64,
    pub inner_methods_used: Vec<&'static str>,
    pub seed: u64,
    pub prng: &'static str,
    pub best_start: usize,
    pub starts: Vec<StartDoc>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub existence: Option<ExistenceDoc>,
}

impl SolveDoc {
    pub fn new(
        ms: &MultiStartReport,
        warnings: Vec<String>,
        existence: Option<ExistenceDoc>,
    ) -> Self {
        let best = &ms.best().report;
        SolveDoc {
            final_x: coords(&best.final_x),
            final_value: best.final_value,
            outer_iterations: best.outer_iterations,
            termination: best.termination.as_str(),
            criticality_residual: best.criticality_residual,
            inner_methods_used: best.inner_methods_used.iter().map(|m| m.as_str()).collect(),
            seed: ms.seed,
            prng: PRNG,
            best_start: ms.best_index,
            starts: ms
                .outcomes
                .iter()
                .map(|o| StartDoc {
                    index: o.index,
                    x0: coords(&o.x0),
                    final_x: coords(&o.report.final_x),
                    final_value: o.report.final_value,
                    outer_iterations: o.report.outer_iterations,
                    criticality_residual: o.report.criticality_residual,
                })
                .collect(),
            warnings,
            existence,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ExistenceDoc {
    pub verdict: &'static str,
    pub rule: Option<&'static str>,
    pub gamma: Option<f64>,
    pub w: Option<Vec<f64>>,
    pub majority_index: Option<usize>,
    pub infimum: Option<f64>,
    pub notes: Vec<String>,
}

impl From<&ExistenceReport> for ExistenceDoc {
    fn from(r: &ExistenceReport) -> Self {
        ExistenceDoc {
            verdict: r.verdict.as_str(),
            rule: r.rule.map(|rule| rule.as_str()),
            gamma: r.gamma,
            w: r.w.as_ref().map(coords),
            majority_index: r.majority_index,
            infimum: r.infimum,
            notes: r.notes.clone(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct RayDoc {
    pub base: Vec<f64>,
    pub direction: Vec<f64>,
}

#[derive(Debug, Serialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum SolutionsDoc {
    ReducedEquivalent {
        points: Vec<Vec<f64>>,
        kind: &'static str,
        #[serde(skip_serializing_if = "Option::is_none")]
        grid_resolution: Option<f64>,
    },
    RayFamily {
        rays: Vec<RayDoc>,
    },
}

fn reduced_doc(r: &ReducedMax) -> SolutionsDoc {
    let (kind, grid_resolution) = match r.kind {
        ReducedMaxKind::Exact => ("exact", None),
        ReducedMaxKind::Grid { resolution } => ("grid", Some(resolution)),
        ReducedMaxKind::AllBoundary => ("all_boundary", None),
        ReducedMaxKind::WholeSet => ("whole_set", None),
    };
    SolutionsDoc::ReducedEquivalent {
        points: r.points.iter().map(coords).collect(),
        kind,
        grid_resolution,
    }
}

impl From<&SpecialSolution> for SolutionsDoc {
    fn from(s: &SpecialSolution) -> Self {
        match s {
            SpecialSolution::ReducedEquivalent(r) => reduced_doc(r),
            SpecialSolution::RayFamily(rays) => SolutionsDoc::RayFamily {
                rays: rays
                    .iter()
                    .map(|r| RayDoc {
                        base: coords(&r.base),
                        direction: coords(&r.direction),
                    })
                    .collect(),
            },
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ClassifyDoc {
    pub x: Vec<f64>,
    pub stationary: &'static str,
    pub critical: &'static str,
    pub witness: Option<Vec<f64>>,
    pub unique_solution: &'static str,
    pub solutions: Option<SolutionsDoc>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl ClassifyDoc {
    pub fn new(
        x: &Vector,
        class: &PointClass,
        unique: Decision,
        solutions: Option<SolutionsDoc>,
        notes: Vec<String>,
    ) -> Self {
        ClassifyDoc {
            x: coords(x),
            stationary: class.stationary.as_str(),
            critical: class.critical.as_str(),
            witness: class.witness.as_ref().map(coords),
            unique_solution: unique.as_str(),
            solutions,
            notes,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct OracleDoc {
    pub best_x: Vec<f64>,
    pub best_value: f64,
    pub evaluations: u64,
    pub spacing: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub refined: Option<Box<OracleDoc>>,
}

impl From<&OracleResult> for OracleDoc {
    fn from(r: &OracleResult) -> Self {
        OracleDoc {
            best_x: coords(&r.best_x),
            best_value: r.best_value,
            evaluations: r.evaluations,
            spacing: r.spacing,
            refined: None,
        }
    }
}

pub fn to_json<T: Serialize>(doc: &T) -> String {
    let mut text = serde_json::to_string_pretty(doc).expect("report documents always serialize");
    text.push('\n');
    text
}

/// Columns `k, x_1, ..., x_n, f, step_norm`.
pub fn write_trajectory_csv(path: &Path, trajectory: &[TrajectoryPoint]) -> CliResult<()> {
    let io = |e: csv::Error| CliError::io(path, e.into());
    let mut wtr = csv::Writer::from_path(path).map_err(io)?;
    let n = trajectory.first().map_or(0, |p| p.x.len());
    let mut header = vec!["k".to_string()];
    header.extend((1..=n).map(|i| format!("x_{i}")));
    header.extend(["f".to_string(), "step_norm".to_string()]);
    wtr.write_record(&header).map_err(io)?;
    for p in trajectory {
        let mut row = vec![p.k.to_string()];
        row.extend(p.x.iter().map(|c| c.to_string()));
        row.extend([p.f_value.to_string(), p.step_norm.to_string()]);
        wtr.write_record(&row).map_err(io)?;
    }
    wtr.flush().map_err(|e| CliError::io(path, e))
}
