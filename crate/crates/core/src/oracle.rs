//! Brute-force reference minimizer for small dimensions.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{default_tol, Vector};
use crate::model::ProblemInstance;

pub const DEFAULT_BUDGET: u128 = 10_000_000;
pub const MAX_DIMENSION: usize = 4;

#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    pub lower: Vector,
    pub upper: Vector,
    pub points_per_axis: usize,
    /// Maximum number of grid points.
    pub budget: u128,
}

impl GridSpec {
    pub fn new(lower: Vector, upper: Vector, points_per_axis: usize) -> Result<Self> {
        let spec = GridSpec {
            lower,
            upper,
            points_per_axis,
            budget: DEFAULT_BUDGET,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// The cube `[lo, hi]^n`.
    pub fn cube(n: usize, lo: f64, hi: f64, points_per_axis: usize) -> Result<Self> {
        Self::new(
            Vector::from_element(n, lo),
            Vector::from_element(n, hi),
            points_per_axis,
        )
    }

    pub fn validate(&self) -> Result<()> {
        if self.lower.len() != self.upper.len() {
            return Err(Error::DimensionMismatch {
                expected: self.lower.len(),
                found: self.upper.len(),
            });
        }
        if self.lower.is_empty() || self.lower.len() > MAX_DIMENSION {
            return Err(Error::InvalidConfig(format!(
                "grid dimension must be between 1 and {MAX_DIMENSION}, got {}",
                self.lower.len()
            )));
        }
        if self.points_per_axis < 2 {
            return Err(Error::InvalidConfig(
                "a grid needs at least 2 points per axis".into(),
            ));
        }
        if self
            .lower
            .iter()
            .zip(self.upper.iter())
            .any(|(l, u)| !(l < u) || !l.is_finite() || !u.is_finite())
        {
            return Err(Error::InvalidConfig(
                "grid bounds must be finite with lower < upper".into(),
            ));
        }
        let total = self.total_points();
        if total > self.budget {
            return Err(Error::BudgetExceeded {
                required: total,
                budget: self.budget,
            });
        }
        Ok(())
    }

    pub fn total_points(&self) -> u128 {
        (self.points_per_axis as u128).saturating_pow(self.lower.len() as u32)
    }

    /// Largest step along any axis.
    pub fn spacing(&self) -> f64 {
        let m = (self.points_per_axis - 1) as f64;
        self.lower
            .iter()
            .zip(self.upper.iter())
            .map(|(l, u)| (u - l) / m)
            .fold(0.0, f64::max)
    }

    /// Grid point number `index`, first coordinate varying fastest.
    pub fn point(&self, mut index: u128) -> Vector {
        let m = self.points_per_axis as u128;
        let last = (self.points_per_axis - 1) as f64;
        Vector::from_fn(self.lower.len(), |k, _| {
            let i = (index % m) as f64;
            index /= m;
            self.lower[k] + (self.upper[k] - self.lower[k]) * i / last
        })
    }

    fn contains(&self, x: &Vector, tol: f64) -> bool {
        x.iter()
            .zip(self.lower.iter().zip(self.upper.iter()))
            .all(|(&xk, (&l, &u))| xk >= l - tol && xk <= u + tol)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    pub best_x: Vector,
    pub best_value: f64,
    pub evaluations: u64,
    pub spacing: f64,
}

/// Smaller value first, then lexicographically smaller point.
fn precedes(a: &(f64, Vector), b: &(f64, Vector)) -> bool {
    match a.0.total_cmp(&b.0) {
        std::cmp::Ordering::Less => true,
        std::cmp::Ordering::Greater => false,
        std::cmp::Ordering::Equal => {
            a.1.iter()
                .zip(b.1.iter())
                .map(|(p, q)| p.total_cmp(q))
                .find(|o| o.is_ne())
                .is_some_and(|o| o.is_lt())
        }
    }
}

/// Projects every grid point onto `S`, evaluates `f` there and returns the
/// smallest value. Projections that leave the grid box are discarded.
pub fn grid_search(inst: &ProblemInstance, grid: &GridSpec) -> Result<OracleResult> {
    grid.validate()?;
    if grid.lower.len() != inst.dimension {
        return Err(Error::DimensionMismatch {
            expected: inst.dimension,
            found: grid.lower.len(),
        });
    }
    let total = grid.total_points();
    let best = (0..total as u64)
        .into_par_iter()
        .map(|i| -> Result<Option<(f64, Vector)>> {
            let p = inst.constraint.project(&grid.point(i as u128))?;
            if !grid.contains(&p, default_tol(&p)) {
                return Ok(None);
            }
            Ok(Some((inst.evaluate_objective(&p)?, p)))
        })
        .try_reduce(
            || None,
            |a, b| {
                Ok(match (a, b) {
                    (Some(a), Some(b)) => Some(if precedes(&b, &a) { b } else { a }),
                    (a, None) => a,
                    (None, b) => b,
                })
            },
        )?;
    let (best_value, best_x) = best.ok_or(Error::EmptyIntersection)?;
    Ok(OracleResult {
        best_x,
        best_value,
        evaluations: total as u64,
        spacing: grid.spacing(),
    })
}

/// Coordinate pattern search from `x0 ∈ S`. Each round moves by `±radius`
/// along the axes (projected onto `S`) while that improves `f`, then halves
/// the radius.
pub fn local_refine(
    inst: &ProblemInstance,
    x0: &Vector,
    radius: f64,
    rounds: usize,
) -> Result<OracleResult> {
    let distance = inst.constraint.distance(x0)?;
    if distance > default_tol(x0) {
        return Err(Error::NotInConstraint { distance });
    }
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::InvalidConfig(format!(
            "radius must be positive, got {radius}"
        )));
    }
    const MAX_MOVES_PER_ROUND: usize = 1000;
    let n = inst.dimension;
    let mut x = x0.clone();
    let mut value = inst.evaluate_objective(&x)?;
    let mut evaluations = 1u64;
    let mut r = radius;
    for _ in 0..rounds {
        for _ in 0..MAX_MOVES_PER_ROUND {
            let mut moved = false;
            for k in 0..n {
                for sign in [-1.0, 1.0] {
                    let mut trial = x.clone();
                    trial[k] += sign * r;
                    let trial = inst.constraint.project(&trial)?;
                    let trial_value = inst.evaluate_objective(&trial)?;
                    evaluations += 1;
                    if trial_value < value {
                        x = trial;
                        value = trial_value;
                        moved = true;
                    }
                }
            }
            if !moved {
                break;
            }
        }
        r *= 0.5;
    }
    Ok(OracleResult {
        best_x: x,
        best_value: value,
        evaluations,
        spacing: r,
    })
}
