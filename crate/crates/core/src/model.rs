//! Problem instances, objective evaluation, the d.c. split and the
//! existence classifier.

use std::fmt;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::geometry::{default_tol, ConvexSet, Vector};

#[derive(Debug, Clone, PartialEq)]
pub struct WeightedSet {
    pub set: ConvexSet,
    pub weight: f64,
}

impl WeightedSet {
    pub fn new(set: ConvexSet, weight: f64) -> Self {
        WeightedSet { set, weight }
    }
}

/// `min f(x) = Σ α_i d(x; Ω_i) - Σ β_j d(x; Θ_j)` subject to `x ∈ S`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProblemInstance {
    pub dimension: usize,
    /// The sets `Ω_i` with weights `α_i`.
    pub attractions: Vec<WeightedSet>,
    /// The sets `Θ_j` with weights `β_j`; empty for a convex problem.
    pub repulsions: Vec<WeightedSet>,
    /// The constraint set `S`.
    pub constraint: ConvexSet,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    Attraction,
    Repulsion,
    Constraint,
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Role::Attraction => "attraction",
            Role::Repulsion => "repulsion",
            Role::Constraint => "constraint",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Diagnostic {
    NoAttractions,
    DimensionMismatch {
        role: Role,
        index: usize,
        expected: usize,
        found: usize,
    },
    NonPositiveWeight {
        role: Role,
        index: usize,
        weight: f64,
    },
    InvalidSet {
        role: Role,
        index: usize,
        reason: String,
    },
    /// `Ω_i ∩ S ≠ ∅`: the Weiszfeld inner solver may reach a point where its
    /// map is undefined and will fall back to subgradient steps.
    AttractionMeetsConstraint {
        index: usize,
    },
}

impl Diagnostic {
    /// Errors make the instance unusable; the rest are warnings.
    pub fn is_error(&self) -> bool {
        !matches!(self, Diagnostic::AttractionMeetsConstraint { .. })
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostic::NoAttractions => write!(f, "instance has no attraction sets"),
            Diagnostic::DimensionMismatch {
                role,
                index,
                expected,
                found,
            } => write!(
                f,
                "{role} {index} has dimension {found}, instance dimension is {expected}"
            ),
            Diagnostic::NonPositiveWeight {
                role,
                index,
                weight,
            } => write!(f, "{role} {index} has nonpositive weight {weight}"),
            Diagnostic::InvalidSet {
                role,
                index,
                reason,
            } => write!(f, "{role} {index} is invalid: {reason}"),
            Diagnostic::AttractionMeetsConstraint { index } => write!(
                f,
                "attraction {index} meets the constraint set; Weiszfeld steps may fall back to subgradient steps"
            ),
        }
    }
}

/// Values of the two convex components `g` and `h` with `f = g - h` on `S`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplitValue {
    pub g: f64,
    pub h: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Exists,
    NoSolutionUnboundedBelow,
    ObjectiveBounded,
    NoSolutionInfimumNotAttained,
    Unknown,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Exists => "exists",
            Verdict::NoSolutionUnboundedBelow => "no_solution_unbounded_below",
            Verdict::ObjectiveBounded => "objective_bounded",
            Verdict::NoSolutionInfimumNotAttained => "no_solution_infimum_not_attained",
            Verdict::Unknown => "unknown",
        }
    }
}

/// Sufficient condition that produced a verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExistenceRule {
    /// `S` bounded: continuity plus compactness.
    BoundedConstraint,
    /// `Σα > Σβ` with every `Ω_i` bounded: `f` is coercive.
    AttractionsDominate,
    /// `Σα < Σβ`, `S` unbounded, every `Θ_j` bounded: `f → -∞`.
    RepulsionsDominate,
    /// `Σα = Σβ` with all sets bounded: `|f| <= γ`.
    BalancedBounded,
    /// Points only, one repulsion carrying the full attraction weight, and
    /// `a_i - b` linearly independent: the infimum `-‖w‖` is not attained.
    BalancedIndependentPoints,
}

impl ExistenceRule {
    pub fn as_str(&self) -> &'static str {
        match self {
            ExistenceRule::BoundedConstraint => "bounded_constraint",
            ExistenceRule::AttractionsDominate => "attractions_dominate",
            ExistenceRule::RepulsionsDominate => "repulsions_dominate",
            ExistenceRule::BalancedBounded => "balanced_bounded",
            ExistenceRule::BalancedIndependentPoints => "balanced_independent_points",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExistenceReport {
    pub verdict: Verdict,
    pub rule: Option<ExistenceRule>,
    /// Bound with `|f(x)| <= γ` on all of `R^n`.
    pub gamma: Option<f64>,
    /// `Σ α_i a_i - Σ β_j b_j` for all-point instances with balanced weights.
    pub w: Option<Vector>,
    /// Index of an attraction set that must contain every solution.
    pub majority_index: Option<usize>,
    pub infimum: Option<f64>,
    pub notes: Vec<String>,
}

fn balanced(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-12 * a.abs().max(b.abs())
}

impl ProblemInstance {
    /// Builds an instance and rejects it when [`ProblemInstance::diagnostics`]
    /// reports an error.
    pub fn new(
        attractions: Vec<WeightedSet>,
        repulsions: Vec<WeightedSet>,
        constraint: ConvexSet,
    ) -> Result<Self> {
        let inst = ProblemInstance {
            dimension: constraint.dim(),
            attractions,
            repulsions,
            constraint,
        };
        let errors: Vec<String> = inst
            .diagnostics()
            .iter()
            .filter(|d| d.is_error())
            .map(ToString::to_string)
            .collect();
        if errors.is_empty() {
            Ok(inst)
        } else {
            Err(Error::InvalidInstance(errors.join("; ")))
        }
    }

    /// Lists structural problems and Weiszfeld applicability. Empty when the
    /// instance is valid and every `Ω_i` is disjoint from `S`.
    pub fn diagnostics(&self) -> Vec<Diagnostic> {
        let mut out = Vec::new();
        if self.attractions.is_empty() {
            out.push(Diagnostic::NoAttractions);
        }
        let n = self.dimension;
        let mut dims_ok = true;
        let mut check_set =
            |role: Role, index: usize, set: &ConvexSet, out: &mut Vec<Diagnostic>| {
                if set.dim() != n {
                    dims_ok = false;
                    out.push(Diagnostic::DimensionMismatch {
                        role,
                        index,
                        expected: n,
                        found: set.dim(),
                    });
                } else if let Err(e) = set.validate() {
                    dims_ok = false;
                    out.push(Diagnostic::InvalidSet {
                        role,
                        index,
                        reason: e.to_string(),
                    });
                }
            };
        check_set(Role::Constraint, 0, &self.constraint, &mut out);
        for (role, sets) in [
            (Role::Attraction, &self.attractions),
            (Role::Repulsion, &self.repulsions),
        ] {
            for (index, ws) in sets.iter().enumerate() {
                check_set(role, index, &ws.set, &mut out);
                if !(ws.weight > 0.0 && ws.weight.is_finite()) {
                    out.push(Diagnostic::NonPositiveWeight {
                        role,
                        index,
                        weight: ws.weight,
                    });
                }
            }
        }
        if dims_ok {
            for (index, ws) in self.attractions.iter().enumerate() {
                if ws.set.intersects(&self.constraint).unwrap_or(true) {
                    out.push(Diagnostic::AttractionMeetsConstraint { index });
                }
            }
        }
        out
    }

    /// True when every `Ω_i` is disjoint from `S`.
    pub fn weiszfeld_applicable(&self) -> bool {
        !self
            .diagnostics()
            .iter()
            .any(|d| matches!(d, Diagnostic::AttractionMeetsConstraint { .. }))
    }

    fn check_dim(&self, x: &Vector) -> Result<()> {
        if x.len() == self.dimension {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.dimension,
                found: x.len(),
            })
        }
    }

    pub fn attraction_weight(&self) -> f64 {
        self.attractions.iter().map(|w| w.weight).sum()
    }

    pub fn repulsion_weight(&self) -> f64 {
        self.repulsions.iter().map(|w| w.weight).sum()
    }

    /// Lipschitz constant `Σα + Σβ` of the objective.
    pub fn lipschitz(&self) -> f64 {
        self.attraction_weight() + self.repulsion_weight()
    }

    /// `Σ α_i d(x; Ω_i)`.
    pub fn attraction_sum(&self, x: &Vector) -> Result<f64> {
        self.check_dim(x)?;
        self.attractions
            .iter()
            .map(|ws| Ok(ws.weight * ws.set.distance(x)?))
            .sum()
    }

    /// `Σ β_j d(x; Θ_j)`.
    pub fn repulsion_sum(&self, x: &Vector) -> Result<f64> {
        self.check_dim(x)?;
        self.repulsions
            .iter()
            .map(|ws| Ok(ws.weight * ws.set.distance(x)?))
            .sum()
    }

    /// The objective `f(x)`, defined on all of `R^n`.
    pub fn evaluate_objective(&self, x: &Vector) -> Result<f64> {
        Ok(self.attraction_sum(x)? - self.repulsion_sum(x)?)
    }

    /// `g = Σ α_i d(x; Ω_i) + λ/2 ‖x‖² + δ(x; S)` and
    /// `h = Σ β_j d(x; Θ_j) + λ/2 ‖x‖²`. `g` is `+inf` off `S`.
    pub fn evaluate_split(&self, lambda: f64, x: &Vector) -> Result<SplitValue> {
        let quad = 0.5 * lambda * x.norm_squared();
        let h = self.repulsion_sum(x)? + quad;
        let g = if self.constraint.contains(x, default_tol(x))? {
            self.attraction_sum(x)? + quad
        } else {
            f64::INFINITY
        };
        Ok(SplitValue { g, h })
    }

    /// Applies the sufficient existence conditions in a fixed order; the first
    /// one that fires determines the verdict.
    pub fn existence_classify(&self) -> ExistenceReport {
        let sum_a = self.attraction_weight();
        let sum_b = self.repulsion_weight();
        let is_balanced = balanced(sum_a, sum_b);
        let all_points = self.attractions.iter().all(|w| w.set.is_point())
            && self.repulsions.iter().all(|w| w.set.is_point());
        let mut report = ExistenceReport {
            verdict: Verdict::Unknown,
            rule: None,
            gamma: None,
            w: None,
            majority_index: None,
            infimum: None,
            notes: Vec::new(),
        };

        if all_points && is_balanced && !self.repulsions.is_empty() {
            let mut w = Vector::zeros(self.dimension);
            for ws in &self.attractions {
                w += ws.set.representative() * ws.weight;
            }
            for ws in &self.repulsions {
                w -= ws.set.representative() * ws.weight;
            }
            report.w = Some(w);
        }
        report.majority_index = self.majority_index();

        let s_bounded = self.constraint.is_bounded();
        let omegas_bounded = self.attractions.iter().all(|w| w.set.is_bounded());
        let thetas_bounded = self.repulsions.iter().all(|w| w.set.is_bounded());

        if s_bounded {
            report.verdict = Verdict::Exists;
            report.rule = Some(ExistenceRule::BoundedConstraint);
        } else if sum_a > sum_b && !is_balanced && omegas_bounded {
            report.verdict = Verdict::Exists;
            report.rule = Some(ExistenceRule::AttractionsDominate);
        } else if sum_a < sum_b && !is_balanced && thetas_bounded {
            report.verdict = Verdict::NoSolutionUnboundedBelow;
            report.rule = Some(ExistenceRule::RepulsionsDominate);
        } else if let Some(infimum) = self.independent_points_infimum(all_points, is_balanced) {
            report.verdict = Verdict::NoSolutionInfimumNotAttained;
            report.rule = Some(ExistenceRule::BalancedIndependentPoints);
            report.infimum = Some(infimum);
        } else if is_balanced && omegas_bounded && thetas_bounded {
            report.verdict = Verdict::ObjectiveBounded;
            report.rule = Some(ExistenceRule::BalancedBounded);
            report.gamma = Some(self.balanced_bound());
        }
        if report.verdict == Verdict::Unknown {
            report
                .notes
                .push("no sufficient existence or nonexistence condition applies".into());
        }
        report
    }

    /// `γ = max{ rΣα + Σβ_j‖v_j‖, Σα_i‖u_i‖ + RΣβ }` with `u_i`, `v_j` the set
    /// representatives and `r`, `R` the bounding radii of the attraction and
    /// repulsion unions. The first term bounds `-f` and the second bounds `f`.
    /// Requires all sets bounded.
    fn balanced_bound(&self) -> f64 {
        let radius = |sets: &[WeightedSet]| {
            sets.iter()
                .filter_map(|w| w.set.bounding_radius())
                .fold(0.0f64, f64::max)
        };
        let r = radius(&self.attractions);
        let big_r = radius(&self.repulsions);
        let sum_a = self.attraction_weight();
        let sum_b = self.repulsion_weight();
        let below = r * sum_a
            + self
                .repulsions
                .iter()
                .map(|w| w.weight * w.set.representative().norm())
                .sum::<f64>();
        let above = self
            .attractions
            .iter()
            .map(|w| w.weight * w.set.representative().norm())
            .sum::<f64>()
            + big_r * sum_b;
        below.max(above)
    }

    fn independent_points_infimum(&self, all_points: bool, is_balanced: bool) -> Option<f64> {
        if !(all_points
            && is_balanced
            && self.attractions.len() >= 2
            && self.repulsions.len() == 1
            && self.constraint.is_whole_space())
        {
            return None;
        }
        let n = self.dimension;
        let p = self.attractions.len();
        if p > n {
            return None;
        }
        let b = self.repulsions[0].set.representative();
        let diffs = DMatrix::from_fn(n, p, |row, col| {
            self.attractions[col].set.representative()[row] - b[row]
        });
        let singular = diffs.svd(false, false).singular_values;
        let largest = singular.max();
        let smallest = singular.min();
        if largest == 0.0 || smallest <= 1e-9 * largest {
            return None;
        }
        let mut w = -b * self.repulsions[0].weight;
        for ws in &self.attractions {
            w += ws.set.representative() * ws.weight;
        }
        Some(-w.norm())
    }

    /// An attraction set inside `S` whose weight exceeds all other weights
    /// combined.
    fn majority_index(&self) -> Option<usize> {
        let total = self.attraction_weight() + self.repulsion_weight();
        self.attractions.iter().position(|ws| {
            ws.weight > total - ws.weight && self.constraint.contains_set(&ws.set).unwrap_or(false)
        })
    }
}
