//! One attraction, one repulsion:
//!
//! ```text
//! min f(x) = α d(x; Ω) - β d(x; Θ),   α >= β > 0, x ∈ R^n
//! ```
//!
//! Solutions are tied to the maximizers of `d(·; Θ)` over `Ω`. With `α > β`
//! the two solution sets coincide. With `α = β` and `Ω ⊄ Θ` every maximizer
//! `ū` spawns a ray `ū + t (ū - P(ū; Θ))`, `t >= 0`, of solutions.

use crate::error::{Error, Result};
use crate::geometry::{ConvexSet, Vector};

#[derive(Debug, Clone, PartialEq)]
pub struct SpecialInstance {
    pub omega: ConvexSet,
    pub theta: ConvexSet,
    pub alpha: f64,
    pub beta: f64,
}

impl SpecialInstance {
    pub fn new(omega: ConvexSet, theta: ConvexSet, alpha: f64, beta: f64) -> Result<Self> {
        omega.validate()?;
        theta.validate()?;
        if omega.dim() != theta.dim() {
            return Err(Error::DimensionMismatch {
                expected: omega.dim(),
                found: theta.dim(),
            });
        }
        if !(beta > 0.0 && beta.is_finite() && alpha >= beta && alpha.is_finite()) {
            return Err(Error::InvalidInstance(format!(
                "weights must satisfy alpha >= beta > 0, got alpha = {alpha}, beta = {beta}"
            )));
        }
        Ok(SpecialInstance {
            omega,
            theta,
            alpha,
            beta,
        })
    }

    pub fn dim(&self) -> usize {
        self.omega.dim()
    }

    pub fn balanced(&self) -> bool {
        self.alpha == self.beta
    }

    pub fn objective(&self, x: &Vector) -> Result<f64> {
        Ok(self.alpha * self.omega.distance(x)? - self.beta * self.theta.distance(x)?)
    }
}

/// Three-valued answer for questions that are decidable only for some shape
/// combinations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Decision {
    Yes,
    No,
    Undecided,
}

impl Decision {
    pub fn as_str(&self) -> &'static str {
        match self {
            Decision::Yes => "yes",
            Decision::No => "no",
            Decision::Undecided => "undecided",
        }
    }

    fn from_bool(b: bool) -> Self {
        if b {
            Decision::Yes
        } else {
            Decision::No
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PointClass {
    /// `∂h(x) ⊆ ∂g(x)`.
    pub stationary: Decision,
    /// `∂g(x) ∩ ∂h(x) ≠ ∅`.
    pub critical: Decision,
    /// An element of `∂g(x) ∩ ∂h(x)` when one was found.
    pub witness: Option<Vector>,
}

fn unit_exterior(set: &ConvexSet, x: &Vector) -> Result<Vector> {
    let diff = x - set.project(x)?;
    let norm = diff.norm();
    Ok(diff / norm)
}

/// Classifies `x` with respect to the split `g = α d(·; Ω)`, `h = β d(·; Θ)`.
/// Membership in `Ω` and `Θ` and equality of gradients are tested with `tol`.
pub fn classify_point(inst: &SpecialInstance, x: &Vector, tol: f64) -> Result<PointClass> {
    let in_omega = inst.omega.contains(x, tol)?;
    let in_theta = inst.theta.contains(x, tol)?;
    let (alpha, beta) = (inst.alpha, inst.beta);

    let class = match (in_omega, in_theta) {
        (false, false) => {
            let grad_g = unit_exterior(&inst.omega, x)? * alpha;
            let grad_h = unit_exterior(&inst.theta, x)? * beta;
            let equal = (&grad_g - &grad_h).norm() <= tol;
            PointClass {
                stationary: Decision::from_bool(equal),
                critical: Decision::from_bool(equal),
                witness: equal.then_some(grad_h),
            }
        }
        (true, false) => {
            // ∂g = α (N(x; Ω) ∩ B), ∂h = {β e_Θ}.
            let grad_h = unit_exterior(&inst.theta, x)? * beta;
            let scaled = &grad_h / alpha;
            let inside =
                scaled.norm() <= 1.0 + tol && inst.omega.normal_cone_contains(x, &scaled, tol)?;
            PointClass {
                stationary: Decision::from_bool(inside),
                critical: Decision::from_bool(inside),
                witness: inside.then_some(grad_h),
            }
        }
        (false, true) => {
            // ∂g = {α e_Ω} never contains 0 ∈ ∂h.
            let grad_g = unit_exterior(&inst.omega, x)? * alpha;
            let scaled = &grad_g / beta;
            let inside =
                scaled.norm() <= 1.0 + tol && inst.theta.normal_cone_contains(x, &scaled, tol)?;
            PointClass {
                stationary: Decision::No,
                critical: Decision::from_bool(inside),
                witness: inside.then_some(grad_g),
            }
        }
        (true, true) => {
            let stationary = if inst.omega.is_point() || inst.theta.interior_depth(x)? > tol {
                // ∂g = α B ⊇ β B, or ∂h = {0}.
                Decision::Yes
            } else if inst.theta.is_point() {
                // ∂h = β B is not inside α (N(x; Ω) ∩ B) when Ω has two points.
                Decision::No
            } else {
                Decision::Undecided
            };
            PointClass {
                stationary,
                critical: Decision::Yes,
                witness: Some(Vector::zeros(x.len())),
            }
        }
    };
    Ok(class)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ReducedMaxKind {
    /// The listed points are the exact maximizers.
    Exact,
    /// Best points of a grid with the given spacing.
    Grid { resolution: f64 },
    /// Every boundary point of the ball `Ω` is a maximizer; one is listed.
    AllBoundary,
    /// `Ω ⊆ Θ`, so every point of `Ω` is a maximizer with value 0; one is
    /// listed.
    WholeSet,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReducedMax {
    pub points: Vec<Vector>,
    pub value: f64,
    pub kind: ReducedMaxKind,
}

impl ReducedMax {
    pub fn is_unique(&self) -> Decision {
        match self.kind {
            ReducedMaxKind::Exact => Decision::from_bool(self.points.len() == 1),
            ReducedMaxKind::Grid { .. } => Decision::Undecided,
            ReducedMaxKind::AllBoundary | ReducedMaxKind::WholeSet => Decision::No,
        }
    }
}

/// Relative tolerance for ties among candidate maximizers.
const TIE_TOL: f64 = 1e-12;

/// Default grid spacing as a fraction of the bounding-box diagonal of `Ω`.
pub const DEFAULT_GRID_FRACTION: f64 = 1e-3;

const GRID_BUDGET: u128 = 10_000_000;

fn argmax(theta: &ConvexSet, candidates: Vec<Vector>) -> Result<(Vec<Vector>, f64)> {
    let values = candidates
        .iter()
        .map(|c| theta.distance(c))
        .collect::<Result<Vec<_>>>()?;
    let best = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let cut = best - TIE_TOL * (1.0 + best.abs());
    let points = candidates
        .into_iter()
        .zip(&values)
        .filter(|(_, &v)| v >= cut)
        .map(|(c, _)| c)
        .collect();
    Ok((points, best))
}

/// Maximizers of `d(·; Θ)` over `Ω`. Uses [`DEFAULT_GRID_FRACTION`] when no
/// closed form applies.
pub fn solve_reduced_max(inst: &SpecialInstance) -> Result<ReducedMax> {
    solve_reduced_max_with(inst, DEFAULT_GRID_FRACTION)
}

/// As [`solve_reduced_max`] with the grid spacing given as a fraction of the
/// bounding-box diagonal of `Ω`.
pub fn solve_reduced_max_with(inst: &SpecialInstance, grid_fraction: f64) -> Result<ReducedMax> {
    if !inst.omega.is_bounded() {
        return Err(Error::UnboundedDomain);
    }
    let theta = &inst.theta;
    let exact = |points: Vec<Vector>, value: f64| {
        let kind = if value > 0.0 {
            ReducedMaxKind::Exact
        } else {
            ReducedMaxKind::WholeSet
        };
        ReducedMax {
            points,
            value,
            kind,
        }
    };
    match &inst.omega {
        ConvexSet::Singleton { point } => {
            let value = theta.distance(point)?;
            Ok(ReducedMax {
                points: vec![point.clone()],
                value,
                kind: ReducedMaxKind::Exact,
            })
        }
        ConvexSet::AxisBox { .. } => {
            let (points, value) = argmax(theta, inst.omega.box_vertices()?)?;
            if value > 0.0 || inst.omega.is_point() {
                Ok(ReducedMax {
                    points,
                    value,
                    kind: ReducedMaxKind::Exact,
                })
            } else {
                Ok(exact(points, value))
            }
        }
        ConvexSet::Ball { center, radius } => {
            let n = center.len();
            if n == 1 {
                let candidates = vec![center.add_scalar(-radius), center.add_scalar(*radius)];
                let (points, value) = argmax(theta, candidates)?;
                return Ok(if value > 0.0 {
                    ReducedMax {
                        points,
                        value,
                        kind: ReducedMaxKind::Exact,
                    }
                } else {
                    exact(vec![center.clone()], value)
                });
            }
            // Farthest point of the ball from a reference point.
            let antipodal = |b: &Vector| -> Option<Vector> {
                let diff = center - b;
                let norm = diff.norm();
                (norm > 0.0).then(|| center + diff * (*radius / norm))
            };
            let closed_form = match theta {
                ConvexSet::Singleton { point } => Some(antipodal(point)),
                ConvexSet::Ball { center: c, .. } => Some(antipodal(c)),
                ConvexSet::Halfspace { normal, .. } => {
                    Some(Some(center + normal * (*radius / normal.norm())))
                }
                ConvexSet::AxisBox { .. } => None,
            };
            match closed_form {
                Some(Some(u)) => {
                    let value = theta.distance(&u)?;
                    Ok(if value > 0.0 {
                        ReducedMax {
                            points: vec![u],
                            value,
                            kind: ReducedMaxKind::Exact,
                        }
                    } else {
                        exact(vec![center.clone()], value)
                    })
                }
                Some(None) => {
                    // Concentric with Θ: all boundary points tie.
                    let mut u = center.clone();
                    u[0] += radius;
                    let value = theta.distance(&u)?;
                    Ok(if value > 0.0 {
                        ReducedMax {
                            points: vec![u],
                            value,
                            kind: ReducedMaxKind::AllBoundary,
                        }
                    } else {
                        exact(vec![center.clone()], value)
                    })
                }
                None => grid_reduced_max(inst, grid_fraction),
            }
        }
        ConvexSet::Halfspace { .. } => Err(Error::UnboundedDomain),
    }
}

fn grid_reduced_max(inst: &SpecialInstance, grid_fraction: f64) -> Result<ReducedMax> {
    let n = inst.dim();
    let bounds = inst.omega.coordinate_bounds();
    let lo: Vec<f64> = bounds.iter().map(|b| b.0.unwrap_or(0.0)).collect();
    let hi: Vec<f64> = bounds.iter().map(|b| b.1.unwrap_or(0.0)).collect();
    let diagonal = lo
        .iter()
        .zip(&hi)
        .map(|(l, h)| (h - l).powi(2))
        .sum::<f64>()
        .sqrt();
    let resolution = grid_fraction * diagonal;
    let per_axis: Vec<usize> = lo
        .iter()
        .zip(&hi)
        .map(|(l, h)| ((h - l) / resolution).ceil() as usize + 1)
        .collect();
    let total: u128 = per_axis.iter().map(|&m| m as u128).product();
    if total > GRID_BUDGET {
        return Err(Error::BudgetExceeded {
            required: total,
            budget: GRID_BUDGET,
        });
    }
    let mut best: Option<(f64, Vector)> = None;
    let mut index = vec![0usize; n];
    for _ in 0..total {
        let raw = Vector::from_fn(n, |k, _| {
            if per_axis[k] > 1 {
                lo[k] + (hi[k] - lo[k]) * index[k] as f64 / (per_axis[k] - 1) as f64
            } else {
                lo[k]
            }
        });
        let p = inst.omega.project(&raw)?;
        let value = inst.theta.distance(&p)?;
        if best.as_ref().is_none_or(|(b, _)| value > *b) {
            best = Some((value, p));
        }
        for k in 0..n {
            index[k] += 1;
            if index[k] < per_axis[k] {
                break;
            }
            index[k] = 0;
        }
    }
    let (value, point) = best.expect("grid has at least one point");
    Ok(ReducedMax {
        points: vec![point],
        value,
        kind: ReducedMaxKind::Grid { resolution },
    })
}

/// `{base + t · direction : t >= 0}`.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionRay {
    pub base: Vector,
    pub direction: Vector,
}

impl SolutionRay {
    pub fn at(&self, t: f64) -> Vector {
        &self.base + &self.direction * t
    }
}

/// One ray `ū + t (ū - P(ū; Θ))` per reduced maximizer `ū`. Requires `α = β`
/// and some `ū` outside `Θ` (otherwise `Ω ⊆ Θ`).
pub fn solution_rays(inst: &SpecialInstance, s2: &[Vector]) -> Result<Vec<SolutionRay>> {
    if !inst.balanced() {
        return Err(Error::PreconditionViolated(format!(
            "solution rays need alpha = beta, got {} and {}",
            inst.alpha, inst.beta
        )));
    }
    let mut outside = false;
    let rays = s2
        .iter()
        .map(|u| {
            let p = inst.theta.project(u)?;
            outside |= (u - &p).norm() > 0.0;
            Ok(SolutionRay {
                base: u.clone(),
                direction: u - p,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    if !outside {
        return Err(Error::PreconditionViolated(
            "omega is contained in theta".into(),
        ));
    }
    Ok(rays)
}

#[derive(Debug, Clone, PartialEq)]
pub enum SpecialSolution {
    /// The solution set equals the reduced maximizers.
    ReducedEquivalent(ReducedMax),
    /// The solution set contains these rays.
    RayFamily(Vec<SolutionRay>),
}

pub fn solve_special(inst: &SpecialInstance) -> Result<SpecialSolution> {
    let reduced = solve_reduced_max(inst)?;
    if inst.balanced() && reduced.value > 0.0 {
        Ok(SpecialSolution::RayFamily(solution_rays(
            inst,
            &reduced.points,
        )?))
    } else {
        Ok(SpecialSolution::ReducedEquivalent(reduced))
    }
}

/// Whether the problem has exactly one solution. With `α > β` this is
/// uniqueness of the reduced maximizer; with `α = β` it holds iff `Ω` is a
/// single point in the interior of `Θ`.
pub fn uniqueness_check(inst: &SpecialInstance, tol: f64) -> Decision {
    if inst.balanced() {
        if !inst.omega.is_point() {
            return Decision::No;
        }
        let u = inst.omega.representative();
        match inst.theta.interior_depth(&u) {
            Ok(depth) => Decision::from_bool(depth > tol),
            Err(_) => Decision::Undecided,
        }
    } else {
        match solve_reduced_max(inst) {
            Ok(reduced) => reduced.is_unique(),
            Err(_) => Decision::Undecided,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::vector;
    use approx::assert_abs_diff_eq;

    fn segment(lo: f64, hi: f64) -> ConvexSet {
        ConvexSet::axis_box(vec![0.0, lo], vec![0.0, hi]).unwrap()
    }

    fn point(c: &[f64]) -> ConvexSet {
        ConvexSet::singleton(vector(c)).unwrap()
    }

    fn example_4_9(alpha: f64) -> SpecialInstance {
        SpecialInstance::new(segment(-2.0, 2.0), point(&[1.0, 0.0]), alpha, 1.0).unwrap()
    }

    fn sorted(mut pts: Vec<Vector>) -> Vec<Vector> {
        pts.sort_by(|a, b| {
            a.iter()
                .zip(b.iter())
                .map(|(p, q)| p.total_cmp(q))
                .find(|o| o.is_ne())
                .unwrap_or(std::cmp::Ordering::Equal)
        });
        pts
    }

    #[test]
    fn rejects_bad_weights() {
        assert!(SpecialInstance::new(segment(-1.0, 1.0), point(&[1.0, 0.0]), 1.0, 2.0).is_err());
        assert!(SpecialInstance::new(segment(-1.0, 1.0), point(&[1.0, 0.0]), 1.0, 0.0).is_err());
        assert!(SpecialInstance::new(segment(-1.0, 1.0), point(&[1.0]), 1.0, 1.0).is_err());
    }

    #[test]
    fn classify_probe_points() {
        let inst = example_4_9(1.0);
        let tol = 1e-9;
        let cls = |c: &[f64]| classify_point(&inst, &vector(c), tol).unwrap();

        let c = cls(&[-2.0, 0.0]);
        assert_eq!((c.stationary, c.critical), (Decision::Yes, Decision::Yes));
        let c = cls(&[2.0, 0.0]);
        assert_eq!((c.stationary, c.critical), (Decision::Yes, Decision::Yes));
        let c = cls(&[1.0, 0.0]);
        assert_eq!((c.stationary, c.critical), (Decision::No, Decision::Yes));
        assert_abs_diff_eq!(c.witness.unwrap(), vector(&[1.0, 0.0]), epsilon = 1e-15);
        let c = cls(&[0.5, 0.5]);
        assert_eq!((c.stationary, c.critical), (Decision::No, Decision::No));
        let c = cls(&[-1.0, -4.0]);
        assert_eq!((c.stationary, c.critical), (Decision::Yes, Decision::Yes));
        let c = cls(&[0.0, 0.0]);
        assert_eq!((c.stationary, c.critical), (Decision::Yes, Decision::Yes));
        // (0, 1) lies in Ω but e_Θ = (-1, 1)/√2 is not normal to the segment there.
        let c = cls(&[0.0, 1.0]);
        assert_eq!((c.stationary, c.critical), (Decision::No, Decision::No));
    }

    #[test]
    fn classify_on_both_sets() {
        let ball = ConvexSet::ball(vector(&[0.0, 0.0]), 2.0).unwrap();
        let inst = SpecialInstance::new(point(&[0.0, 0.0]), ball.clone(), 1.0, 1.0).unwrap();
        let c = classify_point(&inst, &vector(&[0.0, 0.0]), 1e-9).unwrap();
        assert_eq!((c.stationary, c.critical), (Decision::Yes, Decision::Yes));

        let inst = SpecialInstance::new(segment(-1.0, 1.0), point(&[0.0, 0.0]), 1.0, 1.0).unwrap();
        let c = classify_point(&inst, &vector(&[0.0, 0.0]), 1e-9).unwrap();
        assert_eq!(c.stationary, Decision::No);
        assert_eq!(c.critical, Decision::Yes);

        let inst = SpecialInstance::new(segment(-1.0, 1.0), segment(0.0, 3.0), 1.0, 1.0).unwrap();
        let c = classify_point(&inst, &vector(&[0.0, 0.0]), 1e-9).unwrap();
        assert_eq!(c.stationary, Decision::Undecided);
    }

    #[test]
    fn reduced_max_examples() {
        let r = solve_reduced_max(&example_4_9(1.0)).unwrap();
        assert_eq!(r.kind, ReducedMaxKind::Exact);
        assert_eq!(
            sorted(r.points),
            vec![vector(&[0.0, -2.0]), vector(&[0.0, 2.0])]
        );
        assert_abs_diff_eq!(r.value, 5f64.sqrt(), epsilon = 1e-15);

        let inst = SpecialInstance::new(segment(-2.0, 1.0), point(&[1.0, 0.0]), 1.0, 1.0).unwrap();
        assert_eq!(
            solve_reduced_max(&inst).unwrap().points,
            vec![vector(&[0.0, -2.0])]
        );

        let inst = SpecialInstance::new(
            ConvexSet::ball(vector(&[0.0, 0.0]), 1.0).unwrap(),
            point(&[3.0, 0.0]),
            1.0,
            1.0,
        )
        .unwrap();
        let r = solve_reduced_max(&inst).unwrap();
        assert_abs_diff_eq!(r.points[0], vector(&[-1.0, 0.0]), epsilon = 1e-15);
    }

    #[test]
    fn reduced_max_special_cases() {
        let unbounded = SpecialInstance::new(
            ConvexSet::halfspace(vector(&[1.0, 0.0]), 0.0).unwrap(),
            point(&[1.0, 0.0]),
            1.0,
            1.0,
        )
        .unwrap();
        assert!(matches!(
            solve_reduced_max(&unbounded),
            Err(Error::UnboundedDomain)
        ));

        let concentric = SpecialInstance::new(
            ConvexSet::ball(vector(&[0.0, 0.0]), 1.0).unwrap(),
            point(&[0.0, 0.0]),
            2.0,
            1.0,
        )
        .unwrap();
        let r = solve_reduced_max(&concentric).unwrap();
        assert_eq!(r.kind, ReducedMaxKind::AllBoundary);
        assert_eq!(uniqueness_check(&concentric, 1e-9), Decision::No);

        // Ball against a box: no closed form.
        let gridded = SpecialInstance::new(
            ConvexSet::ball(vector(&[0.0, 0.0]), 1.0).unwrap(),
            ConvexSet::axis_box(vec![2.0, -1.0], vec![3.0, 1.0]).unwrap(),
            2.0,
            1.0,
        )
        .unwrap();
        let r = solve_reduced_max(&gridded).unwrap();
        let ReducedMaxKind::Grid { resolution } = r.kind else {
            panic!("expected grid kind, got {:?}", r.kind);
        };
        assert!(resolution > 0.0 && resolution < 3e-3);
        assert_abs_diff_eq!(
            r.points[0],
            vector(&[-1.0, 0.0]),
            epsilon = 2.0 * resolution
        );
        assert_eq!(uniqueness_check(&gridded, 1e-9), Decision::Undecided);
    }

    #[test]
    fn rays_of_the_worked_examples() {
        let inst = example_4_9(1.0);
        let s2 = sorted(solve_reduced_max(&inst).unwrap().points);
        let rays = solution_rays(&inst, &s2).unwrap();
        assert_eq!(rays[0].direction, vector(&[-1.0, -2.0]));
        assert_eq!(rays[1].direction, vector(&[-1.0, 2.0]));

        let inst = SpecialInstance::new(
            segment(-2.0, 2.0),
            ConvexSet::axis_box(vec![1.0, -1.0], vec![1.0, 1.0]).unwrap(),
            1.0,
            1.0,
        )
        .unwrap();
        let s2 = sorted(solve_reduced_max(&inst).unwrap().points);
        let rays = solution_rays(&inst, &s2).unwrap();
        assert_eq!(rays[0].base, vector(&[0.0, -2.0]));
        assert_eq!(rays[0].direction, vector(&[-1.0, -1.0]));
        assert_eq!(rays[1].base, vector(&[0.0, 2.0]));
        assert_eq!(rays[1].direction, vector(&[-1.0, 1.0]));

        for ray in &rays {
            let expected = -inst.beta * inst.theta.distance(&ray.base).unwrap();
            for t in [0.0, 0.5, 1.0, 5.0] {
                assert_abs_diff_eq!(
                    inst.objective(&ray.at(t)).unwrap(),
                    expected,
                    epsilon = 1e-9
                );
            }
        }
    }

    #[test]
    fn ray_preconditions() {
        assert!(matches!(
            solution_rays(&example_4_9(2.0), &[vector(&[0.0, 2.0])]),
            Err(Error::PreconditionViolated(_))
        ));
        let inside = SpecialInstance::new(
            point(&[0.0, 0.0]),
            ConvexSet::ball(vector(&[0.0, 0.0]), 2.0).unwrap(),
            1.0,
            1.0,
        )
        .unwrap();
        assert!(matches!(
            solution_rays(&inside, &[vector(&[0.0, 0.0])]),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn special_solutions() {
        match solve_special(&example_4_9(2.0)).unwrap() {
            SpecialSolution::ReducedEquivalent(r) => assert_eq!(r.points.len(), 2),
            other => panic!("unexpected {other:?}"),
        }
        match solve_special(&example_4_9(1.0)).unwrap() {
            SpecialSolution::RayFamily(rays) => assert_eq!(rays.len(), 2),
            other => panic!("unexpected {other:?}"),
        }
        let inside = SpecialInstance::new(
            point(&[0.5, 0.0]),
            ConvexSet::ball(vector(&[0.0, 0.0]), 2.0).unwrap(),
            1.0,
            1.0,
        )
        .unwrap();
        match solve_special(&inside).unwrap() {
            SpecialSolution::ReducedEquivalent(r) => {
                assert_eq!(r.points, vec![vector(&[0.5, 0.0])])
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn uniqueness_examples() {
        let ball = ConvexSet::ball(vector(&[0.0, 0.0]), 2.0).unwrap();
        let center = SpecialInstance::new(point(&[0.0, 0.0]), ball.clone(), 1.0, 1.0).unwrap();
        assert_eq!(uniqueness_check(&center, 1e-9), Decision::Yes);
        let rim = SpecialInstance::new(point(&[2.0, 0.0]), ball, 1.0, 1.0).unwrap();
        assert_eq!(uniqueness_check(&rim, 1e-9), Decision::No);
        assert_eq!(uniqueness_check(&example_4_9(2.0), 1e-9), Decision::No);
        let single =
            SpecialInstance::new(segment(-2.0, 1.0), point(&[1.0, 0.0]), 2.0, 1.0).unwrap();
        assert_eq!(uniqueness_check(&single, 1e-9), Decision::Yes);
    }
}
