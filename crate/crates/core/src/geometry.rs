//! Closed convex sets with closed-form projections.
//!
//! Every set in this module is one of four shapes: a point, a Euclidean ball,
//! an axis-aligned box whose bounds may be infinite, or a halfspace
//! `{x : <normal, x> <= offset}`. Degenerate box faces (`lower == upper`)
//! encode segments, lines and points, so sets such as `R x {0}` or
//! `{0} x [-2, 2]` are boxes.
//!
//! Distances and projections are exact up to floating point rounding. The
//! subdifferential of `d(.; Q)` is the unit exterior direction off the set and
//! `N(x; Q) ∩ B` on it.

use nalgebra::DVector;

use crate::error::{Error, Result};

pub type Vector = DVector<f64>;

/// Scale-aware membership tolerance `1e-9 * (1 + ‖x‖)`.
pub fn default_tol(x: &Vector) -> f64 {
    1e-9 * (1.0 + x.norm())
}

/// Builds a vector from a slice.
pub fn vector(coords: &[f64]) -> Vector {
    Vector::from_column_slice(coords)
}

#[derive(Debug, Clone, PartialEq)]
pub enum ConvexSet {
    Singleton {
        point: Vector,
    },
    Ball {
        center: Vector,
        radius: f64,
    },
    /// Componentwise bounds; `-inf` / `+inf` are allowed.
    AxisBox {
        lower: Vec<f64>,
        upper: Vec<f64>,
    },
    /// The halfspace `{x : <normal, x> <= offset}`.
    Halfspace {
        normal: Vector,
        offset: f64,
    },
}

/// Element of `∂d(x; Q)` as described by the distance subdifferential formula.
#[derive(Debug, Clone, PartialEq)]
pub enum DistanceSubgradient<'a> {
    /// `x` is off the set: the subdifferential is the single unit vector
    /// `(x - P(x; Q)) / d(x; Q)`.
    Exterior(Vector),
    /// `x` is on the set: the subdifferential is `N(x; Q) ∩ B`. Zero always
    /// belongs to it; other candidates can be tested with
    /// [`ConvexSet::normal_cone_contains`].
    OnSet(&'a ConvexSet),
}

impl DistanceSubgradient<'_> {
    /// The exterior gradient, or the zero selection on the set.
    pub fn selection(&self, dim: usize) -> Vector {
        match self {
            DistanceSubgradient::Exterior(g) => g.clone(),
            DistanceSubgradient::OnSet(_) => Vector::zeros(dim),
        }
    }
}

fn finite_vec(v: &Vector, what: &str) -> Result<()> {
    if v.iter().all(|c| c.is_finite()) {
        Ok(())
    } else {
        Err(Error::InvalidSet(format!("{what} has non-finite entries")))
    }
}

impl ConvexSet {
    pub fn singleton(point: Vector) -> Result<Self> {
        let set = ConvexSet::Singleton { point };
        set.validate()?;
        Ok(set)
    }

    pub fn ball(center: Vector, radius: f64) -> Result<Self> {
        let set = ConvexSet::Ball { center, radius };
        set.validate()?;
        Ok(set)
    }

    pub fn axis_box(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        let set = ConvexSet::AxisBox { lower, upper };
        set.validate()?;
        Ok(set)
    }

    pub fn halfspace(normal: Vector, offset: f64) -> Result<Self> {
        let set = ConvexSet::Halfspace { normal, offset };
        set.validate()?;
        Ok(set)
    }

    /// All of `R^n`, encoded as a box with infinite bounds.
    pub fn whole_space(dim: usize) -> Self {
        ConvexSet::AxisBox {
            lower: vec![f64::NEG_INFINITY; dim],
            upper: vec![f64::INFINITY; dim],
        }
    }

    /// Square (cube) of half-side `half_side` centered at `center`.
    pub fn square(center: &Vector, half_side: f64) -> Result<Self> {
        if !(half_side >= 0.0 && half_side.is_finite()) {
            return Err(Error::InvalidSet(format!(
                "half side must be finite and nonnegative, got {half_side}"
            )));
        }
        Self::axis_box(
            center.iter().map(|c| c - half_side).collect(),
            center.iter().map(|c| c + half_side).collect(),
        )
    }

    /// Checks the shape invariants: finite data, positive radius, ordered
    /// box bounds, nonzero halfspace normal.
    pub fn validate(&self) -> Result<()> {
        if self.dim() == 0 {
            return Err(Error::InvalidSet("dimension must be at least 1".into()));
        }
        match self {
            ConvexSet::Singleton { point } => finite_vec(point, "point"),
            ConvexSet::Ball { center, radius } => {
                finite_vec(center, "ball center")?;
                if !(radius.is_finite() && *radius > 0.0) {
                    return Err(Error::InvalidSet(format!(
                        "ball radius must be finite and positive, got {radius}"
                    )));
                }
                Ok(())
            }
            ConvexSet::AxisBox { lower, upper } => {
                if lower.len() != upper.len() {
                    return Err(Error::InvalidSet(format!(
                        "box bounds have lengths {} and {}",
                        lower.len(),
                        upper.len()
                    )));
                }
                for (k, (&l, &u)) in lower.iter().zip(upper).enumerate() {
                    if l.is_nan() || u.is_nan() || l == f64::INFINITY || u == f64::NEG_INFINITY {
                        return Err(Error::InvalidSet(format!("box bound {k} is [{l}, {u}]")));
                    }
                    if l > u {
                        return Err(Error::InvalidSet(format!(
                            "box lower bound {l} exceeds upper bound {u} in coordinate {k}"
                        )));
                    }
                }
                Ok(())
            }
            ConvexSet::Halfspace { normal, offset } => {
                finite_vec(normal, "halfspace normal")?;
                if !offset.is_finite() {
                    return Err(Error::InvalidSet("halfspace offset must be finite".into()));
                }
                if normal.norm() == 0.0 {
                    return Err(Error::InvalidSet("halfspace normal must be nonzero".into()));
                }
                Ok(())
            }
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            ConvexSet::Singleton { point } => point.len(),
            ConvexSet::Ball { center, .. } => center.len(),
            ConvexSet::AxisBox { lower, .. } => lower.len(),
            ConvexSet::Halfspace { normal, .. } => normal.len(),
        }
    }

    pub(crate) fn check_dim(&self, x: &Vector) -> Result<()> {
        if x.len() == self.dim() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: x.len(),
            })
        }
    }

    pub fn is_bounded(&self) -> bool {
        match self {
            ConvexSet::Singleton { .. } | ConvexSet::Ball { .. } => true,
            ConvexSet::AxisBox { lower, upper } => lower.iter().chain(upper).all(|b| b.is_finite()),
            ConvexSet::Halfspace { .. } => false,
        }
    }

    /// True for a singleton or a box collapsed to one point.
    pub fn is_point(&self) -> bool {
        match self {
            ConvexSet::Singleton { .. } => true,
            ConvexSet::AxisBox { lower, upper } => lower.iter().zip(upper).all(|(l, u)| l == u),
            _ => false,
        }
    }

    /// True for a box without any finite bound.
    pub fn is_whole_space(&self) -> bool {
        match self {
            ConvexSet::AxisBox { lower, upper } => {
                lower.iter().chain(upper).all(|b| b.is_infinite())
            }
            _ => false,
        }
    }

    /// A fixed element of the set: the point, the center, the box midpoint
    /// (or the projection of the origin when the box is unbounded), or the
    /// projection of the origin onto a halfspace.
    pub fn representative(&self) -> Vector {
        match self {
            ConvexSet::Singleton { point } => point.clone(),
            ConvexSet::Ball { center, .. } => center.clone(),
            ConvexSet::AxisBox { lower, upper } => Vector::from_iterator(
                lower.len(),
                lower.iter().zip(upper).map(|(&l, &u)| {
                    if l.is_finite() && u.is_finite() {
                        0.5 * (l + u)
                    } else {
                        0.0f64.clamp(l, u)
                    }
                }),
            ),
            ConvexSet::Halfspace { .. } => self.project_unchecked(&Vector::zeros(self.dim())),
        }
    }

    fn project_unchecked(&self, x: &Vector) -> Vector {
        match self {
            ConvexSet::Singleton { point } => point.clone(),
            ConvexSet::Ball { center, radius } => {
                let offset = x - center;
                let norm = offset.norm();
                if norm <= *radius {
                    x.clone()
                } else {
                    center + offset * (radius / norm)
                }
            }
            ConvexSet::AxisBox { lower, upper } => Vector::from_iterator(
                x.len(),
                x.iter()
                    .zip(lower.iter().zip(upper))
                    .map(|(&xi, (&l, &u))| xi.clamp(l, u)),
            ),
            ConvexSet::Halfspace { normal, offset } => {
                let excess = normal.dot(x) - offset;
                if excess <= 0.0 {
                    x.clone()
                } else {
                    x - normal * (excess / normal.norm_squared())
                }
            }
        }
    }

    fn distance_unchecked(&self, x: &Vector) -> f64 {
        match self {
            ConvexSet::Singleton { point } => (x - point).norm(),
            ConvexSet::Ball { center, radius } => ((x - center).norm() - radius).max(0.0),
            ConvexSet::AxisBox { lower, upper } => x
                .iter()
                .zip(lower.iter().zip(upper))
                .map(|(&xi, (&l, &u))| {
                    let gap = xi - xi.clamp(l, u);
                    gap * gap
                })
                .sum::<f64>()
                .sqrt(),
            ConvexSet::Halfspace { normal, offset } => {
                ((normal.dot(x) - offset) / normal.norm()).max(0.0)
            }
        }
    }

    /// Euclidean projection `P(x; Q)`.
    pub fn project(&self, x: &Vector) -> Result<Vector> {
        self.check_dim(x)?;
        Ok(self.project_unchecked(x))
    }

    /// Distance `d(x; Q)`.
    pub fn distance(&self, x: &Vector) -> Result<f64> {
        self.check_dim(x)?;
        Ok(self.distance_unchecked(x))
    }

    /// `d(x; Q) <= tol`.
    pub fn contains(&self, x: &Vector, tol: f64) -> Result<bool> {
        Ok(self.distance(x)? <= tol)
    }

    pub fn distance_subgradient(&self, x: &Vector, tol: f64) -> Result<DistanceSubgradient<'_>> {
        self.check_dim(x)?;
        if self.distance_unchecked(x) > tol {
            let diff = x - self.project_unchecked(x);
            let norm = diff.norm();
            if norm > 0.0 {
                return Ok(DistanceSubgradient::Exterior(diff / norm));
            }
        }
        Ok(DistanceSubgradient::OnSet(self))
    }

    /// Tests `v ∈ N(x; Q)` for `x ∈ Q`, i.e. `<v, q - x> <= tol ‖v‖` for all
    /// `q ∈ Q`. Faces are considered active when `x` lies within `tol` of them.
    pub fn normal_cone_contains(&self, x: &Vector, v: &Vector, tol: f64) -> Result<bool> {
        self.check_dim(x)?;
        self.check_dim(v)?;
        let distance = self.distance_unchecked(x);
        if distance > tol {
            return Err(Error::NotInSet { distance });
        }
        let v_norm = v.norm();
        if v_norm <= tol {
            return Ok(true);
        }
        let dir = v / v_norm;
        let inside = match self {
            ConvexSet::Singleton { .. } => true,
            ConvexSet::Ball { center, radius } => {
                let radial = x - center;
                let r = radial.norm();
                (r - radius).abs() <= tol && r > 0.0 && (dir - radial / r).norm() <= tol
            }
            ConvexSet::AxisBox { lower, upper } => {
                dir.iter().zip(x.iter()).zip(lower.iter().zip(upper)).all(
                    |((&dk, &xk), (&l, &u))| {
                        let at_lower = (xk - l).abs() <= tol;
                        let at_upper = (xk - u).abs() <= tol;
                        match (at_lower, at_upper) {
                            (true, true) => true,
                            (true, false) => dk <= tol,
                            (false, true) => dk >= -tol,
                            (false, false) => dk.abs() <= tol,
                        }
                    },
                )
            }
            ConvexSet::Halfspace { normal, offset } => {
                let n_norm = normal.norm();
                let active = ((normal.dot(x) - offset) / n_norm).abs() <= tol;
                active && (dir - normal / n_norm).norm() <= tol
            }
        };
        Ok(inside)
    }

    /// Radius `r` with `Q ⊆ B(0; r)`, or `None` when `Q` is unbounded.
    pub fn bounding_radius(&self) -> Option<f64> {
        match self {
            ConvexSet::Singleton { point } => Some(point.norm()),
            ConvexSet::Ball { center, radius } => Some(center.norm() + radius),
            ConvexSet::AxisBox { lower, upper } => {
                if !self.is_bounded() {
                    return None;
                }
                let sq: f64 = lower
                    .iter()
                    .zip(upper)
                    .map(|(l, u)| (l * l).max(u * u))
                    .sum();
                Some(sq.sqrt())
            }
            ConvexSet::Halfspace { .. } => None,
        }
    }

    /// Corner points of a bounded box; degenerate coordinates contribute a
    /// single value, so a box with `m` free coordinates has `2^m` vertices.
    pub fn box_vertices(&self) -> Result<Vec<Vector>> {
        let ConvexSet::AxisBox { lower, upper } = self else {
            return Err(Error::PreconditionViolated(
                "box_vertices requires an axis box".into(),
            ));
        };
        if !self.is_bounded() {
            return Err(Error::UnboundedDomain);
        }
        let free: Vec<usize> = (0..lower.len()).filter(|&k| lower[k] < upper[k]).collect();
        if free.len() > 24 {
            return Err(Error::PreconditionViolated(format!(
                "box has {} free coordinates",
                free.len()
            )));
        }
        let base = Vector::from_column_slice(lower);
        Ok((0u32..(1 << free.len()))
            .map(|mask| {
                let mut vertex = base.clone();
                for (bit, &k) in free.iter().enumerate() {
                    if mask & (1 << bit) != 0 {
                        vertex[k] = upper[k];
                    }
                }
                vertex
            })
            .collect())
    }

    /// Support function `sup { <a, q> : q ∈ Q }`, possibly `+inf`.
    pub fn support(&self, a: &Vector) -> Result<f64> {
        self.check_dim(a)?;
        let value = match self {
            ConvexSet::Singleton { point } => a.dot(point),
            ConvexSet::Ball { center, radius } => a.dot(center) + radius * a.norm(),
            ConvexSet::AxisBox { lower, upper } => a
                .iter()
                .zip(lower.iter().zip(upper))
                .map(|(&ak, (&l, &u))| {
                    if ak > 0.0 {
                        ak * u
                    } else if ak < 0.0 {
                        ak * l
                    } else {
                        0.0
                    }
                })
                .sum(),
            ConvexSet::Halfspace { normal, offset } => {
                let a_norm = a.norm();
                if a_norm == 0.0 {
                    0.0
                } else {
                    let scale = a.dot(normal) / normal.norm_squared();
                    let parallel = scale > 0.0 && (a - normal * scale).norm() <= 1e-12 * a_norm;
                    if parallel {
                        scale * offset
                    } else {
                        f64::INFINITY
                    }
                }
            }
        };
        Ok(value)
    }

    /// Decides `inner ⊆ self` for every pair of supported shapes.
    pub fn contains_set(&self, inner: &ConvexSet) -> Result<bool> {
        if inner.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: inner.dim(),
            });
        }
        if let ConvexSet::Singleton { point } = inner {
            return self.contains(point, default_tol(point));
        }
        let decided = match self {
            ConvexSet::Halfspace { normal, offset } => {
                inner.support(normal)? <= offset + 1e-9 * normal.norm() * (1.0 + offset.abs())
            }
            ConvexSet::AxisBox { lower, upper } => {
                let n = self.dim();
                (0..n).all(|k| {
                    let e = Vector::from_fn(n, |i, _| if i == k { 1.0 } else { 0.0 });
                    let hi = inner.support(&e).unwrap_or(f64::INFINITY);
                    let lo = -inner.support(&-e).unwrap_or(f64::INFINITY);
                    hi <= upper[k] + 1e-9 * (1.0 + upper[k].abs())
                        && lo >= lower[k] - 1e-9 * (1.0 + lower[k].abs())
                })
            }
            ConvexSet::Ball { center, radius } => match inner {
                ConvexSet::Ball {
                    center: c2,
                    radius: r2,
                } => (center - c2).norm() + r2 <= radius + 1e-9 * (1.0 + radius),
                ConvexSet::AxisBox { .. } if inner.is_bounded() => inner
                    .box_vertices()?
                    .iter()
                    .all(|v| self.distance_unchecked(v) <= default_tol(v)),
                _ => false,
            },
            ConvexSet::Singleton { point } => match inner {
                ConvexSet::AxisBox { .. } if inner.is_point() => {
                    let q = inner.representative();
                    (q - point).norm() <= default_tol(point)
                }
                _ => false,
            },
        };
        Ok(decided)
    }

    /// Decides `self ∩ other ≠ ∅` for every pair of supported shapes.
    pub fn intersects(&self, other: &ConvexSet) -> Result<bool> {
        if other.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        use ConvexSet::*;
        let meets = match (self, other) {
            (Singleton { point }, q) | (q, Singleton { point }) => {
                q.distance_unchecked(point) <= default_tol(point)
            }
            (Ball { center, radius }, q) | (q, Ball { center, radius }) => {
                q.distance_unchecked(center) <= radius + default_tol(center)
            }
            (
                AxisBox { lower, upper },
                AxisBox {
                    lower: l2,
                    upper: u2,
                },
            ) => lower
                .iter()
                .zip(upper)
                .zip(l2.iter().zip(u2))
                .all(|((&l, &u), (&l2, &u2))| {
                    let lo = l.max(l2);
                    let slack = if lo.is_finite() {
                        1e-9 * (1.0 + lo.abs())
                    } else {
                        0.0
                    };
                    lo <= u.min(u2) + slack
                }),
            (b @ AxisBox { .. }, Halfspace { normal, offset })
            | (Halfspace { normal, offset }, b @ AxisBox { .. }) => {
                let lowest = -b.support(&-normal)?;
                lowest <= offset + 1e-9 * normal.norm() * (1.0 + offset.abs())
            }
            (
                Halfspace { normal, offset },
                Halfspace {
                    normal: n2,
                    offset: b2,
                },
            ) => {
                // Empty only for opposite parallel normals with a gap.
                let mu = -n2.dot(normal) / normal.norm_squared();
                let opposite = mu > 0.0 && (n2 + normal * mu).norm() <= 1e-12 * n2.norm();
                !(opposite && -b2 / mu > offset + 1e-9 * (1.0 + offset.abs()))
            }
        };
        Ok(meets)
    }

    /// Distance from `x` to the complement of `Q` when `x` lies in `Q`
    /// (zero on the boundary and for sets with empty interior).
    pub fn interior_depth(&self, x: &Vector) -> Result<f64> {
        self.check_dim(x)?;
        let depth = match self {
            ConvexSet::Singleton { .. } => 0.0,
            ConvexSet::Ball { center, radius } => (radius - (x - center).norm()).max(0.0),
            ConvexSet::AxisBox { lower, upper } => x
                .iter()
                .zip(lower.iter().zip(upper))
                .map(|(&xk, (&l, &u))| (xk - l).min(u - xk))
                .fold(f64::INFINITY, f64::min)
                .max(0.0),
            ConvexSet::Halfspace { normal, offset } => {
                ((offset - normal.dot(x)) / normal.norm()).max(0.0)
            }
        };
        Ok(depth)
    }

    /// Per-coordinate finite bounds `[lo, hi]` of the set, with `None` for
    /// unbounded directions.
    pub fn coordinate_bounds(&self) -> Vec<(Option<f64>, Option<f64>)> {
        let n = self.dim();
        (0..n)
            .map(|k| {
                let e = Vector::from_fn(n, |i, _| if i == k { 1.0 } else { 0.0 });
                let hi = self.support(&e).unwrap_or(f64::INFINITY);
                let lo = -self.support(&-e).unwrap_or(f64::INFINITY);
                (lo.is_finite().then_some(lo), hi.is_finite().then_some(hi))
            })
            .collect()
    }
}
