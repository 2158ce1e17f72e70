//! Strongly convex subproblem solved at every outer iteration:
//!
//! ```text
//! min  φ_v(x) = Σ α_i d(x; Ω_i) + λ/2 ‖x‖² - <v, x>   subject to x ∈ S
//! ```
//!
//! The main method is the generalized Weiszfeld iteration
//! `x_{t+1} = P(F_v(x_t); S)` with
//!
//! ```text
//! F_v(x) = (Σ α_i P(x; Ω_i) / d(x; Ω_i) + v) / (Σ α_i / d(x; Ω_i) + λ)
//! ```
//!
//! which decreases `φ_v` strictly at every step that moves. `F_v` is undefined
//! on the target sets; when an iterate reaches one, [`solve_inner`] in
//! [`InnerMethod::Auto`] mode continues with projected subgradient steps.

use crate::error::{Error, Result};
use crate::geometry::{default_tol, ConvexSet, Vector};
use crate::model::WeightedSet;

#[derive(Debug, Clone)]
pub struct InnerProblem<'a> {
    pub v: Vector,
    pub lambda: f64,
    pub attractions: &'a [WeightedSet],
    pub constraint: &'a ConvexSet,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InnerMethod {
    Weiszfeld,
    Subgradient,
    /// Weiszfeld, switching to subgradient steps on a target set.
    Auto,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MethodUsed {
    Weiszfeld,
    Subgradient,
}

impl MethodUsed {
    pub fn as_str(&self) -> &'static str {
        match self {
            MethodUsed::Weiszfeld => "weiszfeld",
            MethodUsed::Subgradient => "subgradient",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct InnerConfig {
    pub method: InnerMethod,
    pub max_iters: usize,
    /// Stop once `‖x_{t+1} - x_t‖ <= step_tol`.
    pub step_tol: f64,
    /// Scale `s` of the diminishing subgradient step `s / ℓ`.
    pub subgradient_step_scale: f64,
}

impl Default for InnerConfig {
    fn default() -> Self {
        InnerConfig {
            method: InnerMethod::Auto,
            max_iters: 1000,
            step_tol: 1e-10,
            subgradient_step_scale: 1.0,
        }
    }
}

impl InnerConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_iters == 0 {
            return Err(Error::InvalidConfig(
                "inner max_iters must be at least 1".into(),
            ));
        }
        if !(self.step_tol > 0.0) {
            return Err(Error::InvalidConfig(
                "inner step_tol must be positive".into(),
            ));
        }
        if !(self.subgradient_step_scale > 0.0 && self.subgradient_step_scale.is_finite()) {
            return Err(Error::InvalidConfig(
                "subgradient step scale must be positive".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct InnerResult {
    pub x: Vector,
    /// `φ_v(x)` recomputed at `x`.
    pub value: f64,
    pub iterations: usize,
    pub converged: bool,
    pub method_used: MethodUsed,
}

impl InnerProblem<'_> {
    fn check_dim(&self, x: &Vector) -> Result<()> {
        let n = self.constraint.dim();
        if x.len() != n || self.v.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: if x.len() != n { x.len() } else { self.v.len() },
            });
        }
        Ok(())
    }

    fn check_start(&self, x0: &Vector) -> Result<()> {
        self.check_dim(x0)?;
        let distance = self.constraint.distance(x0)?;
        if distance > default_tol(x0) {
            return Err(Error::NotInConstraint { distance });
        }
        Ok(())
    }

    /// `φ_v(x)`.
    pub fn phi(&self, x: &Vector) -> Result<f64> {
        self.check_dim(x)?;
        let mut total = 0.5 * self.lambda * x.norm_squared() - self.v.dot(x);
        for ws in self.attractions {
            total += ws.weight * ws.set.distance(x)?;
        }
        Ok(total)
    }

    /// The unprojected Weiszfeld map `F_v(x)`. Fails with
    /// [`Error::OnTargetSet`] when `d(x; Ω_i) <= 1e-9 (1 + ‖x‖)` for some `i`.
    pub fn weiszfeld_map(&self, x: &Vector) -> Result<Vector> {
        self.check_dim(x)?;
        let threshold = default_tol(x);
        let mut numerator = self.v.clone();
        let mut denominator = self.lambda;
        for (index, ws) in self.attractions.iter().enumerate() {
            let proj = ws.set.project(x)?;
            let d = (x - &proj).norm();
            if d <= threshold {
                return Err(Error::OnTargetSet { index });
            }
            numerator += proj * (ws.weight / d);
            denominator += ws.weight / d;
        }
        Ok(numerator / denominator)
    }

    /// An element of `∂φ_v(x)`, taking the zero selection on target sets.
    pub fn subgradient(&self, x: &Vector) -> Result<Vector> {
        self.check_dim(x)?;
        let tol = default_tol(x);
        let mut u = x * self.lambda - &self.v;
        for ws in self.attractions {
            u += ws.set.distance_subgradient(x, tol)?.selection(x.len()) * ws.weight;
        }
        Ok(u)
    }

    /// Iterator over the projected Weiszfeld iterates `x_1, x_2, ...` from
    /// `x0`. Yields one `Err(OnTargetSet)` and stops if the map breaks down.
    pub fn weiszfeld_iterates(&self, x0: Vector) -> WeiszfeldIterates<'_, '_> {
        WeiszfeldIterates {
            problem: self,
            current: x0,
            done: false,
        }
    }
}

pub struct WeiszfeldIterates<'p, 'a> {
    problem: &'p InnerProblem<'a>,
    current: Vector,
    done: bool,
}

impl Iterator for WeiszfeldIterates<'_, '_> {
    type Item = Result<Vector>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        let step = self
            .problem
            .weiszfeld_map(&self.current)
            .and_then(|f| self.problem.constraint.project(&f));
        match step {
            Ok(next) => {
                self.current = next.clone();
                Some(Ok(next))
            }
            Err(e) => {
                self.done = true;
                Some(Err(e))
            }
        }
    }
}

pub fn phi(prob: &InnerProblem<'_>, x: &Vector) -> Result<f64> {
    prob.phi(x)
}

pub fn weiszfeld_map(prob: &InnerProblem<'_>, x: &Vector) -> Result<Vector> {
    prob.weiszfeld_map(x)
}

enum WeiszfeldOutcome {
    Finished(InnerResult),
    HitTarget { last: Vector, iterations: usize },
}

fn run_weiszfeld(
    prob: &InnerProblem<'_>,
    x0: &Vector,
    cfg: &InnerConfig,
) -> Result<WeiszfeldOutcome> {
    let mut x = x0.clone();
    let mut converged = false;
    let mut iterations = 0;
    for next in prob.weiszfeld_iterates(x0.clone()).take(cfg.max_iters) {
        let next = match next {
            Ok(next) => next,
            Err(Error::OnTargetSet { .. }) => {
                return Ok(WeiszfeldOutcome::HitTarget {
                    last: x,
                    iterations,
                })
            }
            Err(e) => return Err(e),
        };
        iterations += 1;
        let step = (&next - &x).norm();
        x = next;
        if step <= cfg.step_tol {
            converged = true;
            break;
        }
    }
    let value = prob.phi(&x)?;
    Ok(WeiszfeldOutcome::Finished(InnerResult {
        x,
        value,
        iterations,
        converged,
        method_used: MethodUsed::Weiszfeld,
    }))
}

/// Generalized Weiszfeld iteration from `x0 ∈ S`.
pub fn weiszfeld_solve(
    prob: &InnerProblem<'_>,
    x0: &Vector,
    cfg: &InnerConfig,
) -> Result<InnerResult> {
    cfg.validate()?;
    prob.check_start(x0)?;
    match run_weiszfeld(prob, x0, cfg)? {
        WeiszfeldOutcome::Finished(result) => Ok(result),
        WeiszfeldOutcome::HitTarget { last, .. } => {
            let tol = default_tol(&last);
            let index = prob
                .attractions
                .iter()
                .position(|ws| ws.set.distance(&last).is_ok_and(|d| d <= tol))
                .unwrap_or(0);
            Err(Error::OnTargetSet { index })
        }
    }
}

/// Projected subgradient method `x_{ℓ+1} = P(x_ℓ - (s/ℓ) u_ℓ; S)` returning
/// the best iterate seen (the start included).
pub fn subgradient_solve(
    prob: &InnerProblem<'_>,
    x0: &Vector,
    cfg: &InnerConfig,
) -> Result<InnerResult> {
    cfg.validate()?;
    prob.check_start(x0)?;
    let mut x = x0.clone();
    let mut best_x = x0.clone();
    let mut best_value = prob.phi(x0)?;
    let mut converged = false;
    let mut iterations = 0;
    for ell in 1..=cfg.max_iters {
        let u = prob.subgradient(&x)?;
        if u.norm() == 0.0 {
            converged = true;
            break;
        }
        let next = prob
            .constraint
            .project(&(&x - u * (cfg.subgradient_step_scale / ell as f64)))?;
        iterations = ell;
        let value = prob.phi(&next)?;
        if value < best_value {
            best_value = value;
            best_x = next.clone();
        }
        let step = (&next - &x).norm();
        x = next;
        if step <= cfg.step_tol {
            converged = true;
            break;
        }
    }
    Ok(InnerResult {
        x: best_x,
        value: best_value,
        iterations,
        converged,
        method_used: MethodUsed::Subgradient,
    })
}

/// Dispatches on `cfg.method`. In auto mode a Weiszfeld run that reaches a
/// target set is continued by the subgradient method from its last iterate.
pub fn solve_inner(prob: &InnerProblem<'_>, x0: &Vector, cfg: &InnerConfig) -> Result<InnerResult> {
    match cfg.method {
        InnerMethod::Weiszfeld => weiszfeld_solve(prob, x0, cfg),
        InnerMethod::Subgradient => subgradient_solve(prob, x0, cfg),
        InnerMethod::Auto => {
            cfg.validate()?;
            prob.check_start(x0)?;
            match run_weiszfeld(prob, x0, cfg)? {
                WeiszfeldOutcome::Finished(result) => Ok(result),
                WeiszfeldOutcome::HitTarget { last, iterations } => {
                    let mut result = subgradient_solve(prob, &last, cfg)?;
                    result.iterations += iterations;
                    Ok(result)
                }
            }
        }
    }
}
