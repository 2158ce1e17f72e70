//! DCA outer loop.
//!
//! The constrained problem is rewritten as `min g - h` with
//!
//! ```text
//! g(x) = Σ α_i d(x; Ω_i) + λ/2 ‖x‖² + δ(x; S)
//! h(x) = Σ β_j d(x; Θ_j) + λ/2 ‖x‖²
//! ```
//!
//! Each outer step picks `y_k = Σ β_j w_j + λ x_k ∈ ∂h(x_k)` (with `w_j` the
//! unit exterior direction off `Θ_j`, zero on it) and sets `x_{k+1}` to the
//! minimizer of `φ_{y_k}` over `S`, warm-started at `x_k`. Any inner solve
//! that does not increase `φ_{y_k}` from the warm start yields
//! `f(x_{k+1}) <= f(x_k) - λ/2 ‖x_{k+1} - x_k‖²`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{default_tol, Vector};
use crate::inner::{solve_inner, InnerConfig, InnerProblem, InnerResult, MethodUsed};
use crate::model::ProblemInstance;

#[derive(Debug, Clone, PartialEq)]
pub struct DcaConfig {
    pub lambda: f64,
    /// Maximum number of outer iterations.
    pub max_outer: usize,
    pub outer_step_tol: f64,
    pub inner: InnerConfig,
    pub record_trajectory: bool,
}

impl Default for DcaConfig {
    fn default() -> Self {
        DcaConfig {
            lambda: 1.0,
            max_outer: 1000,
            outer_step_tol: 1e-8,
            inner: InnerConfig::default(),
            record_trajectory: false,
        }
    }
}

impl DcaConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.lambda > 0.0 && self.lambda.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "lambda must be positive, got {}",
                self.lambda
            )));
        }
        if self.max_outer == 0 {
            return Err(Error::InvalidConfig("max_outer must be at least 1".into()));
        }
        if !(self.outer_step_tol >= 0.0) {
            return Err(Error::InvalidConfig(
                "outer step tolerance must be nonnegative".into(),
            ));
        }
        self.inner.validate()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrajectoryPoint {
    pub k: usize,
    pub x: Vector,
    pub y: Vector,
    pub f_value: f64,
    /// `‖x_k - x_{k-1}‖`, zero at `k = 0`.
    pub step_norm: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    StepTol,
    MaxOuter,
}

impl Termination {
    pub fn as_str(&self) -> &'static str {
        match self {
            Termination::StepTol => "step_tol",
            Termination::MaxOuter => "max_outer",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport {
    pub final_x: Vector,
    pub final_value: f64,
    pub outer_iterations: usize,
    pub termination: Termination,
    pub criticality_residual: f64,
    pub trajectory: Option<Vec<TrajectoryPoint>>,
    /// Distinct inner methods in order of first use.
    pub inner_methods_used: Vec<MethodUsed>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DcaStep {
    pub y: Vector,
    pub x_next: Vector,
    pub inner: InnerResult,
}

/// `y = Σ β_j w_j + λ x`, the chosen element of `∂h(x)`.
pub fn dual_point(inst: &ProblemInstance, lambda: f64, x: &Vector) -> Result<Vector> {
    let mut y = x * lambda;
    for ws in &inst.repulsions {
        y += ws.set.distance_subgradient(x, 0.0)?.selection(x.len()) * ws.weight;
    }
    Ok(y)
}

fn check_feasible(inst: &ProblemInstance, x: &Vector) -> Result<()> {
    let distance = inst.constraint.distance(x)?;
    if distance > default_tol(x) {
        return Err(Error::NotInConstraint { distance });
    }
    Ok(())
}

/// One outer iteration from `x_k ∈ S`.
pub fn dca_step(
    inst: &ProblemInstance,
    lambda: f64,
    x_k: &Vector,
    inner_cfg: &InnerConfig,
) -> Result<DcaStep> {
    check_feasible(inst, x_k)?;
    let y = dual_point(inst, lambda, x_k)?;
    let prob = InnerProblem {
        v: y.clone(),
        lambda,
        attractions: &inst.attractions,
        constraint: &inst.constraint,
    };
    let inner = solve_inner(&prob, x_k, inner_cfg)?;
    Ok(DcaStep {
        y,
        x_next: inner.x.clone(),
        inner,
    })
}

/// `‖x_next - x‖` for one DCA step at `x`. The DCA map fixes exactly the
/// critical points reachable through the chosen subgradient selection, so
/// this is zero (up to inner-solve accuracy) at such points.
pub fn criticality_residual(
    inst: &ProblemInstance,
    lambda: f64,
    x: &Vector,
    inner_cfg: &InnerConfig,
) -> Result<f64> {
    let step = dca_step(inst, lambda, x, inner_cfg)?;
    Ok((step.x_next - x).norm())
}

/// Runs outer iterations from `x0 ∈ S` until the step is at most
/// `outer_step_tol` or `max_outer` iterations have been made.
pub fn dca_solve(inst: &ProblemInstance, x0: &Vector, cfg: &DcaConfig) -> Result<SolveReport> {
    cfg.validate()?;
    if x0.len() != inst.dimension {
        return Err(Error::DimensionMismatch {
            expected: inst.dimension,
            found: x0.len(),
        });
    }
    check_feasible(inst, x0)?;

    let mut x = x0.clone();
    let mut f_value = inst.evaluate_objective(&x)?;
    let mut prev_step = 0.0;
    let mut trajectory = cfg.record_trajectory.then(Vec::new);
    let mut methods: Vec<MethodUsed> = Vec::new();
    let mut termination = Termination::MaxOuter;
    let mut outer_iterations = 0;

    for k in 0..cfg.max_outer {
        let step = dca_step(inst, cfg.lambda, &x, &cfg.inner)?;
        if !methods.contains(&step.inner.method_used) {
            methods.push(step.inner.method_used);
        }
        if let Some(t) = trajectory.as_mut() {
            t.push(TrajectoryPoint {
                k,
                x: x.clone(),
                y: step.y.clone(),
                f_value,
                step_norm: prev_step,
            });
        }
        let step_norm = (&step.x_next - &x).norm();
        x = step.x_next;
        f_value = inst.evaluate_objective(&x)?;
        prev_step = step_norm;
        outer_iterations = k + 1;
        if step_norm <= cfg.outer_step_tol {
            termination = Termination::StepTol;
            break;
        }
    }

    let residual_step = dca_step(inst, cfg.lambda, &x, &cfg.inner)?;
    let criticality_residual = (&residual_step.x_next - &x).norm();
    if let Some(t) = trajectory.as_mut() {
        t.push(TrajectoryPoint {
            k: outer_iterations,
            x: x.clone(),
            y: residual_step.y,
            f_value,
            step_norm: prev_step,
        });
    }
    Ok(SolveReport {
        final_x: x,
        final_value: f_value,
        outer_iterations,
        termination,
        criticality_residual,
        trajectory,
        inner_methods_used: methods,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct StartOutcome {
    pub index: usize,
    pub x0: Vector,
    pub report: SolveReport,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MultiStartReport {
    pub seed: u64,
    pub best_index: usize,
    pub outcomes: Vec<StartOutcome>,
}

impl MultiStartReport {
    pub fn best(&self) -> &StartOutcome {
        &self.outcomes[self.best_index]
    }
}

/// Axis-aligned sampling box for starting points: the finite bounds of `S`,
/// with unbounded coordinates replaced by the spread of the data sets.
pub fn sampling_box(inst: &ProblemInstance) -> (Vector, Vector) {
    let n = inst.dimension;
    let reps: Vec<Vector> = inst
        .attractions
        .iter()
        .chain(&inst.repulsions)
        .map(|ws| ws.set.representative())
        .chain(std::iter::once(inst.constraint.representative()))
        .collect();
    let bounds = inst.constraint.coordinate_bounds();
    let mut lo = Vector::zeros(n);
    let mut hi = Vector::zeros(n);
    for k in 0..n {
        let data_lo = reps.iter().map(|r| r[k]).fold(f64::INFINITY, f64::min);
        let data_hi = reps.iter().map(|r| r[k]).fold(f64::NEG_INFINITY, f64::max);
        let margin = 1.0 + 0.5 * (data_hi - data_lo);
        lo[k] = bounds[k].0.unwrap_or(data_lo - margin);
        hi[k] = bounds[k].1.unwrap_or(data_hi + margin);
        if lo[k] > hi[k] {
            // S is unbounded on the other side only and the data lie beyond it.
            if bounds[k].0.is_some() {
                hi[k] = lo[k] + margin;
            } else {
                lo[k] = hi[k] - margin;
            }
        }
    }
    (lo, hi)
}

/// Uniform point of the sampling box projected onto `S`.
pub fn random_start<R: Rng>(inst: &ProblemInstance, rng: &mut R) -> Vector {
    let (lo, hi) = sampling_box(inst);
    let raw = Vector::from_fn(inst.dimension, |k, _| {
        if hi[k] > lo[k] {
            rng.random_range(lo[k]..=hi[k])
        } else {
            lo[k]
        }
    });
    inst.constraint
        .project(&raw)
        .expect("sampling box matches instance dimension")
}

/// Deterministic generator for start `index`: ChaCha8 seeded with `seed`,
/// stream `index`.
pub fn start_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

fn better(a: &SolveReport, b: &SolveReport) -> bool {
    match a.final_value.total_cmp(&b.final_value) {
        std::cmp::Ordering::Less => true,
        std::cmp::Ordering::Greater => false,
        std::cmp::Ordering::Equal => a
            .final_x
            .iter()
            .zip(b.final_x.iter())
            .map(|(p, q)| p.total_cmp(q))
            .find(|o| o.is_ne())
            .is_some_and(|o| o.is_lt()),
    }
}

/// Runs [`dca_solve`] from `starts` points in parallel and keeps the best
/// final value (ties broken by the lexicographically smaller point). Start 0
/// is `first` when given; the others are drawn with [`random_start`].
pub fn multi_start_solve(
    inst: &ProblemInstance,
    first: Option<&Vector>,
    starts: usize,
    seed: u64,
    cfg: &DcaConfig,
) -> Result<MultiStartReport> {
    if starts == 0 {
        return Err(Error::InvalidConfig(
            "at least one start is required".into(),
        ));
    }
    let x0s: Vec<Vector> = (0..starts)
        .map(|index| match (index, first) {
            (0, Some(x0)) => x0.clone(),
            _ => random_start(inst, &mut start_rng(seed, index)),
        })
        .collect();
    let outcomes = x0s
        .into_par_iter()
        .enumerate()
        .map(|(index, x0)| {
            let report = dca_solve(inst, &x0, cfg)?;
            Ok(StartOutcome { index, x0, report })
        })
        .collect::<Result<Vec<_>>>()?;
    let best_index = (1..outcomes.len()).fold(0, |best, i| {
        if better(&outcomes[i].report, &outcomes[best].report) {
            i
        } else {
            best
        }
    });
    Ok(MultiStartReport {
        seed,
        best_index,
        outcomes,
    })
}
