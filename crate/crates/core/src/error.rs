use thiserror::Error;

/// Errors raised by the solver library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid convex set: {0}")]
    InvalidSet(String),

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("point is not in the set (distance {distance:e})")]
    NotInSet { distance: f64 },

    #[error("starting point is not in the constraint set (distance {distance:e})")]
    NotInConstraint { distance: f64 },

    /// The Weiszfeld map divides by `d(x; Ω_i)` and is undefined on the target set.
    #[error("iterate lies on attraction set {index}")]
    OnTargetSet { index: usize },

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("domain is unbounded")]
    UnboundedDomain,

    #[error("grid needs {required} evaluations, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u128 },

    #[error("grid region does not meet the constraint set")]
    EmptyIntersection,

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
