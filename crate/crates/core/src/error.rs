use thiserror::Error;

use crate::geometry::PositionClass;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("value must be positive, got {0}")]
    NonPositive(String),

    #[error("{0} is not squarefree")]
    NotSquarefree(u64),

    #[error(
        "cannot factor {value}: residual cofactor {cofactor} exceeds trial-division bound {bound}"
    )]
    FactorizationLimitExceeded {
        value: String,
        cofactor: String,
        bound: u64,
    },

    #[error("duplicate point at index {0}")]
    DuplicatePoint(usize),

    #[error("degenerate input: {0}")]
    DegenerateInput(&'static str),

    #[error("distance between points {0} and {1} is not an integer")]
    NotIntegral(usize, usize),

    #[error("need at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },

    #[error("no {n}-point set in {constraint} position with diameter <= {exhausted_up_to}")]
    BudgetExceeded {
        n: usize,
        constraint: PositionClass,
        exhausted_up_to: u64,
    },

    #[error("construction pool exhausted after {found} of {requested} points")]
    ConstructionBudgetExceeded { requested: usize, found: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("degenerate triangle ({0}, {1}, {2})")]
    DegenerateTriangle(u64, u64, u64),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("no pair of points at distance 1")]
    NoUnitDistance,
}
