use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degenerate hull: {0}")]
    DegenerateHull(String),

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("degenerate simplex: vertices are affinely dependent")]
    DegenerateSimplex,

    #[error("edge vector {0:?} is not primitive (gcd {1}); split it first")]
    NonPrimitiveEdge(Vec<i64>, i64),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("bounding box scan of {cells} cells exceeds budget {budget}")]
    BoxTooLarge { cells: u128, budget: u128 },

    #[error("candidates do not span {0} dimensions")]
    InsufficientSpan(usize),

    #[error("search of {count} items exceeds budget {budget}")]
    BudgetExceeded { count: u128, budget: u128 },

    #[error("kernel support of {nodes} nodes exceeds budget {budget}")]
    SupportTooLarge { nodes: u128, budget: u128 },

    #[error("FFT size overflow")]
    SizeOverflow,

    #[error("non-finite coordinate in point {0}")]
    NonFiniteCoordinate(usize),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("bad kernel: {0}")]
    BadKernel(String),

    #[error("singular matrix")]
    SingularMatrix,
}
