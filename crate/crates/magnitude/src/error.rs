use thiserror::Error;

/// Errors produced by the toolkit.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    // --- metric validation ---
    #[error("distance matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("off-diagonal distance at ({0}, {1}) must be positive")]
    NegativeOrZeroOffDiagonal(usize, usize),
    #[error("triangle inequality violated: d({0},{2}) > d({0},{1}) + d({1},{2})")]
    TriangleViolation(usize, usize, usize),
    #[error("diagonal entry at ({0}, {0}) must be zero")]
    NonzeroDiagonal(usize),
    #[error("a metric space must have at least one point")]
    EmptySpace,
    #[error("distance matrix must be square ({0} rows, row {1} has {2} entries)")]
    NotSquare(usize, usize, usize),
    #[error("label count {0} does not match matrix size {1}")]
    LabelMismatch(usize, usize),

    // --- combinator preconditions ---
    #[error("scale factor must be positive")]
    NonpositiveScale,
    #[error("join requires both spaces to have diameter at most 2")]
    DiameterExceedsTwo,
    #[error("operation does not support infinite distances")]
    InfiniteDistanceUnsupported,
    #[error("space has {n} points, exceeding the exact-search cap {cap}")]
    SizeCapExceeded { n: usize, cap: usize },
    #[error("space is not homogeneous")]
    NotHomogeneous,
    #[error("graph contains a cycle, so it is not a forest")]
    NotAForest,
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    // --- exact arithmetic ---
    #[error("exact evaluation unavailable: fractional exponents at q0 != 1")]
    ExactnessUnavailable,
    #[error("denominator is the zero polynomial")]
    ZeroDenominatorPolynomial,
    #[error("division by the zero generalized rational function")]
    DivisionByZeroGenRat,
    #[error("exponent lattice too large for dense elimination (size {0})")]
    ExponentLatticeTooLarge(usize),

    // --- numeric engine ---
    #[error("similarity matrix is numerically singular at t = {0}")]
    SingularAtThisScale(f64),

    // --- closed forms / constructor ---
    #[error("join-limit assumption violated: mean distances must sum to 2")]
    AssumptionViolated,
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("target limit must be at least 1")]
    InvalidTarget,
    #[error("bisection failed to converge within {0} iterations")]
    BisectionCapExceeded(usize),

    // --- io ---
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
