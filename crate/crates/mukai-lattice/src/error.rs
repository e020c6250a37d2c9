use thiserror::Error;

/// Errors produced by the toolkit. Every operation is exact, so an error
/// always means the input violated a contract, never a numerical failure.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A vector or matrix has the wrong number of coordinates for the space
    /// it is used with.
    #[error("coordinate arity mismatch: expected {expected}, found {found}")]
    Arity { expected: usize, found: usize },

    /// An operation defined only on fourfolds (n = 2) was invoked on a
    /// manifold of a different half-dimension.
    #[error("unsupported half-dimension n = {n}: operation is defined for n = 2 only")]
    UnsupportedDimension { n: u32 },

    /// Normalization of a Mukai line requires a nonzero α-coefficient;
    /// rank-zero (torsion) objects have none.
    #[error("not normalizable: {0}")]
    NotNormalizable(String),

    /// The calibration equation for the q₂ self-intersection is degenerate.
    #[error("calibration failed: {0}")]
    Calibration(String),

    /// A constraint system for an isometry has no (or no unique) solution.
    #[error("isometry construction failed: {0}")]
    Construction(String),

    /// A standing assumption of a transport rule is violated.
    #[error("assumption violated: {0}")]
    Assumption(String),

    /// A stated precondition does not hold for the given data.
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// Malformed or inconsistent input data (configs, expressions, Gram
    /// matrices, Betti vectors, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// An internal invariant was broken; indicates a bug, not bad input.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
