use thiserror::Error;

/// Unified error type for the crate.
///
/// Shape problems (operands that can never be combined) are kept distinct
/// from value problems (operands of the right shape whose content rules the
/// operation out, e.g. a singular matrix passed to `inverse`).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Operand dimensions are incompatible for the named operation.
    #[error("shape mismatch in {op}: left is {lhs_rows}x{lhs_cols}, right is {rhs_rows}x{rhs_cols}")]
    ShapeMismatch {
        op: &'static str,
        lhs_rows: usize,
        lhs_cols: usize,
        rhs_rows: usize,
        rhs_cols: usize,
    },

    /// A square matrix was required but the operand is not square.
    #[error("{op} requires a square matrix, got {rows}x{cols}")]
    NotSquare {
        op: &'static str,
        rows: usize,
        cols: usize,
    },

    /// The matrix has no inverse over the two-element field.
    #[error("matrix is singular")]
    Singular,

    /// A coordinate or row/column index lies outside the ambient dimension.
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    /// The vertex matrix fails the general-position condition (delta = 0),
    /// so the coupled two-spin systems are degenerate and no transform exists.
    #[error("vertex matrix {encoding} is degenerate (delta = 0)")]
    DegenerateModel { encoding: String },

    /// Recursion level exceeds the configured cap.
    #[error("level {n} exceeds cap {cap} (dimension would be {dim})")]
    LevelTooLarge { n: usize, cap: usize, dim: usize },

    /// A full Fourier transform was requested beyond the dimension cap.
    #[error("transform dimension {dim} exceeds cap {cap}")]
    TransformTooLarge { dim: usize, cap: usize },

    /// A value table has the wrong number of entries.
    #[error("{op} expected {expected} values, found {found}")]
    LengthMismatch {
        op: &'static str,
        expected: usize,
        found: usize,
    },

    /// An edge appears twice in a correlation query.
    #[error("duplicate edge at face index {index}")]
    DuplicateEdge { index: usize },

    /// The operation only accepts edges on the first axis.
    #[error("{op} requires axis-1 edges")]
    WrongAxis { op: &'static str },

    /// A correlation query is empty.
    #[error("correlation query needs at least one edge")]
    EmptyQuery,

    /// The closed-form predictor only covers queries of up to four spins.
    #[error("predictor covers 1..=4 spins, got {k}")]
    PredictorScope { k: usize },

    /// A textual matrix encoding could not be parsed.
    #[error("bad matrix encoding {input:?}: expected nine characters '0'/'1'")]
    BadEncoding { input: String },

    /// A check whose admissibility window is tied to the reference
    /// arrangement of the coupled systems was asked about a matrix with a
    /// different arrangement.
    #[error("matrix {encoding} does not match the reference coupled-system arrangement")]
    NormalizationMismatch { encoding: String },

    /// A rational value that must be a probability lies outside [0, 1].
    #[error("value {value} is not a probability")]
    NotAProbability { value: String },
}

pub type Result<T> = std::result::Result<T, Error>;
