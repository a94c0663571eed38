use thiserror::Error;

/// Errors raised by the numeric and oracle routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An input lies outside the domain where the computation is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// `s - 1 = (n - 2) w + v` produced `w = 0` where the low branch needs to divide by it.
    #[error("degenerate division: w = 0 with epsilon = {epsilon} > 0")]
    DegenerateDivision { epsilon: i64 },

    /// The Δh profile failed its own degree check. Always a bug in the parameters.
    #[error("internal consistency error: sum of delta_h is {sum}, expected {expected}")]
    Consistency { sum: i64, expected: i64 },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("degenerate scroll: all a_i are zero")]
    DegenerateScroll,

    #[error("expected {expected} values, got {got}")]
    Arity { expected: usize, got: usize },

    #[error("divisor class variant does not match the scroll's class group")]
    VariantMismatch,

    /// The operation needs a particular scroll shape (vertex codimension, dimension).
    #[error("wrong scroll shape: {0}")]
    Shape(String),

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("negative duality value {0}: inconsistent Hilbert function")]
    NegativeDuality(i64),

    #[error("index {i} out of range: must satisfy {bound}")]
    Range { i: i64, bound: String },

    #[error("duplicate ruling parameter {0}")]
    DuplicateParameter(String),

    #[error("infeasible construction: {0}")]
    Infeasible(String),

    #[error("no generic instance found after {attempts} attempts")]
    NonGeneric { attempts: u32 },

    #[error("unmodeled variant: {0}")]
    UnmodeledVariant(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
