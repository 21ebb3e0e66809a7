use thiserror::Error;

/// Failures surfaced by bicomplex arithmetic and the convergence analyses.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The operand lies in the null cone (is a zero divisor).
    #[error("operand lies in the null cone (|CN| = {cn_magnitude:e}, threshold {tolerance:e})")]
    SingularOperand { cn_magnitude: f64, tolerance: f64 },

    /// An operation produced NaN or an infinity.
    #[error("non-finite result from {op}")]
    NonFinite { op: &'static str },

    /// Term `index` (1-based) of an input sequence is NaN or infinite.
    #[error("term {index} is not finite")]
    NonFiniteTerm { index: u64 },

    /// The running sum or product overflowed at term `index`.
    #[error("partial result overflowed at term {index}")]
    NonFinitePartial { index: u64 },

    /// Term `index` (1-based) of a product lies in the null cone.
    #[error("term {index} lies in the null cone")]
    SingularTerm { index: u64 },

    #[error("invalid analysis configuration: {0}")]
    InvalidConfig(String),

    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
