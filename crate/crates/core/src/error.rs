use thiserror::Error;

/// Errors raised by the algebraic operations of this crate.
///
/// Verdicts (not locally nilpotent, not an eigenvector, no witness found, ...)
/// are ordinary return values; these variants are reserved for precondition
/// violations and exhausted budgets.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable count mismatch: {left} vs {right}")]
    NvarsMismatch { left: usize, right: usize },

    #[error("variable index {index} out of range for {nvars} variables")]
    VarOutOfRange { index: usize, nvars: usize },

    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("operation requires {expected} variables, got {got}")]
    WrongNvars { expected: usize, got: usize },

    #[error("zero polynomial not allowed here: {0}")]
    ZeroPolynomial(&'static str),

    #[error("constant polynomial not allowed here: {0}")]
    ConstantPolynomial(&'static str),

    #[error("division by zero")]
    DivisionByZero,

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("polynomial is not univariate")]
    NotUnivariate,

    #[error("zero derivation")]
    ZeroDerivation,

    #[error("nilpotence certificate missing or invalid: {0}")]
    NotNilpotent(String),

    #[error("malformed problem: {0}")]
    Malformed(String),

    #[error("not an automorphism: {0}")]
    NotAnAutomorphism(crate::automorphism::Obstruction),

    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
