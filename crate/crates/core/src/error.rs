use num_bigint::BigInt;
use thiserror::Error;

/// Errors produced by the solver library.
///
/// `Internal` is reserved for violated invariants (a failed exact division
/// that a proven lemma guarantees, a zero `z` where the irrationality
/// argument forbids it). Callers should treat it as a bug, not bad input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero input to {0}")]
    ZeroInput(&'static str),
    #[error("gcd(0, 0) is undefined")]
    GcdUndefined,
    #[error("inputs are not coprime: {0}")]
    NotCoprime(String),
    #[error("malformed Gaussian integer {0:?}")]
    Parse(String),
    #[error("coefficient too large: norm {norm} needs trial division past {ceiling}")]
    FactorLimit { norm: BigInt, ceiling: u64 },
    #[error("equation is not in normal form")]
    NotNormal,
    #[error("trivial solution (0, 0, 0)")]
    TrivialSolution,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal invariant fault: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
