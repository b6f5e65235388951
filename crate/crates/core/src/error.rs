use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{a} is not invertible modulo {m}")]
    NotInvertible { a: i64, m: u64 },

    #[error("domain error: {0}")]
    DomainError(String),

    #[error("gcd({a}, {alpha}) != 1")]
    NonCoprime { a: i64, alpha: u64 },

    #[error("degree {0} is not negative; the bundle is not strictly pseudoconvex")]
    NotPseudoconvex(String),

    #[error("invalid cone point (alpha={alpha}, rho={rho}, beta={beta}): {reason}")]
    InvalidConePoint {
        alpha: i64,
        rho: i64,
        beta: i64,
        reason: String,
    },

    #[error("gcd(q - 1, p) != 1 for (p, q) = ({p}, {q})")]
    GcdCondition { p: i64, q: i64 },

    #[error("pi exponent {0} outside [-4, 4]")]
    ExponentOverflow(i32),

    #[error("expected a rational value, got {0}")]
    ExponentMismatch(String),

    #[error("multiset subtraction infeasible: line {value} short by {missing}")]
    NegativeMultiplicity { value: String, missing: u64 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("schema error: {0}")]
    Schema(String),
}
