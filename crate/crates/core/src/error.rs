use thiserror::Error;

/// Errors raised by exact scalar arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cyclotomic orders differ: Q(zeta_{0}) vs Q(zeta_{1})")]
    OrderMismatch(u32, u32),
    #[error("unsupported cyclotomic order {0}")]
    UnsupportedOrder(u32),
    #[error("cannot parse rational from {0:?}")]
    Parse(String),
}

/// Errors raised by the truncated series engine.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SeriesError {
    #[error("invalid variable spec: {0}")]
    InvalidSpec(String),
    #[error("series live over different variable specs")]
    SpecMismatch,
    #[error("unknown variable {0:?}")]
    UnknownVariable(String),
    #[error("constant term is not invertible")]
    NotInvertible,
    #[error("infinite product does not terminate: every factor has a constant contribution")]
    NonTerminating,
    #[error("unbound variable {0:?}")]
    Unbound(String),
    #[error("|q| must be < 1 for numeric evaluation, got {0}")]
    QOutOfRange(f64),
    #[error("coefficient has no real numeric value")]
    NotReal,
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}
