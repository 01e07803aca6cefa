use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("variable tables do not match")]
    TableMismatch,
    #[error("axis {axis} out of range for {indep} independent variables")]
    AxisOutOfRange { axis: usize, indep: usize },
    #[error("jet order {requested} exceeds the configured cap {cap}")]
    OrderCap { requested: usize, cap: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("degenerate: {0}")]
    Degenerate(String),
    #[error("not weight-homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("matrix is not unimodular (det = {0})")]
    NotUnimodular(String),
    #[error("connection has torsion")]
    Torsion,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("unknown name `{0}`")]
    UnknownName(String),
    #[error("arity mismatch: expected {expected}, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("{0}")]
    Invalid(String),
    #[error("time budget exceeded")]
    BudgetExceeded,
}

pub type Result<T> = std::result::Result<T, Error>;
