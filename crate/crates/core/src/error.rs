use thiserror::Error;

use crate::graph::GridFamily;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{family} requires {bound} (got m={m}, n={n})")]
    DimensionOutOfRange {
        family: GridFamily,
        bound: &'static str,
        m: usize,
        n: usize,
    },

    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("vertex ({i},{j}) is not in V_{m}x{n}")]
    VertexOutOfRange {
        i: usize,
        j: usize,
        m: usize,
        n: usize,
    },

    #[error("{operation} does not support {family}")]
    FamilyUnsupported {
        operation: &'static str,
        family: GridFamily,
    },

    #[error("{operation} needs {expected}, got {family} with m={m}")]
    WrongShape {
        operation: &'static str,
        expected: &'static str,
        family: GridFamily,
        m: usize,
    },

    #[error("{what} budget exceeded: {actual} > {limit}")]
    BudgetExceeded {
        what: &'static str,
        actual: usize,
        limit: usize,
    },

    #[error("invalid string {string:?}: {reason}")]
    InvalidString { string: String, reason: &'static str },

    #[error("{operation}: argument {value} out of range ({bound})")]
    ArgumentOutOfRange {
        operation: &'static str,
        value: i64,
        bound: &'static str,
    },

    /// An exact identity that must hold did not. Always a bug or a false theorem.
    #[error("identity violated in {context}: {detail}")]
    IdentityViolated { context: &'static str, detail: String },

    #[error("config error: {0}")]
    Config(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
