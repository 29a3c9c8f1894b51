use thiserror::Error;

use crate::signature::{Monomial, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at {line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("duplicate sort `{0}`")]
    DuplicateSort(String),

    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),

    #[error("undeclared sort `{0}`")]
    UndeclaredSort(String),

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("`{0}` is a reserved word and cannot name a generator")]
    ReservedName(String),

    #[error("generated name `{0}` collides with a declared generator")]
    NameCollision(String),

    #[error("circuit composition mismatch: {left} does not match {right}")]
    CircuitMismatch { left: Monomial, right: Monomial },

    #[error("tape composition mismatch: {left} does not match {right}")]
    TapeMismatch { left: Polynomial, right: Polynomial },

    #[error("type mismatch: {0}")]
    TypeMismatch(String),

    #[error("copier/discharger structure used but the signature does not enable it")]
    FrobeniusDisabled,

    #[error("operation not available in {0} mode")]
    ModeMismatch(&'static str),

    #[error("entry index ({row}, {col}) out of range for a {rows}x{cols} matrix")]
    IndexOutOfRange {
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },

    #[error("no interpretation given for `{0}`")]
    MissingInterpretation(String),

    #[error("invalid model: {0}")]
    InvalidModel(String),
}

pub type Result<T> = std::result::Result<T, Error>;
