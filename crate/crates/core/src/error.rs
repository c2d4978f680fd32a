use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid difference step: {0}")]
    InvalidStep(String),

    #[error("zero operator has no genre")]
    UndefinedGenre,

    #[error("operator kind mismatch: {0} vs {1}")]
    KindMismatch(&'static str, &'static str),

    #[error("inadmissible parameters for {family}: {reason}")]
    Inadmissible { family: String, reason: String },

    #[error("parameter degeneracy in {context}: vanishing factor {factor}")]
    Degenerate { context: String, factor: String },

    #[error("{0}")]
    Unsupported(String),

    #[error("wrong construction type: {0}")]
    WrongConstruction(String),

    #[error("hypothesis violated ({theorem}): {detail} at n = {n}")]
    Hypothesis {
        theorem: String,
        detail: String,
        n: i64,
    },

    #[error("no orthogonal polynomial at level {0}: Hankel determinant vanishes")]
    NoOps(usize),

    #[error("moment functional does not define moment of degree {0}")]
    MomentOutOfRange(usize),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
