use thiserror::Error;

use crate::qcore::QError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Q(#[from] QError),
    #[error("unknown identifier '{0}'")]
    UnknownId(String),
    #[error("family {0} has no closed form")]
    NoClosedForm(&'static str),
    #[error("family {0} has no closed moment formula")]
    NoMomentFormula(&'static str),
    #[error("family {family}: p_{n} does not have degree {n}")]
    DegreeDeficiency { family: &'static str, n: usize },
    #[error("zero diagonal entry at row {0}")]
    ZeroDiagonal(usize),
    #[error("empty sequence")]
    EmptySequence,
    #[error("domain error: {0}")]
    Domain(String),
    #[error("no convergence: {0}")]
    Convergence(String),
}

pub type Result<T> = std::result::Result<T, Error>;
