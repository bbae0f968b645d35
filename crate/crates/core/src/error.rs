use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator vanishes at the evaluation point: factor {0}")]
    VanishingDenominator(String),
    #[error("variable count mismatch: {0} vs {1}")]
    VariableMismatch(usize, usize),
    #[error("box {0:?} is not in the diagram")]
    BoxOutside((usize, usize)),
    #[error("invalid index set: {0}")]
    InvalidIndexSet(String),
    #[error("invalid fixed-point label: {0}")]
    InvalidLabel(String),
    #[error("word is not reduced: {0:?}")]
    NotReduced(Vec<usize>),
    #[error("operator index {0} out of range for {1} variables")]
    IndexOutOfRange(usize, usize),
    #[error("input is not symmetric in the x block")]
    NotSymmetric,
    #[error("{0} variables cannot determine a symmetric function of degree bound {1}")]
    TooFewVariables(usize, usize),
    #[error("degree bound {0} exceeded; rerun with a larger bound (MACD_DEGREE_BOUND)")]
    DegreeOverflow(usize),
    #[error("non-integral coefficient in integral form {0}: {1}")]
    NotIntegral(String, String),
    #[error("linear system is singular or inconsistent: {0}")]
    Singular(String),
    #[error("consistency failure: {0}")]
    Inconsistent(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
