use thiserror::Error;

use crate::finsupp::Index;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot take a root of negative value {0}")]
    NegativeRadicand(String),

    #[error("enclosure width must be positive, got {0}")]
    NonPositiveWidth(String),

    #[error("exponent must be a positive integer or `inf`, got {0}")]
    InvalidExponent(String),

    #[error("operator `{map}` cannot act on a {operand}")]
    KindMismatch { map: String, operand: &'static str },

    #[error("norm `{spec}` cannot measure a {operand}")]
    NormKindMismatch { spec: String, operand: &'static str },

    #[error("relabeling sends indices {first} and {second} to the same index {target}")]
    RelabelCollision { first: Index, second: Index, target: Index },

    #[error("operator `{map}` sends the nonzero vector {vector} to zero; induced norm is not definite")]
    NotDefinite { map: String, vector: String },

    #[error("index {0} appears more than once")]
    DuplicateIndex(Index),

    #[error("coefficients m^(-2/p) are irrational for p = {0}; use the geometric variant")]
    IrrationalCoefficients(u32),

    #[error("sequence `{0}` carries no limit coefficients")]
    NoLimitRule(String),

    #[error("comparison undecided after refinement to width {0}")]
    Undecided(String),

    #[error("cannot parse {what} from {input:?}: {reason}")]
    Parse { what: &'static str, input: String, reason: String },

    #[error("unknown demo `{0}`")]
    UnknownDemo(String),

    #[error("invalid configuration: {0}")]
    Config(String),
}

impl Error {
    pub(crate) fn parse(what: &'static str, input: &str, reason: impl Into<String>) -> Self {
        Error::Parse { what, input: input.to_string(), reason: reason.into() }
    }
}
