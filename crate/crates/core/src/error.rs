use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("non-invertible denominator: {0}")]
    NonInvertibleDenominator(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("pole at q = 1")]
    PoleAtOne,

    #[error("divergent infinite product: {0}")]
    Divergent(String),

    #[error("pole in a term of the relation at (n, k) = ({n}, {k})")]
    PoleInRelation { n: i64, k: i64 },

    #[error("pole in summand n = {0}")]
    PoleInTerm(i64),

    #[error("result is a pole")]
    Pole,

    #[error("unknown identifier: {0}")]
    UnknownId(String),
}

impl Error {
    /// Short machine-readable cause used in report records.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidArgument(_) => "invalid-argument",
            Error::NonInvertibleDenominator(_) => "non-invertible-denominator",
            Error::DivisionByZero => "division-by-zero",
            Error::PoleAtOne => "pole-at-one",
            Error::Divergent(_) => "divergent",
            Error::PoleInRelation { .. } => "pole-in-relation",
            Error::PoleInTerm(_) => "pole-in-term",
            Error::Pole => "pole",
            Error::UnknownId(_) => "unknown-id",
        }
    }
}
