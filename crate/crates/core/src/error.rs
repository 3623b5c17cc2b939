use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero: factor `{0}` vanishes")]
    DivisionByZero(String),
    #[error("divergent formal series")]
    DivergentSeries,
    #[error("not a unit monomial: {0}")]
    NotUnitMonomial(String),
    #[error("singular matrix")]
    Singular,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("uncertified truncation ({0}); increase shells")]
    Uncertified(String),
    #[error("satake parameter is not regular")]
    NotRegular,
    #[error("permutation is not in W_G^0")]
    NotInWg0,
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("invalid prime {0}")]
    InvalidPrime(u64),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("ratio varies across pairs: {0}")]
    RatioVaries(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
