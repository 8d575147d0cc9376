use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("cannot factor {0}")]
    FactorInput(String),
    #[error("variable sets differ ({left} vs {right} variables)")]
    VarMismatch { left: usize, right: usize },
    #[error("coefficient domains differ")]
    DomainMismatch,
    #[error("monomial orderings differ")]
    OrderingMismatch,
    #[error("zero polynomial has no leading term")]
    ZeroPolynomial,
    #[error("{0}")]
    InvalidArgument(String),
    #[error("unit ideal: {0}")]
    UnitIdeal(String),
    #[error("ideal is not zero-dimensional (dimension {0})")]
    NotZeroDimensional(usize),
    #[error("ordering does not eliminate the dropped variables")]
    NotEliminating,
    #[error("no general position found after {attempts} coordinate changes for {ideal}")]
    GeneralPosition { attempts: usize, ideal: String },
    #[error("prime components are comparable: {0}")]
    ComparablePrimes(String),
    #[error("recursion depth limit {limit} exceeded while decomposing {ideal}")]
    RecursionLimit { limit: usize, ideal: String },
    #[error("modulus {0} is not supported (must be a prime below 2^62)")]
    Modulus(String),
}
