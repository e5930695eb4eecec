use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} out of range (need an odd prime below 2^31)")]
    ModulusRange(u64),
    #[error("{0} is divisible by the modulus {1}")]
    ZeroResidue(i64, u64),
    #[error("length mismatch: expected {expected}, got {got}")]
    Length { expected: usize, got: usize },
    #[error("character index {0} is excluded here")]
    ExcludedCharacter(usize),
    #[error("singular matrix")]
    Singular,
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error("refused: {0}")]
    Refused(String),
}

pub type Result<T> = std::result::Result<T, Error>;
