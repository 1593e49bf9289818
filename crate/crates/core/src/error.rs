use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("argument must be positive, got 0")]
    Zero,
    #[error("p must be prime, got {0}")]
    NotPrime(u64),
    #[error("q = {0} is too small; PSL(2, q) requires q >= 4")]
    FieldTooSmall(u64),
    #[error("q = {p}^{f} does not fit the supported range")]
    FieldTooLarge { p: u64, f: u32 },
    #[error("conductor mismatch: {0} vs {1}")]
    ConductorMismatch(u64, u64),
    #[error("conductor {from} cannot be rebased to {to}")]
    BadRebase { from: u64, to: u64 },
    #[error("class {0} is p-singular; Brauer characters are only defined on p-regular classes")]
    PSingular(usize),
    #[error("unknown class id {0}")]
    UnknownClass(usize),
    #[error("r = {0} equals the characteristic p; the Brauer-character method only covers r != p")]
    RIsCharacteristic(u64),
    #[error("r must be prime, got {0}")]
    RNotPrime(u64),
    #[error("invalid exponent n = {0}")]
    BadExponent(u32),
    #[error("search bound must be at least 1, got {0}")]
    BadBound(i64),
    #[error("character set must not be empty")]
    NoCharacters,
    #[error("malformed partial augmentation data: {0}")]
    Malformed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
