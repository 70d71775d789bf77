use thiserror::Error;

/// Errors raised by field, code, spectrum and bound computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrime(u64),
    #[error("{what} = {value} exceeds the cap {cap}")]
    CapExceeded { what: &'static str, value: u128, cap: u128 },
    #[error("F_{small} is not a subfield of F_{big}")]
    NotASubfield { small: u64, big: u64 },
    #[error("polynomial has zero constant term")]
    ZeroConstantTerm,
    #[error("length {n} is not coprime to q = {q}")]
    NotCoprime { n: u64, q: u64 },
    #[error("b = {b} outside [1, {max}]")]
    BOutOfRange { b: usize, max: usize },
    #[error("run distribution inconsistent with length {0}")]
    InconsistentDistribution(usize),
    #[error("word length {0} is odd")]
    OddLength(usize),
    #[error("polynomial does not divide x^{0} - 1")]
    NotADivisor(usize),
    #[error("{leader} is not a cyclotomic coset leader modulo {n}")]
    InvalidLeader { leader: usize, n: usize },
    #[error("designed distance {delta} outside [2, {n}]")]
    DeltaOutOfRange { delta: usize, n: usize },
    #[error("dimension {k} outside [1, {max}]")]
    KOutOfRange { k: usize, max: usize },
    #[error("the code is the zero code")]
    ZeroCode,
    #[error("check polynomial is not irreducible")]
    NotIrreducible,
    #[error("length {0} is not prime")]
    NotPrimeLength(usize),
    #[error("check polynomial does not have exactly two irreducible factors")]
    NotTwoZero,
    #[error("designed distance {0} lies outside every supported regime")]
    RegimeUnsupported(usize),
    #[error("no optimal Golomb ruler available for M = {0}")]
    GolombUnavailable(usize),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("value {value} is not within {tol} of an integer")]
    NumericResidual { value: String, tol: String },
    #[error("element is zero")]
    ZeroElement,
    #[error("orbit term {num}/{den} is not an integer")]
    NonIntegralOrbitTerm { num: String, den: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
