use thiserror::Error;

/// Errors raised by the algebra, code and certification routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("gcd of two zero polynomials is undefined")]
    GcdOfZeros,
    #[error("modulus must have degree at least 1")]
    BadModulus,
    #[error("expected a non-constant polynomial")]
    ConstantPolynomial,
    #[error("cannot factor the zero polynomial")]
    FactorZero,
    #[error("malformed polynomial at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("extension degree m = {0} is outside 1..=20")]
    DegreeOutOfRange(u32),
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("field element has {got} coefficients, expected {expected}")]
    ElementLength { expected: usize, got: usize },
    #[error("exponent e = {e} is conjugate to 1: it lies in the coset {coset:?}")]
    ConjugateExponent { e: u64, coset: Vec<u64> },
    #[error("exponent e = {e} is outside 1..={max}")]
    ExponentOutOfRange { e: u64, max: u64 },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("family constraint violated: {0}")]
    Constraint(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
