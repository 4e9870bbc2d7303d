use num_bigint::BigUint;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("valuation of zero undefined")]
    ValuationOfZero,
    #[error("{0} is not prime")]
    NotPrime(BigUint),
    #[error("not a projective point")]
    NotProjectivePoint,
    #[error("degree below 2")]
    DegreeBelowTwo,
    #[error("p and q not coprime")]
    NotCoprime,
    #[error("form degree cap exceeded: degree {degree} > cap {cap}")]
    DegreeCap { degree: u128, cap: usize },
    #[error("S is missing bad-reduction prime {0}")]
    MissingBadPrime(BigUint),
    #[error("requires polynomial map")]
    NotPolynomial,
    #[error("map is not conjugate to a powering map")]
    NotPowering,
    #[error("powering pair is not rational")]
    IrrationalPoweringPair,
    #[error("{0} lies on the totally ramified pair")]
    OnPoweringPair(&'static str),
    #[error("exceptional point absent")]
    NoExceptionalPoint,
    #[error("{0} is not a rational exceptional point")]
    NotExceptional(String),
    #[error("u hits exceptional point")]
    HitsExceptional,
    #[error("window {m_max}x{n_max} exceeds orbit cap {cap}")]
    WindowCap { m_max: usize, n_max: usize, cap: usize },
    #[error("could not fully factor {0}")]
    Unfactored(BigUint),
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
