use num_bigint::BigUint;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("valuation of zero undefined")]
    ValuationOfZero,
    #[error("{0} is not prime")]
    NotPrime(BigUint),
    #[error("legendre symbol requires an odd prime modulus, got {0}")]
    EvenModulus(BigUint),
    #[error("denominator is zero")]
    ZeroDenominator,
    #[error("factorization budget exhausted on cofactor {0}")]
    FactorBudget(BigUint),
    #[error("cannot factor {0}")]
    NotFactorable(BigUint),
    #[error("moduli are not pairwise coprime")]
    NonCoprimeModuli,
    #[error("first polynomial must be monic")]
    NotMonic,
    #[error("moduli mismatch: {0} vs {1}")]
    ModulusMismatch(u64, u64),
    #[error("modulus too small: need a prime greater than {n}, got {modulus}")]
    ModulusTooSmall { n: u64, modulus: u64 },
    #[error("theorem hypotheses violated: {0}")]
    Hypotheses(String),
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("resultant bound {0} is too small for the reconstructed value")]
    BoundTooSmall(String),
}

pub type Result<T> = std::result::Result<T, Error>;
