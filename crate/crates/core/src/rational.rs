//! Normalized arbitrary-precision fractions.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A fraction kept in lowest terms with a positive denominator.
///
/// Every constructor reduces, so `numer()` and `denom()` can be fed
/// straight to valuation queries. Zero is `0/1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExactRational(BigRational);

impl ExactRational {
    pub fn new(numer: BigInt, denom: BigInt) -> Result<Self> {
        if denom.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self(BigRational::new(numer, denom)))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Self(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Self(BigRational::zero())
    }

    pub fn one() -> Self {
        Self(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    /// Always positive.
    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn sign(&self) -> Sign {
        self.numer().sign()
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self(self.0.recip()))
    }

    pub fn pow(&self, exp: i32) -> Self {
        Self(num_traits::Pow::pow(&self.0, exp))
    }

    pub fn abs(&self) -> Self {
        Self(self.0.abs())
    }

    /// Residue of the fraction modulo a prime `p` not dividing the denominator.
    pub fn mod_prime(&self, p: u64) -> Option<u64> {
        let pb = BigInt::from(p);
        let den = u64::try_from(self.denom() % &pb).ok()?;
        let inv = crate::zp::inv_mod(den, p)?;
        let num = u64::try_from(self.numer().mod_floor_pos(&pb)).ok()?;
        Some(crate::zp::mul_mod(num, inv, p))
    }
}

trait ModFloorPos {
    fn mod_floor_pos(&self, m: &BigInt) -> BigInt;
}

impl ModFloorPos for BigInt {
    fn mod_floor_pos(&self, m: &BigInt) -> BigInt {
        let r = self % m;
        if r.is_negative() {
            r + m
        } else {
            r
        }
    }
}

impl From<BigInt> for ExactRational {
    fn from(n: BigInt) -> Self {
        Self::from_integer(n)
    }
}

impl From<BigUint> for ExactRational {
    fn from(n: BigUint) -> Self {
        Self::from_integer(BigInt::from(n))
    }
}

impl From<i64> for ExactRational {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl fmt::Display for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom().is_one() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl FromStr for ExactRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::OutOfRange(format!("not a rational number: {s:?}"));
        match s.split_once('/') {
            Some((n, d)) => {
                let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
                let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
                Self::new(n, d)
            }
            None => Ok(Self::from_integer(
                BigInt::from_str(s.trim()).map_err(|_| bad())?,
            )),
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr for ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: ExactRational) -> ExactRational {
                ExactRational(self.0.$method(rhs.0))
            }
        }
        impl<'a> $tr<&'a ExactRational> for &'a ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: &'a ExactRational) -> ExactRational {
                ExactRational((&self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for ExactRational {
    type Output = ExactRational;
    fn neg(self) -> ExactRational {
        ExactRational(-self.0)
    }
}

/// `v_p` of some integer or rational.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeValuation {
    pub prime: BigUint,
    pub exponent: i64,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> ExactRational {
        ExactRational::new(n.into(), d.into()).unwrap()
    }

    #[test]
    fn normalizes_eagerly() {
        let r = q(10, -4);
        assert_eq!(r.numer(), &BigInt::from(-5));
        assert_eq!(r.denom(), &BigInt::from(2));
        let z = q(0, -7);
        assert_eq!(z.denom(), &BigInt::from(1));
        assert!(z.is_zero());
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(
            ExactRational::new(1.into(), 0.into()),
            Err(Error::ZeroDenominator)
        );
    }

    #[test]
    fn display_and_parse() {
        assert_eq!(q(725, 432).to_string(), "725/432");
        assert_eq!(q(-6, 3).to_string(), "-2");
        assert_eq!("-19/12".parse::<ExactRational>().unwrap(), q(-19, 12));
        assert_eq!("14".parse::<ExactRational>().unwrap(), q(14, 1));
        assert!("x/2".parse::<ExactRational>().is_err());
    }

    #[test]
    fn residues() {
        // 13/36 mod 11: 36 = 3, 3^{-1} = 4, 13*4 = 52 = 8
        assert_eq!(q(13, 36).mod_prime(11), Some(8));
        assert_eq!(q(-1, 2).mod_prime(5), Some(2));
        assert_eq!(q(1, 5).mod_prime(5), None);
    }
}
