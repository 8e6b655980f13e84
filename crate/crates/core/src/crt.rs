//! Chinese remaindering.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::zp::{inv_mod, mul_mod, sub_mod};

/// Combine `(residue, modulus)` pairs with pairwise coprime moduli into the
/// unique residue in `[0, M)` modulo the product `M`.
pub fn crt_combine(pairs: &[(BigInt, BigInt)]) -> Result<(BigInt, BigInt)> {
    let mut x = BigInt::zero();
    let mut m = BigInt::one();
    for (r, n) in pairs {
        if !n.is_positive() {
            return Err(Error::OutOfRange(format!("modulus {n}")));
        }
        let e = m.extended_gcd(n);
        if !e.gcd.is_one() {
            return Err(Error::NonCoprimeModuli);
        }
        // x + m * ((r - x) * m^{-1} mod n)
        let t = ((r - &x) * e.x).mod_floor(n);
        x += &m * t;
        m *= n;
    }
    Ok((x, m))
}

/// Representative of `x mod m` in `(-m/2, m/2]`.
pub fn symmetric(x: &BigInt, m: &BigInt) -> BigInt {
    let r = x.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

/// Incremental Garner reconstruction over word-sized moduli.
#[derive(Clone, Debug)]
pub struct WordCrt {
    value: BigUint,
    modulus: BigUint,
}

impl Default for WordCrt {
    fn default() -> Self {
        Self {
            value: BigUint::zero(),
            modulus: BigUint::one(),
        }
    }
}

impl WordCrt {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, residue: u64, p: u64) -> Result<()> {
        let m_mod = (&self.modulus % p).to_u64().expect("reduced below p");
        let inv = inv_mod(m_mod, p).ok_or(Error::NonCoprimeModuli)?;
        let x_mod = (&self.value % p).to_u64().expect("reduced below p");
        let t = mul_mod(sub_mod(residue % p, x_mod, p), inv, p);
        self.value += &self.modulus * t;
        self.modulus *= p;
        Ok(())
    }

    pub fn modulus(&self) -> &BigUint {
        &self.modulus
    }

    pub fn value(&self) -> &BigUint {
        &self.value
    }

    pub fn symmetric(&self) -> BigInt {
        symmetric(
            &BigInt::from(self.value.clone()),
            &BigInt::from(self.modulus.clone()),
        )
    }
}
