//! Integer and rational utilities: lcm, valuations, harmonic numbers,
//! quadratic characters and square tests.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::prime::is_prime;
use crate::rational::ExactRational;

/// Primes `<= n` by the sieve of Eratosthenes.
pub fn primes_upto(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut j = i * i;
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    out
}

/// Largest `k` with `p^k <= n`, by integer exponentiation.
pub fn floor_log(n: u64, p: u64) -> u32 {
    assert!(p >= 2);
    let mut k = 0;
    let mut pk = 1u64;
    while let Some(next) = pk.checked_mul(p) {
        if next > n {
            break;
        }
        pk = next;
        k += 1;
    }
    k
}

/// `L_n = lcm(1, ..., n)`, assembled as the product of maximal prime powers.
pub fn lcm_upto(n: u64) -> BigUint {
    let mut acc = BigUint::one();
    for p in primes_upto(n) {
        acc *= BigUint::from(p).pow(floor_log(n, p));
    }
    acc
}

/// `v_p(L_n)`.
pub fn lcm_valuation(n: u64, p: u64) -> u32 {
    if p > n {
        0
    } else {
        floor_log(n, p)
    }
}

/// Exponent of the largest power of `p` dividing `x`.
pub fn int_valuation(x: &BigInt, p: &BigUint) -> Result<u64> {
    if x.is_zero() {
        return Err(Error::ValuationOfZero);
    }
    if *p < BigUint::from(2u8) {
        return Err(Error::OutOfRange(format!("valuation base {p}")));
    }
    let mut m = x.magnitude().clone();
    if *p == BigUint::from(2u8) {
        return Ok(m.trailing_zeros().unwrap_or(0));
    }
    let mut v = 0;
    loop {
        let (q, r) = m.div_rem(p);
        if !r.is_zero() {
            return Ok(v);
        }
        m = q;
        v += 1;
    }
}

pub fn int_valuation_u64(x: &BigInt, p: u64) -> Result<u64> {
    int_valuation(x, &BigUint::from(p))
}

/// `v_p(numerator) - v_p(denominator)`.
pub fn rat_valuation(r: &ExactRational, p: &BigUint) -> Result<i64> {
    if r.is_zero() {
        return Err(Error::ValuationOfZero);
    }
    let top = int_valuation(r.numer(), p)? as i64;
    let bottom = int_valuation(r.denom(), p)? as i64;
    Ok(top - bottom)
}

/// `H_m = 1 + 1/2 + ... + 1/m` in lowest terms.
pub fn harmonic(m: u64) -> ExactRational {
    let l = BigInt::from(lcm_upto(m));
    let mut num = BigInt::zero();
    for k in 1..=m {
        num += &l / BigInt::from(k);
    }
    ExactRational::new(num, l).expect("lcm is nonzero")
}

/// Jacobi symbol `(a / n)` for odd positive `n`.
pub fn jacobi(a: &BigInt, n: &BigUint) -> i8 {
    assert!(n.is_odd(), "jacobi symbol needs an odd modulus");
    let nn = BigInt::from(n.clone());
    let mut a = a.mod_floor(&nn).magnitude().clone();
    let mut n = n.clone();
    let mut result = 1i8;
    let three = BigUint::from(3u8);
    let five = BigUint::from(5u8);
    let eight = BigUint::from(8u8);
    let four = BigUint::from(4u8);
    while !a.is_zero() {
        let tz = a.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            a >>= tz;
            let r = &n % &eight;
            if tz % 2 == 1 && (r == three || r == five) {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if &a % &four == three && &n % &four == three {
            result = -result;
        }
        a %= &n;
    }
    if n.is_one() {
        result
    } else {
        0
    }
}

/// Legendre symbol `(a / l)` for an odd prime `l`.
pub fn legendre_symbol(a: &BigInt, l: &BigUint) -> Result<i8> {
    if l.is_even() {
        return Err(Error::EvenModulus(l.clone()));
    }
    if !is_prime(l) {
        return Err(Error::NotPrime(l.clone()));
    }
    Ok(jacobi(a, l))
}

pub fn legendre_u64(a: u64, l: u64) -> Result<i8> {
    legendre_symbol(&BigInt::from(a), &BigUint::from(l))
}

/// Exact perfect-square test via the Newton integer square root.
pub fn is_square(x: &BigInt) -> bool {
    match x.sign() {
        Sign::Minus => false,
        Sign::NoSign => true,
        Sign::Plus => {
            let m = x.magnitude();
            let r = m.sqrt();
            &r * &r == *m
        }
    }
}

pub fn is_rational_square(r: &ExactRational) -> bool {
    !r.is_negative() && is_square(r.numer()) && is_square(r.denom())
}

/// `(-1)^C(n,2)`: negative exactly for `n = 2, 3 (mod 4)`.
pub fn binomial_sign(n: u64) -> i8 {
    match n % 4 {
        2 | 3 => -1,
        _ => 1,
    }
}
