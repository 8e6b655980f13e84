//! Primality testing and prime iteration.
//!
//! Below `2^64` the Miller-Rabin test with the first twelve prime bases is
//! deterministic. Above that the Baillie-PSW test (strong base-2
//! Miller-Rabin plus a strong Lucas test with Selfridge parameters) is used.
//! BPSW has no known counterexample but is not proven, so results for
//! inputs `>= 2^64` are probable primes.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::jacobi;
use crate::zp::{mul_mod, pow_mod};

const SMALL_PRIMES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

fn strong_probable_prime_u64(n: u64, base: u64) -> bool {
    let d0 = n - 1;
    let s = d0.trailing_zeros();
    let d = d0 >> s;
    let mut x = pow_mod(base % n, d, n);
    if x == 1 || x == n - 1 {
        return true;
    }
    for _ in 1..s {
        x = mul_mod(x, x, n);
        if x == n - 1 {
            return true;
        }
    }
    false
}

/// Deterministic primality for every `u64`.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &SMALL_PRIMES {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    SMALL_PRIMES
        .iter()
        .all(|&b| strong_probable_prime_u64(n, b))
}

fn strong_probable_prime_big(n: &BigUint, base: &BigUint) -> bool {
    let one = BigUint::one();
    let n1 = n - &one;
    let s = n1.trailing_zeros().unwrap_or(0);
    let d = &n1 >> s;
    let mut x = base.modpow(&d, n);
    if x == one || x == n1 {
        return true;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if x == n1 {
            return true;
        }
    }
    false
}

fn half_mod(x: BigInt, n: &BigInt) -> BigInt {
    if x.is_odd() {
        (x + n) >> 1
    } else {
        x >> 1
    }
}

fn strong_lucas_probable_prime(n: &BigUint) -> bool {
    let nb = BigInt::from(n.clone());
    // Selfridge: first D in 5, -7, 9, -11, ... with (D/n) = -1.
    let mut d = 5i64;
    loop {
        match jacobi(&BigInt::from(d), n) {
            -1 => break,
            0 if BigInt::from(d.abs()) != nb => return false,
            _ => {}
        }
        d = if d > 0 { -(d + 2) } else { -d + 2 };
        if d.abs() == 61 {
            // a square would loop forever
            let r = n.sqrt();
            if &r * &r == *n {
                return false;
            }
        }
    }
    let disc = BigInt::from(d);
    let q = BigInt::from((1 - d) / 4).mod_floor(&nb);

    let np1 = n + 1u32;
    let s = np1.trailing_zeros().unwrap_or(0);
    let k = &np1 >> s;

    let mut u = BigInt::one();
    let mut v = BigInt::one();
    let mut qk = q.clone();
    for i in (0..k.bits() - 1).rev() {
        u = (&u * &v).mod_floor(&nb);
        v = (&v * &v - &qk - &qk).mod_floor(&nb);
        qk = (&qk * &qk).mod_floor(&nb);
        if k.bit(i) {
            let nu = half_mod(&u + &v, &nb);
            let nv = half_mod(&disc * &u + &v, &nb);
            u = nu.mod_floor(&nb);
            v = nv.mod_floor(&nb);
            qk = (&qk * &q).mod_floor(&nb);
        }
    }
    if u.is_zero() || v.is_zero() {
        return true;
    }
    for _ in 1..s {
        v = (&v * &v - &qk - &qk).mod_floor(&nb);
        if v.is_zero() {
            return true;
        }
        qk = (&qk * &qk).mod_floor(&nb);
    }
    false
}

/// Primality of `n`; deterministic below `2^64`, BPSW above.
pub fn is_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    for p in crate::arith::primes_upto(1000) {
        if (n % p).is_zero() {
            return false;
        }
    }
    strong_probable_prime_big(n, &BigUint::from(2u8)) && strong_lucas_probable_prime(n)
}

/// Smallest prime strictly greater than `n`.
pub fn next_prime_u64(n: u64) -> u64 {
    let mut c = n.checked_add(1).expect("next prime overflows u64");
    if c <= 2 {
        return 2;
    }
    if c.is_multiple_of(2) {
        c += 1;
    }
    while !is_prime_u64(c) {
        c += 2;
    }
    c
}

pub fn next_prime(n: &BigUint) -> BigUint {
    if let Some(small) = n.to_u64() {
        if small < u64::MAX - 100 {
            return BigUint::from(next_prime_u64(small));
        }
    }
    let mut c = n + 1u32;
    if c.is_even() {
        c += 1u32;
    }
    while !is_prime(&c) {
        c += 2u32;
    }
    c
}
