//! Integer factorization: trial division, perfect-power detection and
//! Pollard rho with Brent's cycle finding, with every cofactor certified by
//! [`is_prime`].

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::primes_upto;
use crate::error::{Error, Result};
use crate::prime::is_prime;
use crate::zp::mul_mod;

/// Default cap on rho iterations spent splitting a single composite.
pub const DEFAULT_RHO_BUDGET: u64 = 10_000_000;

const TRIAL_BOUND: u64 = 10_000;
const BATCH: u64 = 128;

/// Prime factorization `p -> multiplicity`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FactorMap(BTreeMap<BigUint, u32>);

impl FactorMap {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, p: BigUint, mult: u32) {
        *self.0.entry(p).or_insert(0) += mult;
    }

    pub fn get(&self, p: &BigUint) -> Option<u32> {
        self.0.get(p).copied()
    }

    pub fn primes(&self) -> impl Iterator<Item = &BigUint> {
        self.0.keys()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BigUint, u32)> {
        self.0.iter().map(|(p, &e)| (p, e))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn product(&self) -> BigUint {
        self.0
            .iter()
            .fold(BigUint::one(), |acc, (p, &e)| acc * p.pow(e))
    }
}

impl fmt::Display for FactorMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (p, e) in self.iter() {
            if !first {
                write!(f, " * ")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Factorization of a machine word by trial division.
pub fn factorize_u64(mut n: u64) -> BTreeMap<u64, u32> {
    let mut out = BTreeMap::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        while n.is_multiple_of(d) {
            *out.entry(d).or_insert(0) += 1;
            n /= d;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        *out.entry(n).or_insert(0) += 1;
    }
    out
}

pub fn factorize(x: &BigUint) -> Result<FactorMap> {
    factorize_with_budget(x, DEFAULT_RHO_BUDGET)
}

pub fn factorize_with_budget(x: &BigUint, budget: u64) -> Result<FactorMap> {
    if *x < BigUint::from(2u8) {
        return Err(Error::NotFactorable(x.clone()));
    }
    let mut out = FactorMap::new();
    let mut rest = x.clone();
    for p in primes_upto(TRIAL_BOUND) {
        if rest.is_one() {
            break;
        }
        let mut e = 0;
        loop {
            let (q, r) = rest.div_rem(&BigUint::from(p));
            if !r.is_zero() {
                break;
            }
            rest = q;
            e += 1;
        }
        if e > 0 {
            out.insert(BigUint::from(p), e);
        }
    }

    let mut stack = vec![(rest, 1u32)];
    while let Some((c, mult)) = stack.pop() {
        if c.is_one() {
            continue;
        }
        if is_prime(&c) {
            out.insert(c, mult);
            continue;
        }
        if let Some((root, k)) = perfect_power(&c) {
            stack.push((root, mult * k));
            continue;
        }
        let d = split(&c, budget)?;
        let other = &c / &d;
        stack.push((d, mult));
        stack.push((other, mult));
    }
    Ok(out)
}

/// `c = root^k` with `k >= 2` maximal-first, if any.
fn perfect_power(c: &BigUint) -> Option<(BigUint, u32)> {
    // every prime factor exceeds TRIAL_BOUND after trial division
    let max_k = (c.bits() as f64 / (TRIAL_BOUND as f64).log2()).floor() as u32;
    for k in (2..=max_k).rev() {
        let r = c.nth_root(k);
        if r.pow(k) == *c {
            return Some((r, k));
        }
    }
    None
}

/// A nontrivial divisor of the odd composite `n`.
fn split(n: &BigUint, budget: u64) -> Result<BigUint> {
    let mut spent = 0u64;
    for c in 1u64.. {
        if spent >= budget {
            break;
        }
        let found = match n.to_u64() {
            Some(small) => rho_u64(small, c, budget - spent, &mut spent).map(BigUint::from),
            None => rho_big(n, c, budget - spent, &mut spent),
        };
        if let Some(d) = found {
            if !d.is_one() && d != *n {
                return Ok(d);
            }
        }
    }
    Err(Error::FactorBudget(n.clone()))
}

fn rho_u64(n: u64, c: u64, budget: u64, spent: &mut u64) -> Option<u64> {
    let f = |y: u64| (mul_mod(y, y, n) + c % n) % n;
    let (mut x, mut y, mut ys) = (2u64, 2u64, 2u64);
    let mut g = 1u64;
    let mut q = 1u64;
    let mut r = 1u64;
    let mut used = 0u64;
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = f(y);
        }
        used += r;
        let mut k = 0;
        while k < r && g == 1 {
            ys = y;
            for _ in 0..BATCH.min(r - k) {
                y = f(y);
                q = mul_mod(q, x.abs_diff(y), n);
            }
            used += BATCH.min(r - k);
            g = q.gcd(&n);
            k += BATCH;
        }
        r *= 2;
        if used >= budget {
            *spent += used;
            return None;
        }
    }
    if g == n {
        loop {
            ys = f(ys);
            used += 1;
            g = x.abs_diff(ys).gcd(&n);
            if g > 1 || used >= budget {
                break;
            }
        }
    }
    *spent += used;
    (g > 1 && g < n).then_some(g)
}

fn rho_big(n: &BigUint, c: u64, budget: u64, spent: &mut u64) -> Option<BigUint> {
    let cc = BigUint::from(c);
    let f = |y: &BigUint| (y * y + &cc) % n;
    let diff = |a: &BigUint, b: &BigUint| if a > b { a - b } else { b - a };
    let mut x = BigUint::from(2u8);
    let mut y = x.clone();
    let mut ys = x.clone();
    let mut g = BigUint::one();
    let mut q = BigUint::one();
    let mut r = 1u64;
    let mut used = 0u64;
    while g.is_one() {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        used += r;
        let mut k = 0;
        while k < r && g.is_one() {
            ys = y.clone();
            for _ in 0..BATCH.min(r - k) {
                y = f(&y);
                q = (&q * diff(&x, &y)) % n;
            }
            used += BATCH.min(r - k);
            g = q.gcd(n);
            k += BATCH;
        }
        r *= 2;
        if used >= budget {
            *spent += used;
            return None;
        }
    }
    if g == *n {
        loop {
            ys = f(&ys);
            used += 1;
            g = diff(&x, &ys).gcd(n);
            if !g.is_one() || used >= budget {
                break;
            }
        }
    }
    *spent += used;
    (!g.is_one() && g != *n).then_some(g)
}

pub fn is_prime_power_u64(n: u64) -> Option<(u64, u32)> {
    let f = factorize_u64(n);
    if f.len() == 1 {
        f.into_iter().next()
    } else {
        None
    }
}
