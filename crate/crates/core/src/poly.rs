//! Dense univariate polynomials over the integers and over prime fields,
//! with three independent resultant routes:
//!
//! * [`resultant_mod_p`]: product of `g` over the roots of a monic `f`,
//!   by a Euclidean remainder sequence in `F_p`;
//! * [`resultant_exact`]: the same product over `Z`, reconstructed by CRT
//!   from word-sized primes given an a-priori bound;
//! * [`resultant_prs`]: the Sylvester resultant via the subresultant PRS,
//!   used as a reference oracle.

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::crt::WordCrt;
use crate::error::{Error, Result};
use crate::prime::is_prime_u64;
use crate::zp::{inv_mod, mul_mod, pow_mod, sub_mod};

/// Integer polynomial, coefficients in ascending degree. The zero
/// polynomial has no coefficients; otherwise the last one is nonzero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::new(vec![c.into()])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Remainder modulo a monic divisor.
    pub fn rem_monic(&self, divisor: &Self) -> Result<Self> {
        if !divisor.is_monic() {
            return Err(Error::NotMonic);
        }
        let d = divisor.coeffs.len() - 1;
        let mut r = self.coeffs.clone();
        while r.len() > d {
            let top = r.pop().expect("nonempty");
            if top.is_zero() {
                continue;
            }
            let shift = r.len() - d;
            for (k, c) in divisor.coeffs[..d].iter().enumerate() {
                r[shift + k] -= &top * c;
            }
        }
        Ok(Self::new(r))
    }

    /// Sum of absolute values of the coefficients.
    pub fn l1_norm(&self) -> BigUint {
        self.coeffs.iter().map(|c| c.magnitude()).sum()
    }

    /// Positive gcd of the coefficients; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    fn exact_div(&self, d: &BigInt) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .map(|c| {
                    let (q, r) = c.div_rem(d);
                    debug_assert!(r.is_zero(), "inexact coefficient division");
                    q
                })
                .collect(),
        )
    }

    pub fn reduce(&self, p: u64) -> PrimeFieldPoly {
        PrimeFieldPoly::new(p, self.coeffs.iter().map(|c| residue(c, p)).collect())
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => c.to_string(),
                1 => format!("{c}*x"),
                _ => format!("{c}*x^{k}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// `c mod p` in `[0, p)`.
pub(crate) fn residue(c: &BigInt, p: u64) -> u64 {
    let r = (c.magnitude() % p).to_u64().expect("reduced below p");
    if c.sign() == Sign::Minus && r != 0 {
        p - r
    } else {
        r
    }
}

/// Polynomial over `F_p`, coefficients reduced into `[0, p)` and trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PrimeFieldPoly {
    modulus: u64,
    coeffs: Vec<u64>,
}

impl PrimeFieldPoly {
    pub fn new(modulus: u64, coeffs: Vec<u64>) -> Self {
        let mut coeffs: Vec<u64> = coeffs.into_iter().map(|c| c % modulus).collect();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { modulus, coeffs }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }
}

/// `Psi_n(x) = 1 + x + ... + x^(n-1)`, whose roots are the nontrivial
/// `n`-th roots of unity.
pub fn psi_poly(n: u64) -> IntPoly {
    assert!(n >= 1, "psi_poly needs n >= 1");
    IntPoly::new(vec![BigInt::one(); n as usize])
}

/// `r <- r mod m` for monic `m` over `F_p`, in place.
fn rem_monic_in_place(r: &mut Vec<u64>, m: &[u64], p: u64) {
    let d = m.len() - 1;
    while r.len() > d {
        let top = r.pop().expect("nonempty");
        if top != 0 {
            let shift = r.len() - d;
            for (k, &c) in m[..d].iter().enumerate() {
                let slot = &mut r[shift + k];
                *slot = sub_mod(*slot, mul_mod(top, c, p), p);
            }
        }
    }
    while r.last() == Some(&0) {
        r.pop();
    }
}

/// Product of `g` over the roots (with multiplicity) of monic `f`, in `F_p`.
pub(crate) fn product_over_roots(f: &[u64], g: &[u64], p: u64) -> u64 {
    debug_assert_eq!(f.last(), Some(&1));
    let mut a = f.to_vec();
    let mut b = g.to_vec();
    rem_monic_in_place(&mut b, &a, p);
    let mut acc = 1u64;
    loop {
        let da = (a.len() - 1) as u64;
        if da == 0 {
            return acc;
        }
        let Some(&lc) = b.last() else {
            return 0;
        };
        let db = (b.len() - 1) as u64;
        acc = mul_mod(acc, pow_mod(lc, da, p), p);
        if db == 0 {
            return acc;
        }
        // prod_{a(t)=0} b(t) = lc^da (-1)^(da db) prod_{b(s)=0} a(s)
        if da % 2 == 1 && db % 2 == 1 {
            acc = sub_mod(0, acc, p);
        }
        let inv = inv_mod(lc, p).expect("p prime and lc nonzero");
        for c in b.iter_mut() {
            *c = mul_mod(*c, inv, p);
        }
        rem_monic_in_place(&mut a, &b, p);
        std::mem::swap(&mut a, &mut b);
    }
}

/// `Res(f, g) mod p` for monic `f`, defined as the product of `g` over the
/// roots of `f`. Stable when `g` drops degree modulo `p`.
pub fn resultant_mod_p(f: &PrimeFieldPoly, g: &PrimeFieldPoly) -> Result<u64> {
    if f.modulus != g.modulus {
        return Err(Error::ModulusMismatch(f.modulus, g.modulus));
    }
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    Ok(product_over_roots(&f.coeffs, &g.coeffs, f.modulus))
}

/// Primes below `2^32` in descending order. Products of two residues fit
/// in a `u64`.
pub fn crt_primes() -> impl Iterator<Item = u64> {
    (3..1u64 << 32)
        .rev()
        .step_by(2)
        .filter(|&c| is_prime_u64(c))
}

/// `(sum |g_k|)^d`, a bound on `|prod g(t)|` over `d` points on the unit circle.
pub fn product_bound(g: &IntPoly, d: u64) -> BigUint {
    num_traits::pow(g.l1_norm(), d as usize)
}

/// Hadamard bound `(|f|_2 + 1)^deg g * (|g|_2 + 1)^deg f` on `|Res(f, g)|`,
/// valid with no assumption on the roots of `f`.
pub fn hadamard_bound(f: &IntPoly, g: &IntPoly) -> BigUint {
    let l2 = |p: &IntPoly| -> BigUint {
        let s: BigUint = p
            .coeffs()
            .iter()
            .map(|c| c.magnitude() * c.magnitude())
            .sum();
        s.sqrt() + 1u32
    };
    num_traits::pow(l2(g), f.degree().unwrap_or(0))
        * num_traits::pow(l2(f), g.degree().unwrap_or(0))
}

const MIN_CRT_PRIMES: usize = 3;

/// Exact `Res(f, g)` for monic `f`, reconstructed by CRT from enough
/// word-sized primes that their product exceeds `2 * bound`. The caller
/// guarantees `|Res(f, g)| <= bound`.
pub fn resultant_exact(f: &IntPoly, g: &IntPoly, bound: &BigUint) -> Result<BigInt> {
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    let target = bound * 2u32;
    let mut primes = Vec::new();
    let mut product = BigUint::one();
    for p in crt_primes() {
        if product > target && primes.len() >= MIN_CRT_PRIMES {
            break;
        }
        product *= p;
        primes.push(p);
    }
    let residues: Vec<u64> = primes
        .par_iter()
        .map(|&p| {
            let fp = f.reduce(p);
            let gp = g.reduce(p);
            product_over_roots(&fp.coeffs, &gp.coeffs, p)
        })
        .collect();
    if residues.iter().all(|&r| r == 0) {
        return Ok(BigInt::zero());
    }
    let mut crt = WordCrt::new();
    for (&r, &p) in residues.iter().zip(&primes) {
        crt.push(r, p)?;
    }
    let value = crt.symmetric();
    if value.magnitude() > bound {
        return Err(Error::BoundTooSmall(bound.to_string()));
    }
    Ok(value)
}

/// `lc(b)^(deg a - deg b + 1) * a mod b`.
fn pseudo_rem(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let db = b.coeffs.len() - 1;
    let lb = b.leading().expect("nonzero divisor").clone();
    let mut e = a.coeffs.len() as i64 - db as i64;
    let mut r = a.coeffs.clone();
    while r.len() > db && !r.is_empty() {
        let lr = r.pop().expect("nonempty");
        for c in r.iter_mut() {
            *c *= &lb;
        }
        let shift = r.len() - db;
        for (k, c) in b.coeffs[..db].iter().enumerate() {
            r[shift + k] -= &lr * c;
        }
        e -= 1;
        while r.last().is_some_and(Zero::is_zero) {
            r.pop();
        }
    }
    let r = IntPoly::new(r);
    if e > 0 {
        r.scale(&num_traits::pow(lb, e as usize))
    } else {
        r
    }
}

/// Sylvester resultant of two integer polynomials by the subresultant
/// polynomial remainder sequence. Zero if either input is zero.
pub fn resultant_prs(f: &IntPoly, g: &IntPoly) -> BigInt {
    let (Some(df), Some(dg)) = (f.degree(), g.degree()) else {
        return BigInt::zero();
    };
    let mut sign = 1i32;
    let (mut a, mut b) = if df < dg {
        if df % 2 == 1 && dg % 2 == 1 {
            sign = -1;
        }
        (g.clone(), f.clone())
    } else {
        (f.clone(), g.clone())
    };
    let (da, db) = (a.coeffs.len() - 1, b.coeffs.len() - 1);
    if db == 0 {
        return num_traits::pow(b.coeffs[0].clone(), da) * sign;
    }
    let ca = a.content();
    let cb = b.content();
    a = a.exact_div(&ca);
    b = b.exact_div(&cb);
    let t = num_traits::pow(ca, db) * num_traits::pow(cb, da);
    let mut g_acc = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let da = a.coeffs.len() - 1;
        let db = b.coeffs.len() - 1;
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            sign = -sign;
        }
        let r = pseudo_rem(&a, &b);
        a = b;
        b = r.exact_div(&(&g_acc * num_traits::pow(h.clone(), delta)));
        g_acc = a.leading().expect("nonzero").clone();
        if delta > 0 {
            h = num_traits::pow(g_acc.clone(), delta) / num_traits::pow(h, delta - 1);
        }
        match b.degree() {
            None => return BigInt::zero(),
            Some(0) => break,
            Some(_) => {}
        }
    }
    let da = a.coeffs.len() - 1;
    let lb = b.coeffs[0].clone();
    let h = num_traits::pow(lb, da) / num_traits::pow(h, da - 1);
    h * t * sign
}
