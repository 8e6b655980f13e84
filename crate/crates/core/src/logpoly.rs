//! Everything attached to the truncated logarithm polynomial
//! `F_n(x) = 1 + x + x^2/2 + ... + x^n/n`.
//!
//! With `L_n = lcm(1..n)` and `F~_n = L_n F_n`, the roots of `F_n'` are the
//! nontrivial `n`-th roots of unity, so
//!
//! ```text
//! disc(F_n) = (-1)^C(n,2) * n / L_n^(n-1) * P_n,   P_n = Res(Psi_n, A_n)
//! ```
//!
//! where `A_n` is `F~_n` reduced modulo `Psi_n = 1 + x + ... + x^(n-1)`.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::{binomial_sign, floor_log, harmonic, lcm_upto, primes_upto};
use crate::error::{Error, Result};
use crate::factor::factorize;
use crate::poly::{
    product_bound, product_over_roots, psi_poly, residue, resultant_exact, resultant_prs, IntPoly,
};
use crate::prime::is_prime_u64;
use crate::rational::{ExactRational, PrimeValuation};
use crate::zp::{inv_mod, mul_mod, pow_mod, sub_mod};

/// `n`, `L_n` and the coefficients `a_0..a_{n-2}` of `A_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedLogPoly {
    pub n: u64,
    pub l: BigInt,
    pub a: Vec<BigInt>,
}

impl ReducedLogPoly {
    pub fn as_poly(&self) -> IntPoly {
        IntPoly::new(self.a.clone())
    }
}

/// Discriminant data for one `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscReport {
    pub n: u64,
    pub sign: i8,
    pub p_n: Option<BigInt>,
    /// Valuations of `n / L_n^(n-1)`; primes with exponent zero are omitted.
    pub frame_valuations: Vec<PrimeValuation>,
    pub exact: Option<ExactRational>,
}

impl DiscReport {
    /// `n / L_n^(n-1)` rebuilt from `frame_valuations`.
    pub fn frame(&self) -> ExactRational {
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for v in &self.frame_valuations {
            let pk = num_traits::pow(
                BigInt::from(v.prime.clone()),
                v.exponent.unsigned_abs() as usize,
            );
            if v.exponent > 0 {
                num *= pk;
            } else {
                den *= pk;
            }
        }
        ExactRational::new(num, den).expect("nonzero denominator")
    }
}

/// `X(m)`, `Y(m)` and the exceptional primes `E_m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XYProfile {
    pub m: u64,
    pub x: ExactRational,
    pub y: ExactRational,
    pub exceptional: Vec<BigUint>,
}

pub fn reduced_coeffs(n: u64) -> Result<ReducedLogPoly> {
    if n < 2 {
        return Err(Error::OutOfRange(format!(
            "reduced coefficients need n >= 2, got {n}"
        )));
    }
    let l = BigInt::from(lcm_upto(n));
    let tail = &l / BigInt::from(n - 1);
    let mut a = Vec::with_capacity((n - 1) as usize);
    a.push(&l + &l / BigInt::from(n) - &tail);
    for k in 1..=n - 2 {
        a.push(&l / BigInt::from(k) - &tail);
    }
    Ok(ReducedLogPoly { n, l, a })
}

/// `F~_n = L_n F_n`: constant term `L_n`, coefficient `L_n / k` at `x^k`.
pub fn f_tilde(n: u64) -> IntPoly {
    let l = BigInt::from(lcm_upto(n));
    let mut c = Vec::with_capacity(n as usize + 1);
    c.push(l.clone());
    for k in 1..=n {
        c.push(&l / BigInt::from(k));
    }
    IntPoly::new(c)
}

/// `P_n = prod F~_n(t)` over the nontrivial `n`-th roots of unity.
pub fn p_n_exact(n: u64) -> Result<BigInt> {
    let a = reduced_coeffs(n)?.as_poly();
    let bound = product_bound(&a, n - 1);
    resultant_exact(&psi_poly(n), &a, &bound)
}

/// `L_n mod l` without forming `L_n`.
fn lcm_mod(n: u64, l: u64) -> u64 {
    primes_upto(n).into_iter().fold(1 % l, |acc, p| {
        mul_mod(acc, pow_mod(p, floor_log(n, p) as u64, l), l)
    })
}

/// Coefficients of `A_n` modulo the prime `l`.
fn reduced_coeffs_mod(n: u64, l: u64) -> Result<Vec<u64>> {
    if l > n {
        // every k <= n is a unit, so a_k = L (1/k - 1/(n-1))
        let lm = lcm_mod(n, l);
        let inv = |k: u64| inv_mod(k % l, l).expect("k < l");
        let tail = inv(n - 1);
        let mut a = Vec::with_capacity((n - 1) as usize);
        let a0 = (1 + inv(n) % l + l - tail) % l;
        a.push(mul_mod(lm, a0, l));
        for k in 1..=n - 2 {
            a.push(mul_mod(lm, sub_mod(inv(k), tail, l), l));
        }
        Ok(a)
    } else {
        Ok(reduced_coeffs(n)?.a.iter().map(|c| residue(c, l)).collect())
    }
}

/// `P_n mod l` for any prime `l`, including `l <= n`.
pub fn p_n_mod(n: u64, l: u64) -> Result<u64> {
    if n < 2 {
        return Err(Error::OutOfRange(format!("P_n needs n >= 2, got {n}")));
    }
    if !is_prime_u64(l) {
        return Err(Error::NotPrime(l.into()));
    }
    let a = reduced_coeffs_mod(n, l)?;
    let psi = vec![1u64; n as usize];
    Ok(product_over_roots(&psi, &a, l))
}

/// Valuations of `n / L_n^(n-1)` from `v_p(L_n) = floor(log_p n)`.
pub fn frame_valuations(n: u64) -> Vec<PrimeValuation> {
    primes_upto(n)
        .into_iter()
        .filter_map(|p| {
            let mut vn = 0i64;
            let mut m = n;
            while m.is_multiple_of(p) {
                m /= p;
                vn += 1;
            }
            let e = vn - (n as i64 - 1) * floor_log(n, p) as i64;
            (e != 0).then(|| PrimeValuation {
                prime: BigUint::from(p),
                exponent: e,
            })
        })
        .collect()
}

/// Sign and frame only; no resultant is computed.
pub fn disc_frame(n: u64) -> DiscReport {
    DiscReport {
        n,
        sign: binomial_sign(n),
        p_n: None,
        frame_valuations: frame_valuations(n),
        exact: None,
    }
}

/// Exact `disc(F_n)`; `n = 1` gives `1` by the degree-one convention.
pub fn disc_exact(n: u64) -> Result<DiscReport> {
    if n == 0 {
        return Err(Error::OutOfRange("disc needs n >= 1".into()));
    }
    let mut report = disc_frame(n);
    let p_n = if n == 1 { BigInt::one() } else { p_n_exact(n)? };
    let exact = report.frame() * ExactRational::from_integer(&p_n * report.sign as i64);
    report.p_n = Some(p_n);
    report.exact = Some(exact);
    Ok(report)
}

/// `disc(F_n) = (-1)^C(n,2) a_n^-1 Res(F_n, F_n')` with `Res` from the
/// subresultant PRS on `F~_n` and `F~_n'`, rescaled by `L_n^-(2n-1)`.
pub fn disc_from_definition(n: u64) -> Result<ExactRational> {
    if n < 2 {
        return Err(Error::OutOfRange(format!(
            "definitional oracle needs n >= 2, got {n}"
        )));
    }
    let f = f_tilde(n);
    let l = f.coeffs()[0].clone();
    let res = resultant_prs(&f, &f.derivative());
    let num = res * BigInt::from(n) * binomial_sign(n) as i64;
    ExactRational::new(num, num_traits::pow(l, (2 * n - 1) as usize))
}

/// `disc(F_n) mod l` for a prime `l > n`.
pub fn disc_mod(n: u64, l: u64) -> Result<u64> {
    if l <= n {
        return Err(Error::ModulusTooSmall { n, modulus: l });
    }
    let p = p_n_mod(n, l)?;
    let lm = lcm_mod(n, l);
    let frame = mul_mod(
        n % l,
        inv_mod(pow_mod(lm, n - 1, l), l).expect("L_n is a unit"),
        l,
    );
    let v = mul_mod(frame, p, l);
    Ok(if binomial_sign(n) < 0 {
        sub_mod(0, v, l)
    } else {
        v
    })
}

/// `L_m (1/m + x + x^2/2 + ... + x^(m-1)/(m-1))`.
fn x_integrand(m: u64, l: &BigInt) -> IntPoly {
    let mut c = Vec::with_capacity(m as usize);
    c.push(l / BigInt::from(m));
    for j in 1..m {
        c.push(l / BigInt::from(j));
    }
    IntPoly::new(c)
}

/// `X(m) = prod_{k=1}^{m-1} (1/m + w^k + w^(2k)/2 + ... + w^((m-1)k)/(m-1))`.
pub fn x_of(m: u64) -> Result<ExactRational> {
    if m < 2 {
        return Err(Error::OutOfRange(format!("X(m) needs m >= 2, got {m}")));
    }
    let l = BigInt::from(lcm_upto(m));
    let g = x_integrand(m, &l);
    let res = resultant_exact(&psi_poly(m), &g, &product_bound(&g, m - 1))?;
    ExactRational::new(res, num_traits::pow(l, (m - 1) as usize))
}

fn exceptional_filter(m: u64, l: &BigUint) -> bool {
    *l > BigUint::from(m) && (l * m) % 4u32 == BigUint::one()
}

/// `X(m)`, `Y(m)` and `E_m`: primes `l > m` with `m l = 1 (mod 4)` dividing
/// the numerator of `X(m)` or of `Y(m)`.
pub fn exceptional_set(m: u64) -> Result<XYProfile> {
    let x = x_of(m)?;
    let y = harmonic(m);
    let mut exceptional = Vec::new();
    for value in [&x, &y] {
        let num = value.numer().magnitude();
        if num.is_zero() {
            return Err(Error::OutOfRange(format!("vanishing invariant at m = {m}")));
        }
        if num.is_one() {
            continue;
        }
        for p in factorize(num)?.primes() {
            if exceptional_filter(m, p) && !exceptional.contains(p) {
                exceptional.push(p.clone());
            }
        }
    }
    exceptional.sort();
    Ok(XYProfile {
        m,
        x,
        y,
        exceptional,
    })
}

/// `q in E_m`, decided by divisibility alone (no factorization).
pub fn is_exceptional(m: u64, q: u64) -> Result<bool> {
    let qb = BigUint::from(q);
    if !is_prime_u64(q) || !exceptional_filter(m, &qb) {
        return Ok(false);
    }
    let q = BigInt::from(q);
    let x = x_of(m)?;
    let y = harmonic(m);
    Ok(x.numer().is_multiple_of(&q) || y.numer().is_multiple_of(&q))
}

/// `(L_n / n)^(n-1) mod p` for `n = p^e`.
pub fn predicted_prime_power_residue(p: u64, e: u32) -> Result<u64> {
    if p == 2 || !is_prime_u64(p) {
        return Err(Error::Hypotheses(format!("{p} is not an odd prime")));
    }
    if e == 0 {
        return Err(Error::Hypotheses("exponent must be positive".into()));
    }
    let n = p
        .checked_pow(e)
        .ok_or_else(|| Error::OutOfRange(format!("{p}^{e} overflows")))?;
    let base = BigInt::from(lcm_upto(n)) / BigInt::from(n);
    Ok(pow_mod(residue(&base, p), n - 1, p))
}

/// `(L_mq / q)^(mq-1) X(m)^q Y(m)^(q-1) mod q`, the predicted `P_mq mod q`.
pub fn predicted_split_residue(m: u64, q: u64) -> Result<u64> {
    if !is_prime_u64(q) {
        return Err(Error::Hypotheses(format!("{q} is not prime")));
    }
    if m < 2 || q <= m || m.is_multiple_of(q) {
        return Err(Error::Hypotheses(format!(
            "need prime q > m >= 2, got m = {m}, q = {q}"
        )));
    }
    let n = m
        .checked_mul(q)
        .ok_or_else(|| Error::OutOfRange("m q overflows".into()))?;
    let lq = BigInt::from(lcm_upto(n)) / BigInt::from(q);
    let x = x_of(m)?
        .mod_prime(q)
        .expect("denominator of X(m) is a unit mod q");
    let y = harmonic(m)
        .mod_prime(q)
        .expect("denominator of Y(m) is a unit mod q");
    let v = pow_mod(residue(&lq, q), n - 1, q);
    let v = mul_mod(v, pow_mod(x, q, q), q);
    Ok(mul_mod(v, pow_mod(y, q - 1, q), q))
}

pub(crate) fn valuation_parity_of_frame(n: u64, l: u64) -> i64 {
    let mut vn = 0i64;
    let mut m = n;
    while m.is_multiple_of(l) {
        m /= l;
        vn += 1;
    }
    vn - (n as i64 - 1) * crate::arith::lcm_valuation(n, l) as i64
}
