//! Routing each `n` to the cheapest argument that `disc(F_n)` is not a
//! rational square, and re-checking the resulting certificates.
//!
//! Routes, in order:
//!
//! 1. `n = 1`: trivial.
//! 2. `n = 2, 3 (mod 4)`: the discriminant is negative.
//! 3. `n = 0 (mod 4)`: `n = 4` exactly; otherwise a prime `l` in
//!    `(n/2, n-2)` has `v_l(disc)` odd.
//! 4. `n = 1 (mod 4)`: an odd prime power `p^e` has `v_p(disc)` odd; a split
//!    `n = m q` with `q > m` prime and `q` outside `E_m` has `v_q(disc)` odd;
//!    otherwise search for a prime `l > n` with `disc` a non-residue mod `l`,
//!    and as a last resort decide the square question exactly.

use serde::{Deserialize, Serialize};

use crate::arith::{is_rational_square, legendre_u64};
use crate::error::{Error, Result};
use crate::factor::factorize_u64;
use crate::logpoly::{disc_exact, disc_mod, is_exceptional, p_n_mod, valuation_parity_of_frame};
use crate::prime::{is_prime_u64, next_prime_u64};

/// Why `disc(F_n)` is (or is not known to be) outside `Q^x2`. The `n` it
/// refers to is carried alongside, not inside.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum Certificate {
    /// `n = 2, 3 (mod 4)`, so `disc(F_n) < 0`.
    NegativeSign,
    /// `v_ell(n / L_n^(n-1))` odd and `ell` coprime to `P_n`.
    OddValuation {
        #[serde(with = "decimal")]
        ell: u64,
    },
    /// `n = p^e`, `e` odd, `p` coprime to `P_n`.
    OddPrimePowerValuation {
        #[serde(with = "decimal")]
        p: u64,
        e: u32,
    },
    /// `n = m q`, `q > m` prime, `q` not in `E_m`.
    SplitTheorem {
        #[serde(with = "decimal")]
        m: u64,
        #[serde(with = "decimal")]
        q: u64,
    },
    /// `disc(F_n) = residue (mod ell)` is a quadratic non-residue.
    NonResidueWitness {
        #[serde(with = "decimal")]
        ell: u64,
        #[serde(with = "decimal")]
        residue: u64,
    },
    ExactNonSquare,
    TrivialN1,
    /// The exact discriminant is a rational square.
    Counterexample,
    Unresolved {
        witness_attempts: u64,
    },
}

impl Certificate {
    /// True for every variant that asserts `disc(F_n)` is not a square.
    pub fn proves_non_square(&self) -> bool {
        !matches!(
            self,
            Certificate::TrivialN1 | Certificate::Counterexample | Certificate::Unresolved { .. }
        )
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::NegativeSign => "NegativeSign",
            Certificate::OddValuation { .. } => "OddValuation",
            Certificate::OddPrimePowerValuation { .. } => "OddPrimePowerValuation",
            Certificate::SplitTheorem { .. } => "SplitTheorem",
            Certificate::NonResidueWitness { .. } => "NonResidueWitness",
            Certificate::ExactNonSquare => "ExactNonSquare",
            Certificate::TrivialN1 => "TrivialN1",
            Certificate::Counterexample => "Counterexample",
            Certificate::Unresolved { .. } => "Unresolved",
        }
    }
}

mod decimal {
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &u64, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<u64, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(D::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClassifyConfig {
    pub max_witness_attempts: u64,
    pub allow_exact_fallback: bool,
    pub exact_degree_cap: u64,
}

impl Default for ClassifyConfig {
    fn default() -> Self {
        Self {
            max_witness_attempts: 200,
            allow_exact_fallback: true,
            exact_degree_cap: 1000,
        }
    }
}

/// Smallest prime in `(n/2, n-2)` for `n = 0 (mod 4)`, `n >= 8`.
pub fn bertrand_prime(n: u64) -> Result<u64> {
    if n < 8 || !n.is_multiple_of(4) {
        return Err(Error::Hypotheses(format!(
            "need n = 0 (mod 4) and n >= 8, got {n}"
        )));
    }
    (n / 2 + 1..n - 2)
        .find(|&l| is_prime_u64(l))
        .ok_or_else(|| Error::Hypotheses(format!("no prime in ({}, {})", n / 2, n - 2)))
}

/// First prime `l > n` (scanning upward, at most `max_attempts` primes)
/// with `disc(F_n) mod l` a non-residue. Zero residues are skipped.
pub fn witness_search(n: u64, max_attempts: u64) -> Result<Option<(u64, u64)>> {
    let mut l = n;
    for _ in 0..max_attempts {
        l = next_prime_u64(l);
        if l == 2 {
            continue;
        }
        let r = disc_mod(n, l)?;
        if r != 0 && legendre_u64(r, l)? == -1 {
            return Ok(Some((l, r)));
        }
    }
    Ok(None)
}

fn theorem_route(n: u64) -> Result<Option<Certificate>> {
    match n % 4 {
        2 | 3 => Ok(Some(Certificate::NegativeSign)),
        0 if n == 4 => Ok(None),
        0 => {
            let ell = bertrand_prime(n)?;
            Ok((p_n_mod(n, ell)? != 0).then_some(Certificate::OddValuation { ell }))
        }
        _ => {
            let factors = factorize_u64(n);
            if factors.len() == 1 {
                let (&p, &e) = factors.iter().next().expect("one factor");
                if e % 2 == 1 && p_n_mod(n, p)? != 0 {
                    return Ok(Some(Certificate::OddPrimePowerValuation { p, e }));
                }
                return Ok(None);
            }
            let (&q, &vq) = factors.iter().next_back().expect("n > 1");
            let m = n / q;
            if vq == 1 && q > m && !is_exceptional(m, q)? && p_n_mod(n, q)? != 0 {
                return Ok(Some(Certificate::SplitTheorem { m, q }));
            }
            Ok(None)
        }
    }
}

/// Certificate for `disc(F_n)`, deterministic for a fixed config.
pub fn classify(n: u64, config: &ClassifyConfig) -> Result<Certificate> {
    if n == 0 {
        return Err(Error::OutOfRange("n must be positive".into()));
    }
    if n == 1 {
        return Ok(Certificate::TrivialN1);
    }
    if let Some(cert) = theorem_route(n)? {
        return Ok(cert);
    }
    if n != 4 {
        if let Some((ell, residue)) = witness_search(n, config.max_witness_attempts)? {
            return Ok(Certificate::NonResidueWitness { ell, residue });
        }
    }
    if n == 4 || (config.allow_exact_fallback && n <= config.exact_degree_cap) {
        let exact = disc_exact(n)?.exact.expect("exact requested");
        return Ok(if is_rational_square(&exact) {
            Certificate::Counterexample
        } else {
            Certificate::ExactNonSquare
        });
    }
    Ok(Certificate::Unresolved {
        witness_attempts: config.max_witness_attempts,
    })
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Re-derive every claim in `cert` for `n` from the core primitives.
/// `Err` carries a diagnostic.
pub fn check_certificate(n: u64, cert: &Certificate) -> std::result::Result<(), String> {
    let core = |e: Error| format!("computation failed: {e}");
    ensure(n >= 1, || "n must be positive".into())?;
    match *cert {
        Certificate::TrivialN1 => ensure(n == 1, || format!("TrivialN1 used for n = {n}")),
        Certificate::Unresolved { .. } => Err("unresolved certificates prove nothing".into()),
        Certificate::NegativeSign => ensure(matches!(n % 4, 2 | 3), || {
            format!("n = {n} is not 2 or 3 mod 4")
        }),
        Certificate::OddValuation { ell } => {
            ensure(n >= 2, || "n must be at least 2".into())?;
            ensure(is_prime_u64(ell), || format!("{ell} is not prime"))?;
            let v = valuation_parity_of_frame(n, ell);
            ensure(v % 2 != 0, || {
                format!("v_{ell}(n / L_n^(n-1)) = {v} is even")
            })?;
            let r = p_n_mod(n, ell).map_err(core)?;
            ensure(r != 0, || format!("{ell} divides P_{n}"))
        }
        Certificate::OddPrimePowerValuation { p, e } => {
            ensure(is_prime_u64(p), || format!("{p} is not prime"))?;
            ensure(e % 2 == 1, || format!("exponent {e} is even"))?;
            ensure(p.checked_pow(e) == Some(n), || format!("{p}^{e} != {n}"))?;
            let v = e as i64 * (2 - n as i64);
            ensure(v % 2 != 0, || format!("e (2 - n) = {v} is even"))?;
            let r = p_n_mod(n, p).map_err(core)?;
            ensure(r != 0, || format!("{p} divides P_{n}"))
        }
        Certificate::SplitTheorem { m, q } => {
            ensure(is_prime_u64(q), || format!("{q} is not prime"))?;
            ensure(m >= 2 && m.checked_mul(q) == Some(n), || {
                format!("{m} * {q} != {n}")
            })?;
            ensure(q > m, || format!("q = {q} does not exceed m = {m}"))?;
            ensure(n % 4 == 1, || format!("n = {n} is not 1 mod 4"))?;
            let exceptional = is_exceptional(m, q).map_err(core)?;
            ensure(!exceptional, || format!("{q} lies in E_{m}"))?;
            let r = p_n_mod(n, q).map_err(core)?;
            ensure(r != 0, || format!("{q} divides P_{n}"))
        }
        Certificate::NonResidueWitness { ell, residue } => {
            ensure(ell > n, || format!("witness prime {ell} does not exceed n"))?;
            ensure(is_prime_u64(ell), || format!("{ell} is not prime"))?;
            let r = disc_mod(n, ell).map_err(core)?;
            ensure(r == residue, || {
                format!("disc(F_{n}) = {r} (mod {ell}), certificate says {residue}")
            })?;
            let chi = legendre_u64(r, ell).map_err(core)?;
            ensure(chi == -1, || format!("{r} is a square mod {ell}"))
        }
        Certificate::ExactNonSquare | Certificate::Counterexample => {
            let exact = disc_exact(n).map_err(core)?.exact.expect("exact requested");
            let square = is_rational_square(&exact);
            let claims_square = matches!(cert, Certificate::Counterexample);
            ensure(square == claims_square, || {
                format!("exact discriminant {exact} square = {square}")
            })
        }
    }
}

pub fn verify_certificate(n: u64, cert: &Certificate) -> bool {
    check_certificate(n, cert).is_ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn classify_default(n: u64) -> Certificate {
        classify(n, &ClassifyConfig::default()).unwrap()
    }

    #[test]
    fn bertrand_fixtures() {
        assert_eq!(bertrand_prime(8), Ok(5));
        assert_eq!(bertrand_prime(12), Ok(7));
        assert_eq!(bertrand_prime(16), Ok(11));
        assert!(bertrand_prime(10).is_err());
        assert!(bertrand_prime(4).is_err());
    }

    #[test]
    fn witness_fixtures() {
        assert_eq!(witness_search(333, 10).unwrap(), Some((337, 157)));
        assert_eq!(witness_search(33, 10).unwrap(), Some((37, 14)));
        assert_eq!(witness_search(505, 10).unwrap(), Some((509, 200)));
        assert_eq!(witness_search(33, 0).unwrap(), None);
    }

    #[test]
    fn classify_fixtures() {
        assert_eq!(classify_default(1), Certificate::TrivialN1);
        assert_eq!(classify_default(6), Certificate::NegativeSign);
        assert_eq!(classify_default(4), Certificate::ExactNonSquare);
        assert_eq!(classify_default(8), Certificate::OddValuation { ell: 5 });
        assert_eq!(
            classify_default(13),
            Certificate::OddPrimePowerValuation { p: 13, e: 1 }
        );
        assert_eq!(
            classify_default(125),
            Certificate::OddPrimePowerValuation { p: 5, e: 3 }
        );
        assert_eq!(
            classify_default(33),
            Certificate::NonResidueWitness {
                ell: 37,
                residue: 14
            }
        );
        assert_eq!(classify_default(22), Certificate::NegativeSign);
        assert_eq!(
            classify_default(21),
            Certificate::SplitTheorem { m: 3, q: 7 }
        );
        assert_eq!(
            classify_default(65),
            Certificate::SplitTheorem { m: 5, q: 13 }
        );
        assert!(classify(0, &ClassifyConfig::default()).is_err());
    }

    #[test]
    fn unresolved_when_budget_and_fallback_are_off() {
        let cfg = ClassifyConfig {
            max_witness_attempts: 0,
            allow_exact_fallback: false,
            exact_degree_cap: 0,
        };
        assert_eq!(
            classify(9, &cfg).unwrap(),
            Certificate::Unresolved {
                witness_attempts: 0
            }
        );
        let cfg = ClassifyConfig {
            max_witness_attempts: 0,
            ..ClassifyConfig::default()
        };
        assert_eq!(classify(9, &cfg).unwrap(), Certificate::ExactNonSquare);
    }

    #[test]
    fn verify_fixtures() {
        assert!(verify_certificate(
            33,
            &Certificate::NonResidueWitness {
                ell: 37,
                residue: 14
            }
        ));
        assert!(!verify_certificate(
            33,
            &Certificate::NonResidueWitness {
                ell: 37,
                residue: 15
            }
        ));
        assert!(verify_certificate(25, &classify_default(25)));
        assert!(verify_certificate(9, &Certificate::ExactNonSquare));
        assert!(!verify_certificate(9, &Certificate::Counterexample));
        assert!(!verify_certificate(5, &Certificate::NegativeSign));
        // a valid odd valuation need not be the Bertrand prime
        assert!(verify_certificate(
            12,
            &Certificate::OddValuation { ell: 3 }
        ));
        assert!(!verify_certificate(
            12,
            &Certificate::OddValuation { ell: 13 }
        ));
        assert!(!verify_certificate(
            12,
            &Certificate::OddValuation { ell: 9 }
        ));
        assert!(!verify_certificate(
            25,
            &Certificate::OddPrimePowerValuation { p: 5, e: 2 }
        ));
        assert!(!verify_certificate(
            33,
            &Certificate::SplitTheorem { m: 3, q: 11 }
        ));
        assert!(!verify_certificate(2, &Certificate::TrivialN1));
        assert!(!verify_certificate(
            2,
            &Certificate::Unresolved {
                witness_attempts: 3
            }
        ));
    }

    #[test]
    fn serialized_shape() {
        let c = Certificate::NonResidueWitness {
            ell: 37,
            residue: 14,
        };
        let v = serde_json::to_value(&c).unwrap();
        assert_eq!(
            v,
            serde_json::json!({"type": "NonResidueWitness", "ell": "37", "residue": "14"})
        );
        let u = Certificate::Unresolved {
            witness_attempts: 200,
        };
        assert_eq!(
            serde_json::to_string(&u).unwrap(),
            r#"{"type":"Unresolved","witness_attempts":200}"#
        );
        let back: Certificate =
            serde_json::from_str(r#"{"type":"SplitTheorem","m":"5","q":"13"}"#).unwrap();
        assert_eq!(back, Certificate::SplitTheorem { m: 5, q: 13 });
        assert!(
            serde_json::from_str::<Certificate>(r#"{"type":"OddValuation","ell":"x"}"#).is_err()
        );
    }
}
