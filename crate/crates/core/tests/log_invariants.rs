//! Structural identities of the truncated logarithm discriminant.

use logdisc_core::arith::{binomial_sign, lcm_upto, primes_upto};
use logdisc_core::certify::bertrand_prime;
use logdisc_core::logpoly::{
    disc_exact, disc_from_definition, disc_mod, f_tilde, p_n_mod, predicted_prime_power_residue,
    predicted_split_residue, reduced_coeffs,
};
use logdisc_core::poly::{product_bound, psi_poly, resultant_exact, resultant_prs};
use logdisc_core::prime::is_prime_u64;
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

#[test]
fn exact_matches_definition_up_to_64() {
    for n in 2..=64 {
        let exact = disc_exact(n).unwrap().exact.unwrap();
        assert_eq!(exact, disc_from_definition(n).unwrap(), "n = {n}");
    }
}

#[test]
fn report_is_self_consistent() {
    for n in 2..=30 {
        let r = disc_exact(n).unwrap();
        let rebuilt = r.frame()
            * logdisc_core::ExactRational::from_integer(r.p_n.clone().unwrap() * r.sign as i64);
        assert_eq!(Some(rebuilt), r.exact);
    }
}

#[test]
fn modular_disc_matches_exact_reduction() {
    for n in 2..=40u64 {
        let exact = disc_exact(n).unwrap().exact.unwrap();
        for l in (n + 1..n + 500).filter(|&l| is_prime_u64(l)) {
            let want = exact.mod_prime(l).expect("l > n is a unit");
            assert_eq!(disc_mod(n, l).unwrap(), want, "n = {n}, l = {l}");
        }
    }
}

#[test]
fn reduction_preserves_product_over_roots() {
    for n in 2..=40u64 {
        let psi = psi_poly(n);
        let full = resultant_prs(&psi, &f_tilde(n));
        let reduced = reduced_coeffs(n).unwrap().as_poly();
        assert_eq!(full, resultant_prs(&psi, &reduced), "n = {n}");
        let bound = product_bound(&reduced, n - 1);
        assert_eq!(full, resultant_exact(&psi, &reduced, &bound).unwrap());
    }
}

#[test]
fn prime_power_congruence() {
    for p in [3u64, 5, 7, 11, 13] {
        let mut n = p;
        let mut e = 1;
        while n <= 169 {
            let predicted = predicted_prime_power_residue(p, e).unwrap();
            assert_eq!(p_n_mod(n, p).unwrap(), predicted, "n = {p}^{e}");
            assert_ne!(predicted, 0);
            n *= p;
            e += 1;
        }
    }
}

#[test]
fn split_congruence() {
    for m in 2..=100u64 {
        for q in primes_upto(200 / m).into_iter().filter(|&q| q > m) {
            assert_eq!(
                p_n_mod(m * q, q).unwrap(),
                predicted_split_residue(m, q).unwrap(),
                "m = {m}, q = {q}"
            );
        }
    }
}

#[test]
fn bertrand_prime_congruence() {
    for n in (8..=100u64).step_by(4) {
        let l = bertrand_prime(n).unwrap();
        let lq = BigInt::from(lcm_upto(n)) / BigInt::from(l);
        let base = (lq % BigInt::from(l)).to_u64().unwrap();
        let mut v = 1u64;
        for _ in 0..n - 1 {
            v = v * base % l;
        }
        let predicted = (l - v) % l;
        assert_eq!(p_n_mod(n, l).unwrap(), predicted, "n = {n}");
        assert_ne!(predicted, 0);
    }
}

#[test]
fn sign_rule() {
    for n in 2..=60u64 {
        let exact = disc_exact(n).unwrap().exact.unwrap();
        assert_eq!(exact.is_negative(), matches!(n % 4, 2 | 3), "n = {n}");
        assert_eq!(binomial_sign(n) < 0, exact.numer().is_negative());
    }
}
