use logdisc_core::arith::{is_rational_square, rat_valuation};
use logdisc_core::logpoly::disc_exact;
use logdisc_core::{classify, verify_certificate, Certificate, ClassifyConfig};
use num_bigint::BigUint;

#[test]
fn every_n_up_to_300_round_trips() {
    let cfg = ClassifyConfig::default();
    for n in 2..=300 {
        let cert = classify(n, &cfg).unwrap();
        assert!(cert.proves_non_square(), "n = {n}: {cert:?}");
        assert!(verify_certificate(n, &cert), "n = {n}: {cert:?}");
        assert_eq!(classify(n, &cfg).unwrap(), cert, "nondeterministic at {n}");
    }
}

#[test]
fn certificates_never_contradict_exact_values() {
    let cfg = ClassifyConfig::default();
    for n in 2..=60 {
        let cert = classify(n, &cfg).unwrap();
        let exact = disc_exact(n).unwrap().exact.unwrap();
        assert!(cert.proves_non_square());
        assert!(!is_rational_square(&exact), "n = {n}");
        if let Certificate::OddValuation { ell } = cert {
            let v = rat_valuation(&exact, &BigUint::from(ell)).unwrap();
            assert!(v % 2 != 0, "v_{ell}(disc F_{n}) = {v}");
        }
    }
}

#[test]
fn every_route_fires_somewhere() {
    let cfg = ClassifyConfig::default();
    let kinds: std::collections::BTreeSet<&str> = (1..=300)
        .map(|n| classify(n, &cfg).unwrap().kind())
        .collect();
    for k in [
        "TrivialN1",
        "NegativeSign",
        "OddValuation",
        "OddPrimePowerValuation",
        "SplitTheorem",
        "NonResidueWitness",
        "ExactNonSquare",
    ] {
        assert!(kinds.contains(k), "route {k} never used");
    }
}
