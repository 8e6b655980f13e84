use logdisc_core::Certificate;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Certified,
    Counterexample,
    Unresolved,
}

impl Status {
    pub fn of(cert: &Certificate) -> Self {
        match cert {
            Certificate::Counterexample => Status::Counterexample,
            Certificate::Unresolved { .. } => Status::Unresolved,
            _ => Status::Certified,
        }
    }
}

/// One line of a sweep file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub n: u64,
    pub status: Status,
    pub certificate: Certificate,
    pub ms: u64,
    pub tool_version: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diagnostic: Option<String>,
}

impl SweepRecord {
    pub fn new(n: u64, certificate: Certificate, ms: u64) -> Self {
        Self {
            n,
            status: Status::of(&certificate),
            certificate,
            ms,
            tool_version: crate::TOOL_VERSION.to_string(),
            diagnostic: None,
        }
    }

    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("record serializes")
    }

    pub fn from_line(line: &str) -> serde_json::Result<Self> {
        serde_json::from_str(line)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wire_format() {
        let r = SweepRecord {
            n: 33,
            status: Status::Certified,
            certificate: Certificate::NonResidueWitness {
                ell: 37,
                residue: 14,
            },
            ms: 3,
            tool_version: "logdisc 0.1.0".into(),
            diagnostic: None,
        };
        assert_eq!(
            r.to_line(),
            r#"{"n":33,"status":"certified","certificate":{"type":"NonResidueWitness","ell":"37","residue":"14"},"ms":3,"tool_version":"logdisc 0.1.0"}"#
        );
    }

    #[test]
    fn status_follows_certificate() {
        assert_eq!(Status::of(&Certificate::NegativeSign), Status::Certified);
        assert_eq!(Status::of(&Certificate::TrivialN1), Status::Certified);
        assert_eq!(
            Status::of(&Certificate::Counterexample),
            Status::Counterexample
        );
        assert_eq!(
            Status::of(&Certificate::Unresolved {
                witness_attempts: 1
            }),
            Status::Unresolved
        );
    }

    #[test]
    fn every_variant_round_trips() {
        let certs = [
            Certificate::NegativeSign,
            Certificate::OddValuation { ell: 5 },
            Certificate::OddPrimePowerValuation { p: 13, e: 1 },
            Certificate::SplitTheorem { m: 5, q: 13 },
            Certificate::NonResidueWitness {
                ell: 337,
                residue: 157,
            },
            Certificate::ExactNonSquare,
            Certificate::TrivialN1,
            Certificate::Counterexample,
            Certificate::Unresolved {
                witness_attempts: 200,
            },
        ];
        for (i, c) in certs.into_iter().enumerate() {
            let mut r = SweepRecord::new(i as u64 + 1, c, 7);
            if i % 2 == 0 {
                r.diagnostic = Some("note".into());
            }
            assert_eq!(SweepRecord::from_line(&r.to_line()).unwrap(), r);
        }
    }
}
