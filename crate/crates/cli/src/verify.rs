//! Re-checking a sweep file record by record.

use std::collections::HashSet;
use std::io::{self, BufRead, BufReader};
use std::path::Path;

use logdisc_core::certify::check_certificate;
use logdisc_core::Certificate;

use crate::record::{Status, SweepRecord};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub records: usize,
    pub valid: usize,
    /// `(n, diagnostic)` for records whose certificate does not check out.
    pub invalid: Vec<(u64, String)>,
    /// `(line number, reason)` for lines that are not records.
    pub malformed: Vec<(usize, String)>,
    pub unresolved: Vec<u64>,
    pub counterexamples: Vec<u64>,
}

impl VerifyReport {
    pub fn has_invalid(&self) -> bool {
        !self.invalid.is_empty() || !self.malformed.is_empty()
    }

    pub fn has_open_cases(&self) -> bool {
        !self.unresolved.is_empty() || !self.counterexamples.is_empty()
    }

    fn check(&mut self, rec: &SweepRecord, seen: &mut HashSet<u64>) {
        self.records += 1;
        if !seen.insert(rec.n) {
            self.invalid.push((rec.n, "duplicate record".into()));
            return;
        }
        if rec.status != Status::of(&rec.certificate) {
            self.invalid.push((
                rec.n,
                format!(
                    "status {:?} does not match certificate {}",
                    rec.status,
                    rec.certificate.kind()
                ),
            ));
            return;
        }
        if let Certificate::Unresolved { .. } = rec.certificate {
            self.unresolved.push(rec.n);
            return;
        }
        match check_certificate(rec.n, &rec.certificate) {
            Ok(()) => {
                self.valid += 1;
                if rec.certificate == Certificate::Counterexample {
                    self.counterexamples.push(rec.n);
                }
            }
            Err(why) => self.invalid.push((rec.n, why)),
        }
    }
}

/// Re-run the certificate check on every record of a JSONL sweep file.
pub fn verify_file(path: &Path) -> io::Result<VerifyReport> {
    let reader = BufReader::new(std::fs::File::open(path)?);
    let mut report = VerifyReport::default();
    let mut seen = HashSet::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        match SweepRecord::from_line(&line) {
            Ok(rec) => report.check(&rec, &mut seen),
            Err(e) => report.malformed.push((i + 1, e.to_string())),
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn write(lines: &[String]) -> (tempfile::TempDir, std::path::PathBuf) {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("v.jsonl");
        let mut body = lines.join("\n");
        if !lines.is_empty() {
            body.push('\n');
        }
        std::fs::write(&path, body).unwrap();
        (dir, path)
    }

    #[test]
    fn empty_file_is_valid() {
        let (_d, path) = write(&[]);
        let r = verify_file(&path).unwrap();
        assert_eq!(r, VerifyReport::default());
        assert!(!r.has_invalid());
    }

    #[test]
    fn tampered_residue_is_caught() {
        let good = SweepRecord::new(
            33,
            Certificate::NonResidueWitness {
                ell: 37,
                residue: 14,
            },
            1,
        );
        let bad = SweepRecord::new(
            33,
            Certificate::NonResidueWitness {
                ell: 37,
                residue: 15,
            },
            1,
        );
        let (_d, path) = write(&[good.to_line()]);
        assert_eq!(verify_file(&path).unwrap().valid, 1);
        let (_d, path) = write(&[bad.to_line()]);
        let r = verify_file(&path).unwrap();
        assert_eq!(r.invalid.len(), 1);
        assert_eq!(r.invalid[0].0, 33);
    }

    #[test]
    fn malformed_lines_carry_line_numbers() {
        let good = SweepRecord::new(6, Certificate::NegativeSign, 0).to_line();
        let (_d, path) = write(&[good, "{oops".into()]);
        let r = verify_file(&path).unwrap();
        assert_eq!(r.malformed.len(), 1);
        assert_eq!(r.malformed[0].0, 2);
        assert!(r.has_invalid());
    }

    #[test]
    fn status_mismatch_and_duplicates() {
        let mut rec = SweepRecord::new(6, Certificate::NegativeSign, 0);
        rec.status = Status::Unresolved;
        let dup = SweepRecord::new(7, Certificate::NegativeSign, 0).to_line();
        let (_d, path) = write(&[rec.to_line(), dup.clone(), dup]);
        let r = verify_file(&path).unwrap();
        assert_eq!(r.invalid.len(), 2);
        assert_eq!(r.valid, 1);
    }

    #[test]
    fn unresolved_is_flagged_not_invalid() {
        let rec = SweepRecord::new(
            9,
            Certificate::Unresolved {
                witness_attempts: 0,
            },
            0,
        );
        let (_d, path) = write(&[rec.to_line()]);
        let r = verify_file(&path).unwrap();
        assert!(!r.has_invalid());
        assert!(r.has_open_cases());
        assert_eq!(r.unresolved, vec![9]);
    }
}
