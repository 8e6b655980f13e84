use std::collections::BTreeSet;
use std::process::Command;

use logdisc_cli::{run, run_sweep, verify_file, Filter, SweepConfig, SweepRecord};
use logdisc_core::Certificate;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("logdisc").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn records(path: &std::path::Path) -> Vec<SweepRecord> {
    std::fs::read_to_string(path)
        .unwrap()
        .lines()
        .map(|l| SweepRecord::from_line(l).unwrap())
        .collect()
}

#[test]
fn single_queries() {
    assert_eq!(
        call(&["disc", "4", "--exact"]),
        (0, "725/432\n".into(), String::new())
    );
    assert_eq!(call(&["disc", "4"]).1, "725/432\n");
    assert_eq!(call(&["disc", "333", "--mod", "337"]).1, "157\n");
    assert_eq!(call(&["pn", "3"]).1, "19\n");
    assert_eq!(call(&["pn", "21", "--mod", "3"]).1, "0\n");
    assert_eq!(call(&["xy", "3"]).1, "X=13/36\nY=11/6\nE={11}\n");
    assert_eq!(
        call(&["xy", "5"]).1,
        "X=3334111/12960000\nY=137/60\nE={101,137,3001}\n"
    );
}

#[test]
fn classify_prints_a_record() {
    let (code, out, _) = call(&["classify", "33"]);
    assert_eq!(code, 0);
    let rec = SweepRecord::from_line(out.trim()).unwrap();
    assert_eq!(
        rec.certificate,
        Certificate::NonResidueWitness {
            ell: 37,
            residue: 14
        }
    );
    let (code, out, _) = call(&[
        "classify",
        "9",
        "--max-witness-attempts",
        "0",
        "--no-exact-fallback",
    ]);
    assert_eq!(code, 4);
    assert!(out.contains("\"Unresolved\""));
}

#[test]
fn usage_and_failure_codes() {
    assert_eq!(call(&["disc", "4", "--bogus"]).0, 1);
    assert_eq!(call(&[]).0, 1);
    assert_eq!(call(&["frobnicate"]).0, 1);
    assert_eq!(call(&["disc", "4", "--exact", "--mod", "5"]).0, 1);
    assert_eq!(
        call(&["sweep", "--from", "9", "--to", "3", "--out", "/tmp/x"]).0,
        1
    );
    assert_eq!(call(&["--help"]).0, 0);
    // l <= n and composite moduli are computational failures
    let (code, _, err) = call(&["disc", "10", "--mod", "7"]);
    assert_eq!(code, 2);
    assert!(err.contains("modulus too small"));
    assert_eq!(call(&["pn", "10", "--mod", "9"]).0, 2);
    assert_eq!(call(&["verify", "/nonexistent/file.jsonl"]).0, 2);
    assert_eq!(
        call(&[
            "sweep",
            "--from",
            "2",
            "--to",
            "3",
            "--out",
            "/nonexistent/dir/s.jsonl"
        ])
        .0,
        2
    );
}

#[test]
fn sweep_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.jsonl");
    let p = path.to_str().unwrap();
    let (code, out, _) = call(&[
        "sweep", "--from", "2", "--to", "30", "--out", p, "--jobs", "3",
    ]);
    assert_eq!(code, 0, "{out}");
    assert!(out.starts_with("certified=29 unresolved=0 counterexamples=0"));
    let recs = records(&path);
    assert_eq!(recs.len(), 29);
    let ns: BTreeSet<u64> = recs.iter().map(|r| r.n).collect();
    assert_eq!(ns, (2..=30).collect());
    assert_eq!(call(&["verify", p]).0, 0);

    // tamper with one residue
    let body = std::fs::read_to_string(&path).unwrap();
    let tampered = body.replace(
        r#""ell":"37","residue":"29""#,
        r#""ell":"37","residue":"30""#,
    );
    assert_ne!(body, tampered);
    std::fs::write(&path, tampered).unwrap();
    let (code, _, err) = call(&["verify", p]);
    assert_eq!(code, 3);
    assert!(err.contains("n=25"), "{err}");
}

#[test]
fn verify_reports_open_cases() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("o.jsonl");
    let rec = SweepRecord::new(
        9,
        Certificate::Unresolved {
            witness_attempts: 0,
        },
        0,
    );
    std::fs::write(&path, format!("{}\n", rec.to_line())).unwrap();
    assert_eq!(call(&["verify", path.to_str().unwrap()]).0, 4);
    std::fs::write(&path, "").unwrap();
    assert_eq!(
        call(&["verify", path.to_str().unwrap()]).1,
        "records=0 valid=0 invalid=0 malformed=0 unresolved=0 counterexamples=0\n"
    );
}

#[test]
fn parallel_and_sequential_sweeps_agree() {
    let dir = tempfile::tempdir().unwrap();
    let strip = |path: &std::path::Path| -> BTreeSet<(u64, String)> {
        records(path)
            .into_iter()
            .map(|r| (r.n, serde_json::to_string(&r.certificate).unwrap()))
            .collect()
    };
    let mut cfg = SweepConfig::new(2, 120, dir.path().join("seq.jsonl"));
    cfg.jobs = 1;
    run_sweep(&cfg).unwrap();
    let seq = strip(&cfg.out.clone());
    cfg.jobs = 8;
    cfg.out = dir.path().join("par.jsonl");
    run_sweep(&cfg).unwrap();
    assert_eq!(strip(&cfg.out.clone()), seq);
    assert_eq!(seq.len(), 119);
}

#[test]
fn resume_after_interruption_matches_uninterrupted_run() {
    let dir = tempfile::tempdir().unwrap();
    let full = SweepConfig::new(2, 80, dir.path().join("full.jsonl"));
    run_sweep(&full).unwrap();

    // a partial run, then a torn final line
    let path = dir.path().join("resumed.jsonl");
    run_sweep(&SweepConfig::new(2, 40, &path)).unwrap();
    let mut body = std::fs::read_to_string(&path).unwrap();
    body.push_str(r#"{"n":41,"status":"cert"#);
    std::fs::write(&path, body).unwrap();

    let mut resumed = SweepConfig::new(2, 80, &path);
    resumed.resume = true;
    let summary = run_sweep(&resumed).unwrap();
    assert_eq!(summary.skipped, 39);
    assert_eq!(summary.certified, 40);

    let key = |p: &std::path::Path| -> Vec<(u64, Certificate)> {
        let mut v: Vec<_> = records(p)
            .into_iter()
            .map(|r| (r.n, r.certificate))
            .collect();
        v.sort_by_key(|(n, _)| *n);
        v
    };
    assert_eq!(key(&path), key(&full.out));
    let report = verify_file(&path).unwrap();
    assert_eq!((report.records, report.valid), (79, 79));

    // resuming a finished file is a no-op
    let again = run_sweep(&resumed).unwrap();
    assert_eq!((again.skipped, again.certified), (79, 0));
    assert_eq!(records(&path).len(), 79);
}

#[test]
fn mod4_filter() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = SweepConfig::new(1, 100, dir.path().join("m.jsonl"));
    cfg.filter = Filter::Mod4Eq1;
    let s = run_sweep(&cfg).unwrap();
    assert_eq!(s.certified, 25);
    assert!(records(&cfg.out).iter().all(|r| r.n % 4 == 1));
}

#[test]
fn binary_end_to_end() {
    let bin = env!("CARGO_BIN_EXE_logdisc");
    let out = Command::new(bin)
        .args(["disc", "333", "--mod", "337"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout), "157\n");
    let out = Command::new(bin).args(["disc", "--nope"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}
