use std::process::{Command, Output};

use qsf::{from_json, run_outcomes, run_suite, sample_params, serialize_report, Format, SuiteConfig};
use qsf_core::catalog::{find_entry, list_entries, run_check, validate_params, Verdict};
use qsf_core::QContext;
use statrs::distribution::{ChiSquared, ContinuousCDF};

fn qsf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qsf")).args(args).env_remove("QSF_EPS").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn small(ids: &[&str], samples: usize) -> SuiteConfig {
    SuiteConfig { samples_per_entry: samples, include: ids.iter().map(|s| s.to_string()).collect(), ..Default::default() }
}

#[test]
fn samples_lie_in_declared_domains() {
    for e in list_entries() {
        for i in 0..200 {
            let p = sample_params(e, 42, i, 0.05, 0.95);
            validate_params(e, &p).unwrap_or_else(|err| panic!("{} #{i}: {err}", e.id));
            if let Some(&pv) = p.get("p") {
                assert!(pv < p["q"]);
            }
        }
    }
}

#[test]
fn sampled_checks_evaluate() {
    let ctx = QContext::new(0.5).unwrap();
    for e in list_entries() {
        for i in 0..20 {
            let p = sample_params(e, 7, i, 0.05, 0.95);
            let o = run_check(&ctx, e.id, &p).unwrap_or_else(|err| panic!("{} {p:?}: {err}", e.id));
            assert!(o.margin.is_finite(), "{o:?}");
        }
    }
}

#[test]
fn sampling_is_reproducible() {
    let e = find_entry("GAUTSCHI-Q").unwrap();
    assert_eq!(sample_params(e, 42, 17, 0.05, 0.95), sample_params(e, 42, 17, 0.05, 0.95));
    assert_ne!(sample_params(e, 42, 17, 0.05, 0.95), sample_params(e, 42, 18, 0.05, 0.95));
    assert_ne!(sample_params(e, 42, 17, 0.05, 0.95), sample_params(e, 43, 17, 0.05, 0.95));
}

#[test]
fn integer_parameter_is_uniform() {
    let e = find_entry("QPOCH-RATIO").unwrap();
    let draws = 10_000;
    let mut counts = [0usize; 50];
    for i in 0..draws {
        counts[sample_params(e, 42, i, 0.05, 0.95)["n"] as usize - 1] += 1;
    }
    let expected = draws as f64 / 50.0;
    let chi2: f64 = counts.iter().map(|&c| (c as f64 - expected).powi(2) / expected).sum();
    let critical = ChiSquared::new(49.0).unwrap().inverse_cdf(0.999);
    assert!(chi2 < critical, "chi2 = {chi2}, critical = {critical}");
}

#[test]
fn wide_ranges_are_log_uniform() {
    let e = find_entry("MEANS-GLA").unwrap();
    let n = 4000;
    let below_one = (0..n).filter(|&i| sample_params(e, 42, i, 0.05, 0.95)["a"] < 1.0).count();
    // ln 1 sits a third of the way through [ln 0.1, ln 100]
    let frac = below_one as f64 / n as f64;
    assert!((frac - 1.0 / 3.0).abs() < 0.03, "{frac}");
}

#[test]
fn suite_is_deterministic_across_thread_counts() {
    let base = small(&["GAUTSCHI-Q", "KYFAN-B", "TELESCOPE"], 50);
    let one = run_outcomes(&SuiteConfig { parallelism: 1, ..base.clone() }).unwrap();
    let auto = run_outcomes(&base).unwrap();
    for ((a_id, a), (b_id, b)) in one.iter().zip(&auto) {
        assert_eq!(a_id, b_id);
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(b) {
            assert_eq!(x.params, y.params);
            assert_eq!(x.margin.to_bits(), y.margin.to_bits());
            assert_eq!(x.verdict, y.verdict);
        }
    }
}

#[test]
fn exclude_leaves_one_entry() {
    let exclude = list_entries().iter().filter(|e| e.id != "MEANS-GLA").map(|e| e.id.to_string()).collect();
    let r = run_suite(&SuiteConfig { samples_per_entry: 100, exclude, ..Default::default() }).unwrap();
    assert_eq!(r.entries.len(), 1);
    assert_eq!(r.entries[0].id, "MEANS-GLA");
    assert_eq!(r.entries[0].pass, 100);
    assert_eq!(r.verdict, Verdict::Pass);
}

#[test]
fn failing_entries_keep_witnesses() {
    let r = run_suite(&small(&["SYMM-GAMMA-PROD"], 20)).unwrap();
    let e = &r.entries[0];
    assert_eq!(r.verdict, Verdict::Fail);
    assert!(e.fail > 0 && !e.failing_params.is_empty() && e.failing_params.len() <= qsf::suite::FAILING_KEPT);
    assert!(e.min_margin.unwrap() < 0.0);
    let ctx = QContext::new(0.5).unwrap();
    let again = run_check(&ctx, &e.id, e.argmin_params.as_ref().unwrap()).unwrap();
    assert_eq!(again.margin, e.min_margin.unwrap());
}

#[test]
fn report_round_trips() {
    let r = run_suite(&small(&["ADD1-A", "PSI-HALF"], 30)).unwrap();
    let json = String::from_utf8(serialize_report(&r, Format::Json).unwrap()).unwrap();
    let back = from_json(&json).unwrap();
    assert_eq!(back.entries, r.entries);
    assert_eq!(back.config, r.config);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.csv");
    std::fs::write(&path, serialize_report(&r, Format::Csv).unwrap()).unwrap();
    let csv = std::fs::read_to_string(&path).unwrap();
    assert_eq!(csv.lines().count(), 3);
    assert!(csv.starts_with("check_id,count,pass,fail,inconclusive,min_margin"));
}

#[test]
fn cli_eval() {
    let o = qsf(&["eval", "bracket", "--q", "0.5", "--x", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "value 1.5000000000000000e0");
    let o = qsf(&["eval", "gamma", "--q", "0.5", "--x", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("value 1.0000000000000000e0"), "{}", stdout(&o));
    assert_eq!(qsf(&["eval", "gamma", "--q", "0.5"]).status.code(), Some(2));
    assert_eq!(qsf(&["eval", "psi", "--q", "1.5", "--x", "1"]).status.code(), Some(2));
    assert_eq!(qsf(&["eval", "psideriv", "--q", "0.5", "--x", "1", "--k", "7"]).status.code(), Some(2));
}

#[test]
fn cli_eps_from_environment() {
    let bad = Command::new(env!("CARGO_BIN_EXE_qsf"))
        .args(["eval", "psi", "--q", "0.5", "--x", "1"])
        .env("QSF_EPS", "abc")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
    let flag_wins = Command::new(env!("CARGO_BIN_EXE_qsf"))
        .args(["eval", "psi", "--q", "0.5", "--x", "1", "--eps", "1e-12"])
        .env("QSF_EPS", "abc")
        .output()
        .unwrap();
    assert_eq!(flag_wins.status.code(), Some(0));
}

#[test]
fn cli_zero() {
    let o = qsf(&["zero", "--q", "0.5"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("x0         1.44636271560"), "{out}");
    assert!(out.contains("status     Converged"));
    assert_eq!(qsf(&["zero", "--q", "0.5", "--tol", "1e-20"]).status.code(), Some(2));
}

#[test]
fn cli_check_exit_codes() {
    let o = qsf(&["check", "MEANS-GLA", "--param", "a=1", "--param", "b=2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verdict pass"));
    let o = qsf(&["check", "SYMM-GAMMA-PROD", "--q", "0.5", "--param", "x=0.3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("verdict fail"));
    assert_eq!(qsf(&["check", "NOPE", "--q", "0.5"]).status.code(), Some(2));
    assert_eq!(qsf(&["check", "ADD1-A", "--q", "0.5", "--param", "x"]).status.code(), Some(2));
    assert_eq!(qsf(&["check", "ADD1-A", "--q", "0.5", "--param", "x=-3"]).status.code(), Some(2));
}

#[test]
fn cli_suite_and_identities() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("s.csv");
    let o = qsf(&[
        "suite",
        "--samples",
        "20",
        "--include",
        "MEANS-GLA,PSI-HALF",
        "--format",
        "csv",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(std::fs::read_to_string(&out).unwrap().lines().count(), 3);
    let o = qsf(&["suite", "--samples", "5", "--include", "SYMM-GAMMA-PROD"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(from_json(&stdout(&o)).is_ok());
    assert_eq!(qsf(&["suite", "--q-max", "0.99999"]).status.code(), Some(2));
    assert_eq!(qsf(&["suite", "--include", "NOPE"]).status.code(), Some(2));
    let o = qsf(&["identities", "--q", "0.5", "--n-max", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(!stdout(&o).contains("FAIL"));
}
