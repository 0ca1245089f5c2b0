use std::fs;
use std::path::PathBuf;

use fzeta_cli::run;
use serde_json::Value;

fn fzeta(args: &[&str]) -> fzeta_cli::Outcome {
    run(std::iter::once("fzeta").chain(args.iter().copied()))
}

fn json(args: &[&str]) -> (i32, Value) {
    let out = fzeta(args);
    (out.code, serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", out.stdout)))
}

fn statuses(report: &Value) -> Vec<(String, String)> {
    report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| (c["name"].as_str().unwrap().to_string(), c["status"].as_str().unwrap().to_string()))
        .collect()
}

#[test]
fn non_prime_characteristic_is_a_usage_error() {
    let out = fzeta(&["mzv", "--p", "4", "--index", "1"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("p must be prime"), "{}", out.stderr);
    assert!(out.stderr.contains("--p"));
}

#[test]
fn usage_errors_name_the_flag() {
    let out = fzeta(&["mzv", "--p", "3", "--l", "1,1"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("--l"), "{}", out.stderr);

    let out = fzeta(&["mzv", "--p", "3", "--index", "2,0"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("--index"), "{}", out.stderr);

    assert_eq!(fzeta(&["nonsense"]).code, 2);
    assert_eq!(fzeta(&["--help"]).code, 0);
}

#[test]
fn mzv_report_carries_value_and_term_counts() {
    let (code, r) = json(&["mzv", "--p", "3", "--l", "1", "--index", "2,1", "--prec", "40"]);
    assert_eq!(code, 0);
    assert_eq!(r["schema_version"], 1);
    let res = &r["results"][0];
    assert_eq!(res["value"], "1*z^12 + 2*z^16 + 1*z^24 + 2*z^28 + 1*z^36 + O(z^40)");
    assert_eq!(res["precision_achieved"], 40);
    assert!(res["terms_used"].as_u64().unwrap() > 0);
}

#[test]
fn budget_exceedance_reports_the_cap() {
    let out = fzeta(&["mzv", "--p", "3", "--index", "1", "--prec", "200", "--budget", "10", "--format", "text"]);
    assert_eq!(out.code, 1);
    assert!(out.stdout.contains("ERROR"), "{}", out.stdout);
    assert!(out.stdout.contains("10"), "{}", out.stdout);
}

#[test]
fn verify_period_passes() {
    let (code, r) = json(&["verify-period", "--p", "2", "--l", "1", "--index", "2", "--prec", "30"]);
    assert_eq!(code, 0);
    assert_eq!(statuses(&r), vec![("period/p2l1/s2".to_string(), "pass".to_string())]);
    assert!(r["checks"][0]["runtime_ms"].is_null());
}

#[test]
fn conventions_are_always_printed() {
    let out = fzeta(&["omega", "--p", "3", "--format", "text"]);
    for key in ["uniformizer:", "at slot:", "twisted form:"] {
        assert!(out.stdout.contains(key), "{key}");
    }
    let (_, r) = json(&["omega", "--p", "3"]);
    for key in ["uniformizer", "at_slot", "twisted_form"] {
        assert!(r["conventions"][key].is_string(), "{key}");
    }
}

#[test]
fn verification_commands_pass_on_small_inputs() {
    for args in [
        vec!["omega", "--p", "2", "--l", "1,2"],
        vec!["atpoly", "--p", "3", "--smax", "6"],
        vec!["cmpl", "--p", "3", "--index", "2,1"],
        vec!["verify-rat", "--p", "3", "--index", "1,2"],
        vec!["verify-derived", "--p", "2", "--index", "2,1", "--s", "2,3"],
        vec!["group-closure", "--p", "3", "--index", "1,2", "--samples", "30"],
        vec!["group-commutator", "--p", "3", "--index", "1,2", "--samples", "30"],
    ] {
        let (code, r) = json(&args);
        assert_eq!(code, 0, "{args:?}: {r}");
        assert!(statuses(&r).iter().all(|(_, s)| s == "pass"), "{args:?}");
    }
}

#[test]
fn group_commands_list_the_subclosure() {
    let (_, r) = json(&["group-closure", "--p", "3", "--index", "1,2", "--samples", "20"]);
    assert_eq!(r["results"][0]["closure"], "1;2;1,2");
}

#[test]
fn custom_cmpl_arguments_are_checked_for_convergence() {
    // ||theta^9|| is far beyond the convergence radius at s = 1
    let (code, r) = json(&["cmpl", "--p", "3", "--index", "1", "--u", "theta^9"]);
    assert_eq!(code, 1);
    assert_eq!(statuses(&r)[0].1, "fail");
}

#[test]
fn pitilde_reports_the_sign_in_odd_characteristic() {
    let (code, r) = json(&["pitilde", "--p", "2"]);
    assert_eq!(code, 0, "{r}");
    let (code, r) = json(&["pitilde", "--p", "3"]);
    assert_eq!(code, 1);
    assert!(r["checks"][0]["detail"].as_str().unwrap().contains("-1"));
}

#[test]
fn precision_one_gives_incomparable_not_failure() {
    let (_, r) = json(&["suite", "--prec", "1"]);
    let st = statuses(&r);
    assert!(st.iter().any(|(_, s)| s == "incomparable"));
    let failed: Vec<_> = st.iter().filter(|(_, s)| s == "fail" || s == "error").collect();
    // the only genuine failure is the sign of the period product at p = 3
    assert_eq!(failed.len(), 1, "{failed:?}");
    assert!(failed[0].0.starts_with("pitilde-two-path/p3"));
}

#[test]
fn timings_are_opt_in() {
    let (_, r) = json(&["verify-period", "--p", "2", "--index", "1", "--timings"]);
    assert!(r["checks"][0]["runtime_ms"].is_u64());
}

fn copy_fixtures(tag: &str) -> PathBuf {
    let src = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let dst = std::env::temp_dir().join(format!("fzeta-fixtures-{tag}-{}", std::process::id()));
    fs::create_dir_all(&dst).unwrap();
    for e in fs::read_dir(src).unwrap() {
        let e = e.unwrap();
        fs::copy(e.path(), dst.join(e.file_name())).unwrap();
    }
    dst
}

#[test]
fn tampered_golden_file_reports_first_differing_exponent() {
    let dir = copy_fixtures("tamper");
    let f = dir.join("mzv-p3l1-s2,1.txt");
    let text = fs::read_to_string(&f).unwrap();
    fs::write(&f, text.replace("1*z^24", "2*z^24")).unwrap();
    let (code, r) = json(&["suite", "--fixtures", dir.to_str().unwrap()]);
    assert_eq!(code, 1);
    let check = r["checks"].as_array().unwrap().iter().find(|c| c["name"] == "golden/mzv-p3l1-s2,1").unwrap();
    assert_eq!(check["status"], "fail");
    assert!(check["detail"].as_str().unwrap().contains("first differing exponent z^24"), "{check}");
    fs::remove_dir_all(dir).ok();
}

#[test]
fn bundled_goldens_match_a_fresh_bless() {
    let dir = std::env::temp_dir().join(format!("fzeta-bless-{}", std::process::id()));
    let out = fzeta(&["suite", "--bless", "--fixtures", dir.to_str().unwrap()]);
    assert_eq!(out.code, 0);
    let bundled = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    for e in fs::read_dir(&dir).unwrap() {
        let e = e.unwrap();
        let fresh = fs::read_to_string(e.path()).unwrap();
        let kept = fs::read_to_string(bundled.join(e.file_name())).unwrap();
        assert_eq!(fresh, kept, "{:?}", e.file_name());
    }
    fs::remove_dir_all(dir).ok();
}

#[test]
fn default_suite_fails_only_on_the_period_sign() {
    let (code, r) = json(&["suite"]);
    assert_eq!(code, 1);
    let bad: Vec<_> = statuses(&r).into_iter().filter(|(_, s)| s != "pass").collect();
    assert_eq!(bad, vec![("pitilde-two-path/p3l1".to_string(), "fail".to_string())]);
}
