//! End-to-end runs of the `convinv` binary.

use std::path::PathBuf;
use std::process::{Command, Output};

use convinv::report::{MapReport, Report, Verdict};

fn codes(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("codes")
        .join(name)
}

fn convinv(args: &[&str], budget: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_convinv"));
    cmd.args(args).env_remove("CONVINV_BUDGET");
    if let Some(b) = budget {
        cmd.env("CONVINV_BUDGET", b);
    }
    cmd.output().expect("binary runs")
}

fn path(name: &str) -> String {
    codes(name).to_string_lossy().into_owned()
}

#[test]
fn dist_report_parses_back() {
    let code = path("diagonal.json");
    let out = convinv(
        &[
            "--json",
            "dist",
            "--code",
            &code,
            "--kind",
            "gencoldist",
            "--r",
            "2",
            "--j",
            "0",
        ],
        None,
    );
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let rep: Report = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(rep.kind, "gencoldist");
    assert_eq!(rep.value, Some(1));
    assert_eq!(
        (rep.params.n, rep.params.k, rep.params.noncat),
        (2, 2, false)
    );
    assert!(rep.certificate.is_some());
}

#[test]
fn old_flag_names_still_work() {
    let code = path("weight_gap.json");
    let out = convinv(
        &[
            "--json",
            "dist",
            "--code",
            &code,
            "--invariant",
            "free",
            "--degree",
            "2",
        ],
        None,
    );
    assert!(out.status.success());
    let rep: Report = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!((rep.kind.as_str(), rep.value), ("dfree", Some(2)));
}

#[test]
fn profile_and_flags() {
    let code = path("mds.json");
    let out = convinv(
        &[
            "--json", "dist", "--code", &code, "--kind", "profile", "--r", "2",
        ],
        None,
    );
    let rep: Report = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(rep.value, Some(5));
    assert_eq!(rep.profile.unwrap().values().last(), Some(&5));

    let out = convinv(&["--json", "dist", "--code", &code, "--kind", "mds"], None);
    let rep: Report = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(rep.holds, Some(true));
}

#[test]
fn oracle_needs_opt_in() {
    let code = path("mds.json");
    let args = [
        "oracle",
        "--code",
        &code,
        "--kind",
        "gencoldist",
        "--r",
        "1",
        "--j",
        "1",
    ];
    assert_eq!(convinv(&args, None).status.code(), Some(1));
    let mut slow = args.to_vec();
    slow.push("--unsafe-slow");
    let out = convinv(&slow, None);
    assert!(out.status.success());
    assert_eq!(
        String::from_utf8_lossy(&out.stdout).trim(),
        "gencoldist r=1 j=1: 2 (Proven)"
    );
}

#[test]
fn map_check_reports_witness() {
    let out = convinv(
        &[
            "--json",
            "map",
            "--domain",
            &path("shifted_domain.json"),
            "--codomain",
            &path("shifted_codomain.json"),
            "--images",
            &path("shifted_images.json"),
            "--check",
            "isometry",
        ],
        None,
    );
    assert!(out.status.success());
    let rep: MapReport = serde_json::from_slice(&out.stdout).unwrap();
    let Verdict::Plain(v) = rep.verdict else {
        panic!("plain verdict expected")
    };
    assert!(v.holds);
    assert_eq!(v.witness.unwrap().shifts, vec![1, 0]);
}

#[test]
fn input_errors_exit_one() {
    let missing = path("missing.json");
    let out = convinv(&["dist", "--code", &missing, "--kind", "dfree"], None);
    assert_eq!(out.status.code(), Some(1));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(
        &bad,
        r#"{"field": {"p": 4}, "n": 1, "k": 1, "generator": [[[1]]]}"#,
    )
    .unwrap();
    let out = convinv(&["info", "--code", bad.to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(1));

    let code = path("mds.json");
    let out = convinv(
        &[
            "dist",
            "--code",
            &code,
            "--kind",
            "gencoldist",
            "--r",
            "3",
            "--j",
            "0",
        ],
        None,
    );
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("order out of range"));
}

#[test]
fn budget_refusal_exits_two() {
    let code = path("mds.json");
    let out = convinv(
        &["dist", "--code", &code, "--kind", "limit", "--r", "1"],
        Some("windows=0"),
    );
    assert_eq!(out.status.code(), Some(2));
    // Plateau mode is the documented way around a refusal.
    let out = convinv(
        &[
            "dist", "--code", &code, "--kind", "limit", "--r", "1", "--mode", "plateau",
            "--window", "3",
        ],
        Some("windows=0"),
    );
    assert!(out.status.success());
}

#[test]
fn golden_subset_passes() {
    let out = convinv(&["golden", "--filter", "map-"], None);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.lines().filter(|l| l.starts_with("PASS")).count() >= 8);
    assert!(!text.contains("FAIL"));
}
