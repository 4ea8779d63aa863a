use std::path::PathBuf;
use std::process::{Command, Output};

use ncchar_cli::report::RunReport;

fn ncchar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ncchar"))
        .args(args)
        .env_remove("NCCHAR_TOLERANCE_PROFILE")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn json_report(args: &[&str]) -> (RunReport, i32) {
    let mut all = args.to_vec();
    all.push("--json");
    let out = ncchar(&all);
    let report = RunReport::from_json(&stdout(&out)).unwrap_or_else(|e| {
        panic!("bad report for {args:?}: {e}\nstderr: {}", String::from_utf8_lossy(&out.stderr))
    });
    (report, out.status.code().unwrap())
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn roundtrip_on_maximally_mixed_qutrit() {
    let (r, code) = json_report(&["roundtrip", "--recipe", "max_mixed:3", "--rep", "su2:j=1"]);
    assert_eq!(code, 0);
    assert!(r.passed);
    let dev = r.deviations.iter().find(|d| d.name == "roundtrip").unwrap();
    assert!(dev.value <= 1e-9);
    assert_eq!(r.command, "roundtrip");
}

#[test]
fn werner_singlet_is_npt_and_tests_agree() {
    let (r, code) = json_report(&["ppt", "--recipe", "werner:p=1", "--dims", "2x2"]);
    assert_eq!(code, 0);
    assert_eq!(r.flags["ppt"], "NPT");
    assert_eq!(r.flags["agreement"], "AGREE");
    let direct = r.verdicts.iter().find(|v| v.name == "direct_partial_transpose").unwrap();
    assert!((direct.verdict.min_eigenvalue + 0.5).abs() < 1e-12);
}

#[test]
fn horodecki_state_is_ppt_and_tests_agree() {
    let (r, code) = json_report(&["ppt", "--recipe", "horodecki:a=0.3"]);
    assert_eq!(code, 0);
    assert!(r.flags["ppt"].starts_with("PPT"));
    assert_eq!(r.flags["agreement"], "AGREE");
    assert!(r.verdicts.iter().all(|v| v.verdict.is_psd));
}

#[test]
fn ppt_without_bipartition_is_a_usage_error() {
    let out = ncchar(&["ppt", "--recipe", "max_mixed:4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("bipartition"));
}

#[test]
fn finite_phi_matrix_on_z2() {
    let (r, code) = json_report(&["finite", "--builtin", "Z2", "--values", "1,0.5", "--action", "phi-matrix"]);
    assert_eq!(code, 0);
    let v = &r.verdicts[0];
    assert_eq!(v.name, "phi_matrix");
    assert!(v.verdict.is_psd);
    let m: Vec<Vec<[f64; 2]>> = serde_json::from_value(r.data["phi_matrix"].clone()).unwrap();
    assert_eq!(m, vec![vec![[1.0, 0.0], [0.5, 0.0]], vec![[0.5, 0.0], [1.0, 0.0]]]);
    assert_eq!(r.checks.get("phi_matrix_matches_blocks"), Some(&true));
}

#[test]
fn finite_phi_matrix_detects_non_positive_function() {
    let (r, code) = json_report(&["finite", "--builtin", "Z2", "--values", "1,-1.5"]);
    assert_eq!(code, 0);
    assert!(!r.verdicts[0].verdict.is_psd);
    assert!((r.verdicts[0].verdict.min_eigenvalue + 0.5).abs() < 1e-12);
}

#[test]
fn wrong_value_count_is_an_input_error() {
    let out = ncchar(&["finite", "--builtin", "S3", "--values", "1,0.5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
}

#[test]
fn malformed_state_file_is_a_parse_error() {
    let path = scratch("malformed.json");
    std::fs::write(&path, "[[[1,0],[0,0]],[[0,0],").unwrap();
    let out = ncchar(&["roundtrip", "--state", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("parse"));
}

#[test]
fn finite_blocks_of_a_pure_state_on_s3() {
    let (r, code) = json_report(&["finite", "--builtin", "S3", "--action", "blocks", "--recipe", "random:d=2,rank=1,seed=3"]);
    assert_eq!(code, 0);
    assert!(r.passed);
    let sum = r.data["block_trace_sum"].as_f64().unwrap();
    assert!((sum - 1.0).abs() < 1e-12);
    assert!(r.verdicts.iter().any(|v| v.name == "blocks" && v.verdict.is_psd));
}

#[test]
fn zero_roundtrip_tolerance_fails_with_exit_one() {
    let (r, code) = json_report(&["roundtrip", "--recipe", "random:d=4,rank=2,seed=9", "--roundtrip-tol", "0"]);
    assert_eq!(code, 1);
    assert!(!r.passed);
    assert!(r.deviations.iter().any(|d| d.name == "roundtrip" && !d.pass));
}

#[test]
fn negative_tolerance_is_rejected() {
    let out = ncchar(&["roundtrip", "--recipe", "max_mixed:2", "--identity-tol=-1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn report_file_matches_stdout_and_digest_is_stable() {
    let path = scratch("report.json");
    let args = ["analyze", "--recipe", "werner:p=0.5", "--dims", "2x2", "--report", path.to_str().unwrap()];
    let (a, code) = json_report(&args);
    assert_eq!(code, 0);
    let from_file = RunReport::from_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let (b, _) = json_report(&args);
    let strip = |mut r: RunReport| {
        r.timing_ms = 0.0;
        r
    };
    assert_eq!(strip(a.clone()), strip(from_file));
    assert_eq!(strip(a.clone()), strip(b));
    assert_eq!(a.schema_version, 1);
    assert_eq!(a.inputs.sha256.len(), 64);

    let (other, _) = json_report(&["analyze", "--recipe", "werner:p=0.6", "--dims", "2x2"]);
    assert_ne!(other.inputs.sha256, a.inputs.sha256);
}

#[test]
fn tolerance_profile_from_environment() {
    let run = |profile: Option<&str>| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_ncchar"));
        cmd.args(["roundtrip", "--recipe", "max_mixed:2", "--json"]);
        match profile {
            Some(p) => cmd.env("NCCHAR_TOLERANCE_PROFILE", p),
            None => cmd.env_remove("NCCHAR_TOLERANCE_PROFILE"),
        };
        let out = cmd.output().unwrap();
        (out.status.code().unwrap(), RunReport::from_json(&stdout(&out)).ok())
    };
    let (_, default) = run(None);
    let (_, strict) = run(Some("strict"));
    let (_, loose) = run(Some("loose"));
    let (d, s, l) = (default.unwrap(), strict.unwrap(), loose.unwrap());
    assert!(s.tolerances.identity < d.tolerances.identity);
    assert!(l.tolerances.identity > d.tolerances.identity);
    assert!(s.tolerances.roundtrip < d.tolerances.roundtrip);
    assert_eq!(run(Some("bogus")).0, 2);
}

#[test]
fn analyze_writes_csv_samples() {
    let path = scratch("samples.csv");
    let (r, code) = json_report(&["analyze", "--recipe", "random:d=3,rank=1,seed=5", "--csv", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(r.flags["purity"], "PURE");
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("phi,theta,psi,re,im"));
    assert!(lines.count() > 10);
}

#[test]
fn analyze_pure_entangled_pair() {
    let (r, code) = json_report(&["analyze", "--recipe", "bell", "--dims", "2x2"]);
    assert_eq!(code, 0);
    assert!(r.passed);
    assert_eq!(r.flags["purity"], "PURE");
    assert_eq!(r.flags["product"], "ENTANGLED");
    assert_eq!(r.checks.get("abelian_nonnegative"), Some(&true));
}

#[test]
fn ppt_embed_with_separable_decomposition() {
    let s = 0.5f64.sqrt();
    let dec = serde_json::json!([
        {"weight": 0.5, "left": [[1.0, 0.0], [0.0, 0.0]], "right": [[s, 0.0], [s, 0.0]]},
        {"weight": 0.5, "left": [[s, 0.0], [0.0, s]], "right": [[0.0, 0.0], [1.0, 0.0]]}
    ]);
    let path = scratch("decomposition.json");
    std::fs::write(&path, dec.to_string()).unwrap();
    let (r, code) = json_report(&[
        "finite", "--builtin", "S3", "--action", "ppt-embed", "--decomposition", path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{}", r.to_text());
    assert_eq!(r.checks["index_identity_exact"], true);
    assert_eq!(r.checks["factors_psd"], true);
    assert_eq!(r.checks["separable_phi_tilde_psd"], true);
    assert!(r.deviations.iter().all(|d| d.pass));
}

#[test]
fn ppt_embed_flags_entangled_state() {
    let (r, code) = json_report(&["finite", "--builtin", "D4", "--action", "ppt-embed", "--recipe", "werner:p=1"]);
    assert_eq!(code, 0);
    assert_eq!(r.flags["agreement"], "AGREE");
    let tilde = r.verdicts.iter().find(|v| v.name == "phi_tilde").unwrap();
    assert!(!tilde.verdict.is_psd);
}

#[test]
fn text_output_ends_with_result_line() {
    let out = ncchar(&["roundtrip", "--recipe", "horodecki:a=0.5", "--rep", "su2:1x1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("ncchar roundtrip"));
    assert!(text.trim_end().ends_with("PASS"));
}
