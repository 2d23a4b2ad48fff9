use std::process::{Command, Output};

fn ztl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ztl"))
        .args(args)
        .env_remove("ZTL_DIGITS")
        .output()
        .expect("ztl runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn verify_passes_with_exit_zero() {
    let o = ztl(&["verify", "main", "--k", "1", "--m", "1", "--theta", "0.25", "--digits", "20"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("PASS"));
}

#[test]
fn verify_accepts_negative_m_and_alpha() {
    let o = ztl(&["verify", "main", "--k", "2", "--m", "-1", "--alpha", "4", "--digits", "20", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("identity,k,m,theta,lhs,rhs,abs_res,rel_res,digits,seconds"));
    assert!(lines.next().unwrap().starts_with("main,2,-1,"));
}

#[test]
fn zero_m_is_a_usage_error() {
    let o = ztl(&["verify", "main", "--k", "1", "--m", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("m must be nonzero"));
}

#[test]
fn weight_cap_is_a_usage_error() {
    let o = ztl(&["verify", "main", "--k", "1", "--m", "8"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn unknown_identity_and_bad_flags_exit_two() {
    assert_eq!(ztl(&["verify", "nonsense"]).status.code(), Some(2));
    assert_eq!(ztl(&["verify", "main", "--k", "x"]).status.code(), Some(2));
    assert_eq!(ztl(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn psi_rejects_nonpositive_x() {
    let o = ztl(&["psi", "--k", "1", "--rho", "3", "--x", "-1", "--digits", "20"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn psi_lists_and_json() {
    let o = ztl(&["psi", "--k", "2", "--rho", "2", "--x", "0.5,1,2", "--digits", "20", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 3);
}

#[test]
fn psi_trace_goes_to_stderr() {
    let o = ztl(&["psi", "--k", "2", "--rho", "2", "--x", "1", "--strategy", "inverse_mellin", "--digits", "20", "--trace"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stderr(&o).contains("trace"));
    assert!(!stdout(&o).contains("trace"));
}

#[test]
fn sweep_covers_the_full_grid() {
    let o = ztl(&[
        "sweep", "--identity", "main", "--k", "1,2,3", "--m", "-2,-1,1,2", "--theta", "0,0.5,1", "--digits", "15",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 1 + 36);
}

#[test]
fn sweep_dedupes_and_skips() {
    let o = ztl(&[
        "sweep", "--identity", "eta,eisenstein", "--k", "1", "--m", "1,2", "--theta", "0.5", "--digits", "15",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    let rows: Vec<&str> = out.lines().skip(1).collect();
    assert_eq!(rows.len(), 2, "{out}");
    assert!(rows[0].starts_with("eta,1,0,0.5,"));
    assert!(rows[1].starts_with("eisenstein,1,2,0.5,"));
    assert!(stderr(&o).contains("skipping eisenstein"));
}

#[test]
fn sweep_empty_list_is_a_usage_error() {
    let o = ztl(&["sweep", "--identity", "main", "--m", ""]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn sweep_is_deterministic_across_jobs() {
    let args = ["sweep", "--identity", "main,quasimodular", "--k", "1,2", "--m", "-1,2", "--theta", "0,0.3", "--digits", "15"];
    let one = ztl(&[&args[..], &["--jobs", "1"]].concat());
    let many = ztl(&[&args[..], &["--jobs", "4"]].concat());
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, many.stdout);
}

#[test]
fn sweep_writes_to_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rows.csv");
    let o = ztl(&["sweep", "--k", "1", "--m", "1", "--digits", "15", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap().lines().count(), 2);
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.conf");
    std::fs::write(&path, "# grid\nidentity = main\nk = 1,2\nm = 1\ntheta = 0\ndigits = 18\n").unwrap();
    let cfg = path.to_str().unwrap();

    let o = ztl(&["sweep", "--config", cfg]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 3);
    assert!(out.lines().nth(1).unwrap().ends_with(",18,"));

    let o = ztl(&["sweep", "--config", cfg, "--k", "3", "--digits", "16"]);
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 2);
    assert!(out.lines().nth(1).unwrap().starts_with("main,3,1,"));
    assert!(out.lines().nth(1).unwrap().ends_with(",16,"));
}

#[test]
fn bad_config_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.conf");
    std::fs::write(&path, "colour = blue\n").unwrap();
    assert_eq!(ztl(&["sweep", "--config", path.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn digits_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_ztl"))
        .args(["verify", "quasimodular", "--k", "2", "--format", "csv"])
        .env("ZTL_DIGITS", "17")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).lines().nth(1).unwrap().ends_with(",17,"));
}

#[test]
fn timing_fills_seconds() {
    let o = ztl(&["verify", "lerch", "--k", "1", "--m", "1", "--digits", "15", "--format", "csv", "--timing"]);
    let row = stdout(&o).lines().nth(1).unwrap().to_string();
    assert!(!row.ends_with(','), "{row}");
}

#[test]
fn selftest_filter() {
    let o = ztl(&["selftest", "--filter", "gamma", "--digits", "20"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("gamma_reflection"));
    assert!(!out.contains("zeta_"));
    assert_eq!(ztl(&["selftest", "--filter", "nothing_matches"]).status.code(), Some(2));
}
