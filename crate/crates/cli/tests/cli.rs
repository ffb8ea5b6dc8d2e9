use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn primint(args: &[&str]) -> Output {
    primint_in(args, None)
}

fn primint_in(args: &[&str], cache: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_primint"));
    cmd.args(args).arg("--quiet").env_remove("PRIMINT_CACHE_DIR").env_remove("PRIMINT_ZEROS");
    if let Some(dir) = cache {
        cmd.env("PRIMINT_CACHE_DIR", dir);
    }
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn constants_lists_the_named_constants() {
    let o = primint(&["constants", "--format", "csv"]);
    assert!(o.status.success());
    let s = stdout(&o);
    for name in ["B,", "C,", "K,", "lambda0,"] {
        assert!(s.lines().any(|l| l.starts_with(name)), "{name} missing from\n{s}");
    }
}

#[test]
fn integrals_vanish_at_two() {
    let o = primint(&["integrals", "--points", "2", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let row = &v[0];
    assert_eq!(row["x"], serde_json::json!(2.0));
    for col in [
        "int_pi_minus_li",
        "int_pi_minus_li_over_t2",
        "int_pi_minus_li_logt_over_t2",
        "int_theta_minus_t",
        "int_theta_minus_t_over_t2",
        "r1",
        "int_psi_minus_t_over_t2",
        "int_pi_riemann_minus_li",
    ] {
        assert_eq!(row[col].as_f64(), Some(0.0), "{col}");
    }
}

#[test]
fn verify_a_sign_claim_up_to_a_million() {
    let o = primint(&["verify", "--spec", "prop101.negativity", "--max-x", "1e6"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("prime_jumps"));
}

#[test]
fn verify_a_bracket_with_detail() {
    let o = primint(&["verify", "--spec", "thm102.upper", "--max-x", "1e5", "--detail", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let rows = v.as_array().unwrap();
    let asserted: Vec<_> = rows.iter().filter(|r| r["asserted"] == serde_json::json!(true)).collect();
    assert!(!asserted.is_empty() && asserted.len() < rows.len());
    assert!(asserted.iter().all(|r| r["pass"] == serde_json::json!(true) && r["x"].as_f64().unwrap() >= 289.0));
}

#[test]
fn unknown_spec_is_a_usage_error() {
    let o = primint(&["verify", "--spec", "nope.upper", "--max-x", "1e4"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn max_x_beyond_the_stretch_limit_is_rejected() {
    let o = primint(&["integrals", "--max-x", "1e11"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bad_config_reports_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.conf");
    fs::write(&path, "# defaults\nmax_x = 1e6\ncolour = blue\n").unwrap();
    let o = primint(&["--config", path.to_str().unwrap(), "constants"]);
    assert_eq!(o.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&o.stderr).contains(":3:"));
}

#[test]
fn config_sets_defaults_and_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.conf");
    fs::write(&path, "format = json\npoints = 10,100\n").unwrap();
    let c = path.to_str().unwrap();
    let o = primint(&["--config", c, "integrals"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 2);
    let o = primint(&["--config", c, "integrals", "--format", "csv"]);
    assert!(stdout(&o).starts_with("x,pi,"));
}

#[test]
fn malformed_zero_table_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("zeros.txt");
    fs::write(&path, "14.134725141734693\nnot-a-number\n").unwrap();
    let o = primint(&["zeros", "--file", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(5));
}

#[test]
fn output_file_and_cache() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let out = dir.path().join("out.csv");
    let args = ["integrals", "--points", "geom:10:1e5:5", "-o", out.to_str().unwrap()];
    let o = primint_in(&args, Some(&cache));
    assert!(o.status.success());
    let first = fs::read_to_string(&out).unwrap();
    assert_eq!(first.lines().count(), 6);
    let cached: Vec<_> = fs::read_dir(&cache).unwrap().collect();
    assert_eq!(cached.len(), 1);
    let o = primint_in(&args, Some(&cache));
    assert!(o.status.success());
    assert_eq!(fs::read_to_string(&out).unwrap(), first);
}

#[test]
fn failed_identity_tolerance_exits_one() {
    let o = primint(&["identities", "--points", "1e3", "--tolerance", "1e-20", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains(",false"));
    let o = primint(&["identities", "--points", "1e3"]);
    assert!(o.status.success());
}
