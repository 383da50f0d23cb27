//! End-to-end runs of the `hblab` binary.

use std::process::Command;

fn hblab(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_hblab"))
        .args(args)
        .output()
        .unwrap()
}

#[test]
fn moments_csv_goes_to_stdout() {
    let out = hblab(&["moments", "--alpha", "1", "--degree", "2", "--grid", "64"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("n,beta,scaled_beta,gram_diagonal,c_hat_re,c_hat_im")
    );
    assert_eq!(lines.count(), 3);
}

#[test]
fn invalid_input_exits_with_two() {
    assert_eq!(hblab(&["moments", "--alpha", "-1"]).status.code(), Some(2));
    assert_eq!(
        hblab(&["splitting", "--scenario", "/nonexistent/x.json"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        hblab(&["symbol", "--params", "{\"bogus\": 1}"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn outputs_land_in_the_requested_directory() {
    let dir = tempfile::tempdir().unwrap();
    let params = r#"{"set":{"kind":"arcs","arcs":[[0.0,0.5]]}}"#;
    let out = hblab(&[
        "bcset",
        "--name",
        "semi",
        "--params",
        params,
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(dir.path().join("semi.csv").exists());
    let report: serde_json::Value =
        serde_json::from_slice(&std::fs::read(dir.path().join("semi.json")).unwrap()).unwrap();
    assert_eq!(report["scenario"]["name"], "semi");
}
