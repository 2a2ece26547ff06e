use std::fs;
use std::process::{Command, Output};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twr-outage"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn sweep_csv_is_independent_of_shards() {
    let args = |shards: &'static str| {
        [
            "sweep", "--param", "rate", "--values", "1,2,3", "--schemes",
            "improved,dynamic_0.4,static_0.5", "--trials", "50000", "--seed", "9", "--shards",
            shards,
        ]
    };
    let one = stdout(&bin(&args("1")));
    let many = stdout(&bin(&args("6")));
    assert_eq!(one, many);
    let mut lines = one.lines();
    assert_eq!(lines.next(), Some("param,scheme,analytic,mc,mc_stderr,capacity,rel_err"));
    assert_eq!(lines.count(), 9);
}

#[test]
fn negative_values_and_energy_rows() {
    let out = stdout(&bin(&[
        "sweep", "--param", "sensitivity", "--values", "-30,-20", "--schemes", "improved",
        "--energy-outage", "--trials", "2000",
    ]));
    let energy: Vec<&str> = out.lines().filter(|l| l.contains("energy_outage")).collect();
    assert_eq!(energy.len(), 2);
    // No capacity for energy outage rows.
    assert_eq!(energy[0].split(',').nth(5), Some(""));
}

#[test]
fn json_output_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fig5.json");
    let o = bin(&[
        "fig", "5", "--trials", "2000", "--json", "--out", path.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let rows: serde_json::Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    // Five powers, seven schemes.
    assert_eq!(rows.as_array().unwrap().len(), 35);
    assert_eq!(rows[0]["scheme"], "improved");
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.json");
    fs::write(&path, r#"{ "params": { "rate_bps_hz": 3.0, "tx_power_dbm": 20.0 } }"#).unwrap();
    let cfg = path.to_str().unwrap();
    let c: serde_json::Value =
        serde_json::from_str(&stdout(&bin(&["--config", cfg, "params"]))).unwrap();
    assert!((c["snr_threshold"].as_f64().unwrap() - 7.0).abs() < 1e-12);
    assert!((c["tx_power_w"].as_f64().unwrap() - 0.1).abs() < 1e-15);
    let c: serde_json::Value =
        serde_json::from_str(&stdout(&bin(&["--config", cfg, "params", "--rate", "1"]))).unwrap();
    assert!((c["snr_threshold"].as_f64().unwrap() - 1.0).abs() < 1e-12);

    fs::write(&path, "{}").unwrap();
    let c: serde_json::Value =
        serde_json::from_str(&stdout(&bin(&["--config", cfg, "params", "--theta", "0.3"]))).unwrap();
    assert_eq!(c["theta"], 0.3);
    assert!((c["snr_threshold"].as_f64().unwrap() - 3.0).abs() < 1e-12);

    fs::write(&path, r#"{ "params": { "no_such_field": 1 } }"#).unwrap();
    assert_eq!(bin(&["--config", cfg, "params"]).status.code(), Some(2));
}

#[test]
fn validate_exit_codes() {
    let o = bin(&["validate", "--only", "7"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("PASS criterion  7"));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.csv");
    let o = bin(&["validate", "--only", "7,9", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let csv = fs::read_to_string(&path).unwrap();
    assert!(csv.starts_with("id,criterion,passed,measured,threshold\n"));
    assert_eq!(csv.lines().count(), 3);
}

#[test]
fn bad_input_is_rejected() {
    assert_eq!(bin(&["fig", "12"]).status.code(), Some(2));
    assert_eq!(
        bin(&["sweep", "--param", "rate", "--values", "3,2"]).status.code(),
        Some(2)
    );
    assert_eq!(
        bin(&["params", "--theta", "1.5"]).status.code(),
        Some(2)
    );
    assert!(!bin(&["sweep", "--param", "rate", "--values", "1", "--schemes", "bogus"])
        .status
        .success());
}
