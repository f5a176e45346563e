use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn nhssh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nhssh")).args(args).output().unwrap()
}

fn run_ok(args: &[&str]) {
    let out = nhssh(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
}

fn data_rows(path: &Path) -> Vec<csv::StringRecord> {
    let text = fs::read_to_string(path).unwrap();
    let body: String = text.lines().filter(|l| !l.starts_with('#')).map(|l| format!("{l}\n")).collect();
    csv::Reader::from_reader(body.as_bytes()).records().map(Result::unwrap).collect()
}

#[test]
fn sidecar_reproduces_the_csv() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("thermo.csv");
    let second = dir.path().join("again.csv");
    run_ok(&["thermo", "--t1", "1.1", "--delta", "0.8", "--L", "40", "--T-range", "0.01:0.5:25", "--out", first.to_str().unwrap()]);
    let sidecar = dir.path().join("thermo.csv.json");
    let meta: serde_json::Value = serde_json::from_str(&fs::read_to_string(&sidecar).unwrap()).unwrap();
    assert_eq!(meta["task"], "thermo");
    assert_eq!(meta["output"]["rows"], 25);
    run_ok(&["--config", sidecar.to_str().unwrap(), "--out", second.to_str().unwrap()]);
    assert_eq!(fs::read(&first).unwrap(), fs::read(&second).unwrap());
}

#[test]
fn every_task_writes_a_table() {
    let dir = tempfile::tempdir().unwrap();
    let cases: [&[&str]; 7] = [
        &["spectrum", "--delta", "1.3", "--L", "20"],
        &["phase-diagram", "--t1-range", "0.2:2:8", "--delta-range", "0:2:8"],
        &["thermo", "--delta", "0.4583", "--L", "40", "--T-range", "0.02:0.1:9"],
        &["ee", "--delta-range", "0.6:1.0:3", "--L", "40"],
        &["ee-scaling", "--delta", "0.4583", "--L-list", "20:36:5"],
        &["derivatives", "--delta-range", "0.3:0.6:4", "--L", "20", "--order", "2"],
        &["itc", "--delta", "1.6", "--beta-max", "30", "--beta-points", "600", "--L", "100"],
    ];
    for args in cases {
        let path = dir.path().join(format!("{}.csv", args[0]));
        let mut full = args.to_vec();
        full.extend(["--out", path.to_str().unwrap()]);
        run_ok(&full);
        let text = fs::read_to_string(&path).unwrap();
        assert!(text.starts_with("# nhssh "), "{}", args[0]);
        assert!(!data_rows(&path).is_empty(), "{}", args[0]);
        assert!(dir.path().join(format!("{}.csv.json", args[0])).exists());
    }
}

#[test]
fn ee_plateau_through_the_cli() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ee.csv");
    run_ok(&["ee", "--t1", "1.1", "--delta", "0.8", "--L", "120", "--out", path.to_str().unwrap()]);
    let rows = data_rows(&path);
    let text = fs::read_to_string(&path).unwrap();
    let header = text.lines().find(|l| !l.starts_with('#')).unwrap();
    let col = header.split(',').position(|c| c == "ee").unwrap();
    let ee: f64 = rows[0][col].parse().unwrap();
    assert!((ee - 4f64.ln()).abs() < 0.05, "EE = {ee}");
}

#[test]
fn exit_codes() {
    let bad = nhssh(&["thermo", "--T-range", "0.5:0.1"]);
    assert_eq!(bad.status.code(), Some(2));
    let unknown = nhssh(&["spectrum", "--cut", "diagonal"]);
    assert_eq!(unknown.status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.csv");
    let numeric = nhssh(&["ee", "--t1", "1.1", "--delta", "1.1", "--L", "20", "--out", out.to_str().unwrap()]);
    assert_eq!(numeric.status.code(), Some(3));
    let msg = String::from_utf8_lossy(&numeric.stderr);
    assert!(msg.contains("delta=1.1"), "{msg}");
}

#[test]
fn version_names_the_tool() {
    let out = nhssh(&["--version"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("nhssh "));
}
