use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn qugan(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qugan"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_lines(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).expect("json line"))
        .collect()
}

fn write_config(dir: &Path, body: &str) -> String {
    let path = dir.join("run.json");
    fs::write(&path, body).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn demo_qpe_reads_a_quarter() {
    let out = qugan(&["demo", "qpe", "--phase", "0.25", "--ancillas", "2"]);
    assert!(out.status.success());
    let lines = json_lines(&out);
    assert_eq!(lines.len(), 4);
    assert_eq!(lines[1]["outcome"], 1);
    approx::assert_abs_diff_eq!(lines[1]["prob"].as_f64().unwrap(), 1.0, epsilon = 1e-12);
}

#[test]
fn demo_qip_estimates_one() {
    let out = qugan(&[
        "demo",
        "qip",
        "--x",
        "0.5,0.5",
        "--w",
        "1,1",
        "--precision",
        "1",
        "--ancillas",
        "1",
    ]);
    assert!(out.status.success());
    let lines = json_lines(&out);
    assert_eq!(lines.last().unwrap()["estimate"], 1.0);
}

#[test]
fn demo_signed_qip_accepts_negative_weights() {
    let out = qugan(&[
        "demo",
        "qip",
        "--x",
        "0.5,0.5",
        "--w",
        "-1,-1",
        "--ancillas",
        "2",
        "--signed",
    ]);
    assert!(out.status.success());
    let est = json_lines(&out).last().unwrap()["estimate"]
        .as_f64()
        .unwrap();
    // −1 sits halfway between the readouts 0 and −2
    assert!(est == 0.0 || est == -2.0);
}

#[test]
fn demo_qft_single_qubit() {
    let out = qugan(&["demo", "qft", "--n", "1"]);
    assert!(out.status.success());
    for line in json_lines(&out) {
        approx::assert_abs_diff_eq!(line["re"].as_f64().unwrap(), 0.5f64.sqrt(), epsilon = 1e-12);
    }
}

#[test]
fn demo_neuron_is_a_distribution() {
    let out = qugan(&[
        "demo",
        "neuron",
        "--x",
        "1,0",
        "--w",
        "0.5,-0.5",
        "--activation",
        "half_sigmoid",
    ]);
    assert!(out.status.success());
    let total: f64 = json_lines(&out)
        .iter()
        .map(|l| l["prob"].as_f64().unwrap())
        .sum();
    approx::assert_abs_diff_eq!(total, 1.0, epsilon = 1e-12);
}

#[test]
fn target_writes_normalized_masses_and_density() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("out");
    let out = qugan(&["--out-dir", out_dir.to_str().unwrap(), "target"]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let target: Value =
        serde_json::from_str(&fs::read_to_string(out_dir.join("target.json")).unwrap()).unwrap();
    let masses: Vec<f64> = target["masses"]
        .as_array()
        .unwrap()
        .iter()
        .map(|m| m.as_f64().unwrap())
        .collect();
    assert_eq!(masses.len(), 16);
    approx::assert_abs_diff_eq!(masses.iter().sum::<f64>(), 1.0, epsilon = 1e-12);
    assert_eq!(target["bin_edges"].as_array().unwrap().len(), 17);
    let tm = target["truncated_mass"].as_f64().unwrap();
    assert!(tm > 0.0 && tm < 0.05);
    let csv = fs::read_to_string(out_dir.join("density.csv")).unwrap();
    assert_eq!(csv.lines().next(), Some("k,density"));
}

#[test]
fn train_is_byte_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), r#"{"n_qubits": 2, "epochs": 12, "lr_g": 10.0}"#);
    let out_dir = dir.path().join("out");
    let run = || {
        let out = qugan(&[
            "--config",
            &cfg,
            "--seed",
            "3",
            "--out-dir",
            out_dir.to_str().unwrap(),
            "train",
        ]);
        assert!(
            out.status.success(),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
        (
            fs::read(out_dir.join("trace.csv")).unwrap(),
            fs::read(out_dir.join("result.json")).unwrap(),
        )
    };
    let first = run();
    assert_eq!(first, run());

    let trace = String::from_utf8(first.0).unwrap();
    let mut lines = trace.lines();
    assert_eq!(lines.next(), Some("epoch,score,fidelity,kl,trace_distance"));
    assert_eq!(lines.count(), 12);
    let result: Value = serde_json::from_slice(&first.1).unwrap();
    assert_eq!(result["config"]["seed"], 3);
    assert_eq!(result["theta"].as_array().unwrap().len(), 3);
}

#[test]
fn invalid_configs_exit_nonzero() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        r#"{"epochs": 0}"#,
        r#"{"svi": {"a": 0.03, "b": 0.05, "rho": 2.0, "m": 0.3, "xi": 0.05, "T": 1.0}}"#,
        r#"{"unknown_key": 1}"#,
        "not json",
    ];
    for body in cases {
        let cfg = write_config(dir.path(), body);
        let out_dir = dir.path().join("out");
        for cmd in ["train", "target"] {
            if body.contains("epochs") && cmd == "target" {
                continue;
            }
            let out = qugan(&[
                "--config",
                &cfg,
                "--out-dir",
                out_dir.to_str().unwrap(),
                cmd,
            ]);
            assert!(!out.status.success(), "{body} / {cmd} should fail");
            assert!(!out.stderr.is_empty());
        }
    }
}

#[test]
fn unknown_subcommand_is_a_usage_error() {
    let out = qugan(&["bogus"]);
    assert!(!out.status.success());
    assert!(!out.stderr.is_empty());
}
