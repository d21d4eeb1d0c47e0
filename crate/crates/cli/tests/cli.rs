// Copyright 2026 The dasim Authors
// SPDX-License-Identifier: Apache-2.0

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use dasim::network::{Circuit, Element};
use dasim::refocus::RefocusSchedule;

fn dasim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dasim"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

const CHAIN_ODD: &str = r#"
[topology]
kind = "chain"
qubits = 6

[compile]
pairs = [[0, 1], [2, 3], [4, 5]]
theta = 0.78125
"#;

#[test]
fn compile_uniform_chain() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "c.toml", CHAIN_ODD);
    let out = dir.path().join("s.txt");
    let o = dasim(&["compile", "--config", &cfg, "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(stderr(&o).contains("pass"));
    let text = fs::read_to_string(&out).unwrap();
    let s = RefocusSchedule::from_text(&text).unwrap();
    assert_eq!(s.len(), 2);
    assert_eq!(s.to_text(), text);
}

#[test]
fn compile_spread_chain_gives_windows() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "c.toml",
        r#"
[topology]
kind = "chain"
qubits = 6
couplings = [[2, 3, 1.25], [4, 5, 1.5], [1, 2, 2.0]]

[compile]
pairs = [[0, 1], [2, 3], [4, 5]]
angles = ["1", "1", "1"]
"#,
    );
    let o = dasim(&["compile", "--config", &cfg]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let s = RefocusSchedule::from_text(&stdout(&o)).unwrap();
    assert!(s.len() > 2);
    assert_eq!(stderr(&o).matches("window").count(), 3);
    assert!(stderr(&o).contains("pass"));
}

#[test]
fn malformed_config_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "c.toml", "[topology]\nkind = \"chain\"\nqubits = six\n");
    let o = dasim(&["compile", "--config", &cfg]);
    assert_eq!(code(&o), 3);
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));

    let cfg = write(dir.path(), "d.toml", "[topology]\nkind = \"chain\"\nqubits = 4\nedges = [[0, 1, 1.0]]\n[compile]\npairs = []\ntheta = 1.0\n");
    let o = dasim(&["compile", "--config", &cfg]);
    assert_eq!(code(&o), 3);
    assert!(stderr(&o).contains("topology"), "{}", stderr(&o));

    let cfg = write(dir.path(), "e.toml", "[topology]\nkind = \"chain\"\nqubits = 4\n[compile]\npairs = [[0, 2]]\ntheta = 1.0\n");
    let o = dasim(&["compile", "--config", &cfg]);
    assert_eq!(code(&o), 3);
    assert!(stderr(&o).contains("compile.pairs"), "{}", stderr(&o));
}

#[test]
fn verify_rejects_a_tampered_schedule() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "c.toml", CHAIN_ODD);
    let good = dir.path().join("s.txt");
    assert_eq!(code(&dasim(&["compile", "--config", &cfg, "--out", good.to_str().unwrap()])), 0);
    let o = dasim(&["verify", "--config", &cfg, good.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));

    let text = fs::read_to_string(&good).unwrap();
    let tampered = text.replacen("parities 000000", "parities 100000", 1);
    assert_ne!(tampered, text);
    let bad = write(dir.path(), "bad.txt", &tampered);
    let o = dasim(&["verify", "--config", &cfg, &bad]);
    assert_eq!(code(&o), 2);
    assert!(stdout(&o).contains("edge (0, 1)"), "{}", stdout(&o));

    let garbage = write(dir.path(), "g.txt", "qubits 6\nt_i 1 parities 01\n");
    assert_eq!(code(&dasim(&["verify", "--config", &cfg, &garbage])), 3);
}

#[test]
fn trotter_reports_error_scaling() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "t.toml",
        "dt = 0.05\nseed = 3\n[hamiltonian]\nmodes = 4\nrandom = { bound = 1.0 }\n",
    );
    let out = dir.path().join("c.txt");
    let o = dasim(&["trotter", "--config", &cfg, "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let err = stderr(&o);
    assert!(err.contains("distance to exact evolution"), "{err}");
    let ratio: f64 = err
        .split("ratio ")
        .nth(1)
        .and_then(|s| s.split_whitespace().next())
        .and_then(|s| s.parse().ok())
        .unwrap();
    assert!((ratio - 4.0).abs() < 1.2, "{ratio}");
    let text = fs::read_to_string(&out).unwrap();
    let c = Circuit::from_text(&text).unwrap();
    assert_eq!(c.analog_block_count(), 24);
    assert_eq!(c.to_text(), text);
}

#[test]
fn trotter_two_modes_fsg_only() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "t.toml",
        "dt = 0.1\n[hamiltonian]\nmodes = 2\nhopping = [[0, 0.5], [0.5, 0]]\ninteraction = [[0, 0.2], [0, 0]]\n",
    );
    let o = dasim(&["trotter", "--config", &cfg, "--backend", "fsg"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let c = Circuit::from_text(&stdout(&o)).unwrap();
    assert_eq!(c.fsg_count(), 1);
    assert!(c.elements().iter().all(|e| matches!(e, Element::Gates(_))));
}

#[test]
fn trotter_spinful_ladder() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "t.toml",
        "dt = 0.05\n[hamiltonian]\nspinful = true\nsites = 2\nrandom = { bound = 0.5, seed = 9 }\n",
    );
    let o = dasim(&["trotter", "--config", &cfg]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let c = Circuit::from_text(&stdout(&o)).unwrap();
    assert_eq!(c.n_qubits(), 4);
    let device = c.device().unwrap();
    assert!(device.has_edge(0, 1) && device.has_edge(0, 2) && device.has_edge(1, 3));
    assert!(c.analog_block_count() > 0);
}

#[test]
fn missing_seed_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "t.toml", "dt = 0.05\n[hamiltonian]\nmodes = 4\nrandom = { bound = 1.0 }\n");
    let o = dasim(&["trotter", "--config", &cfg]);
    assert_eq!(code(&o), 3);
    assert!(stderr(&o).contains("hamiltonian.random.seed"));
    assert_eq!(code(&dasim(&["trotter", "--config", &cfg, "--seed", "4"])), 0);
}

#[test]
fn cnot_preset_matches_closed_form() {
    let o = dasim(&["sweep", "--preset", "paper-fig-cnot"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "param,mean_fidelity,stderr,n_states,seed");
    assert_eq!(lines.len(), 22);
    let last: Vec<f64> = lines[21].split(',').map(|f| f.parse().unwrap()).collect();
    assert_eq!(last[0], 1.0);
    assert!((last[1] - 0.5).abs() < 1e-12);
}

#[test]
fn omega_preset_at_small_scale() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "s.toml",
        "[sweep]\nvariable = \"omega\"\nqubits = 4\nn_states = 5\ngrid = [0.0, 0.05, 0.1, 0.15, 0.2]\nseed = 1\n",
    );
    let o = dasim(&["sweep", "--preset", "paper-fig-omega", "--config", &cfg]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(stdout(&o).lines().count(), 6);
    assert!(stderr(&o).contains("c2 ="));
}

#[test]
fn noise_preset_writes_two_files() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "s.toml",
        "[sweep]\nvariable = \"depolarizing\"\nqubits = 4\nn_states = 3\ngrid = [0.0, 0.001]\nseed = 2\n",
    );
    let out = dir.path().join("noise");
    let o = dasim(&["sweep", "--preset", "paper-fig-noise", "--config", &cfg, "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    for name in ["da.csv", "digital.csv"] {
        let text = fs::read_to_string(out.join(name)).unwrap();
        assert!(text.starts_with("param,mean_fidelity,stderr,n_states,seed,channel\n"));
        assert_eq!(text.lines().count(), 7);
        for channel in ["depolarizing", "amplitude", "phase"] {
            assert_eq!(text.matches(&format!(",{channel}\n")).count(), 2);
        }
    }
    assert!(stderr(&o).contains("slope ratio"));
}

#[test]
fn config_sweeps_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "s.toml",
        "seed = 5\n[sweep]\nvariable = \"phase\"\nqubits = 4\nn_states = 4\ngrid = [0.0, 0.01]\n",
    );
    let a = dasim(&["sweep", "--config", &cfg, "--backend", "digital"]);
    let b = dasim(&["sweep", "--config", &cfg, "--backend", "digital"]);
    assert_eq!(code(&a), 0, "{}", stderr(&a));
    assert_eq!(stdout(&a), stdout(&b));
    let c = dasim(&["sweep", "--config", &cfg, "--backend", "digital", "--seed", "6"]);
    assert_ne!(stdout(&a), stdout(&c));
}

#[test]
fn oversized_sweep_is_a_resource_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "s.toml",
        "seed = 1\n[sweep]\nvariable = \"depolarizing\"\nqubits = 10\ngrid = [0.0]\n",
    );
    let o = dasim(&["sweep", "--config", &cfg]);
    assert_eq!(code(&o), 4, "{}", stderr(&o));
}

#[test]
fn counts_table() {
    for (kind, n, want) in [("chain", "6", "36"), ("grid", "8", "96"), ("all-to-all", "12", "288")] {
        let o = dasim(&["counts", kind, n]);
        assert_eq!(code(&o), 0, "{}", stderr(&o));
        let row: Vec<String> = stdout(&o).lines().nth(1).unwrap().split('\t').map(String::from).collect();
        assert_eq!(row[3], want);
        assert_eq!(row[4], want);
    }
    let o = dasim(&["counts", "chain", "6"]);
    let row: Vec<String> = stdout(&o).lines().nth(1).unwrap().split('\t').map(String::from).collect();
    assert_eq!((row[5].as_str(), row[6].as_str()), ("15", "45"));
    assert_eq!(code(&dasim(&["counts", "ladder", "4"])), 3);
    assert_eq!(code(&dasim(&["counts", "chain", "5"])), 3);
    assert_eq!(code(&dasim(&["counts", "torus", "4"])), 3);
}
