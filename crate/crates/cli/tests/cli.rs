use std::collections::HashMap;
use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use flyspin_core::channels::NoiseParams;
use flyspin_core::metrics::concurrence;
use flyspin_core::protocol::generate_resource;

fn flyspin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flyspin"))
        .args(args)
        .output()
        .unwrap()
}

fn run_to(args: &[&str], out: &Path) -> Output {
    let mut all: Vec<&str> = args.to_vec();
    all.push("--out");
    all.push(out.to_str().unwrap());
    flyspin(&all)
}

fn key_values(csv: &str) -> HashMap<String, String> {
    csv.lines()
        .skip(1)
        .map(|l| {
            let (k, v) = l.split_once(',').unwrap();
            (k.to_string(), v.to_string())
        })
        .collect()
}

fn value(kv: &HashMap<String, String>, key: &str) -> f64 {
    kv[key].parse().unwrap()
}

fn sweep_rows(csv: &str) -> Vec<[f64; 6]> {
    let mut lines = csv.lines();
    assert_eq!(
        lines.next(),
        Some("theta1,theta2,concurrence,p1,p2,herald_prob")
    );
    lines
        .map(|l| {
            let v: Vec<f64> = l.split(',').map(|x| x.parse().unwrap()).collect();
            [v[0], v[1], v[2], v[3], v[4], v[5]]
        })
        .collect()
}

#[test]
fn sweep_examples_and_reread() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("sweep.csv");
    let o = run_to(
        &[
            "sweep-concurrence",
            "--theta1-grid",
            "0:1:13",
            "--theta2-grid",
            "0:1:7",
        ],
        &out,
    );
    assert!(o.status.success());
    let rows = sweep_rows(&fs::read_to_string(&out).unwrap());
    assert_eq!(rows.len(), 13 * 7);
    let find = |t1: f64, t2: f64| {
        rows.iter()
            .find(|r| (r[0] - t1).abs() < 1e-12 && (r[1] - t2).abs() < 1e-12)
            .copied()
            .unwrap()
    };
    let pi = std::f64::consts::PI;
    assert!((find(pi / 4.0, pi / 2.0)[2] - 1.0).abs() < 1e-10);
    assert!((find(pi / 6.0, pi / 3.0)[2] - 0.75).abs() < 1e-10);
    assert!(find(0.0, 0.0)[2].abs() < 1e-12);
    // θ₁-major order.
    assert!(rows.windows(2).all(|w| w[0][0] <= w[1][0]));
    // Stored values are loss-free enough to recompute from the angles.
    for r in &rows {
        let res = generate_resource(r[0], r[1], &NoiseParams::noiseless()).unwrap();
        assert!((concurrence(&res.rho).unwrap() - r[2]).abs() < 1e-10);
        assert!((0.0..=1.0).contains(&r[2]));
    }
    assert!(fs::read_to_string(dir.path().join("sweep.csv.config"))
        .unwrap()
        .contains("theta1_grid = 0:1:13"));
}

#[test]
fn eo_run_reports() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("eo.csv");
    let cases: [(&[&str], f64, f64); 3] = [
        (&[], 0.5, 1.0),
        (&["--eps-init", "0.1"], 0.405, 1.0),
        (&["--eps-z", "0.089"], 0.5, 1.0 - 2.0 * 0.089 * 0.911),
    ];
    for (extra, success, fidelity) in cases {
        let mut args = vec!["eo-run", "--trials", "500"];
        args.extend_from_slice(extra);
        let o = run_to(&args, &out);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        let kv = key_values(&fs::read_to_string(&out).unwrap());
        assert!((value(&kv, "success_exact") - success).abs() < 1e-12);
        assert!((value(&kv, "fidelity_psi_plus") - fidelity).abs() < 1e-10);
        assert!(
            (value(&kv, "success_mc") - success).abs()
                < 5.0 * value(&kv, "success_mc_se").max(0.01)
        );
        assert!(String::from_utf8_lossy(&o.stdout).contains("success (exact)"));
    }
}

#[test]
fn degenerate_resource_is_reported_not_raised() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("eo.csv");
    let o = run_to(
        &["eo-run", "--theta1", "0", "--theta2", "0", "--trials", "10"],
        &out,
    );
    assert!(o.status.success());
    let kv = key_values(&fs::read_to_string(&out).unwrap());
    assert_eq!(value(&kv, "success_exact"), 0.0);
    assert_eq!(kv["fidelity_psi_plus"], "nan");
}

#[test]
fn pump_sim_noiseless_and_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("pump.csv");
    let o = run_to(&["pump-sim", "--eps-z", "0", "--trials", "20"], &out);
    assert!(o.status.success());
    let csv = fs::read_to_string(&out).unwrap();
    assert!(csv.starts_with("trial,rounds_to_target,converged"));
    assert!(csv
        .lines()
        .skip(1)
        .all(|l| l.split(',').nth(1) == Some("0")));
    assert!(String::from_utf8_lossy(&o.stdout).contains("mean = 0.000000"));

    let args = [
        "pump-sim", "--eps-z", "0.089", "--trials", "500", "--seed", "3",
    ];
    assert!(run_to(&args, &out).status.success());
    let first = fs::read(&out).unwrap();
    assert!(run_to(&args, &out).status.success());
    assert_eq!(first, fs::read(&out).unwrap());
    let other = dir.path().join("other.csv");
    assert!(run_to(
        &["pump-sim", "--eps-z", "0.089", "--trials", "500", "--seed", "4"],
        &other
    )
    .status
    .success());
    assert_ne!(first, fs::read(&other).unwrap());
}

#[test]
fn pump_sim_all_non_converged_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("pump.csv");
    let o = run_to(
        &[
            "pump-sim",
            "--eps-z",
            "0.5",
            "--trials",
            "4",
            "--max-rounds",
            "5",
        ],
        &out,
    );
    assert_eq!(o.status.code(), Some(3));
    let csv = fs::read_to_string(&out).unwrap();
    assert_eq!(csv.lines().count(), 5);
    assert!(String::from_utf8_lossy(&o.stdout).contains("non-converged = 4"));
}

#[test]
fn chain_demo_report() {
    let o = flyspin(&["chain-demo", "--chain-size", "4", "--target-pair", "1"]);
    assert!(o.status.success());
    let text = String::from_utf8_lossy(&o.stdout);
    assert!(
        text.contains("corrected fidelity psi_plus  = 1.000000000000"),
        "{text}"
    );
    assert!(text.contains("spectator 0: purity = 1.000000000000"));
    assert!(text.contains("spectator 3: purity = 1.000000000000"));
    assert_eq!(
        flyspin(&["chain-demo", "--chain-size", "6"]).status.code(),
        Some(1)
    );
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    fs::write(
        &cfg,
        "# eo settings\neps-init = 0.1\ntrials = 50\nseed = 8\n",
    )
    .unwrap();
    let out = dir.path().join("eo.csv");
    let cfg_s = cfg.to_str().unwrap();

    assert!(run_to(&["eo-run", "--config", cfg_s], &out)
        .status
        .success());
    let kv = key_values(&fs::read_to_string(&out).unwrap());
    assert!((value(&kv, "success_exact") - 0.405).abs() < 1e-12);
    assert_eq!(kv["trials"], "50");

    assert!(
        run_to(&["eo-run", "--config", cfg_s, "--eps-init", "0"], &out)
            .status
            .success()
    );
    let kv = key_values(&fs::read_to_string(&out).unwrap());
    assert!((value(&kv, "success_exact") - 0.5).abs() < 1e-12);

    // The echoed config reproduces the run.
    let first = fs::read(&out).unwrap();
    let echo = dir.path().join("eo.csv.config");
    let again = dir.path().join("again.csv");
    assert!(
        run_to(&["eo-run", "--config", echo.to_str().unwrap()], &again)
            .status
            .success()
    );
    assert_eq!(first, fs::read(&again).unwrap());
}

#[test]
fn config_errors_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.cfg");
    fs::write(&bad, "colour = blue\n").unwrap();
    let o = flyspin(&["eo-run", "--config", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("colour"));

    let o = flyspin(&["eo-run", "--eps-z", "1.5"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("eps_z"));

    assert_eq!(
        flyspin(&["pump-sim", "--target-fidelity", "1"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        flyspin(&["sweep-concurrence", "--theta1-grid", "0:1:1"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(flyspin(&["eo-run", "--trials", "0"]).status.code(), Some(1));
    assert_eq!(
        flyspin(&["eo-run", "--theta1", "abc"]).status.code(),
        Some(1)
    );
    assert_eq!(flyspin(&["no-such-command"]).status.code(), Some(1));
    let missing = dir.path().join("missing.cfg");
    assert_eq!(
        flyspin(&["eo-run", "--config", missing.to_str().unwrap()])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn unwritable_output_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("no/such/dir/sweep.csv");
    let o = run_to(
        &[
            "sweep-concurrence",
            "--theta1-grid",
            "0:1:2",
            "--theta2-grid",
            "0:1:2",
        ],
        &out,
    );
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn help_mentions_angle_units() {
    let o = flyspin(&["eo-run", "--help"]);
    assert!(o.status.success());
    assert!(String::from_utf8_lossy(&o.stdout).contains("units of π"));
}

#[test]
fn stdout_mode_without_out() {
    let o = flyspin(&[
        "sweep-concurrence",
        "--theta1-grid",
        "0:0.5:2",
        "--theta2-grid",
        "0:0.5:2",
    ]);
    assert!(o.status.success());
    let stdout = String::from_utf8_lossy(&o.stdout);
    assert_eq!(sweep_rows(&stdout).len(), 4);
    assert!(String::from_utf8_lossy(&o.stderr).contains("command = sweep-concurrence"));
}
