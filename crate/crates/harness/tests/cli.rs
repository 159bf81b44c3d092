use std::path::Path;
use std::process::Command;

fn autoland(dir: &Path, args: &[&str]) -> String {
    let out = Command::new(env!("CARGO_BIN_EXE_autoland"))
        .arg("--out-dir")
        .arg(dir)
        .args(args)
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn trim_reports_the_equilibrium_and_modes() {
    let dir = tempfile::tempdir().unwrap();
    let text = autoland(dir.path(), &["trim", "--airspeed", "160"]);
    for key in ["alpha", "delta_e", "thrust", "phugoid", "short period"] {
        assert!(text.contains(key), "missing {key}: {text}");
    }
}

#[test]
fn train_then_evaluate_writes_every_output() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let table = d.join("fql.qt");
    let t = table.to_str().unwrap();
    autoland(
        d,
        &[
            "train",
            "--method",
            "fql",
            "--episodes",
            "5",
            "--seed",
            "3",
            "--out",
            t,
        ],
    );
    assert!(table.exists());
    let curve = std::fs::read_to_string(d.join("learning_curve.csv")).unwrap();
    assert_eq!(curve.lines().count(), 6);
    assert!(d.join("manifest.toml").exists());

    let text = autoland(
        d,
        &[
            "evaluate",
            "--scenario",
            "noise_disturbance",
            "--controller",
            "fql",
            "--table",
            t,
        ],
    );
    assert!(text.contains("TE_theta="));
    for f in ["metrics.csv", "history.csv", "gust.csv", "manifest.toml"] {
        assert!(d.join(f).exists(), "{f} missing");
    }
}

#[test]
fn config_file_drives_the_run() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let cfg = d.join("run.toml");
    std::fs::write(&cfg, "[sweep]\nscale_points = 2\nspeed_points = 2\n").unwrap();
    let text = autoland(
        d,
        &[
            "--config",
            cfg.to_str().unwrap(),
            "sweep",
            "--controller",
            "di",
        ],
    );
    assert!(text.starts_with("4 points"), "{text}");
    let sweep = std::fs::read_to_string(d.join("sweep.csv")).unwrap();
    assert_eq!(sweep.lines().count(), 5);
}

#[test]
fn bad_inputs_fail_cleanly() {
    let dir = tempfile::tempdir().unwrap();
    let run = |args: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_autoland"))
            .arg("--out-dir")
            .arg(dir.path())
            .args(args)
            .output()
            .unwrap()
    };
    let missing = run(&["evaluate", "--controller", "fql"]);
    assert!(!missing.status.success());
    assert!(String::from_utf8_lossy(&missing.stderr).contains("--table"));
    assert!(!run(&["train", "--method", "sarsa", "--out", "x.qt"])
        .status
        .success());
    assert!(!run(&["--config", "/nonexistent.toml", "trim"])
        .status
        .success());
}
