use std::fs;
use std::process::Command;

use pccu_core::io::{read_snapshot, CutLine};

fn pccu() -> Command {
    Command::new(env!("CARGO_BIN_EXE_pccu"))
}

#[test]
fn list_problems_prints_every_preset() {
    let out = pccu().arg("list-problems").output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 7);
    assert!(text.lines().any(|l| l == "sw-explosion"));
}

#[test]
fn run_writes_snapshots_and_log() {
    let dir = tempfile::tempdir().unwrap();
    let status = pccu()
        .args(["run", "--problem", "brio-wu", "--nx", "100", "--ny", "2", "--t-final", "0.05"])
        .args(["--snapshot-times", "0,0.025", "--diag-interval", "5", "-o"])
        .arg(dir.path())
        .status()
        .unwrap();
    assert!(status.success());
    let snap = read_snapshot(&dir.path().join("brio-wu_t0p05.csv")).unwrap();
    assert_eq!(snap.meta.time, 0.05);
    assert_eq!((snap.meta.grid.nx, snap.meta.grid.ny), (100, 2));
    assert_eq!(snap.meta.parameter, ("gamma".to_string(), 2.0));
    assert!(dir.path().join("brio-wu_t0.csv").exists());
    assert!(dir.path().join("brio-wu_t0p025.csv").exists());

    let log = fs::read_to_string(dir.path().join("brio-wu_diagnostics.log")).unwrap();
    let rows: Vec<Vec<f64>> = log
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| l.split(", ").map(|v| v.parse().unwrap()).collect())
        .collect();
    assert!(rows.len() >= 3);
    assert!(rows.iter().all(|r| r.len() == 5 && r[1] == 0.0 && r[3] > 0.0));
    assert_eq!(rows.last().unwrap()[0], 0.05);

    let cut = pccu_core::io::line_cut(&snap.state, &snap.grid, CutLine::AtY(0.0), &[0]).unwrap();
    assert_eq!(cut.len(), 100);
    assert!(cut.iter().all(|(_, v)| (0.1..=1.05).contains(&v[0])));
}

#[test]
fn config_file_and_flags_combine() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    fs::write(&cfg, "# small explosion\nproblem = sw-explosion\nnx = 12\nny = 12\nt_final = 0.01\n").unwrap();
    let status = pccu().args(["run", "--ny", "10", "--config"]).arg(&cfg).arg("-o").arg(dir.path()).status().unwrap();
    assert!(status.success());
    let snap = read_snapshot(&dir.path().join("sw-explosion_t0p01.csv")).unwrap();
    assert_eq!((snap.grid.nx(), snap.grid.ny()), (12, 10));
    assert_eq!(snap.meta.components, vec!["h", "hu", "hv", "ha", "hb", "A", "B"]);
}

#[test]
fn identical_runs_give_identical_files() {
    let dir = tempfile::tempdir().unwrap();
    for sub in ["a", "b"] {
        let status = pccu()
            .args(["run", "--problem", "rotor", "--nx", "20", "--ny", "20", "--t-final", "0.01", "-o"])
            .arg(dir.path().join(sub))
            .status()
            .unwrap();
        assert!(status.success());
    }
    let a = fs::read(dir.path().join("a/rotor_t0p01.csv")).unwrap();
    let b = fs::read(dir.path().join("b/rotor_t0p01.csv")).unwrap();
    assert_eq!(a, b);
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| pccu().args(args).output().unwrap().status.code();
    assert_eq!(code(&["run", "--problem", "blast", "--cfl", "0"]), Some(2));
    assert_eq!(code(&["run", "--problem", "nope"]), Some(2));
    assert_eq!(code(&["frobnicate"]), Some(2));
    assert_eq!(code(&["convergence", "--problem", "orszag-tang", "--grids", "8,16,24"]), Some(2));
    assert_eq!(code(&["run", "--config", "/nonexistent/run.cfg"]), Some(4));
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    fs::write(&blocker, "").unwrap();
    let out = blocker.join("sub");
    assert_eq!(
        code(&["run", "--problem", "sw-rotor", "--nx", "4", "--ny", "4", "--t-final", "0.001", "-o", out.to_str().unwrap()]),
        Some(4)
    );
}

#[test]
fn convergence_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("conv.csv");
    let status = pccu()
        .args(["convergence", "--problem", "sw-orszag-tang", "--grids", "8,16,32", "--t-final", "0.05", "-o"])
        .arg(&path)
        .status()
        .unwrap();
    assert!(status.success());
    let text = fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "coarse,fine,l1_difference,order");
    assert!(lines[1].starts_with("8,16,") && lines[1].ends_with(','));
    assert!(lines[2].starts_with("16,32,"));
}
