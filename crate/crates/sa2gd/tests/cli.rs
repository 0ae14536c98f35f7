use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use sa2gd::io::{read_front_csv, read_trajectory_csv};

fn sa2gd(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sa2gd"))
        .args(args)
        .current_dir(dir)
        .env_remove("SA2GD_OUT_DIR")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

#[test]
fn solve_quad_1d_reaches_the_weighted_minimizer() {
    let dir = tempfile::tempdir().unwrap();
    let o = sa2gd(dir.path(), &["solve", "--problem", "quad-1d", "--na", "1", "--nb", "1", "--T", "500", "--seed", "0", "--out", "o"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let rows = read_trajectory_csv(&fs::read(dir.path().join("o/trajectory_quad-1d_rep0.csv")).unwrap()).unwrap();
    assert_eq!(rows.len(), 501);
    let x = rows.last().unwrap().x[0];
    assert!((x - 1.0).abs() < 1e-2, "x_T = {x}");
}

#[test]
fn zero_iterations_write_the_start_only() {
    let dir = tempfile::tempdir().unwrap();
    let o = sa2gd(dir.path(), &["solve", "--problem", "quad-2d", "--T", "0"]);
    assert_eq!(code(&o), 0);
    let rows = read_trajectory_csv(&fs::read(dir.path().join("out/trajectory_quad-2d_rep0.csv")).unwrap()).unwrap();
    assert_eq!(rows.len(), 1);
}

#[test]
fn reruns_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["sweep", "--problem", "quad-1d", "--n-total", "4", "--T", "100", "--sigma", "0.5", "--seed", "3"];
    let mut files = Vec::new();
    for out in ["a", "b"] {
        let mut a = args.to_vec();
        a.extend(["--out", out]);
        assert_eq!(code(&sa2gd(dir.path(), &a)), 0);
        files.push(fs::read(dir.path().join(out).join("front_quad-1d.csv")).unwrap());
    }
    assert_eq!(files[0], files[1]);
}

#[test]
fn sweep_quad_front_lies_on_the_segment() {
    let dir = tempfile::tempdir().unwrap();
    let o = sa2gd(dir.path(), &["sweep", "--problem", "quad-1d", "--n-total", "4", "--T", "500", "--method", "sa2gd"]);
    assert_eq!(code(&o), 0);
    let rows = read_front_csv(&fs::read(dir.path().join("out/front_quad-1d.csv")).unwrap()).unwrap();
    assert_eq!(rows.len(), 5);
    for (p, kept) in &rows {
        assert!(*kept);
        let target = 2.0 * (1.0 - p.lambda_star);
        assert!((p.x[0] - target).abs() < 1e-2, "{} vs {target}", p.x[0]);
    }
    assert!(dir.path().join("out/front_quad-1d_sa2gd.svg").exists());
}

#[test]
fn single_cell_total_gives_both_endpoints() {
    let dir = tempfile::tempdir().unwrap();
    let o = sa2gd(dir.path(), &["sweep", "--problem", "quad-1d", "--n-total", "1", "--T", "50", "--method", "sa2gd"]);
    assert_eq!(code(&o), 0);
    let rows = read_front_csv(&fs::read(dir.path().join("out/front_quad-1d.csv")).unwrap()).unwrap();
    assert_eq!(rows.len(), 2);
}

#[test]
fn rate_writes_csv_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let o = sa2gd(
        dir.path(),
        &["rate", "--regime", "smooth-sc", "--replications", "20", "--horizons", "16,64,256,1024"],
    );
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    let json: serde_json::Value =
        serde_json::from_slice(&fs::read(dir.path().join("out/rate_smooth-sc.json")).unwrap()).unwrap();
    assert_eq!(json["passed"], serde_json::Value::Bool(true));
    let csv = fs::read_to_string(dir.path().join("out/rate_smooth-sc.csv")).unwrap();
    assert_eq!(csv.lines().count(), 5);
}

#[test]
fn usage_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["solve", "--problem", "nosuch"][..],
        &["solve"],
        &["solve", "--problem", "quad-1d", "--na", "0", "--nb", "0"],
        &["rate", "--regime", "bogus"],
        &["rate", "--replications", "0"],
        &["sweep", "--problem", "quad-1d", "--n-total", "0"],
        &["frobnicate"],
    ] {
        assert_eq!(code(&sa2gd(dir.path(), args)), 2, "{args:?}");
    }
}

#[test]
fn unwritable_output_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("blocker"), b"").unwrap();
    let o = sa2gd(dir.path(), &["solve", "--problem", "quad-1d", "--T", "5", "--out", "blocker/sub"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn failed_check_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let o = sa2gd(dir.path(), &["ivt-check", "--instances", "50", "--tol", "0"]);
    assert_eq!(code(&o), 3);
    let o = sa2gd(dir.path(), &["ivt-check", "--instances", "50"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn out_dir_precedence() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("exp.toml"), "out_dir = \"from_config\"\n[solve]\nproblem = \"quad-1d\"\niterations = 3\n").unwrap();
    let file = "trajectory_quad-1d_rep0.csv";
    let with_env = |args: &[&str]| {
        let o = Command::new(env!("CARGO_BIN_EXE_sa2gd"))
            .args(args)
            .current_dir(dir.path())
            .env("SA2GD_OUT_DIR", "from_env")
            .output()
            .unwrap();
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    };
    with_env(&["solve", "--problem", "quad-1d", "--T", "3"]);
    assert!(dir.path().join("from_env").join(file).exists());
    with_env(&["--config", "exp.toml", "solve"]);
    assert!(dir.path().join("from_config").join(file).exists());
    with_env(&["--config", "exp.toml", "solve", "--out", "from_flag"]);
    assert!(dir.path().join("from_flag").join(file).exists());
}

#[test]
fn config_values_yield_to_flags() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("exp.toml"), "[solve]\nproblem = \"quad-1d\"\niterations = 7\n").unwrap();
    assert_eq!(code(&sa2gd(dir.path(), &["--config", "exp.toml", "solve", "--out", "c"])), 0);
    assert_eq!(code(&sa2gd(dir.path(), &["--config", "exp.toml", "solve", "--T", "2", "--out", "f"])), 0);
    let rows = |d: &str| read_trajectory_csv(&fs::read(dir.path().join(d).join("trajectory_quad-1d_rep0.csv")).unwrap()).unwrap().len();
    assert_eq!(rows("c"), 8);
    assert_eq!(rows("f"), 3);

    fs::write(dir.path().join("bad.toml"), "[solve]\nbogus_key = 1\n").unwrap();
    assert_eq!(code(&sa2gd(dir.path(), &["--config", "bad.toml", "solve"])), 2);
}

#[test]
fn problems_list_names_the_presets() {
    let dir = tempfile::tempdir().unwrap();
    let o = sa2gd(dir.path(), &["problems", "list"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8_lossy(&o.stdout);
    for name in ["quad-1d", "quad-2d", "l1-2d", "l1-sc-2d", "MOP1", "IM1", "MOP3", "FAR1"] {
        assert!(text.contains(name), "{name} missing from listing");
    }
}
