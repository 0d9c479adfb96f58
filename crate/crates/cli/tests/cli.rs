use std::path::Path;
use std::process::{Command, Output};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use unruh_probe::discrimination::{bipartite_distance, single_distance};
use unruh_probe::XStateCoeffs;

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_unruh-probe"));
    cmd.env_remove("UNRUH_PROBE_CONFIG");
    cmd
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// Data rows (after the column line) split into cells.
fn rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

fn num(cell: &str) -> f64 {
    cell.parse().unwrap_or_else(|_| panic!("not a number: {cell:?}"))
}

fn header_value(text: &str, key: &str) -> Option<String> {
    let prefix = format!("# {key} = ");
    text.lines().find_map(|l| l.strip_prefix(&prefix).map(str::to_string))
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["params", "--n", "10"]).status.code(), Some(0));
    assert_eq!(run(&["params", "--n", "0.5"]).status.code(), Some(1));
    assert_eq!(run(&["params", "--a", "1", "--n", "3"]).status.code(), Some(2));
    assert_eq!(run(&["params"]).status.code(), Some(2));
    assert_eq!(run(&["nonsense"]).status.code(), Some(2));
    assert_eq!(run(&["distance", "--mode", "bipartite", "--n", "10"]).status.code(), Some(2));
    assert_eq!(run(&["evolve", "--theta", "0", "--n", "10", "--points", "0"]).status.code(), Some(2));
    assert_eq!(run(&["figure", "--which", "4", "--out", "x"]).status.code(), Some(2));
    let out = run(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("analyze"));
}

#[test]
fn params_reports_rates() {
    let out = run(&["params", "--n", "10", "--gamma0", "2"]);
    let text = stdout(&out);
    let get = |k: &str| {
        rows(&text)
            .into_iter()
            .find(|r| r[0] == k)
            .map(|r| num(&r[1]))
            .unwrap_or_else(|| panic!("missing {k}"))
    };
    assert!((get("A") - 5.0).abs() < 1e-12);
    assert!((get("B") - 0.5).abs() < 1e-12);
    assert!((get("n") - 10.0).abs() < 1e-12);

    let inertial = stdout(&run(&["params", "--a", "0"]));
    let n = rows(&inertial).into_iter().find(|r| r[0] == "n").unwrap();
    assert_eq!(num(&n[1]), 1.0);
}

#[test]
fn analyze_examples() {
    let thr = stdout(&run(&["analyze", "--what", "threshold", "--n", "10"]));
    let r = &rows(&thr)[0];
    assert_eq!(r[0], "threshold");
    assert!((num(&r[2]) - 0.88).abs() < 0.005, "{thr}");

    let max = stdout(&run(&["analyze", "--what", "max", "--werner", "1", "--n", "10"]));
    let r = &rows(&max)[0];
    assert_eq!(r[0], "max");
    assert!((num(&r[1]) - 0.42).abs() < 0.01);
    assert!((num(&r[3]) - 1.13).abs() < 0.01);

    let none = run(&["analyze", "--what", "zero", "--theta", "0", "--n", "1"]);
    assert_eq!(none.status.code(), Some(0));
    let text = stdout(&none);
    assert_eq!(header_value(&text, "result").as_deref(), Some("no crossing"));
    assert_eq!(rows(&text)[0][0], "no crossing");

    let bad = run(&["analyze", "--what", "zero", "--theta", "0", "--n", "10", "--tau-min", "2", "--tau-max", "1"]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn distance_curves() {
    let text = stdout(&run(&["distance", "--mode", "bipartite", "--werner", "1", "--n", "10"]));
    let data = rows(&text);
    assert_eq!(data.len(), 301);
    assert_eq!(num(&data[0][1]), 0.0);
    assert_eq!(num(&data[0][3]), 0.5);

    let text = stdout(&run(&["distance", "--mode", "single", "--theta", "0", "--n", "10", "--points", "3001"]));
    let (tau, d) = rows(&text)
        .iter()
        .map(|r| (num(&r[0]), num(&r[1])))
        .filter(|&(t, _)| t > 0.1)
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .unwrap();
    assert!(d < 1e-3 && (tau - 0.80).abs() < 0.01, "min {d} at {tau}");

    let bad = run(&["distance", "--mode", "single", "--theta", "0", "--n", "1", "--normalized"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("--normalized"));

    let plain = stdout(&run(&["distance", "--mode", "single", "--theta", "0", "--n", "1", "--points", "2"]));
    assert!(plain.contains("tau,distance,p_error\n"));
}

#[test]
fn csv_round_trip() {
    let precision = 12;
    let tol = 0.6 * 10f64.powi(-precision);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..5 {
        let theta: f64 = rng.gen_range(0.0..std::f64::consts::PI);
        let n: f64 = rng.gen_range(1.5..30.0);
        let text = stdout(&run(&[
            "distance", "--mode", "single", "--theta", &theta.to_string(), "--n", &n.to_string(), "--points", "41",
        ]));
        for r in rows(&text) {
            let gt = num(&r[0]);
            let res = single_distance(theta, gt, n).unwrap();
            assert!((num(&r[1]) - res.distance).abs() < tol);
            assert!((num(&r[2]) - res.normalized.unwrap()).abs() < tol);
            assert!((num(&r[3]) - res.error_probability).abs() < tol);
        }

        let c: f64 = rng.gen_range(0.0..1.0);
        let text = stdout(&run(&[
            "distance", "--mode", "bipartite", "--werner", &c.to_string(), "--n", &n.to_string(), "--points", "41",
        ]));
        let state = XStateCoeffs::werner(c).unwrap();
        for r in rows(&text) {
            let res = bipartite_distance(&state, n, num(&r[0])).unwrap();
            assert!((num(&r[1]) - res.distance).abs() < tol);
        }
    }
}

fn write(path: &Path, text: &str) {
    std::fs::write(path, text).unwrap();
}

#[test]
fn config_file_and_env() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    write(&cfg, "# defaults\nn = 10\ntheta = 0\npoints = 3\nwhich = 1\n");

    let from_flag = run(&["--config", cfg.to_str().unwrap(), "distance", "--mode", "single"]);
    assert_eq!(from_flag.status.code(), Some(0));
    let text = stdout(&from_flag);
    assert_eq!(header_value(&text, "n").as_deref(), Some("10"));
    assert_eq!(rows(&text).len(), 3);

    let overridden = stdout(&run(&["--config", cfg.to_str().unwrap(), "distance", "--mode", "single", "--n", "4"]));
    assert_eq!(header_value(&overridden, "n").as_deref(), Some("4"));

    let via_env = bin()
        .env("UNRUH_PROBE_CONFIG", &cfg)
        .args(["distance", "--mode", "single", "--points", "5"])
        .output()
        .unwrap();
    assert_eq!(via_env.status.code(), Some(0));
    let text = stdout(&via_env);
    assert_eq!(header_value(&text, "n").as_deref(), Some("10"));
    assert_eq!(rows(&text).len(), 5);

    let other = dir.path().join("other.cfg");
    write(&other, "n = 3\n");
    let flag_wins = bin()
        .env("UNRUH_PROBE_CONFIG", &cfg)
        .args(["--config", other.to_str().unwrap(), "params"])
        .output()
        .unwrap();
    assert_eq!(flag_wins.status.code(), Some(0));
    assert_eq!(header_value(&stdout(&flag_wins), "n").as_deref(), Some("3"));

    write(&other, "bogus = 1\n");
    assert_eq!(run(&["--config", other.to_str().unwrap(), "params", "--n", "3"]).status.code(), Some(2));

    let missing = dir.path().join("missing.cfg");
    assert_eq!(run(&["--config", missing.to_str().unwrap(), "params", "--n", "3"]).status.code(), Some(1));
}

#[test]
fn out_flag_and_unwritable_dir() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("evolve.csv");
    let out = run(&["evolve", "--theta", "0.5", "--n", "10", "--points", "4", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(rows(&text).len(), 4);

    let blocker = dir.path().join("file");
    write(&blocker, "");
    let bad = blocker.join("figs");
    let out = run(&["figure", "--which", "1", "--out", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn repeat_runs_are_identical() {
    let args = ["evolve", "--theta", "2", "--n", "7", "--oracle", "600"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let args = ["analyze", "--what", "kink", "--werner", "0.95", "--n", "10"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn evolve_oracle_column() {
    let text = stdout(&run(&["evolve", "--theta", "1", "--n", "10", "--points", "11", "--oracle", "2000"]));
    let data = rows(&text);
    assert_eq!(data[0].len(), 5);
    for r in &data {
        assert!(num(&r[4]) < 1e-10);
    }
    let last = data.last().unwrap();
    assert!((num(&last[3]) - (-0.1)).abs() < 1e-3);
}
