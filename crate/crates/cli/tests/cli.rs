use std::process::{Command, Output};

use lrh_core::ah::AhReport;
use lrh_core::spectral::SpectralReport;

fn lrh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lrh"))
        .args(args)
        .env_remove("LRH_E_MAX")
        .output()
        .expect("run lrh")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn three_lines_reproduces_series_and_writes_json() {
    let dir = std::env::temp_dir().join(format!("lrh-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let mut grids = Vec::new();
    for t in ["1", "2"] {
        let path = dir.join(format!("t{t}.json"));
        let o = lrh(&["three-lines", "--t", t, "--json", path.to_str().unwrap()]);
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
        assert!(stdout(&o).contains("1 + 3t + 6t^2 + 4t^3"));
        let text = std::fs::read_to_string(&path).unwrap();
        let r: SpectralReport = serde_json::from_str(&text).unwrap();
        assert_eq!(r.hilbert, vec![1, 3, 6, 4]);
        assert_eq!(r.truncation.e_start, 6);
        assert_eq!(r.truncation.slack, 3);
        assert_eq!(serde_json::to_string_pretty(&r).unwrap() + "\n", text);
        grids.push(r.e2);
    }
    assert_eq!(grids[0], grids[1]);
}

#[test]
fn usage_errors_exit_64() {
    for args in [
        &["three-lines", "--t", "0"][..],
        &["lines", "--slopes", "0,1,1"],
        &["lines"],
        &["ah", "--h", "x^^2"],
        &["frobnicate"],
        &["cohomology", "--q", "3", "--i", "0", "--l", "3"],
    ] {
        assert_eq!(code(&lrh(args)), 64, "{args:?}");
    }
    assert_eq!(code(&lrh(&["--help"])), 0);
}

#[test]
fn exhausted_sweep_exits_2() {
    let o = lrh(&["lines", "--l", "3", "--e-max", "2", "--sweep", "1"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn env_overrides_e_max() {
    let o = Command::new(env!("CARGO_BIN_EXE_lrh"))
        .args(["lines", "--l", "4", "--format", "json"])
        .env("LRH_E_MAX", "4")
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    let r: SpectralReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r.truncation.e_start, 4);
    assert_eq!(r.hilbert, vec![1, 4, 8, 5]);
}

#[test]
fn lines_csv_has_one_row_per_cell() {
    let o = lrh(&["lines", "--l", "5", "--format", "csv", "--jobs", "1"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    let rows: Vec<&str> = out.lines().collect();
    assert_eq!(rows[0], "p,q,dim");
    assert_eq!(rows.len(), 10);
    let total: usize = rows[1..].iter().map(|r| r.rsplit(',').next().unwrap().parse::<usize>().unwrap()).sum();
    assert_eq!(total, 1 + 5 + 9 + 5);
}

#[test]
fn three_lines_via_lines_matches() {
    let a: SpectralReport = serde_json::from_str(&stdout(&lrh(&["lines", "--l", "3", "--format", "json"]))).unwrap();
    let b: SpectralReport =
        serde_json::from_str(&stdout(&lrh(&["three-lines", "--t", "1", "--format", "json"]))).unwrap();
    assert_eq!(a.e2, b.e2);
}

#[test]
fn ah_windows() {
    let o = lrh(&["ah", "--h", "x^2", "--ymax", "4", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let r: AhReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r.hh, [1, 7, 5]);
    assert_eq!((r.window.x_max, r.window.y_max), (8, 4));
    let o = lrh(&["ah", "--h", "1", "--format", "json"]);
    let r: AhReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r.hh, [1, 0, 0]);
    assert_eq!(code(&lrh(&["ah", "--h", "x^3-x", "--format", "csv"])), 0);
}

#[test]
fn cohomology_query() {
    let o = lrh(&["cohomology", "--q", "1", "--i", "0", "--t", "1", "--format", "csv"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "q,i,dim\n1,0,5\n");
    // H²(S,U)₀ is a free k[E]-module: its truncations grow with N
    let o = lrh(&["cohomology", "--q", "2", "--i", "0", "--t", "1", "--e-max", "2", "--sweep", "4"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn selftest_passes() {
    let o = lrh(&["selftest", "--e-max", "4"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("7/7 checks passed"));
}
