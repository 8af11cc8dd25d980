//! End-to-end CLI checks: the binary's file output must equal the library's
//! emission byte for byte, and exit codes must follow the 0/1/2 convention.

use std::path::PathBuf;
use std::process::Command;

use hjweno::harness::{
    convergence_study, emit_solution_1d, emit_table, SolutionFormat, StudyConfig, TableFormat,
};
use hjweno::problems::{catalog, ProblemId};
use hjweno::timestepper::{integrate, Solution, TimeControls};
use hjweno::{Indicator, WeightParams};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hjweno"))
}

fn temp_path(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("hjweno-test-{}-{}", std::process::id(), name));
    p
}

#[test]
fn list_names_all_problems() {
    let out = bin().arg("list").output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 13);
    for k in 1..=13 {
        assert!(text.contains(&format!("P{k}")), "missing P{k}");
    }
    assert!(text.to_lowercase().contains("eikonal"));
}

#[test]
fn unknown_flag_exits_with_usage_code() {
    let out = bin().args(["solve", "--definitely-not-a-flag"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_problem_exits_with_usage_code() {
    let out = bin()
        .args(["solve", "--problem", "P99", "--n", "50"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn invalid_cfl_and_tiny_grid_exit_with_usage_code() {
    let out = bin()
        .args(["solve", "--problem", "P1", "--n", "50", "--cfl", "1.5"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    let out = bin()
        .args(["solve", "--problem", "P1", "--n", "4"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn solve_output_equals_library_emission() {
    let path = temp_path("p1-solve.csv");
    let out = bin()
        .args([
            "solve",
            "--problem",
            "P1",
            "--scheme",
            "weno-l",
            "--n",
            "40",
            "--t",
            "0.5",
            "--output",
            path.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let from_cli = std::fs::read_to_string(&path).unwrap();
    let _ = std::fs::remove_file(&path);

    let spec = catalog(ProblemId::P1);
    let controls = TimeControls::new(0.5);
    let params = WeightParams::new(Indicator::ArcLength);
    let (solution, _) = integrate(&spec.problem, 40, None, &controls, &params).unwrap();
    let field = match solution {
        Solution::One(f) => f,
        _ => unreachable!(),
    };
    let exact = spec.problem.exact.clone().unwrap();
    let oracle = move |x: f64| exact(x, 0.0, 0.5);
    let from_lib = emit_solution_1d(&field, Some(&oracle), SolutionFormat::Csv);
    assert_eq!(from_cli, from_lib);

    // row count: header + one line per node
    assert_eq!(from_cli.lines().count(), 41);
}

#[test]
fn table_output_equals_library_emission() {
    let path = temp_path("p1-table.csv");
    let out = bin()
        .args([
            "table",
            "--problem",
            "P1",
            "--ns",
            "20,40",
            "--schemes",
            "weno-jp",
            "--output",
            path.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let from_cli = std::fs::read_to_string(&path).unwrap();
    let _ = std::fs::remove_file(&path);

    let spec = catalog(ProblemId::P1);
    let config = StudyConfig::new(2.0);
    let table = convergence_study(&spec, &[20, 40], Indicator::ClassicalJp, &config).unwrap();
    let from_lib = emit_table(&table, TableFormat::Csv);
    assert_eq!(from_cli, from_lib);
}

#[test]
fn table_with_two_schemes_writes_suffixed_files() {
    let path = temp_path("pair.csv");
    let out = bin()
        .args([
            "table",
            "--problem",
            "P1",
            "--ns",
            "20",
            "--schemes",
            "weno-l,weno-jp",
            "--output",
            path.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let base = path.to_str().unwrap().strip_suffix(".csv").unwrap().to_string();
    for tag in ["weno-l", "weno-jp"] {
        let p = PathBuf::from(format!("{base}.{tag}.csv"));
        assert!(p.exists(), "missing {}", p.display());
        let _ = std::fs::remove_file(&p);
    }
}

#[test]
fn default_output_directory_env_is_honored() {
    let dir = temp_path("outdir");
    let _ = std::fs::remove_dir_all(&dir);
    let out = bin()
        .args(["solve", "--problem", "P1", "--n", "20", "--t", "0.1"])
        .env("HJWENO_OUT_DIR", dir.to_str().unwrap())
        .output()
        .unwrap();
    assert!(out.status.success());
    let entries: Vec<_> = std::fs::read_dir(&dir).unwrap().collect();
    assert_eq!(entries.len(), 1);
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn gnuplot_grid_solve_for_2d_problem() {
    let path = temp_path("p10.dat");
    let out = bin()
        .args([
            "solve",
            "--problem",
            "P10",
            "--n",
            "16",
            "--t",
            "0.05",
            "--format",
            "gnuplot",
            "--output",
            path.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&path).unwrap();
    let _ = std::fs::remove_file(&path);
    let blocks: Vec<&str> = text.split("\n\n").collect();
    assert_eq!(blocks.len(), 16);
    assert_eq!(blocks[0].lines().count(), 16);
}
