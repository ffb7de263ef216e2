//! The binary's subcommands on small inputs.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_shadow-simplex"))
}

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn solve_and_oracle_agree_on_the_cut_square() {
    let file = data("cut_square.lp");
    let file = file.to_str().unwrap();
    for mode in ["float", "dyadic"] {
        let out = run(&["solve", file, "--mode", mode, "--seed", "5"]);
        assert!(out.status.success());
        let text = stdout(&out);
        assert!(text.contains("status: optimal\nvalue: 3/2\n"), "{text}");
    }
    let oracle = stdout(&run(&["oracle", file]));
    assert!(oracle.starts_with("status: optimal\nvalue: 3/2\n"), "{oracle}");
}

#[test]
fn analyze_prints_one_csv_row() {
    let out = stdout(&run(&["analyze", data("cut_square.lp").to_str().unwrap()]));
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].starts_with("m,n,delta,"));
    // rows (1,0) and (2,2) meet at 45 degrees
    assert!(lines[1].starts_with("5,2,0.7071067811865475,2,"), "{}", lines[1]);
}

#[test]
fn infeasible_program_reports_the_phase1_value() {
    let file = data("infeasible.lp");
    let text = stdout(&run(&["solve", file.to_str().unwrap()]));
    assert!(text.contains("status: infeasible\nphase1_value: 1\n"), "{text}");
    let p1 = stdout(&run(&["phase1", "--phase1-only", file.to_str().unwrap()]));
    assert!(p1.starts_with("maximize 0 -1 -1\nst\n"), "{p1}");
    assert!(p1.contains("# initial vertex: 0 0 1\n"), "{p1}");
}

#[test]
fn traces_are_written_per_walk() {
    let dir = std::env::temp_dir().join(format!("shadow-simplex-trace-{}", std::process::id()));
    let out = run(&["solve", data("cut_square.lp").to_str().unwrap(), "--trace", dir.to_str().unwrap()]);
    assert!(out.status.success());
    let files: Vec<_> = std::fs::read_dir(&dir).unwrap().collect();
    assert!(!files.is_empty());
    let first = std::fs::read_to_string(files[0].as_ref().unwrap().path()).unwrap();
    assert!(first.starts_with("pivot_index,entering_row,leaving_row,slope,c_value\n"));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn bench_output_is_byte_identical_across_runs() {
    let args = ["bench", "--generator", "tu-incidence", "--sizes", "6x3,8x4", "--trials", "8", "--seed", "7"];
    let (a, b) = (run(&args), run(&args));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).starts_with("m,n,delta,Delta,mean_pivots,median_pivots,max_pivots,oracle_agree_rate,mean_bits\n6,3,"));
}

#[test]
fn malformed_input_fails_with_a_line_number() {
    let dir = std::env::temp_dir().join(format!("shadow-simplex-bad-{}.lp", std::process::id()));
    std::fs::write(&dir, "maximize 1 1\nst\n1 0 <= 1\n1 x <= 2\n").unwrap();
    let out = run(&["solve", dir.to_str().unwrap()]);
    std::fs::remove_file(&dir).unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 4"), "{err}");
}
