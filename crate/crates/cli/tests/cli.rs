use std::process::{Command, Output};

fn gridmis(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gridmis"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn count_ladder() {
    let o = gridmis(&["count", "--family", "grid", "--m", "2", "--n", "10"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "110\n");
}

#[test]
fn nimis_tube() {
    let o = gridmis(&["nimis", "--family", "thin-cylinder", "--m", "3", "--n", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "3\n");
    let o = gridmis(&["nimis", "--family", "grid", "--m", "2", "--n", "2", "--orbits"]);
    assert_eq!(stdout(&o), "1\n1: 2, 4, (1,2),(2,1)\n");
}

#[test]
fn verify_all_succeeds() {
    let o = gridmis(&["verify", "--all"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with(" failed\n"));
    assert!(stdout(&o).contains(", 0 failed"));
}

#[test]
fn verify_reports_are_repeatable_and_csv_shaped() {
    let args = ["verify", "--all", "--format", "csv"];
    let a = stdout(&gridmis(&args));
    assert_eq!(a, stdout(&gridmis(&args)));
    assert!(a.starts_with("family,m,n,quantity,engine_a,value_a,engine_b,value_b,outcome\n"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(gridmis(&["count", "--family", "blob", "--m", "2", "--n", "3"]).status.code(), Some(2));
    assert_eq!(gridmis(&["count", "--family", "grid", "--m", "2"]).status.code(), Some(2));
    assert_eq!(gridmis(&["count", "--family", "torus", "--m", "3", "--n", "3"]).status.code(), Some(2));
    assert_eq!(gridmis(&["verify"]).status.code(), Some(2));
    assert_eq!(gridmis(&["frobnicate"]).status.code(), Some(2));
    let o = gridmis(&["enumerate", "--family", "grid", "--m", "7", "--n", "7"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("budget exceeded"));
}

#[test]
fn budgets_and_config_file() {
    let o = gridmis(&["enumerate", "--family", "grid", "--m", "7", "--n", "7", "--budget-vertices", "49"]);
    assert_eq!(o.status.code(), Some(0));
    let dir = std::env::temp_dir().join(format!("gridmis-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("run.cfg");
    std::fs::write(&path, "format = json\nbudget-width = 1\n").unwrap();
    let p = path.to_str().unwrap();
    let o = gridmis(&["count", "--family", "grid", "--m", "2", "--n", "4", "--config", p]);
    assert_eq!(o.status.code(), Some(2));
    let o = gridmis(&["count", "--family", "grid", "--m", "2", "--n", "4", "--config", p, "--budget-width", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("\"count\": \"6\""));
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn verify_single_instance() {
    let o = gridmis(&["verify", "--family", "torus", "--m", "3", "--n", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("PASS torus 3x4 parity"));
}

#[test]
fn other_subcommands() {
    let o = gridmis(&["build", "--family", "grid", "--m", "2", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("1,1: "));
    let o = gridmis(&["enumerate", "--family", "grid", "--m", "2", "--n", "3"]);
    assert_eq!(stdout(&o).lines().count(), 4);
    let o = gridmis(&["avgsize", "--family", "grid", "--m", "2", "--n", "3"]);
    assert!(stdout(&o).starts_with("5/2 "));
    let o = gridmis(&["distribution", "--family", "fat-cylinder", "--m", "2", "--n", "8", "--format", "csv"]);
    assert_eq!(stdout(&o), "size,count\n4,4\n6,40\n8,2\n");
    let o = gridmis(&["formulas", "--family", "fat-cylinder", "--m", "2", "--n", "4"]);
    assert!(stdout(&o).contains("nimis-count: 2\n"));
    assert!(stdout(&o).contains("phi/sqrt5: 0.723606797750\n"));
    let o = gridmis(&["strings", "--kind", "x", "--n", "4"]);
    assert_eq!(stdout(&o), "1011\n1101\n1111\n");
    let o = gridmis(&["compositions", "--k", "2", "--n", "4"]);
    assert_eq!(stdout(&o), "1,3\n2,2\n");
}

#[test]
fn trend_marks_skipped_rows() {
    let o = gridmis(&["trend", "--budget-vertices", "30"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("grid 3x12 nimis/mis skipped"));
    assert!(out.contains("fat-cylinder 2x40 avg/n = "));
}
