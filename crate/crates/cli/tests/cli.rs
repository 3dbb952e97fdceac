use std::path::PathBuf;
use std::process::{Command, Output};

use conewright_cli::report::{render_table, ConeData, TableData};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_conewright"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("conewright-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn table1_values() {
    let o = run(&["table1", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let t: TableData = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(t.table, "table1");
    assert_eq!(t.columns.len(), 7);
    let v4 = t.rows.iter().find(|r| r.case == "v4").unwrap();
    assert_eq!(v4.values, vec![80, 48, 26, 12, 104, 60, 26]);
    let gr24 = t.rows.iter().find(|r| r.case == "gr24").unwrap();
    assert_eq!(gr24.values, vec![85, 45, 21, 8, 106, 56, 41]);
}

#[test]
fn json_round_trip_reproduces_text() {
    for table in ["table1", "table2", "table3"] {
        let text = stdout(&run(&[table]));
        let json = stdout(&run(&[table, "--json"]));
        let parsed: TableData = serde_json::from_str(&json).unwrap();
        assert_eq!(render_table(&parsed), text, "{table}");
    }
}

#[test]
fn out_file_matches_json() {
    let path = scratch("table2.json");
    let o = run(&["table2", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(written, stdout(&run(&["table2", "--json"])));
    let t: TableData = serde_json::from_str(&written).unwrap();
    assert_eq!(t.rows[2].values, vec![-94, 49]);
}

#[test]
fn unwritable_out_is_internal_error() {
    let o = run(&["table1", "--out", "/nonexistent-dir/x/t.json"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn cone_walls() {
    let o = run(&["cone", "--case", "v5", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let c: ConeData = serde_json::from_str(&stdout(&o)).unwrap();
    let walls: Vec<&str> = c.walls.iter().map(|w| w.divisor.as_str()).collect();
    assert_eq!(walls, ["4L-5H", "9L-11H", "L-H", "H", "-L+3H"]);
    assert_eq!(c.chambers.len(), 4);

    let text = stdout(&run(&["cone", "--case", "V4"]));
    assert!(text.contains("walls: 15L-17H, 8L-9H, L-H, H, -L+3H"));
}

#[test]
fn check_passes() {
    for args in [&["check"][..], &["check", "--all"], &["check", "--case", "gr24"]] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}");
        assert!(stdout(&o).trim_end().ends_with(", 0 failed"));
    }
}

#[test]
fn usage_errors() {
    for args in [
        &[][..],
        &["table4"],
        &["cone"],
        &["cone", "--case", ""],
        &["cone", "--case", "p4"],
        &["check", "--all", "--case", "v4"],
        &["table1", "--bogus"],
    ] {
        assert_eq!(run(args).status.code(), Some(64), "{args:?}");
    }
}

#[test]
fn help_and_version() {
    for args in [&["--help"][..], &["--version"], &["cone", "--help"]] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}");
        assert!(!o.stdout.is_empty());
    }
}
