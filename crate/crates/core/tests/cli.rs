use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tanglecolor"))
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn counts_closed_catalog_entries() {
    let o = run(&["eval", "trefoil", "--count"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "9");

    let o = run(&["eval", "figure8", "--count", "--quandle", "dihedral:5"]);
    assert_eq!(stdout(&o).trim(), "25");
}

#[test]
fn structured_matrix_round_trips() {
    let o = run(&["eval", "xp", "--format", "structured"]);
    assert_eq!(o.status.code(), Some(0));
    let doc: tanglecolor::matrix::MatrixDocument = serde_json::from_str(&stdout(&o)).unwrap();
    let m = doc.into_matrix().unwrap();
    assert!(m.is_permutation());
    assert_eq!((m.rows(), m.cols()), (9, 9));
}

#[test]
fn quandle_files_from_disk() {
    let o = run(&["relations", "--quandle", "quandles/core_s3.json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("overall: PASS"));

    let o = run(&["relations", "--quandle", "quandles/tetrahedral.json"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("involutory"));

    let o = run(&["check-quandle", "--quandle", "quandles/conj_klein4.json", "--format", "structured"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["size"], 4);
    assert_eq!(v["involutory"], true);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["eval", "xp ; ("]).status.code(), Some(2));
    assert_eq!(run(&["eval", "xp ; cup ; cup"]).status.code(), Some(2));
    assert_eq!(run(&["eval", "xp", "--quandle", "no/such/file.json"]).status.code(), Some(3));
    assert_eq!(run(&["eval", "id(9)", "--max-width", "3"]).status.code(), Some(4));
    assert_eq!(run(&["eval", "trefoil", "--budget", "5", "--span-summary"]).status.code(), Some(4));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(1));
}

#[test]
fn cross_check_is_deterministic() {
    let args = ["cross-check", "--seed", "3", "--samples", "25", "--format", "structured"];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
    let v: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(v["all_match"], true);
}
