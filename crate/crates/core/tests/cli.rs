use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_modalbench"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn eval_on_figure2() {
    let fig = data("fig2.km");
    let o = run(&[
        "eval",
        "--model",
        &fig,
        "--world",
        "w",
        "--formula",
        "p -> [] <> p",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "false");
    let o = run(&["eval", "--model", &fig, "--world", "w", "--formula", "p"]);
    assert_eq!(stdout(&o).trim(), "true");
    let o = run(&[
        "eval",
        "--model",
        &fig,
        "--world",
        "nowhere",
        "--formula",
        "p",
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn classify_figure2() {
    let o = run(&["classify", "--model", &data("fig2.km")]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().next(), Some("CK"));
    assert!(out.contains("symmetric: true"));
}

#[test]
fn check_model_and_closure_override() {
    let fig = data("fig2.km");
    let o = run(&["check-model", "--model", &fig]);
    assert_eq!(stdout(&o).trim(), "OK 3 worlds");
    let o = run(&["check-model", "--model", &fig, "--preceq-closure", "off"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(!o.stderr.is_empty());
}

#[test]
fn check_proof_file_and_builtin() {
    let o = run(&["check-proof", &data("n_in_ckb.proof")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "ACCEPTED");
    let o = run(&["check-proof", "--builtin", "n_in_ckb"]);
    assert_eq!(stdout(&o).trim(), "ACCEPTED");
}

#[test]
fn find_countermodel_exit_codes() {
    let o = run(&[
        "find-countermodel",
        "p -> [] <> p",
        "--max-worlds",
        "3",
        "--require-symmetric",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).starts_with("COUNTEREXAMPLE\n"));
    let o = run(&["find-countermodel", "p -> p", "--max-worlds", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("NONE max_worlds=2"));
    let o = run(&["find-countermodel", "p", "--max-worlds", "9"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn compare_classes_fs() {
    let o = run(&[
        "compare-classes",
        "--formula",
        "(<> p -> [] q) -> [] (p -> q)",
        "--class",
        "ck",
        "--class",
        "ckb",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).trim_end().ends_with("mismatches: 1"));
}

#[test]
fn axioms_list_and_parse() {
    let o = run(&["axioms", "list"]);
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 14);
    assert!(out.contains("K_BOX: [] (A -> B) -> [] A -> [] B"));
    let o = run(&["parse", "((p) -> ([] q))"]);
    assert_eq!(stdout(&o).lines().next(), Some("p -> [] q"));
    let o = run(&["parse", "p ->"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn export_dot_to_file() {
    let dir = std::env::temp_dir().join(format!("modalbench-dot-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("fig2.dot");
    let o = run(&[
        "export-dot",
        "--model",
        &data("fig2.km"),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("digraph"));
    assert!(text.contains("style=dashed"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn output_is_deterministic() {
    let args = [
        "find-countermodel",
        "<> [] p -> p",
        "--class",
        "ck",
        "--max-worlds",
        "3",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), b.status.code());
}
