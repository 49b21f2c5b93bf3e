mod common;

use std::process::{Command, Output};

use cubical::axioms::{classify, Axiom};
use cubical::content::StateContents;
use cubical::format::{format_system, parse_system};
use common::*;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cubical")).args(args).output().unwrap()
}

fn path(name: &str) -> String {
    fixture_dir().join(name).to_string_lossy().into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn classify_matches_library() {
    for (name, doc) in fixtures() {
        let o = run(&["classify", &path(&name)]);
        assert!(o.status.success(), "{name}");
        assert_eq!(stdout(&o).trim(), classify(&doc.system).kind.to_string(), "{name}");
    }
}

#[test]
fn check_exit_codes_follow_verdicts() {
    for (name, doc) in fixtures() {
        let c = classify(&doc.system);
        let ok = Axiom::CUBICAL.iter().all(|&a| c.verdict(a).holds);
        let o = run(&["check", &path(&name)]);
        assert_eq!(o.status.code(), Some(if ok { 0 } else { 1 }), "{name}");
        assert_eq!(stdout(&o).lines().count(), 4, "{name}");
    }
    let o = run(&["check", "--all", &path("cub4.tks")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("Ma fails (exact): pair (S, P)"));
}

#[test]
fn content_matches_library() {
    let doc = fixture("cub4.tks");
    let contents = StateContents::new(&doc.system).unwrap();
    let o = run(&["content", &path("cub4.tks")]);
    let expected: String = contents
        .iter()
        .map(|(s, c)| format!("{}: {}\n", doc.system.state_name(s), c.render(&doc.system)))
        .collect();
    assert_eq!(stdout(&o), expected);
}

#[test]
fn stationary_prints_both_columns() {
    let o = run(&["stationary", &path("cub4.tks")]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("state\tclosed_form\tsolved"));
    let expected = [8.0, 4.0, 6.0, 3.0];
    for (line, w) in lines.zip(expected) {
        let cols: Vec<&str> = line.split('\t').collect();
        for col in &cols[1..] {
            assert!((col.parse::<f64>().unwrap() - w / 21.0).abs() < 1e-10);
        }
    }
    let o = run(&["stationary", &path("one_way.tks")]);
    assert_ne!(o.status.code(), Some(0));
}

#[test]
fn simulate_is_reproducible() {
    let a = run(&["simulate", "--seed", "7", "--steps", "2000", &path("cub4.tks")]);
    let b = run(&["simulate", "--seed", "7", "--steps", "2000", &path("cub4.tks")]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let total: u64 = stdout(&a).lines().skip(1).map(|l| l.split('\t').nth(1).unwrap().parse::<u64>().unwrap()).sum();
    // The initial state is counted as well.
    assert_eq!(total, 2001);
}

#[test]
fn generated_families_parse_and_are_cubical() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        vec!["generate", "comparability", "3"],
        vec!["generate", "ac-orders", "3"],
        vec!["generate", "lattice", "2", "2"],
        vec!["generate", "cube", "3"],
        vec!["generate", "random", "--ground", "4", "--members", "9", "--seed", "3"],
    ] {
        let o = run(&args);
        assert!(o.status.success(), "{args:?}");
        let file = dir.path().join("f.fam");
        std::fs::write(&file, &o.stdout).unwrap();
        let o = run(&["check", file.to_str().unwrap()]);
        assert!(o.status.success(), "{args:?}: {}", stdout(&o));
    }
}

#[test]
fn input_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("bad.tks");
    std::fs::write(&file, "states A B\ntoken t: A>C\n").unwrap();
    let o = run(&["classify", file.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2, column 12"));
    let o = run(&["classify", "/nonexistent/x.tks"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["generate", "partial-orders", "6"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn embed_lists_every_state_and_token() {
    let doc = fixture("cub4.tks");
    let o = run(&["embed", &path("cub4.tks")]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().count(), doc.system.state_count() + doc.system.token_count());
    assert!(text.starts_with("S\t{}\n"));
    let o = run(&["embed", &path("triangle.tks")]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn export_dot_and_round_trip() {
    let o = run(&["export-dot", &path("cub4.tks")]);
    assert!(stdout(&o).starts_with("graph system {"));
    let text = std::fs::read_to_string(path("cub4.tks")).unwrap();
    let doc = parse_system(&text).unwrap();
    assert_eq!(parse_system(&format_system(&doc)).unwrap(), doc);
}
