use std::io::Write;
use std::process::{Command, Stdio};

fn misere() -> Command {
    Command::new(env!("CARGO_BIN_EXE_misere"))
}

#[test]
fn outcome_command() {
    let out = misere().args(["outcome", "7", "6", "4"]).output().unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("P2Win"));
    let out = misere().args(["outcome", "inf", "6", "4"]).output().unwrap();
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("Draw"));
    let out = misere().args(["outcome", "7", "0", "4"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn solve_command() {
    let out = misere().args(["solve", "4", "3", "3", "--moves", "1,2"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(text.lines().count(), 4);
    assert!(text.contains("best move"));
}

#[test]
fn verify_command_emits_certificates() {
    let out = misere().args(["verify", "take-even"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.lines().count() > 0);
    for line in text.lines() {
        serde_json::from_str::<serde_json::Value>(line).unwrap();
    }
    let out = misere().args(["verify", "nosuch"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn stdio_session() {
    let mut child = misere()
        .args(["session", "--width", "5", "--height", "1", "--k", "3", "--seat", "none"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    let mut stdin = child.stdin.take().unwrap();
    writeln!(stdin, r#"{{"type":"newgame"}}"#).unwrap();
    writeln!(stdin, r#"{{"type":"move","col":2}}"#).unwrap();
    drop(stdin);
    let out = child.wait_with_output().unwrap();
    let lines: Vec<serde_json::Value> = String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[1]["snapshot"]["board"][0], "--X--");
}
