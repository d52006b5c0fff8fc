use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use tempfile::TempDir;

fn marklab(args: &[&str]) -> Output {
    marklab_env(args, &[])
}

fn marklab_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_marklab"));
    cmd.args(args);
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &Path, name: &str, body: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, body).unwrap();
    p
}

fn cycle_file(dir: &Path, k: usize) -> PathBuf {
    let mut s = format!("{k} {k}\n");
    for i in 0..k {
        s += &format!("{} {}\n", i, (i + 1) % k);
    }
    write(dir, &format!("c{k}.txt"), &s)
}

fn complete_file(dir: &Path, n: usize) -> PathBuf {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            edges.push(format!("{u} {v}"));
        }
    }
    write(dir, &format!("k{n}.txt"), &format!("{n} {}\n{}\n", edges.len(), edges.join("\n")))
}

fn gen_lower(dir: &Path, n: usize) -> (PathBuf, PathBuf) {
    let out = dir.join(format!("g{n}.txt"));
    let o = marklab(&["gen", "lower", "--n", &n.to_string(), "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    (out.clone(), out.with_extension("json"))
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn gen_lower_writes_graph_and_sidecar() {
    let dir = TempDir::new().unwrap();
    let (graph, sidecar) = gen_lower(dir.path(), 2);
    let text = fs::read_to_string(graph).unwrap();
    assert!(text.starts_with("58 64\n"));
    let side: serde_json::Value = serde_json::from_str(&fs::read_to_string(sidecar).unwrap()).unwrap();
    let vertices = side["vertices"].as_array().unwrap();
    assert_eq!(vertices.len(), 58);
    let count = |class: &str| vertices.iter().filter(|v| v["class"] == class).count();
    assert_eq!(count("pendant"), 24);
    assert_eq!(count("subdivision"), 10);
    assert_eq!(count("hex_interior"), 6);
    assert_eq!(count("hex_boundary"), 18);
}

#[test]
fn gen_to_stdout_and_dot() {
    let o = marklab(&["gen", "hex", "--n", "1"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("6 6\n"));
    let o = marklab(&["gen", "lower", "--n", "1", "--union-cycle", "7", "--dot"]);
    let dot = stdout(&o);
    assert!(dot.contains("class=\"cycle\""));
    assert!(dot.contains("class=\"pendant\""));
    let o = marklab(&["gen", "lower", "--n", "1", "--union-cycle", "9"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_upper_exit_codes() {
    let dir = TempDir::new().unwrap();
    let o = marklab(&["verify", "upper", "--input", s(&cycle_file(dir.path(), 7))]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("col_g ≤ 5 certified by ordering"));

    let (g3, _) = gen_lower(dir.path(), 3);
    let o = marklab(&["verify", "upper", "--input", s(&g3), "--bound", "4"]);
    assert_eq!(o.status.code(), Some(0));

    let o = marklab(&["verify", "upper", "--input", s(&complete_file(dir.path(), 4))]);
    assert_ne!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("warning: girth is 3"));

    let o = marklab(&["verify", "upper", "--input", s(&complete_file(dir.path(), 6))]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("stuck"));

    let o = marklab(&["verify", "upper", "--input", s(&cycle_file(dir.path(), 7)), "--bound", "1"]);
    assert_eq!(o.status.code(), Some(1));

    let bad = write(dir.path(), "bad.txt", "3 1\n0 0\n");
    let o = marklab(&["verify", "upper", "--input", s(&bad)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 2"));
}

#[test]
fn verify_lower_with_cycle() {
    let o = marklab_env(
        &["verify", "lower", "--n", "9", "--k", "7", "--seeds", "4", "--json"],
        &[("MARKLAB_THREADS", "2")],
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let report: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(report["lower"]["girth"], 7);
    assert_eq!(report["lower"]["min_score"], 5);
    assert_eq!(report["lower"]["playouts"].as_array().unwrap().len(), 6);
    assert_eq!(report["upper"]["outcome"]["status"], "certified");
}

#[test]
fn verify_lower_small_n_warns() {
    let o = marklab(&["verify", "lower", "--n", "2", "--seeds", "2"]);
    assert!(stderr(&o).contains("warning: n = 2 < 9"));
    assert!(stdout(&o).contains("instance: G_2"));
}

#[test]
fn playout_output_is_independent_of_threads() {
    let args = ["verify", "lower", "--n", "3", "--seeds", "6", "--json"];
    let one = marklab_env(&args, &[("MARKLAB_THREADS", "1")]);
    let four = marklab_env(&args, &[("MARKLAB_THREADS", "4")]);
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(one.status.code(), four.status.code());
}

#[test]
fn order_and_rank() {
    let dir = TempDir::new().unwrap();
    let c7 = cycle_file(dir.path(), 7);
    let order = dir.path().join("order.txt");
    let o = marklab(&["order", "--input", s(&c7), "--out", s(&order), "--emit-trace"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 8);
    assert_eq!(fs::read_to_string(&order).unwrap().split_whitespace().count(), 7);

    let o = marklab(&["rank", "--input", s(&c7), "--order", s(&order), "--mode", "disjoint"]);
    assert!(o.status.success());
    let lines: Vec<serde_json::Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 8);
    assert_eq!(lines[7]["mode"], "disjoint");
    assert!(lines[7]["r_of_order"].as_u64().unwrap() <= 4);

    let short = write(dir.path(), "short.txt", "0 1 2\n");
    let o = marklab(&["rank", "--input", s(&c7), "--order", s(&short)]);
    assert_eq!(o.status.code(), Some(2));

    let o = marklab(&["order", "--input", s(&complete_file(dir.path(), 6))]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn solve_reports_value() {
    let dir = TempDir::new().unwrap();
    let o = marklab(&["solve", "--input", s(&cycle_file(dir.path(), 6)), "--pv"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["value"], 3);
    assert_eq!(v["pv"].as_array().unwrap().len(), 6);

    let big = cycle_file(dir.path(), 30);
    assert_eq!(marklab(&["solve", "--input", s(&big)]).status.code(), Some(2));
    let mut edges = Vec::new();
    for v in 0..15 {
        if v % 5 != 4 {
            edges.push(format!("{v} {}", v + 1));
        }
        if v < 10 {
            edges.push(format!("{v} {}", v + 5));
        }
    }
    let grid = write(dir.path(), "grid.txt", &format!("15 {}\n{}\n", edges.len(), edges.join("\n")));
    let o = marklab(&["solve", "--input", s(&grid), "--budget", "10"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("budget_exceeded"));
}

#[test]
fn play_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let c9 = cycle_file(dir.path(), 9);
    let args = ["play", "--input", s(&c9), "--alice", "random", "--bob", "random", "--seed", "7", "--json"];
    let a = marklab(&args);
    let b = marklab(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let lines: Vec<serde_json::Value> = stdout(&a).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 10);
    assert_eq!(lines[0]["player"], "alice");
    assert_eq!(lines[1]["move"], 1);
    assert_eq!(lines[9]["complete"], true);
}

#[test]
fn play_theorem3_needs_classes() {
    let dir = TempDir::new().unwrap();
    let (g2, side) = gen_lower(dir.path(), 2);
    let o = marklab(&["play", "--input", s(&g2), "--alice", "greedy", "--bob", "theorem3"]);
    assert_eq!(o.status.code(), Some(2));
    let o = marklab(&["play", "--input", s(&g2), "--alice", "activation", "--bob", "theorem3", "--classes", s(&side), "--json"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let last: serde_json::Value = serde_json::from_str(stdout(&o).lines().last().unwrap()).unwrap();
    assert_eq!(last["bob"], "theorem3");

    let c8 = cycle_file(dir.path(), 8);
    let o = marklab(&["play", "--input", s(&c8), "--alice", "greedy", "--bob", "theorem3", "--classes", s(&side)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("does not match"));
}

#[test]
fn human_session_over_stdin() {
    let dir = TempDir::new().unwrap();
    let c5 = cycle_file(dir.path(), 5);
    let mut child = Command::new(env!("CARGO_BIN_EXE_marklab"))
        .args(["play", "--input", s(&c5), "--alice", "human", "--bob", "human"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"0\n0\n2\n").unwrap();
    let o = child.wait_with_output().unwrap();
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("alice marks 0"));
    assert!(out.contains("bob   marks 2"));
    assert!(out.contains("INCOMPLETE"));
    assert!(stderr(&o).contains("vertex 0 is already marked"));
}
