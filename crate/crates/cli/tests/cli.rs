use std::io::Write;
use std::process::{Command, Stdio};

use serde_json::Value;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn valdim_with_stdin(args: &[&str], stdin: &str) -> Run {
    let mut child = Command::new(env!("CARGO_BIN_EXE_valdim"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    Run {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn valdim(args: &[&str]) -> Run {
    valdim_with_stdin(args, "")
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let run = valdim(&all);
    assert_eq!(run.code, 0, "{}", run.stderr);
    serde_json::from_str(&run.stdout).expect("valid json")
}

#[test]
fn gamma_dimension_of_a_line() {
    let run = valdim(&["gamma", "dim", "x1 = x2"]);
    assert_eq!((run.code, run.stdout.as_str()), (0, "1\n"));
    assert_eq!(valdim(&["gamma", "dim", "x1 < x1"]).stdout, "-inf\n");
}

#[test]
fn lowerset_dimension_and_diagram() {
    assert_eq!(valdim(&["lowerset", "dimnat", "[[1,4],[2,2],[4,1]]"]).stdout, "5\n");
    assert_eq!(valdim(&["lowerset", "dimnat", "[]"]).stdout, "-inf\n");
    let diagram = valdim(&["lowerset", "render", "[[1,4],[2,2],[4,1]]"]).stdout;
    assert!(diagram.starts_with("4 | • • . . .\n"), "{diagram}");
    assert_eq!(valdim(&["lowerset", "render", "[]"]).stdout, "(empty)\n");
}

#[test]
fn lowerset_operations() {
    assert_eq!(valdim(&["lowerset", "join", "[[1,0]]", "[[0,2]]"]).stdout, "{(0,2),(1,0)}\n");
    assert_eq!(valdim(&["lowerset", "add", "[[1,0]]", "[[0,2]]"]).stdout, "{(1,2)}\n");
    assert_eq!(valdim(&["lowerset", "shift", "[[2,0]]"]).stdout, "{(0,2),(1,1),(2,0)}\n");
    assert_eq!(valdim(&["lowerset", "shift", "[[1,0,0]]"]).stdout, "{(0,0,1),(0,1,0),(1,0,0)}\n");
    assert_eq!(valdim(&["lowerset", "closure", "[[1,1],[0,0],[2,0]]"]).stdout, "{(1,1),(2,0)}\n");
}

#[test]
fn lowerset_json_round_trips() {
    let out = json(&["lowerset", "closure", "[[4,1],[1,4],[2,2],[1,1]]"]);
    assert_eq!(out, serde_json::json!({ "maxima": [[1, 4], [2, 2], [4, 1]] }));
    let again = json(&["lowerset", "closure", &out.to_string()]);
    assert_eq!(again, out);
}

#[test]
fn trop_line_has_three_rays() {
    let out = json(&["trop", "hypersurface", "0@(1,0)+0@(0,1)+0@(0,0)"]);
    let faces = out["faces"].as_array().unwrap();
    assert_eq!(faces.len(), 3);
    assert!(faces.iter().all(|f| f["dim"] == 1));
    assert_eq!(valdim(&["trop", "check-pure", "0@(1,0)+0@(0,1)+0@(0,0)"]).stdout, "true\n");
}

#[test]
fn trop_image_report() {
    let out = json(&["trop", "image", "0 <= x1 & x1 <= 1 & 0 <= x2 & x2 <= 1", "--map", "[[1,1]]"]);
    assert_eq!(out["image_dim"], 1);
    assert_eq!(out["domain_dim"], 2);
    assert_eq!(out["image_closed"], true);
}

#[test]
fn gamma_subcommands() {
    assert_eq!(valdim(&["gamma", "project", "x1 < x2 & x2 < 3", "--keep", "1"]).stdout, "x1 < 3\n");
    assert_eq!(valdim(&["gamma", "type1d", "x1 < 2 | x1 = 5"]).stdout, "type (1,1): (-inf, 2) u {5}\n");
    let closed = json(&["gamma", "closure", "0 < x1 & x1 < 1"]);
    assert_eq!(closed["nvars"], 1);
    let cells = json(&["gamma", "cells", "0 < x1 & x1 < 1 | x1 = 3"]);
    assert_eq!(cells["cells"].as_array().unwrap().len(), 2);
}

#[test]
fn mixed_subcommands() {
    let d = json(&["mixed", "dim", "v(x) > 0 & g1 < v(x)"]);
    assert_eq!(d, serde_json::json!({ "maxima": [[1, 1]] }));
    let run = valdim(&["mixed", "project", "v(x) > 0 & g1 = v(x)"]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    assert_eq!(valdim(&["mixed", "cells", "v(x - t) = 1"]).code, 0);
}

#[test]
fn reads_stdin_and_files() {
    assert_eq!(valdim_with_stdin(&["gamma", "dim", "-"], "x1 = 1 & x2 = 2").stdout, "0\n");
    let path = std::env::temp_dir().join(format!("valdim-cli-test-{}.txt", std::process::id()));
    std::fs::write(&path, "[[1,4],[5,1]]").unwrap();
    let arg = format!("@{}", path.display());
    assert_eq!(valdim(&["lowerset", "dimnat", &arg]).stdout, "6\n");
    std::fs::remove_file(path).unwrap();
}

#[test]
fn parse_errors_exit_2_with_position() {
    let run = valdim(&["gamma", "dim", "x1 <"]);
    assert_eq!(run.code, 2);
    assert!(run.stderr.contains("at 4"), "{}", run.stderr);
    assert_eq!(valdim(&["lowerset", "dimnat", "[[1,2"]).code, 2);
    assert_eq!(valdim(&["trop", "hypersurface", "0@(1,0) +"]).code, 2);
    assert_eq!(valdim(&["nonsense"]).code, 2);
}

#[test]
fn semantic_errors_exit_3() {
    assert_eq!(valdim(&["gamma", "type1d", "x1 < x2"]).code, 3);
    assert_eq!(valdim(&["gamma", "dim", "x3 = 0", "--vars", "2"]).code, 3);
    assert_eq!(valdim(&["lowerset", "join", "[[1,0]]", "[[1,0,0]]"]).code, 3);
    assert_eq!(valdim(&["lowerset", "render", "[[1,0,0]]"]).code, 3);
    assert_eq!(valdim(&["gamma", "project", "x1 = 0", "--keep", "2"]).code, 3);
    assert_eq!(valdim(&["trop", "hypersurface", "0@(1,0) + 1@(1,0)"]).code, 3);
}

#[test]
fn verify_figures_reports_the_shift_mismatch() {
    let run = valdim(&["verify", "figures"]);
    assert_eq!(run.code, 1);
    assert!(run.stdout.starts_with("criterion 1 FAIL"), "{}", run.stdout);
}

#[test]
fn output_is_deterministic() {
    let args = ["verify", "axioms", "--cases", "5", "--seed", "3", "--format", "json"];
    let strip = |s: String| -> Value {
        let mut v: Value = serde_json::from_str(&s).unwrap();
        for r in v["reports"].as_array_mut().unwrap() {
            r["elapsed_ms"] = Value::Null;
        }
        v
    };
    assert_eq!(strip(valdim(&args).stdout), strip(valdim(&args).stdout));
}
