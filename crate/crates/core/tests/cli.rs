use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::{json, Value};

fn qmut(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qmut"))
        .args(args)
        .output()
        .expect("run qmut")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

struct Dir(tempfile::TempDir);

impl Dir {
    fn new() -> Self {
        Dir(tempfile::tempdir().unwrap())
    }

    fn file(&self, name: &str, body: &str) -> PathBuf {
        let p = self.0.path().join(name);
        std::fs::write(&p, body).unwrap();
        p
    }

    fn family_level(&self, name: &str, level: &str) -> PathBuf {
        let out = qmut(&["family", name, "--level", level]);
        assert!(out.status.success());
        self.file(&format!("{name}-{level}.json"), &stdout(&out))
    }
}

fn arrows(v: &Value) -> Vec<(String, String, i64)> {
    let mut out: Vec<_> = v["arrows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|a| {
            (
                a["from"].as_str().unwrap().to_owned(),
                a["to"].as_str().unwrap().to_owned(),
                a["weight"].as_i64().unwrap(),
            )
        })
        .collect();
    out.sort();
    out
}

fn owned(list: &[(&str, &str, i64)]) -> Vec<(String, String, i64)> {
    let mut v: Vec<_> = list.iter().map(|&(a, b, w)| (a.into(), b.into(), w)).collect();
    v.sort();
    v
}

#[test]
fn check_center_out_level_three() {
    let d = Dir::new();
    let q = d.family_level("path_bi_center_out", "3");
    let q = q.to_str().unwrap();
    let out = qmut(&["check", "-q", q, "-s", "0,-1,1,-2,2"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["kind"], "maximal_green");
    assert_eq!(v["length"], 5);

    let bad = qmut(&["check", "-q", q, "-s", "0,-1"]);
    assert_eq!(bad.status.code(), Some(1));
    let v: Value = serde_json::from_str(&stdout(&bad)).unwrap();
    assert_eq!(v["kind"], "not_reddening");
}

#[test]
fn trace_lists_every_step() {
    let d = Dir::new();
    let q = d.file("a2.json", r#"{"mutable":["1","2"],"arrows":[{"from":"1","to":"2"}]}"#);
    let out = qmut(&["check", "-q", q.to_str().unwrap(), "-s", "1,2", "--mode", "mgs", "--trace"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let trace = v["trace"].as_array().unwrap();
    assert_eq!(trace.len(), 2);
    assert_eq!(trace[0]["vertex"], "1");
    assert_eq!(trace[0]["was_green"], true);
    assert_eq!(trace[1]["statuses"], json!({"1": "red", "2": "red"}));
}

#[test]
fn mutate_one_sided_level_five() {
    let d = Dir::new();
    let q = d.family_level("path_one_sided", "5");
    let out = qmut(&["mutate", "-q", q.to_str().unwrap(), "-s", "3"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(
        arrows(&v),
        owned(&[("1", "2", 1), ("3", "2", 1), ("2", "4", 1), ("4", "3", 1), ("4", "5", 1)])
    );
}

#[test]
fn search_prints_sequence_or_bound() {
    let d = Dir::new();
    let a2 = d.file("a2.json", r#"{"mutable":["1","2"],"arrows":[{"from":"1","to":"2"}]}"#);
    let out = qmut(&["search", "-q", a2.to_str().unwrap(), "--max-len", "4", "--mode", "mgs"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "1,2");

    let markov = d.file(
        "markov.json",
        r#"{"mutable":["1","2","3"],"arrows":[
            {"from":"1","to":"2","weight":2},{"from":"2","to":"3","weight":2},{"from":"3","to":"1","weight":2}]}"#,
    );
    let out = qmut(&["search", "-q", markov.to_str().unwrap(), "--max-len", "5", "--mode", "mgs"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout(&out).trim(), "NoneUpTo(5)");
}

#[test]
fn errors_are_json_on_stderr() {
    let d = Dir::new();
    let q = d.file("bad.json", r#"{"mutable":["1"],"arrows":[{"from":"1","to":"1"}]}"#);
    let out = qmut(&["mutate", "-q", q.to_str().unwrap(), "-s", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let v: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert!(v["error"].as_str().unwrap().contains("loop"), "{v}");

    let frozen = d.file("f.json", r#"{"mutable":["1"],"frozen":["x"],"arrows":[{"from":"1","to":"x"}]}"#);
    let out = qmut(&["mutate", "-q", frozen.to_str().unwrap(), "-s", "x"]);
    assert_eq!(out.status.code(), Some(2));

    let out = qmut(&["family", "spiral", "--level", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let out = qmut(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(serde_json::from_slice::<Value>(&out.stderr).is_ok());
}

#[test]
fn reads_quiver_from_stdin() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_qmut"))
        .args(["mutate", "-q", "-", "-s", "2"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(br#"{"mutable":["1","2"],"arrows":[{"from":"1","to":"2"}]}"#)
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(arrows(&v), owned(&[("2", "1", 1)]));
}

#[test]
fn tower_and_scheme_commands() {
    let d = Dir::new();
    let fam = d.file("star.json", r#"{"family":"star","params":{"p":3}}"#);
    let fam = fam.to_str().unwrap();
    assert!(qmut(&["tower", "verify", "-t", fam, "-N", "4"]).status.success());
    assert!(qmut(&["scheme", "verify", "-t", fam, "-N", "4"]).status.success());

    let out = qmut(&["tower", "mutate", "-t", fam, "-k", "0", "-N", "2"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let levels = v["levels"].as_array().unwrap();
    assert_eq!(levels.len(), 2);
    assert_eq!(
        arrows(&levels[1]),
        owned(&[("1a", "0", 1), ("1b", "0", 1), ("1c", "0", 1)])
    );

    let nested = d.file("nested.json", r#"{"family":"nested_triangles"}"#);
    let nested = nested.to_str().unwrap();
    let out = qmut(&["scheme", "decompose", "-t", nested, "-N", "3"]);
    assert!(out.status.success());
    let dec: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let dirs: Vec<&str> = dec["layers"]
        .as_array()
        .unwrap()
        .iter()
        .map(|l| l["direction"].as_str().unwrap())
        .collect();
    assert_eq!(dirs, ["out", "in"]);

    let dec_file = d.file("dec.json", &stdout(&out));
    let out = qmut(&["scheme", "build", "-t", nested, "-d", dec_file.to_str().unwrap(), "-N", "3"]);
    assert!(out.status.success());
    let scheme = d.file("scheme.json", &stdout(&out));
    let out = qmut(&["scheme", "verify", "-t", nested, "-r", scheme.to_str().unwrap(), "-N", "3"]);
    assert!(out.status.success(), "{}", stdout(&out));

    let wrong = d.file("wrong.json", r#"{"levels":[["1a"],["1a"]]}"#);
    let out = qmut(&["scheme", "verify", "-t", nested, "-r", wrong.to_str().unwrap(), "-N", "2"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn dot_export_is_deterministic() {
    let d = Dir::new();
    let q = d.file(
        "q.json",
        r#"{"mutable":["2","1"],"frozen":["1'"],"arrows":[{"from":"1","to":"2","weight":3},{"from":"1","to":"1'"}]}"#,
    );
    let a = qmut(&["export", "dot", "-q", q.to_str().unwrap()]);
    let b = qmut(&["export", "dot", "-q", q.to_str().unwrap()]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let expect = concat!(
        "digraph quiver {\n",
        "  \"1\" [style=filled, fillcolor=\"#2ecc71\"];\n",
        "  \"2\";\n",
        "  \"1'\" [shape=box];\n",
        "  \"1\" -> \"2\" [label=\"3\"];\n",
        "  \"1\" -> \"1'\";\n",
        "}\n",
    );
    assert_eq!(stdout(&a), expect);
}
