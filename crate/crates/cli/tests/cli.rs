use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn run(args: &[&str], stdin: Option<&str>, env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_factorlab"));
    cmd.args(args).stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::piped());
    cmd.env_remove("FACTORLAB_MAX_MILLIS");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let mut child = cmd.spawn().expect("binary runs");
    if let Some(text) = stdin {
        child.stdin.take().unwrap().write_all(text.as_bytes()).unwrap();
    }
    drop(child.stdin.take());
    child.wait_with_output().unwrap()
}

fn json(output: &Output) -> Value {
    serde_json::from_slice(&output.stdout).expect("valid JSON on stdout")
}

fn graph_file(text: &str) -> tempfile::NamedTempFile {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(file, "{text}").unwrap();
    file
}

#[test]
fn solve_single_edge() {
    let file = graph_file("A_");
    let out = run(&["solve", "--graph", file.path().to_str().unwrap(), "--prescription", "Hn:1", "--json"], None, &[]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["delta"], 0);
    assert_eq!(v["witness"], serde_json::json!([[0, 1]]));
}

#[test]
fn solve_star_reports_degree_sets() {
    let out = run(&["solve", "--graph", "-", "--prescription", "Hn*:1", "--json"], Some("CF\n"), &[]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["delta"], 1);
    assert_eq!(v["degree_sets"], serde_json::json!([[0, 1], [0, 1], [0, 1], [2, 3]]));
    assert_eq!(v["optimum_count"], 4);
}

#[test]
fn edge_list_input_is_accepted() {
    let file = graph_file("4 3\n0 3\n1 3\n2 3");
    let out = run(&["solve", "--graph", file.path().to_str().unwrap(), "--prescription", "Hn:1", "--json"], None, &[]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["delta"], 1);
}

#[test]
fn decompose_star() {
    let out = run(&["decompose", "--graph", "-", "--json"], Some("CF\n"), &[]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["a"], serde_json::json!([3]));
}

#[test]
fn certify_star_and_reject_factor_graphs() {
    let out = run(&["certify", "--graph", "-", "--json"], Some("CF\n"), &[]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["s_set"], serde_json::json!([3]));
    assert_eq!(v["checks"]["inequality_lhs"], 3);
    assert_eq!(v["checks"]["inequality_rhs"], 2);

    let out = run(&["certify", "--graph", "-"], Some("A_\n"), &[]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn generated_apex_graph_violates_the_condition() {
    let generated = run(&["gen", "apex-cliques", "--n", "1"], None, &[]);
    assert_eq!(generated.status.code(), Some(0));
    let text = String::from_utf8(generated.stdout).unwrap();
    assert_eq!(text.trim(), "I~aK[A@_W");
    let out = run(&["check", "ck", "--graph", "-", "--json"], Some(&text), &[]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["violator"]["set"], serde_json::json!([0]));
    assert_eq!((v["violator"]["lhs"].clone(), v["violator"]["rhs"].clone()), (3.into(), 2.into()));
}

#[test]
fn check_conditions_exit_codes() {
    for condition in ["ck", "ck-nonempty", "amahashi", "las-vergnas", "neighborhood"] {
        let out = run(&["check", condition, "--graph", "-"], Some("C~\n"), &[]);
        assert_eq!(out.status.code(), Some(0), "{condition} on K4");
    }
}

#[test]
fn verify_small_corpora() {
    let out = run(&["verify", "--corpus", "exhaustive:v<=4", "--json"], None, &[]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["instances"], 75);
    assert_eq!(v["failures"], serde_json::json!([]));

    let out = run(&["verify", "--corpus", "gen:bipartite-sharp:1..2", "--json"], None, &[]);
    assert_eq!(out.status.code(), Some(0));

    let corpus = graph_file("A_\nCF\nC~");
    let out = run(
        &["verify", "--corpus", corpus.path().to_str().unwrap(), "--properties", "certificate,delta-formula"],
        None,
        &[],
    );
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn errors_exit_with_two() {
    assert_eq!(run(&["solve", "--graph", "/nonexistent/graph.g6"], None, &[]).status.code(), Some(2));
    assert_eq!(run(&["solve", "--graph", "-"], Some("!!\n"), &[]).status.code(), Some(2));
    assert_eq!(run(&["bogus"], None, &[]).status.code(), Some(2));
    let out = run(&["solve", "--graph", "-", "--prescription", "Hn:1", "--max-edges", "2"], Some("CF\n"), &[]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn environment_limit_overrides_flag() {
    let args = ["solve", "--graph", "-", "--prescription", "Hn:1", "--max-millis", "10000"];
    assert_eq!(run(&args, Some("CF\n"), &[("FACTORLAB_MAX_MILLIS", "0")]).status.code(), Some(2));
    assert_eq!(run(&args, Some("CF\n"), &[("FACTORLAB_MAX_MILLIS", "5000")]).status.code(), Some(1));
}
