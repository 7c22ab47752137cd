use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::{json, Value};

const BIN: &str = env!("CARGO_BIN_EXE_matroid-lab");

struct Run {
    code: i32,
    json: Value,
    stderr: String,
}

fn run(args: &[&str]) -> Run {
    run_env(args, &[])
}

fn run_env(args: &[&str], env: &[(&str, &str)]) -> Run {
    let mut cmd = Command::new(BIN);
    cmd.args(args);
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("binary runs");
    Run {
        code: out.status.code().expect("exit code"),
        json: serde_json::from_slice(&out.stdout).expect("stdout is JSON"),
        stderr: String::from_utf8_lossy(&out.stderr).into_owned(),
    }
}

fn input(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("matroid-lab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const FANO: &str = "1 0 0 1 1 0 1\n0 1 0 1 0 1 1\n0 0 1 0 1 1 1\n";
const NINE: &str = "\
1 0 0 0 0 0 0 0 1
0 1 0 0 0 0 0 0 1
0 0 1 0 0 1 1 0 1
0 0 0 1 0 1 0 1 1
0 0 0 0 1 0 1 1 1
";

#[test]
fn fano_is_not_regular() {
    let f = input("fano.txt", FANO);
    let r = run(&["regular", "--matrix", s(&f)]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.json["result"]["regular"], false);
    assert_eq!(r.json["result"]["oracle_agreement"], true);
    assert_eq!(r.json["result"]["witness_minor"]["kind"], "F7");
    assert!(r.json["input_digest"].as_str().unwrap().starts_with("sha256:"));
}

#[test]
fn identity_is_regular() {
    let f = input("i3.txt", "1 0 0\n0 1 0\n0 0 1\n");
    let r = run(&["regular", "--matrix", s(&f)]);
    assert_eq!(r.code, 0);
    assert_eq!(r.json["result"]["regular"], true);
    assert_eq!(r.json["result"]["witness_minor"], Value::Null);
}

#[test]
fn nine_column_matrix_is_not_regular() {
    let f = input("nine.txt", NINE);
    let r = run(&["regular", "--matrix", s(&f)]);
    assert_eq!(r.code, 0);
    assert_eq!(r.json["result"]["regular"], false);
    assert_eq!(r.json["result"]["oracle_agreement"], true);
}

#[test]
fn malformed_matrix_is_a_parse_error() {
    let f = input("bad.txt", "1 0\n0 2\n");
    let r = run(&["regular", "--matrix", s(&f)]);
    assert_eq!(r.code, 2);
    assert_eq!(r.json["error"]["code"], "PARSE_ERROR");
    assert!(r.stderr.contains("line 2"));
}

#[test]
fn homology_of_small_posets() {
    let r1 = run(&["homology", "--ir-rank", "1"]);
    assert_eq!(r1.json["result"]["report"]["betti"], json!([1]));
    let r2 = run(&["homology", "--ir-rank", "2"]);
    assert_eq!(r2.json["result"]["report"]["betti"], json!([1, 0]));
    let r3 = run(&["homology", "--ir-rank", "3"]);
    assert_eq!(r3.code, 0, "{}", r3.stderr);
    assert_eq!(r3.json["result"]["report"]["betti"], json!([1, 0, 0, 8]));
    assert_eq!(r3.json["result"]["report"]["euler"], -7);
    assert_eq!(r3.json["result"]["nodes"], 91);
}

#[test]
fn rank_five_is_rejected() {
    let r = run(&["homology", "--ir-rank", "5"]);
    assert_eq!(r.code, 2);
    assert_eq!(r.json["error"]["code"], "RANK_TOO_LARGE");
}

#[test]
fn rank_four_survey_is_inconclusive_beyond_budget() {
    let r = run(&["homology", "--ir-rank", "4", "--seed", "3"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let res = &r.json["result"];
    assert_eq!(res["nodes"], 21896);
    assert_eq!(res["euler"], -1540);
    assert_eq!(res["b2"], "INCONCLUSIVE");
    assert_eq!(res["pi1"], "INCONCLUSIVE");
    assert_eq!(res["enumeration"]["spot_check_mismatches"], 0);
}

#[test]
fn homology_of_a_facet_file() {
    let f = input("circle.txt", "# hollow triangle\n0 1\n1 2\n0 2\n");
    let r = run(&["homology", "--complex", s(&f)]);
    assert_eq!(r.code, 0);
    assert_eq!(r.json["result"]["report"]["betti"], json!([1, 1]));
    assert_eq!(r.json["result"]["report"]["f_vector"], json!([3, 3]));
}

#[test]
fn homology_writes_hasse_dot() {
    let dot = std::env::temp_dir().join(format!("matroid-lab-cli-hasse-{}.dot", std::process::id()));
    let r = run(&["homology", "--ir-rank", "2", "--dot", dot.to_str().unwrap()]);
    assert_eq!(r.code, 0);
    let text = std::fs::read_to_string(&dot).unwrap();
    assert!(text.starts_with("digraph"));
    assert_eq!(text.matches("->").count(), 3);
}

#[test]
fn character_matches_table() {
    let r = run(&["character", "--ir-rank", "3"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let res = &r.json["result"];
    assert_eq!(res["h3_character"], json!([8, 0, -1, 0, 1, 1]));
    assert_eq!(res["hopf_trace"], json!([-7, 1, 2, 1, 0, 0]));
    assert_eq!(res["class_sizes"], json!([1, 21, 56, 42, 24, 24]));
    assert_eq!(res["match"], true);
    assert_eq!(res["diff"], json!([0, 0, 0, 0, 0, 0]));
    assert_eq!(res["h3_norm"], "1");
}

#[test]
fn character_needs_rank_three() {
    assert_eq!(run(&["character", "--ir-rank", "2"]).code, 2);
}

#[test]
fn identical_endpoints_give_empty_path() {
    let f = input("basis.txt", "1 0 0\n0 1 0\n0 0 1\n");
    let r = run(&["geodesic", "--e1", s(&f), "--e2", s(&f)]);
    assert_eq!(r.code, 0);
    assert_eq!(r.json["result"]["exists"], true);
    assert_eq!(r.json["result"]["length"], 0);
}

#[test]
fn independent_intersection_pair_has_explicit_path() {
    let a = input("a.txt", "1 0 0\n0 1 0\n0 0 1\n");
    let b = input("b.txt", "1 0 1 1\n0 1 1 0\n0 0 0 1\n");
    let r = run(&["geodesic", "--e1", s(&a), "--e2", s(&b)]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let res = &r.json["result"];
    assert_eq!(res["exists"], true);
    assert_eq!(res["intersection_independent"], true);
    assert_eq!(res["length"], res["distance"]);
    assert_eq!(res["path"].as_array().unwrap().len(), 4);
}

#[test]
fn non_node_is_rejected() {
    let a = input("fano_e1.txt", FANO);
    let b = input("id_e2.txt", "1 0 0\n0 1 0\n0 0 1\n");
    let r = run(&["geodesic", "--e1", s(&a), "--e2", s(&b)]);
    assert_eq!(r.code, 2);
    assert_eq!(r.json["error"]["code"], "NOT_IN_POSET");
}

#[test]
fn counterexample_has_no_geodesic() {
    let r = run(&["counterexample"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let res = &r.json["result"];
    assert_eq!(res["exists"], false);
    assert_eq!(res["blockers"], json!(["union_not_regular", "intersection_rank_4"]));
    assert_eq!(res["transcript"].as_array().unwrap().len(), 2);
    assert!(res["transcript"].as_array().unwrap().iter().all(|t| t["blocked_at"] == 0));
}

#[test]
fn tree_balls() {
    let r0 = run(&["tree", "--depth", "0"]);
    assert_eq!(r0.json["result"]["nodes"], 1);
    let dot = std::env::temp_dir().join(format!("matroid-lab-cli-tree-{}.dot", std::process::id()));
    let r6 = run(&["tree", "--depth", "6", "--dot", dot.to_str().unwrap()]);
    assert_eq!(r6.code, 0, "{}", r6.stderr);
    assert_eq!(r6.json["result"]["acyclic"], true);
    for d in r6.json["result"]["degree_histogram"].as_array().unwrap() {
        assert!(d["degree"] == 2 || d["degree"] == 3);
    }
    assert!(std::fs::read_to_string(&dot).unwrap().starts_with("graph ir2z"));
    assert_eq!(run(&["tree", "--depth", "13"]).code, 2);
}

#[test]
fn payloads_are_deterministic() {
    for args in [&["counterexample"][..], &["tree", "--depth", "5"], &["character"]] {
        let a = run(args);
        let b = run_env(args, &[("MATROID_LAB_THREADS", "1")]);
        assert_eq!(a.json["result"].to_string(), b.json["result"].to_string());
        assert_eq!(a.json["input_digest"], b.json["input_digest"]);
    }
}

#[test]
fn bad_thread_count_is_rejected() {
    let r = run_env(&["counterexample"], &[("MATROID_LAB_THREADS", "many")]);
    assert_eq!(r.code, 2);
}

#[test]
fn json_flag_is_accepted() {
    let r = run(&["--json", "tree", "--depth", "1"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.json["command"][0], "--json");
}
