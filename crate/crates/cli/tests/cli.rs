use std::io::Write;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn run(input: &Value, args: &[&str]) -> Output {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    write!(file, "{input}").unwrap();
    Command::new(env!("CARGO_BIN_EXE_moncolim"))
        .arg("--input")
        .arg(file.path())
        .args(args)
        .output()
        .unwrap()
}

fn run_json(input: &Value, args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.extend(["--report", "json"]);
    let out = run(input, &all);
    let code = out.status.code().unwrap();
    let v = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (code, v)
}

fn z4() -> Value {
    json!({"backend": "finset", "table": [[0,1,2,3],[1,2,3,0],[2,3,0,1],[3,0,1,2]], "unit": 0})
}

fn c2() -> Value {
    json!({"backend": "finset", "table": [[0,1],[1,0]], "unit": 0})
}

fn zmod(n: u64) -> Value {
    json!({"backend": "finab", "carrier": {"moduli": [n]}, "mult": [[1]], "unit": [1]})
}

#[test]
fn check_passes_on_cyclic_group() {
    let (code, v) = run_json(&z4(), &["--command", "check"]);
    assert_eq!(code, 0);
    assert_eq!(v["passed"], true);
}

#[test]
fn broken_associativity_reports_a_triple() {
    // (1·1)·2 = 2·2 = 0 but 1·(1·2) = 1·2 = 2
    let table = json!([[0,1,2],[1,2,2],[2,2,0]]);
    let (code, v) = run_json(&json!({"backend": "finset", "table": table, "unit": 0}), &["--command", "check"]);
    assert_eq!(code, 1);
    let law = &v["result"]["laws"][0];
    assert_eq!(law["law"], "associativity");
    let w: Vec<usize> = serde_json::from_value(law["witness"].clone()).unwrap();
    assert_eq!(w.len(), 3);
    let t = [[0, 1, 2], [1, 2, 2], [2, 2, 0]];
    assert_ne!(t[t[w[0]][w[1]]][w[2]], t[w[0]][t[w[1]][w[2]]]);
}

#[test]
fn malformed_input_exits_with_two() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    write!(file, "{{not json").unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_moncolim"))
        .args(["--command", "check", "--input"])
        .arg(file.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    let (code, _) = run_json(&json!({"backend": "finset", "table": [[0,5],[1,0]], "unit": 0}), &["--command", "check"]);
    assert_eq!(code, 2);
    let (code, _) = run_json(&json!({"table": [[0]]}), &["--command", "check"]);
    assert_eq!(code, 2);
}

#[test]
fn morphism_check() {
    let good = json!({"morphism": {"source": z4(), "target": c2(), "map": [0,1,0,1]}});
    assert_eq!(run_json(&good, &["--command", "check"]).0, 0);
    let bad = json!({"morphism": {"source": z4(), "target": c2(), "map": [0,1,1,0]}});
    let (code, v) = run_json(&bad, &["--command", "check"]);
    assert_eq!(code, 1);
    let failing: Vec<&Value> = v["result"]["laws"].as_array().unwrap().iter().filter(|l| l["passed"] == false).collect();
    assert_eq!(failing[0]["law"], "preserves multiplication");
    assert_eq!(failing[0]["witness"].as_array().unwrap().len(), 2);
}

#[test]
fn cyclic_group_mod_two() {
    let input = json!({"monoid": z4(), "alpha": [0], "beta": [2]});
    let (code, v) = run_json(&input, &["--command", "coequalize", "--verify-depth", "full"]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["result"]["quotient"]["table"], json!([[0,1],[1,0]]));
    assert_eq!(v["result"]["projection"]["table"], json!([0,1,0,1]));
}

#[test]
fn equal_pair_gives_a_copy() {
    let input = json!({"monoid": z4(), "alpha": [3], "beta": [3]});
    let (code, v) = run_json(&input, &["--command", "coequalize"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["quotient"]["table"], z4()["table"]);
    assert_eq!(v["result"]["projection"]["table"], json!([0,1,2,3]));
}

#[test]
fn ring_mod_eight_by_two() {
    let input = json!({"monoid": zmod(8), "alpha": [[2]], "beta": [[0]]});
    let (code, v) = run_json(&input, &["--command", "coequalize", "--verify-depth", "full"]);
    assert_eq!(code, 0, "{v}");
    let carrier = &v["result"]["quotient"]["carrier"];
    assert_eq!(carrier, &json!({"gens": 1, "relations": [[2]]}));
}

#[test]
fn several_pairs() {
    let input = json!({"monoid": z4(), "pairs": [[[0],[2]], {"alpha": [1], "beta": [0]}]});
    let (code, v) = run_json(&input, &["--command", "coequalize"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["quotient"]["table"], json!([[0]]));
}

#[test]
fn monoid_ring_of_c2() {
    let (code, v) = run_json(&c2(), &["--command", "monoid-ring", "--verify-depth", "full"]);
    assert_eq!(code, 0, "{v}");
    let r = &v["result"];
    assert_eq!(r["ring"]["carrier"], json!({"gens": 2, "relations": []}));
    assert_eq!(r["basis"], json!(["[0]", "[1]"]));
    // g·g = 1
    assert_eq!(r["products"][1][1], json!([1, 0]));
    assert_eq!(r["stabilization"]["stabilized"], true);
}

#[test]
fn monoid_ring_of_trivial_monoid_is_z() {
    let trivial = json!({"backend": "finset", "table": [[0]], "unit": 0});
    let (code, v) = run_json(&trivial, &["--command", "monoid-ring"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["ring"]["carrier"], json!({"gens": 1, "relations": []}));
    assert_eq!(v["result"]["ring"]["mult"], json!([[1]]));
}

#[test]
fn monoid_ring_rejects_group_backend() {
    let (code, _) = run_json(&zmod(3), &["--command", "monoid-ring"]);
    assert_eq!(code, 2);
}

#[test]
fn hom_check_c2_into_z6() {
    let input = json!({"monoid": c2(), "ring": zmod(6)});
    let (code, v) = run_json(&input, &["--command", "hom-check", "--verify-depth", "full"]);
    assert_eq!(code, 0, "{v}");
    let r = &v["result"]["report"];
    assert_eq!(r["monoid_morphisms"], 2);
    assert_eq!(r["ring_morphisms"], 2);
    assert_eq!(r["bijection"], true);
    assert_eq!(v["result"]["monoid_morphisms"].as_array().unwrap().len(), 2);
}

#[test]
fn hom_check_needs_a_finite_ring() {
    let z = json!({"backend": "finab", "carrier": {"moduli": [0]}, "mult": [[1]], "unit": [1]});
    let (code, _) = run_json(&json!({"monoid": c2(), "ring": z}), &["--command", "hom-check"]);
    assert_eq!(code, 2);
}

#[test]
fn output_is_deterministic() {
    let input = json!({"monoid": z4(), "alpha": [0], "beta": [2]});
    for format in ["text", "json"] {
        let a = run(&input, &["--command", "coequalize", "--verify-depth", "full", "--report", format]);
        let b = run(&input, &["--command", "coequalize", "--verify-depth", "full", "--report", format]);
        assert_eq!(a.stdout, b.stdout);
        assert!(!a.stdout.is_empty());
    }
}

#[test]
fn stdin_input() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_moncolim"))
        .args(["--input", "-", "--command", "check"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    write!(child.stdin.take().unwrap(), "{}", c2()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("check: PASS"));
}
