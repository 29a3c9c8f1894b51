use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn scratch(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("tapes-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    fs::write(&p, body).unwrap();
    p
}

fn rels() -> PathBuf {
    scratch("rels.sig", "sort A;\ngen R : A -> A; gen S : A -> A; gen T : A -> A;\n")
}

fn tapes(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tapes")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn distributivity_holds() {
    let sig = rels();
    let o = tapes(&["decide", "--sig", sig.to_str().unwrap(), "R;(S|T)", "==", "R;S | R;T"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "holds");
}

#[test]
fn refutation_prints_a_model() {
    let o = tapes(&["decide", "R;S & R;T", "<=", "R;(S&T)"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    let json = out.lines().find_map(|l| l.strip_prefix("counterexample: ")).unwrap();
    let m: serde_json::Value = serde_json::from_str(json).unwrap();
    assert!(m["carrier"]["A"].as_u64().unwrap() <= 3);
}

#[test]
fn normal_form_of_a_sum() {
    let sig = rels();
    let o = tapes(&["normalize", "--sig", sig.to_str().unwrap(), "--json", "--tape", "diag(A) ; ([R] (+) [S]) ; codiag(A)"]);
    assert_eq!(o.status.code(), Some(0));
    let m: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(m["entries"], serde_json::json!([[["R", "S"]]]));
}

#[test]
fn evaluates_an_intersection() {
    let sig = rels();
    let model = scratch(
        "m.json",
        r#"{"carrier":{"A":3},"relations":{"R":[[[0],[1]],[[1],[2]]],"S":[[[0],[1]],[[2],[2]]],"T":[]}}"#,
    );
    let o = tapes(&["eval", "--sig", sig.to_str().unwrap(), "--model", model.to_str().unwrap(), "R & S"]);
    assert_eq!(o.status.code(), Some(0));
    let r: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r["pairs"], serde_json::json!([[[0], [1]]]));
}

#[test]
fn errors_exit_with_two() {
    let sig = rels();
    let s = sig.to_str().unwrap();
    for args in [
        vec!["decide", "--sig", s, "R;;S", "<=", "R"],
        vec!["decide", "--sig", s, "Q", "<=", "R"],
        vec!["decide", "--kind", "tape", "--sig", s, "[R]", "<=", "[S]"],
        vec!["normalize", "--tape", "[R]"],
        vec!["eval", "--sig", s, "--model", "/nonexistent.json", "R"],
        vec!["decide", "R", "<", "S"],
    ] {
        let o = tapes(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn render_writes_dot() {
    let sig = rels();
    let out = std::env::temp_dir().join(format!("tapes-cli-{}", std::process::id())).join("c.dot");
    let o = tapes(&[
        "render",
        "--sig",
        sig.to_str().unwrap(),
        "--frobenius",
        "--dot",
        out.to_str().unwrap(),
        "cp(A) ; R * S ; cocp(A)",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let dot = fs::read_to_string(out).unwrap();
    assert!(dot.starts_with("digraph") && dot.contains("label=\"R\"") && dot.contains("label=\"S\""));
}

#[test]
fn selftest_transcripts_repeat() {
    let a = tapes(&["selftest", "--quick", "--seed", "9"]);
    let b = tapes(&["selftest", "--quick", "--seed", "9"]);
    assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
    assert_eq!(a.stdout, b.stdout);
}
