use std::process::{Command, Output};

use serde_json::Value;

fn weyl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_weyl"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn text(args: &[&str]) -> (i32, String) {
    let out = weyl(args);
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap().trim_end().to_string(),
    )
}

fn doc(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let out = weyl(&all);
    (out.status.code().unwrap(), serde_json::from_slice(&out.stdout).unwrap())
}

#[test]
fn arithmetic() {
    assert_eq!(text(&["bracket", "p", "q"]), (0, "1".into()));
    assert_eq!(text(&["mul", "q^2", "p^2"]), (0, "p^2*q^2 - 4*p*q + 2".into()));
    assert_eq!(text(&["mul", "p*q", "-", "q*p"]).0, 2);
    assert_eq!(text(&["mul", "p*q - q*p"]), (0, "1".into()));
    assert_eq!(text(&["mul", "-q", "-p"]), (0, "p*q - 1".into()));
}

#[test]
fn classification() {
    assert_eq!(text(&["classify", "p*q + 7"]), (0, "Delta3".into()));
    assert_eq!(text(&["classify", "(p + q)^2"]), (0, "Delta1".into()));
    assert_eq!(text(&["classify", "p^2*q"]).0, 1);
    assert_eq!(text(&["classify", "0"]).0, 2);
}

#[test]
fn exit_codes() {
    assert_eq!(text(&["closure", "--max-dim", "8", "p^3", "q^2"]).0, 3);
    assert_eq!(text(&["closure", "p^3", "q^2", "--max-dim", "8"]).0, 3);
    assert_eq!(text(&["ftest", "p^2*q^2", "q", "--max-iter", "4"]).0, 1);
    assert_eq!(text(&["ftest", "p", "q^3"]).0, 0);
    assert_eq!(
        text(&["triplet", "q^2", "p^2", "p*q"]),
        (1, "relation [X,Y]=H fails".into())
    );
    assert_eq!(text(&["expmap", "p*q", "--max-iter", "5"]).0, 3);
    assert_eq!(text(&["bracket", "p", "q^"]).0, 2);
    assert_eq!(text(&["mul", "--bogus", "p"]).0, 2);
    assert_eq!(text(&["casimir", "fIII"]).0, 2);
}

#[test]
fn parse_errors_carry_positions() {
    let out = weyl(&["bracket", "p", "q^"]);
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 1, column 3"), "{err}");
}

#[test]
fn lie_commands() {
    assert_eq!(text(&["recognize", "-q", "p"]), (0, "L(2)".into()));
    assert_eq!(text(&["recognize", "--catalog", "R(2,4)"]), (0, "R(1,2)".into()));
    assert_eq!(text(&["recognize", "p*q", "-q", "1/2*p^2"]), (0, "LTilde(3)".into()));
    let (code, out) = text(&["filiform", "q", "p^3"]);
    assert_eq!(code, 0);
    assert!(out.ends_with("X4 = 1"), "{out}");
    let (code, j) = doc(&["invariants", "--catalog", "L(3)"]);
    assert_eq!(code, 0);
    assert_eq!(j["result"]["lower_central_series"], serde_json::json!([4, 2, 1, 0]));
    let (code, j) = doc(&["weights", "--h", "0", "p*q", "p", "p^2"]);
    assert_eq!(code, 0);
    assert_eq!(j["result"]["spaces"].as_array().unwrap().len(), 3);
    assert_eq!(text(&["filiform", "--catalog", "LTildeModC(3)"]).0, 2);
}

#[test]
fn sl2_commands() {
    assert_eq!(text(&["casimir", "fI"]), (0, "-3/8".into()));
    assert_eq!(text(&["casimir", "fII(1)"]), (0, "3/2".into()));
    assert_eq!(text(&["casimir", "-1/2*q^2; 1/2*p^2; p*q - 1/2"]), (0, "-3/8".into()));
    assert_eq!(
        text(&["isotropy", "alpha1(1,2,0,1)", "1,2,0,1", "fI"]),
        (0, "fixed".into())
    );
    assert_eq!(text(&["isotropy", "id", "1,2,0,1", "fI"]), (1, "moved".into()));
    assert_eq!(text(&["isotropy", "beta(2,1)", "2,0,1,1/2", "fII(-3)"]).0, 0);
    let (code, j) = doc(&["exotic"]);
    assert_eq!(code, 0);
    assert_eq!(j["result"]["h_display_matches"], Value::Bool(true));
    assert_eq!(j["result"]["h_table_matches"], Value::Bool(false));
    let (code, j) = doc(&["s11", "exotic"]);
    assert_eq!(code, 0);
    assert_eq!(j["result"]["plus"]["pattern"], Value::Bool(true));
    let (_, j) = doc(&["s11", "--degree", "6", "fII(1)"]);
    assert_eq!(j["result"]["plus"]["pattern"], Value::Bool(false));
}

#[test]
fn morphism_commands() {
    assert_eq!(text(&["apply", "phi(2,1);scale(2)", "p*q"]), (0, "p^3 + p*q".into()));
    assert_eq!(text(&["apply", "scale(2)", "q^3"]), (0, "8*q^3".into()));
    assert_eq!(text(&["expmap", "p^2"]), (0, "p -> p\nq -> 2*p + q".into()));
    assert_eq!(text(&["apply", "phi(0,1)", "p"]).0, 2);
}

#[test]
fn json_is_stable_and_versioned() {
    let args = ["--json", "closure", "p*q", "q", "p^2"];
    let a = weyl(&args).stdout;
    let b = weyl(&args).stdout;
    assert_eq!(a, b);
    let j: Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(j["schema"], "weyl-cli/1");
    assert_eq!(j["status"], "ok");
    let (code, j) = doc(&["closure", "--max-dim", "8", "p^3", "q^2"]);
    assert_eq!(code, 3);
    assert_eq!(j["status"], "bound");
}

#[test]
fn help_documents_the_grammar() {
    let out = weyl(&["--help"]);
    assert!(out.status.success());
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.contains("factor := atom ['^' nat]"));
    assert!(s.contains("Exit codes"));
}
