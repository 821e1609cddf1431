use std::process::{Command, Output};

use loopalgebra::{BracketResult, CoproductResult, HomologyElement, Presentation};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_loopalgebra"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap().trim_end_matches('\n').to_string()
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().expect("exit code")
}

#[test]
fn level_of_a1_squared() {
    assert_eq!(stdout(&["--genus", "2", "level", "a1^2"]), "root=a1 level=2");
    assert_eq!(
        stdout(&["--genus", "2", "level", "A1 A1 A1", "--format", "json"]),
        r#"{"level":3,"root":"A1"}"#
    );
}

#[test]
fn coproduct_of_unit() {
    assert_eq!(
        stdout(&["--genus", "2", "coproduct", "unit", "--format", "json"]),
        r#"{"terms":[{"pair":["",""],"coeff":-2}]}"#
    );
    assert_eq!(stdout(&["--genus", "3", "coproduct", "unit"]), "-4*([] x [])");
    assert_eq!(stdout(&["--genus", "2", "coproduct", "[a1]"]), "0");
}

#[test]
fn brackets() {
    assert_eq!(stdout(&["--genus", "2", "bracket", "a1", "a2"]), "0");
    assert_eq!(stdout(&["--genus", "2", "bracket", "a1", "b1"]), "[a1 b1]");
    assert_eq!(stdout(&["--genus", "2", "bracket", "b1", "a1"]), "-[a1 b1]");
    assert_eq!(
        stdout(&["--genus", "2", "--budget", "4", "bracket", "a1", "b1"]),
        "[a1 b1]"
    );
}

#[test]
fn word_problem_and_conjugacy() {
    assert_eq!(stdout(&["--genus", "2", "identity", "a1 b1 A1 B1 a2 b2 A2 B2"]), "true");
    assert_eq!(stdout(&["--genus", "2", "identity", "a1 b1 A1 B1"]), "false");
    assert_eq!(stdout(&["--genus", "2", "reduce", "a1 b1 A1 B1 a2 b2 A2 B2"]), "");
    assert_eq!(stdout(&["--genus", "2", "reduce", "a1 a1^-1 b2"]), "b2");
    assert_eq!(stdout(&["--genus", "2", "conjugate", "a1 b1", "b1 a1"]), "true");
    assert_eq!(stdout(&["--genus", "2", "conjugate", "a1", "A1"]), "false");
    assert_eq!(stdout(&["--genus", "2", "conjugate", "b1 a1 B1"]), "a1");
    assert_eq!(stdout(&["--genus", "2", "abelianize", "a1^3 B2"]), "3 0 0 -1");
}

#[test]
fn bv_operations() {
    assert_eq!(stdout(&["--genus", "2", "product", "H[b1]", "~[a1^2]"]), "-[a1 a1]");
    assert_eq!(stdout(&["--genus", "2", "product", "H[a1]", "~[a1 b1]"]), "[a1 b1]");
    assert_eq!(stdout(&["--genus", "2", "product", "H[a1]", "H[b1]"]), "[]");
    assert_eq!(stdout(&["--genus", "2", "delta", "[a1^2]"]), "2*~[a1 a1]");
    assert_eq!(stdout(&["--genus", "2", "delta", "~[a1]"]), "0");
}

#[test]
fn component_ranks() {
    assert_eq!(stdout(&["--genus", "2", "homology", ""]), "rank0=1 rank1=4 rank2=1");
    assert_eq!(stdout(&["--genus", "3", "homology", "a1 b2"]), "rank0=1 rank1=1 rank2=0");
    assert_eq!(
        stdout(&["--genus", "3", "homology", "", "--format", "json"]),
        r#"{"rank0":1,"rank1":6,"rank2":1}"#
    );
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["--genus", "2", "level", ""]), 1);
    assert_eq!(code(&["--genus", "2", "delta", "~[]"]), 1);
    assert_eq!(code(&["--genus", "2", "reduce", "a1 c2"]), 2);
    assert_eq!(code(&["--genus", "2", "reduce", "a3"]), 2);
    assert_eq!(code(&["--genus", "1", "reduce", "a1"]), 2);
    assert_eq!(code(&["reduce", "a1"]), 2);
    assert_eq!(code(&["--genus", "2", "frobnicate"]), 2);
    assert_eq!(code(&["--genus", "2", "--format", "yaml", "reduce", "a1"]), 2);
}

#[test]
fn parse_errors_report_the_offset() {
    let out = run(&["--genus", "2", "reduce", "a1 b1 x2"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("byte 6"), "{err}");
}

#[test]
fn json_output_round_trips() {
    let p = Presentation::new(2).unwrap();
    let text = stdout(&["--genus", "2", "--format", "json", "bracket", "a1 b2", "b1 a2 B1"]);
    assert_eq!(BracketResult::from_json(&text, &p).unwrap().to_json(), text);

    let text = stdout(&["--genus", "2", "--format", "json", "product", "H[a1] + 2*H[b2]", "~[a1 b1] + [a2]"]);
    assert_eq!(HomologyElement::from_json(&text, &p).unwrap().to_json(), text);

    let text = stdout(&["--genus", "2", "--format", "json", "coproduct", "3*unit"]);
    assert_eq!(CoproductResult::from_json(&text, &p).unwrap().to_json(), text);
}

#[test]
fn output_is_deterministic() {
    let args = ["--genus", "3", "bracket", "a1 b1 a2", "b1 b3 A2"];
    assert_eq!(stdout(&args), stdout(&args));
}

#[test]
fn render_writes_svg() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("plot.svg");
    let out = stdout(&[
        "--genus",
        "2",
        "render",
        "a1",
        "b1",
        "a1 b2",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out, "");
    let svg = std::fs::read_to_string(&path).unwrap();
    assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
    assert_eq!(svg.matches(r#"class="polygon""#).count(), 1);
    assert_eq!(svg.matches(r#"class="geodesic""#).count(), 3);
    assert!(svg.matches(r#"class="intersection""#).count() >= 1);

    let inline = stdout(&["--genus", "3", "render", "a2"]);
    assert!(inline.starts_with("<svg"));
    assert_eq!(code(&["--genus", "2", "render", ""]), 1);
}
