use std::io::Write;
use std::process::{Command, Output};

fn stringz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stringz"))
        .args(args)
        .env("STRINGZ_COLOR", "never")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn kg_dim_of_lam2_is_three() {
    let o = stringz(&["kg-dim", "lam2.alg"]);
    assert_eq!((code(&o), stdout(&o).as_str()), (0, "3\n"));
}

#[test]
fn non_domestic_kg_dim_is_undefined_and_succeeds() {
    let o = stringz(&["kg-dim", "gp23.alg"]);
    assert_eq!((code(&o), stdout(&o).as_str()), (0, "undefined\n"));
    assert_eq!(code(&stringz(&["info", "gp23"])), 0);
}

#[test]
fn domesticity_required_commands_exit_one() {
    assert_eq!(code(&stringz(&["bridge-quiver", "gp23"])), 1);
    let o = stringz(&["rank", "gp23", "string:[a]"]);
    assert_eq!(code(&o), 1);
    assert!(o.stdout.is_empty());
    assert!(!o.stderr.is_empty());
}

#[test]
fn prufer_rank_with_trace() {
    let o = stringz(&["rank", "lam3.alg", "prufer:[a3 b3-]@s"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "3\ntrace: prufer: s=2,t=0\n");
}

#[test]
fn usage_and_parse_errors_exit_two() {
    assert_eq!(code(&stringz(&["rank"])), 2);
    assert_eq!(code(&stringz(&["kg-dim", "/no/such/file.alg"])), 2);
    assert_eq!(code(&stringz(&["rank", "lam3", "prufer:[zz]@s"])), 2);
    assert_eq!(code(&stringz(&["kg-dim", "lam2", "--dot"])), 2);
    assert_eq!(code(&stringz(&["--bounds", "1,2", "points", "kron"])), 2);
}

#[test]
fn algebra_files_are_read_from_disk() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(f, "algebra k\nvertices: 1 2\narrows: a: 1 -> 2 , b: 1 -> 2\n").unwrap();
    let path = f.path().to_str().unwrap();
    let o = stringz(&["kg-dim", path]);
    assert_eq!(stdout(&o), "2\n");

    let mut bad = tempfile::NamedTempFile::new().unwrap();
    write!(bad, "algebra k\nvertices: 1\narrows: a: 1 -> 9\n").unwrap();
    assert_eq!(code(&stringz(&["info", bad.path().to_str().unwrap()])), 2);
}

#[test]
fn validate_reports_axiom_violations() {
    let o = stringz(&["validate", "lam3"]);
    assert_eq!((code(&o), stdout(&o).as_str()), (0, "lam3: ok\n"));
    assert_eq!(code(&stringz(&["validate", "x5"])), 1);
}

#[test]
fn json_is_byte_stable() {
    for args in [
        &["--json", "info", "lam3"][..],
        &["--json", "bridge-quiver", "x4"],
        &["--json", "--bounds", "3,2,1", "points", "lam2"],
        &["--json", "rank", "lam2", "string:[inf^(e d-) e g (a b-)^inf]"],
    ] {
        let a = stringz(args);
        assert_eq!(code(&a), 0, "{args:?}");
        let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
        assert!(!v.is_null());
        assert_eq!(a.stdout, stringz(args).stdout, "{args:?}");
    }
}

#[test]
fn json_rank_report_fields() {
    let o = stringz(&["--json", "rank", "lam3", "generic:[a2 b2-]"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["rank"], 4);
    assert_eq!(v["kind"], "generic");
    assert_eq!(v["trace"]["rule"], "generic");
}

#[test]
fn dot_output_styles_edges_by_flag() {
    let o = stringz(&["bridge-quiver", "--dot", "x1"]);
    let s = stdout(&o);
    assert!(s.starts_with("digraph"));
    assert!(s.contains("style=solid") && s.contains("style=dashed"), "{s}");
}

#[test]
fn hom_prints_count_mediators_and_oracle() {
    let o = stringz(&["hom", "kron", "a b-", "a"]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    assert!(s.starts_with("count: 1\n"), "{s}");
    assert!(s.ends_with("oracle: 1\n"), "{s}");
    let j = stringz(&["--json", "hom", "kron", "a", "a b-"]);
    let v: serde_json::Value = serde_json::from_slice(&j.stdout).unwrap();
    assert_eq!(v["count"], v["oracle"]);
}

#[test]
fn nbhd_index_positional_or_flag() {
    let c = "prufer:[a3 b3-]@s";
    let y = "band:[a3 b3-]@s#2";
    assert_eq!(stdout(&stringz(&["nbhd", "lam3", c, "2", y])), "true\n");
    assert_eq!(stdout(&stringz(&["nbhd", "lam3", c, "3", y])), "false\n");
    assert_eq!(stdout(&stringz(&["--nbhd-index", "3", "nbhd", "lam3", c, y])), "false\n");
    assert_eq!(code(&stringz(&["nbhd", "lam3", c, "0", y])), 2);
}

#[test]
fn dual_prints_expression_and_opposite() {
    let o = stringz(&["dual", "lam3", "prufer:[a3 b3-]@s"]);
    let s = stdout(&o);
    assert!(s.starts_with("adic:[b3 a3-]@s\n\nalgebra lam3_op\n"), "{s}");
}
