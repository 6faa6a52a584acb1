use std::io::Write;
use twisted_bv::cli::{run, EXIT_FAILED, EXIT_INPUT, EXIT_OK, EXIT_SIZE};

fn twbv(args: &[&str]) -> (i32, String, String) {
    let mut argv = vec!["twbv"];
    argv.extend_from_slice(args);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn write_temp(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::Builder::new().suffix(".toml").tempfile().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn qci_example_report() {
    let (code, out, _) = twbv(&["example", "qci", "--m", "2", "--n", "2", "--q", "2", "--max-degree", "3"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("dim HH^0..3: [2, 2, 1, 0]"));
    assert!(out.contains("Δ(U) = 0, Δ(V) = 1, Δ(W) = 1"));
    assert!(out.contains("[V, U] = 1 U"));
}

#[test]
fn json_reports_are_deterministic() {
    let args = ["--json", "example", "qci", "--m", "2", "--n", "3", "--max-degree", "2"];
    let (code, a, _) = twbv(&args);
    let (_, b, _) = twbv(&args);
    assert_eq!(code, EXIT_OK);
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["classes"]["W"]["delta"], "2");
    assert_eq!(v["passed"], true);
}

#[test]
fn definitions_round_trip_through_files() {
    let (code, text, _) = twbv(&["example", "qci", "--m", "2", "--n", "2", "--q", "1/3", "--definition"]);
    assert_eq!(code, EXIT_OK);
    let file = write_temp(&text);
    let path = file.path().to_str().unwrap();
    let (code, out, _) = twbv(&["check", path]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.contains("nakayama semisimple: true"));
    let (code, hh, _) = twbv(&["hh", path, "--max-degree", "2"]);
    assert_eq!(code, EXIT_OK);
    assert!(hh.starts_with("HH^0: dim 2"));
    let left = write_temp(&twbv(&["example", "truncated", "--n", "2"]).1);
    let (code, twisted, _) = twbv(&["twist", "--left", left.path().to_str().unwrap(), "--right", "truncated:2", "--bichar", "1/3"]);
    assert_eq!(code, EXIT_OK);
    // Same algebra; the built-in example names its second variable y.
    assert_eq!(twisted, text.replace('y', "x"));
}

#[test]
fn degenerate_gram_fails_verification() {
    let (_, text, _) = twbv(&["example", "truncated", "--n", "2"]);
    let bad = write_temp(&text.replace("[\"1\", \"0\"]", "[\"0\", \"0\"]"));
    let (code, out, _) = twbv(&["check", bad.path().to_str().unwrap()]);
    assert_eq!(code, EXIT_FAILED);
    assert!(out.contains("degenerate"));
}

#[test]
fn malformed_input_reports_line_and_field() {
    let (_, text, _) = twbv(&["example", "truncated", "--n", "2"]);
    let bad = write_temp(&text.replace("[\"0\", \"1\"]", "[\"0\", \"one\"]"));
    let path = bad.path().to_str().unwrap().to_string();
    let (code, _, err) = twbv(&["check", &path]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains(&format!("{path}:7: gram[0][1]")), "{err}");
    let (code, _, _) = twbv(&["hh", "/nonexistent/file.toml"]);
    assert_eq!(code, EXIT_INPUT);
    let (code, _, _) = twbv(&["verify-bv-tensor", "--left", "truncated:2", "--right", "truncated:2", "--bichar", "1,2"]);
    assert_eq!(code, EXIT_INPUT);
    let (code, _, _) = twbv(&["example", "qci", "--m", "2", "--n", "2", "--q", "-1"]);
    assert_eq!(code, EXIT_INPUT);
    let (code, _, _) = twbv(&["frobnicate"]);
    assert_eq!(code, EXIT_INPUT);
}

#[test]
fn oversized_requests_are_refused() {
    let (code, _, err) = twbv(&["hh", "truncated:6", "--max-degree", "9"]);
    assert_eq!(code, EXIT_SIZE);
    assert!(err.contains("exceeds cap"));
    let (code, _, _) = twbv(&["--max-size", "10", "bv", "truncated:3", "--max-degree", "3"]);
    assert_eq!(code, EXIT_SIZE);
    let (code, out, _) = twbv(&["--json", "--max-size", "10", "hh", "truncated:3"]);
    assert_eq!(code, EXIT_SIZE);
    assert!(out.contains("\"exit_code\": 3"));
}

#[test]
fn untwisted_tensor_verification_passes() {
    let (code, out, _) = twbv(&["verify-bv-tensor", "--left", "truncated:2", "--right", "truncated:2", "--bichar", "1", "--max-degree", "3"]);
    assert_eq!(code, EXIT_OK);
    assert!(!out.contains("FAIL"));
    assert!(out.ends_with("result: ok\n"));
}

#[test]
fn bv_and_bracket_tables() {
    let (code, out, _) = twbv(&["bv", "truncated:3", "--max-degree", "2"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("0 failures"));
    let (code, out, _) = twbv(&["--json", "bracket", "truncated:2", "--max-degree", "1"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(!v["brackets"].as_array().unwrap().is_empty());
}
