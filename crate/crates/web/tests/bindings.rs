use serde_json::Value;
use twisted_bv_web::{qci_report, truncated_hh, verify_tensor};

fn parse(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn qci_report_returns_the_small_case() {
    let v = parse(&qci_report(2, 2, "2", 3));
    assert_eq!(v["exit_code"], 0);
    assert_eq!(v["totals"], serde_json::json!([2, 2, 1, 0]));
    assert_eq!(v["classes"]["V"]["delta"], "1");
}

#[test]
fn truncated_hh_dimensions() {
    let v = parse(&truncated_hh(3, 2));
    assert_eq!(v["levels"][0]["dimension"], 3);
}

#[test]
fn verify_tensor_passes_and_errors_are_reported() {
    let v = parse(&verify_tensor(2, 2, "-1", 2));
    assert_eq!(v["passed"], true);
    let bad = parse(&verify_tensor(2, 2, "zero", 2));
    assert_eq!(bad["exit_code"], 2);
    assert!(bad["error"].as_str().unwrap().contains("not a rational"));
    let big = parse(&truncated_hh(9, 8));
    assert_eq!(big["exit_code"], 3);
}
