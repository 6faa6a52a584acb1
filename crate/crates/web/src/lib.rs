//! Browser bindings: each entry point runs one `twbv` command with `--json`
//! and returns its report as a JSON string.

use wasm_bindgen::prelude::*;

/// Browser pages cannot wait long; keep the default cap well below the CLI's.
const MAX_SIZE: &str = "200000";

fn run(args: &[&str]) -> String {
    let mut argv = vec!["twbv", "--json", "--max-size", MAX_SIZE];
    argv.extend_from_slice(args);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = twisted_bv::cli::run(argv, &mut out, &mut err);
    let out = String::from_utf8_lossy(&out).into_owned();
    match serde_json::from_str::<serde_json::Value>(&out) {
        Ok(mut v) => {
            v["exit_code"] = code.into();
            v.to_string()
        }
        Err(_) => serde_json::json!({ "error": String::from_utf8_lossy(&err).trim(), "exit_code": code }).to_string(),
    }
}

/// Report on Λ_q(m, n): cohomology, Δ(U), Δ(V), Δ(W), [V, U], decomposition.
#[wasm_bindgen]
pub fn qci_report(m: u32, n: u32, q: &str, max_degree: u32) -> String {
    run(&["example", "qci", "--m", &m.to_string(), "--n", &n.to_string(), "--q", q, "--max-degree", &max_degree.to_string()])
}

/// Graded Hochschild cohomology dimensions of Λ(n).
#[wasm_bindgen]
pub fn truncated_hh(n: u32, max_degree: u32) -> String {
    run(&["hh", &format!("truncated:{n}"), "--max-degree", &max_degree.to_string()])
}

/// Decomposition and BV-formula check for Λ(m) ⊗^q Λ(n).
#[wasm_bindgen]
pub fn verify_tensor(m: u32, n: u32, q: &str, max_degree: u32) -> String {
    run(&[
        "verify-bv-tensor",
        "--left",
        &format!("truncated:{m}"),
        "--right",
        &format!("truncated:{n}"),
        "--bichar",
        q,
        "--max-degree",
        &max_degree.to_string(),
    ])
}
