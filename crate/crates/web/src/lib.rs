//! Browser bindings. Every function takes and returns plain strings so the
//! page needs no generated glue beyond the wasm-bindgen shim.

use serde_json::json;
use suig2::geometry::{emit_svg, parse_json, to_json_value, verify, Graph, Rational, SCHEMA};
use suig2::random::{prufer_tree, rng};
use suig2::recognizer::{recognize_with, Recognition, RecognizerConfig};
use suig2::tree::{parse_edge_list, parse_tree};
use wasm_bindgen::prelude::*;

fn err(e: impl std::fmt::Display) -> JsError {
    JsError::new(&e.to_string())
}

/// Recognizes an edge-list tree. Returns JSON with `verdict` plus either
/// `representation` and `svg`, or `certificate`.
#[wasm_bindgen]
pub fn recognize(edges: &str, eps_num: i32, eps_den: i32) -> Result<String, JsError> {
    if eps_den <= 0 || eps_num <= 0 || eps_num >= eps_den {
        return Err(err("epsilon must satisfy 0 < p/q < 1"));
    }
    let t = parse_tree(edges).map_err(err)?;
    let cfg = RecognizerConfig {
        epsilon: Rational::new(eps_num.into(), eps_den.into()),
    };
    let out = match recognize_with(&t, &cfg) {
        Recognition::Accept(r) => json!({
            "verdict": "accept",
            "representation": to_json_value(&r),
            "svg": emit_svg(&r),
        }),
        Recognition::Reject(c) => json!({
            "verdict": "reject",
            "certificate": c,
            "explanation": c.to_string(),
        }),
    };
    Ok(out.to_string())
}

/// Checks a representation document against an edge list of any graph.
/// Returns a JSON array of violation messages, empty when it passes.
#[wasm_bindgen]
pub fn verify_representation(edges: &str, representation: &str) -> Result<String, JsError> {
    let (n, edges) = parse_edge_list(edges).map_err(err)?;
    let r = parse_json(representation).map_err(err)?;
    let report = verify(&r, &Graph::new(n, edges));
    let msgs: Vec<String> = report.violations.iter().map(|v| v.to_string()).collect();
    Ok(json!({ "schema": SCHEMA, "violations": msgs }).to_string())
}

/// A seeded uniformly random labelled tree as an edge list.
#[wasm_bindgen]
pub fn random_tree(seed: u32, n: u32) -> Result<String, JsError> {
    if n == 0 || n > 2000 {
        return Err(err("n must be between 1 and 2000"));
    }
    Ok(prufer_tree(&mut rng(seed.into()), n as usize).to_edge_list())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recognize_then_verify_round_trip() {
        let edges = random_tree(3, 15).unwrap();
        let res: serde_json::Value =
            serde_json::from_str(&recognize(&edges, 1, 4).unwrap()).unwrap();
        if res["verdict"] == "accept" {
            let rep = res["representation"].to_string();
            let check: serde_json::Value =
                serde_json::from_str(&verify_representation(&edges, &rep).unwrap()).unwrap();
            assert_eq!(check["violations"], json!([]));
            assert!(res["svg"].as_str().unwrap().contains("<svg"));
        } else {
            assert!(res["certificate"]["kind"].is_string());
        }
    }

    #[test]
    fn reports_violations_for_a_five_cycle() {
        let rep = recognize("0 1\n1 2\n2 3\n3 4\n", 1, 2).unwrap();
        let rep: serde_json::Value = serde_json::from_str(&rep).unwrap();
        let out = verify_representation(
            "0 1\n1 2\n2 3\n3 4\n4 0\n",
            &rep["representation"].to_string(),
        )
        .unwrap();
        let out: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(out["violations"].as_array().unwrap().len(), 1);
    }
}
