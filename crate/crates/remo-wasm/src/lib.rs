//! wasm-bindgen bindings for the browser demo page in `www/`.
//!
//! Three operations are exported: analyze one Werner state (or a pasted
//! state document), sweep the Werner family for margin curves, and bisect a
//! criterion's detection threshold. Results cross the boundary as JSON
//! strings so the page needs no generated TypeScript.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use remo::criteria::Criterion;
use remo::report::run_all;
use remo::states::{parse_state, werner};
use remo::sweep::{find_threshold, run_sweep, Family, SweepSpec};

fn all_criteria() -> Vec<Criterion> {
    Criterion::ALL.to_vec()
}

/// Analysis report for the Werner state at parameter `p`, as JSON.
#[wasm_bindgen]
pub fn analyze_werner(p: f64) -> Result<String, String> {
    let state = werner(p).map_err(|e| e.to_string())?;
    let report = run_all(&state, &format!("werner(p={p})")).map_err(|e| e.to_string())?;
    Ok(report.to_json())
}

/// Analysis report for a pasted state document, as JSON.
#[wasm_bindgen]
pub fn analyze_state(document: &str) -> Result<String, String> {
    let state = parse_state(document).map_err(|e| e.to_string())?;
    let report = run_all(&state, "pasted state").map_err(|e| e.to_string())?;
    Ok(report.to_json())
}

#[derive(Serialize)]
struct SweepPayload {
    params: Vec<f64>,
    f: Vec<f64>,
    criteria: Vec<&'static str>,
    margins: Vec<Vec<f64>>,
}

/// Margin curves over the Werner family: `steps` grid points on [0, 1],
/// one margin series per criterion, as JSON.
#[wasm_bindgen]
pub fn sweep_werner(steps: usize) -> Result<String, String> {
    let criteria = all_criteria();
    let spec = SweepSpec {
        family: Family::Werner,
        param_start: 0.0,
        param_end: 1.0,
        steps,
        criteria: criteria.clone(),
    };
    let rows = run_sweep(&spec).map_err(|e| e.to_string())?;
    let payload = SweepPayload {
        params: rows.iter().map(|r| r.param).collect(),
        f: rows.iter().map(|r| r.f).collect(),
        criteria: criteria.iter().map(|c| c.id()).collect(),
        margins: (0..criteria.len())
            .map(|i| rows.iter().map(|r| r.margins[i]).collect())
            .collect(),
    };
    serde_json::to_string(&payload).map_err(|e| e.to_string())
}

/// Detection threshold of one criterion on the Werner family, found by
/// bisection; errors if the margin never changes sign (diagnostics).
#[wasm_bindgen]
pub fn werner_threshold(criterion: &str) -> Result<f64, String> {
    let criterion = Criterion::parse(criterion).map_err(|e| e.to_string())?;
    find_threshold(Family::Werner, criterion, 65).map_err(|e| e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn analyze_werner_reports_entanglement_at_p_one() {
        let json = analyze_werner(1.0).unwrap();
        let report: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(report["entangled"], serde_json::Value::Bool(true));
        assert!(analyze_werner(2.0).is_err());
    }

    #[test]
    fn sweep_payload_shape() {
        let json = sweep_werner(11).unwrap();
        let payload: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(payload["params"].as_array().unwrap().len(), 11);
        assert_eq!(
            payload["criteria"].as_array().unwrap().len(),
            payload["margins"].as_array().unwrap().len()
        );
        // f endpoints in closed form
        let f = payload["f"].as_array().unwrap();
        assert!((f[0].as_f64().unwrap() - 1.0 / 16.0).abs() < 1e-12);
        assert!((f[10].as_f64().unwrap() + 0.5).abs() < 1e-12);
    }

    #[test]
    fn threshold_binding_matches_library() {
        let t = werner_threshold("ccnr").unwrap();
        assert!((t - 1.0 / 3.0).abs() < 1e-9);
        assert!(werner_threshold("q-gram").is_err());
        assert!(werner_threshold("bogus").is_err());
    }

    #[test]
    fn pasted_state_analysis_round_trip() {
        let doc = remo::states::serialize_state(&werner(0.8).unwrap());
        let json = analyze_state(&doc).unwrap();
        let report: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(report["entangled"], serde_json::Value::Bool(true));
        assert!(analyze_state("{not json").is_err());
    }
}
