//! Analysis reports: every moment vector and verdict for one state, in a
//! serializable document from the same JSON family as state files (two-space
//! indentation, shortest round-trip decimals, newline-terminated).

use serde::{Deserialize, Serialize};

use crate::criteria::{evaluate, CriterionVerdict};
use crate::error::Result;
use crate::states::DensityMatrix;

/// Subsystem dimensions as serialized in reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimsDoc {
    #[serde(rename = "dA")]
    pub d_a: usize,
    #[serde(rename = "dB")]
    pub d_b: usize,
}

/// The three moment sequences, index 0 holding the `m_0 = d` convention.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentsDoc {
    pub r: Vec<f64>,
    pub q: Vec<f64>,
    pub p: Vec<f64>,
}

/// Full analysis of one state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub state: String,
    pub dims: DimsDoc,
    pub moments: MomentsDoc,
    pub verdicts: Vec<CriterionVerdict>,
    pub entangled: bool,
    pub tool_version: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<String>,
}

impl AnalysisReport {
    /// Render as a pretty JSON document, newline-terminated.
    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("plain data serializes");
        text.push('\n');
        text
    }
}

/// Run every criterion on a state and collect the results into a report.
/// The timestamp is left unset; front ends may fill it in.
pub fn run_all(s: &DensityMatrix, descriptor: &str) -> Result<AnalysisReport> {
    let e = evaluate(s)?;
    Ok(AnalysisReport {
        state: descriptor.to_string(),
        dims: DimsDoc {
            d_a: s.dims().d_a(),
            d_b: s.dims().d_b(),
        },
        moments: MomentsDoc {
            r: e.r.values().to_vec(),
            q: e.q.values().to_vec(),
            p: e.p.values().to_vec(),
        },
        entangled: e.is_entangled(),
        verdicts: e.verdicts,
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        timestamp: None,
    })
}
