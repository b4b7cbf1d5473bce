use serde::Serialize;

use super::{
    brute_force_2suig, enumerate_trees, OracleError, OracleOutcome, SearchConfig, MAX_N_CAP,
};
use crate::recognizer::{recognize_with, Recognition, RecognizerConfig};
use crate::tree::{Tree, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Decision {
    Accept,
    Reject,
    /// The oracle ran out of time.
    Unknown,
}

/// One line of the report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossCheckRow {
    pub tree: Vec<(Vertex, Vertex)>,
    pub recognizer: Decision,
    pub oracle: Decision,
    pub agree: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CrossCheckReport {
    pub rows: Vec<CrossCheckRow>,
    /// Number of trees checked per vertex count, starting at `n = 1`.
    pub counts: Vec<usize>,
}

impl CrossCheckReport {
    pub fn mismatches(&self) -> impl Iterator<Item = &CrossCheckRow> {
        self.rows.iter().filter(|r| !r.agree)
    }

    /// No disagreements and no unknown oracle rows.
    pub fn passed(&self) -> bool {
        self.mismatches().next().is_none()
    }

    pub fn to_json_lines(&self) -> String {
        self.rows
            .iter()
            .map(|r| serde_json::to_string(r).expect("rows serialize") + "\n")
            .collect()
    }
}

/// Compares the recognizer with the brute-force oracle on every tree with at
/// most `cfg.max_n` vertices, one isomorphism class each.
pub fn cross_check(cfg: &SearchConfig) -> Result<CrossCheckReport, OracleError> {
    if cfg.max_n > MAX_N_CAP {
        return Err(OracleError::InvalidConfig(format!(
            "max_n {} exceeds the cap of {MAX_N_CAP}",
            cfg.max_n
        )));
    }
    let rcfg = RecognizerConfig {
        epsilon: cfg.epsilon,
    };
    let mut report = CrossCheckReport::default();
    for n in 1..=cfg.max_n {
        let trees = enumerate_trees(n);
        report.counts.push(trees.len());
        for t in &trees {
            report.rows.push(check_one(t, cfg, &rcfg)?);
        }
    }
    Ok(report)
}

fn check_one(
    t: &Tree,
    cfg: &SearchConfig,
    rcfg: &RecognizerConfig,
) -> Result<CrossCheckRow, OracleError> {
    let recognizer = match recognize_with(t, rcfg) {
        Recognition::Accept(_) => Decision::Accept,
        Recognition::Reject(_) => Decision::Reject,
    };
    let oracle = match brute_force_2suig(t, cfg) {
        Ok(OracleOutcome::Accept(_)) => Decision::Accept,
        Ok(OracleOutcome::Reject(_)) => Decision::Reject,
        Err(OracleError::BudgetExceeded) => Decision::Unknown,
        Err(e) => return Err(e),
    };
    Ok(CrossCheckRow {
        tree: t.edges().to_vec(),
        recognizer,
        oracle,
        agree: recognizer == oracle,
    })
}
