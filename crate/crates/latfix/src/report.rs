//! Shared result types for property checks and hypothesis-gated assertions.

use serde::{Deserialize, Serialize};

/// Outcome of a single property check.
///
/// Invariant: `holds == false` implies `witness` is present, and the witness
/// re-checks as a genuine violation without re-running the search that found
/// it. Witnesses are element ids (or profile/player ids for games) in the
/// order documented by the operation that produced the report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<String>>,
    pub detail: String,
}

impl CheckReport {
    pub fn pass(detail: impl Into<String>) -> Self {
        CheckReport { holds: true, witness: None, detail: detail.into() }
    }

    pub fn fail(witness: Vec<String>, detail: impl Into<String>) -> Self {
        CheckReport { holds: false, witness: Some(witness), detail: detail.into() }
    }
}

/// Outcome of a check whose conclusion is only asserted under hypotheses.
/// Distinguishes "the instance is outside the hypotheses" from "the
/// hypotheses held and the conclusion was verified (or refuted)".
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum TheoremOutcome {
    HypothesesNotMet { hypothesis: String, report: CheckReport },
    Verified { detail: String },
    ConclusionViolated { report: CheckReport },
}

impl TheoremOutcome {
    pub fn is_verified(&self) -> bool {
        matches!(self, TheoremOutcome::Verified { .. })
    }

    pub fn is_hypotheses_not_met(&self) -> bool {
        matches!(self, TheoremOutcome::HypothesesNotMet { .. })
    }

    pub fn is_violation(&self) -> bool {
        matches!(self, TheoremOutcome::ConclusionViolated { .. })
    }

    /// One-line human rendering used by the CLI.
    pub fn describe(&self) -> String {
        match self {
            TheoremOutcome::HypothesesNotMet { hypothesis, report } => {
                format!("hypotheses not met: {hypothesis}: {}", report.detail)
            }
            TheoremOutcome::Verified { detail } => format!("hypotheses hold; {detail}"),
            TheoremOutcome::ConclusionViolated { report } => {
                format!("conclusion violated: {}", report.detail)
            }
        }
    }
}

/// Direction selector for chain-closure and bound-transport checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Up,
    Down,
    Both,
}

impl Direction {
    pub fn covers_up(self) -> bool {
        matches!(self, Direction::Up | Direction::Both)
    }

    pub fn covers_down(self) -> bool {
        matches!(self, Direction::Down | Direction::Both)
    }
}
