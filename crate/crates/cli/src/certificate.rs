//! Machine-readable outcome of a verb.

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Verified,
    Refuted,
    Indeterminate,
}

impl Verdict {
    pub fn from_bool(holds: bool) -> Self {
        if holds {
            Verdict::Verified
        } else {
            Verdict::Refuted
        }
    }

    pub fn exit_code(self) -> u8 {
        match self {
            Verdict::Verified => 0,
            Verdict::Refuted => 1,
            Verdict::Indeterminate => 2,
        }
    }
}

/// Exit status for misuse: bad input, unmet preconditions, unresolved names.
pub const EXIT_MISUSE: u8 = 3;

#[derive(Debug, Clone, Serialize)]
pub struct Certificate {
    pub verb: String,
    /// The statement the verdict is about.
    pub anchor: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub budget: u64,
    pub witness: Value,
}

impl Certificate {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("certificates serialize");
        s.push('\n');
        s
    }
}
