use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Skipped => "SKIP",
        })
    }
}

/// Outcome of one check on one instance. Timing is left to the caller so that reports
/// are identical across runs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub claim_id: String,
    pub instance: String,
    pub verdict: Verdict,
    pub witness: Value,
}

impl VerificationReport {
    /// Maps a check outcome to a report. Errors past the scale bounds become skips; any
    /// other error is a failure carrying its message.
    pub fn from_result(claim_id: &str, instance: &str, r: Result<(bool, Value)>) -> Self {
        let (verdict, witness) = match r {
            Ok((true, w)) => (Verdict::Pass, w),
            Ok((false, w)) => (Verdict::Fail, w),
            Err(e) if e.is_out_of_scale() => (Verdict::Skipped, json!({ "reason": e.to_string() })),
            Err(e) => (Verdict::Fail, json!({ "error": e.to_string() })),
        };
        Self {
            claim_id: claim_id.to_string(),
            instance: instance.to_string(),
            verdict,
            witness,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    /// `PASS  sigma-bound  psl2:5  {...}` with the witness as compact JSON.
    pub fn line(&self) -> String {
        format!(
            "{}  {}  {}  {}",
            self.verdict, self.claim_id, self.instance, self.witness
        )
    }
}

/// A value produced by computation on the instance.
pub fn computed(v: impl Serialize) -> Value {
    json!({ "value": v, "provenance": "computed" })
}

/// A value produced by a closed-form formula.
pub fn formula(v: impl Serialize) -> Value {
    json!({ "value": v, "provenance": "formula" })
}
