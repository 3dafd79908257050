//! Verification reports: one record per checked claim.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::cases::CheckOutcome;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    /// A checked statement; `pass` is the verdict.
    #[default]
    Check,
    /// Measurements only; never fails.
    Evidence,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Claim {
    pub id: String,
    #[serde(default)]
    pub kind: Kind,
    /// What the claim says, in a few words.
    pub anchor: String,
    pub params: Value,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    /// Measured quantities; conjecture probes carry only evidence.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub evidence: Option<Value>,
}

impl Claim {
    pub fn new(
        id: impl Into<String>,
        anchor: impl Into<String>,
        params: Value,
        pass: bool,
    ) -> Self {
        Claim {
            id: id.into(),
            kind: Kind::Check,
            anchor: anchor.into(),
            params,
            pass,
            witness: None,
            evidence: None,
        }
    }

    /// An evidence record: always passing, carrying measurements.
    pub fn evidence(
        id: impl Into<String>,
        anchor: impl Into<String>,
        params: Value,
        evidence: Value,
    ) -> Self {
        Claim {
            kind: Kind::Evidence,
            ..Claim::new(id, anchor, params, true)
        }
        .with_evidence(evidence)
    }

    pub fn with_witness(mut self, w: Option<Value>) -> Self {
        self.witness = w;
        self
    }

    pub fn with_evidence(mut self, e: Value) -> Self {
        self.evidence = Some(e);
        self
    }

    /// A claim from a family check; a check stopped by a cap keeps its
    /// verdict on the cases it did reach and says where it stopped.
    pub fn from_check(id: impl Into<String>, params: Value, c: &CheckOutcome) -> Self {
        let mut ev = json!({ "cases": c.cases });
        if let Some(s) = &c.skipped {
            ev["skipped"] = json!(s);
        }
        Claim::new(id, c.name, params, c.pass)
            .with_witness(c.witness.as_ref().map(|w| json!(w)))
            .with_evidence(ev)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub claims: Vec<Claim>,
}

impl Report {
    pub fn new(suite: impl Into<String>) -> Self {
        Report {
            suite: suite.into(),
            claims: Vec::new(),
        }
    }

    pub fn pass(&self) -> bool {
        self.claims.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Claim> {
        self.claims.iter().filter(|c| !c.pass)
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("reports serialize")
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        serde_json::from_value(v.clone()).map_err(|e| Error::input(format!("not a report: {e}")))
    }

    /// Drops the witnesses, keeping verdicts and evidence.
    pub fn without_witnesses(mut self) -> Self {
        for c in &mut self.claims {
            c.witness = None;
        }
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let mut r = Report::new("demo");
        r.claims
            .push(Claim::new("a", "something holds", json!({"n": 2}), true));
        r.claims
            .push(Claim::new("b", "fails", json!({}), false).with_witness(Some(json!([1, 2]))));
        let v = r.to_json();
        assert!(v["claims"][0].get("witness").is_none());
        assert_eq!(Report::from_json(&v).unwrap(), r);
        assert!(!r.pass());
        assert_eq!(r.clone().without_witnesses().claims[1].witness, None);
    }
}
