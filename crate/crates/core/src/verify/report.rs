use serde::{Deserialize, Serialize};

/// One checked property.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Case {
    pub desc: String,
    pub pass: bool,
    /// Concrete inputs; always present on failure.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub cases: Vec<Case>,
}

impl SuiteReport {
    pub fn new(suite: &str, seed: u64) -> Self {
        SuiteReport { suite: suite.to_string(), seed, cases: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.cases.iter().all(|c| c.pass)
    }

    /// Records a case; `failure` carries the witness when the check failed.
    pub fn check(&mut self, desc: impl Into<String>, failure: Option<String>) {
        let pass = failure.is_none();
        self.cases.push(Case { desc: desc.into(), pass, witness: failure });
    }

    pub fn assert(&mut self, desc: impl Into<String>, pass: bool, witness: impl FnOnce() -> String) {
        let failure = if pass { None } else { Some(witness()) };
        self.check(desc, failure);
    }

    /// A passing case that still records supporting data.
    pub fn note(&mut self, desc: impl Into<String>, pass: bool, witness: String) {
        self.cases.push(Case { desc: desc.into(), pass, witness: Some(witness) });
    }

    pub fn extend(&mut self, other: SuiteReport) {
        self.cases.extend(other.cases);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("suite {} (seed {})\n", self.suite, self.seed);
        for c in &self.cases {
            out.push_str(if c.pass { "  PASS " } else { "  FAIL " });
            out.push_str(&c.desc);
            if let Some(w) = &c.witness {
                out.push_str(" [");
                out.push_str(w);
                out.push(']');
            }
            out.push('\n');
        }
        out
    }
}
