//! The single JSON object every command prints.

use serde::Serialize;

use crate::canon::canonical_form;
use crate::colour::Certificate;
use crate::graph::Graph;
use crate::graph6;
use crate::search::SearchConfig;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Inputs {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub canonical_g: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub canonical_h: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spec: Option<String>,
}

impl Inputs {
    pub fn with_g(mut self, g: &Graph) -> Self {
        self.g = Some(graph6::encode(g));
        self.canonical_g = Some(canonical_form(g).to_string());
        self
    }

    pub fn with_h(mut self, h: &Graph) -> Self {
        self.h = Some(graph6::encode(h));
        self.canonical_h = Some(canonical_form(h).to_string());
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BudgetEcho {
    pub nodes: u64,
    pub secs: Option<f64>,
    pub trials: u64,
}

impl From<&SearchConfig> for BudgetEcho {
    fn from(c: &SearchConfig) -> Self {
        BudgetEcho {
            nodes: c.budget.nodes,
            secs: c.budget.secs,
            trials: c.trials,
        }
    }
}

/// Field order is the declaration order below.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: Inputs,
    /// `member`/`non_member`/`unknown`, `yes`/`no`/`unknown`, `exact`/`inexact`
    /// or `pass`/`fail`, depending on the command.
    pub verdict: String,
    pub mode: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    pub cached: bool,
    /// Command-specific payload.
    pub details: serde_json::Value,
    pub budget: BudgetEcho,
    pub elapsed_ms: u64,
    pub version: &'static str,
}

impl RunReport {
    pub fn new(command: &str, inputs: Inputs, cfg: &SearchConfig) -> Self {
        RunReport {
            command: command.to_string(),
            inputs,
            verdict: String::new(),
            mode: "exact".to_string(),
            certificate: None,
            value: None,
            witness: None,
            cached: false,
            details: serde_json::Value::Null,
            budget: cfg.into(),
            elapsed_ms: 0,
            version: VERSION,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serialises")
    }
}
