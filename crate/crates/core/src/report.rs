//! Signed-margin inequality reports.
//!
//! `pass` is the bare margin test `margin ≥ -err_est`; the `verdict` field is
//! what consumers should act on: a failed hypothesis downgrades the outcome
//! to `not-applicable`, never to a failure, and `f ≡ 0` inputs are flagged
//! trivial rather than rejected.

use std::collections::BTreeMap;

use serde::Serialize;

/// Quadrature metadata attached to a report.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Quadrature {
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "M")]
    pub m: usize,
    pub err_est: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "pass")]
    Pass,
    #[serde(rename = "fail")]
    Fail,
    #[serde(rename = "not-applicable")]
    NotApplicable,
}

/// Outcome of one inequality check: `margin = rhs − lhs` and
/// `pass ⇔ margin ≥ −err_est`.
#[derive(Debug, Clone, Serialize)]
pub struct InequalityReport {
    pub name: String,
    pub params: BTreeMap<String, f64>,
    pub lhs: f64,
    pub rhs: f64,
    pub constant: f64,
    pub margin: f64,
    pub pass: bool,
    pub hypothesis_ok: bool,
    pub trivial: bool,
    pub verdict: Verdict,
    /// Named sub-margins for multi-sided checks (Riesz bounds carry
    /// lower/upper, the Bergman twin carries all four sides).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub margins: Option<BTreeMap<String, f64>>,
    /// Human-readable statement of the hypothesis that was tested.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hypothesis: Option<String>,
    pub quadrature: Quadrature,
}

impl InequalityReport {
    pub fn new(name: &str, lhs: f64, rhs: f64, constant: f64, quadrature: Quadrature) -> Self {
        let margin = rhs - lhs;
        let mut report = Self {
            name: name.to_string(),
            params: BTreeMap::new(),
            lhs,
            rhs,
            constant,
            margin,
            pass: false,
            hypothesis_ok: true,
            trivial: false,
            verdict: Verdict::Pass,
            margins: None,
            hypothesis: None,
            quadrature,
        };
        report.refresh();
        report
    }

    /// Recomputes `pass` and `verdict` from the current fields.
    pub fn refresh(&mut self) {
        self.pass = self.margin >= -self.quadrature.err_est;
        self.verdict = if !self.hypothesis_ok {
            Verdict::NotApplicable
        } else if self.pass {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
    }

    pub fn with_param(mut self, key: &str, value: f64) -> Self {
        self.params.insert(key.to_string(), value);
        self
    }

    /// Overrides the headline margin (for checks whose margin is not simply
    /// `rhs − lhs`, e.g. the minimum over several sides).
    pub fn with_margin(mut self, margin: f64) -> Self {
        self.margin = margin;
        self.refresh();
        self
    }

    pub fn with_submargin(mut self, key: &str, value: f64) -> Self {
        self.margins
            .get_or_insert_with(BTreeMap::new)
            .insert(key.to_string(), value);
        self
    }

    pub fn with_hypothesis(mut self, ok: bool, statement: &str) -> Self {
        self.hypothesis_ok = ok;
        self.hypothesis = Some(statement.to_string());
        self.refresh();
        self
    }

    pub fn with_trivial(mut self, trivial: bool) -> Self {
        self.trivial = trivial;
        self
    }

    pub fn is_failure(&self) -> bool {
        self.verdict == Verdict::Fail
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}
