use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Classification {
    #[serde(rename = "confirms")]
    Confirms,
    #[serde(rename = "hypothesis_violated")]
    HypothesisViolated,
    #[serde(rename = "COUNTEREXAMPLE")]
    Counterexample,
}

/// One implication inside a theorem statement.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Clause {
    pub name: String,
    pub hypotheses: bool,
    pub conclusion: bool,
    /// The statement is an equivalence, so `!hypotheses && conclusion` is
    /// worth reporting.
    pub iff: bool,
}

impl Clause {
    pub fn new(name: &str, hypotheses: bool, conclusion: bool) -> Self {
        Self {
            name: name.to_string(),
            hypotheses,
            conclusion,
            iff: false,
        }
    }

    pub fn iff(name: &str, hypotheses: bool, conclusion: bool) -> Self {
        Self {
            iff: true,
            ..Self::new(name, hypotheses, conclusion)
        }
    }

    /// Unconditional statement.
    pub fn always(name: &str, conclusion: bool) -> Self {
        Self::new(name, true, conclusion)
    }

    pub fn converse_violated(&self) -> bool {
        self.iff && !self.hypotheses && self.conclusion
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub theorem_id: String,
    pub instance_seed: Option<u64>,
    /// Some clause has all of its hypotheses satisfied.
    pub hypotheses_satisfied: bool,
    /// Every clause whose hypotheses hold has a true conclusion; when no
    /// clause applies, every conclusion is true.
    pub conclusion_holds: bool,
    pub residuals: BTreeMap<String, f64>,
    pub flags: BTreeMap<String, bool>,
    pub clauses: Vec<Clause>,
    pub classification: Classification,
}

impl TheoremReport {
    pub fn from_clauses(
        theorem_id: &str,
        clauses: Vec<Clause>,
        residuals: BTreeMap<String, f64>,
        flags: BTreeMap<String, bool>,
    ) -> Self {
        let hypotheses_satisfied = clauses.iter().any(|c| c.hypotheses);
        let conclusion_holds = if hypotheses_satisfied {
            clauses.iter().filter(|c| c.hypotheses).all(|c| c.conclusion)
        } else {
            clauses.iter().all(|c| c.conclusion)
        };
        let classification = match (hypotheses_satisfied, conclusion_holds) {
            (false, _) => Classification::HypothesisViolated,
            (true, true) => Classification::Confirms,
            (true, false) => Classification::Counterexample,
        };
        Self {
            theorem_id: theorem_id.to_string(),
            instance_seed: None,
            hypotheses_satisfied,
            conclusion_holds,
            residuals,
            flags,
            clauses,
            classification,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.instance_seed = Some(seed);
        self
    }

    pub fn converse_violations(&self) -> Vec<&str> {
        self.clauses
            .iter()
            .filter(|c| c.converse_violated())
            .map(|c| c.name.as_str())
            .collect()
    }

    pub fn is_counterexample(&self) -> bool {
        self.classification == Classification::Counterexample
    }
}
