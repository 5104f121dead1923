//! Pass/fail records produced by the law suites.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;

/// Outcome of checking one law over a batch of cases. Keeps the first witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LawCheck {
    pub law: String,
    pub cases: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl LawCheck {
    pub fn new(law: impl Into<String>) -> Self {
        LawCheck {
            law: law.into(),
            cases: 0,
            witness: None,
        }
    }

    /// Count one case; on failure remember the witness unless one is already held.
    pub fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.witness.is_none() {
            self.witness = Some(witness());
        }
    }

    pub fn fail(&mut self, witness: impl Into<String>) {
        self.record(false, || witness.into());
    }

    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }

    pub fn absorb(&mut self, other: LawCheck) {
        self.cases += other.cases;
        if self.witness.is_none() {
            self.witness = other.witness;
        }
    }
}

/// Check `f` on every item in parallel. The witness is the first failure in item
/// order, so the outcome does not depend on scheduling.
pub fn par_check<T: Sync>(
    law: &str,
    items: &[T],
    f: impl Fn(&T) -> Result<Option<String>> + Sync,
) -> Result<LawCheck> {
    let first = items.par_iter().map(&f).find_map_first(|r| match r {
        Ok(None) => None,
        other => Some(other),
    });
    let mut check = LawCheck::new(law);
    check.cases = items.len() as u64;
    match first {
        Some(Err(e)) => Err(e),
        Some(Ok(w)) => {
            check.witness = w;
            Ok(check)
        }
        None => Ok(check),
    }
}

/// A list of law checks, in a deterministic order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub checks: Vec<LawCheck>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, check: LawCheck) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(LawCheck::passed)
    }

    pub fn first_failure(&self) -> Option<&LawCheck> {
        self.checks.iter().find(|c| !c.passed())
    }

    pub fn get(&self, law: &str) -> Option<&LawCheck> {
        self.checks.iter().find(|c| c.law == law)
    }
}

impl From<LawCheck> for Report {
    fn from(check: LawCheck) -> Self {
        Report {
            checks: vec![check],
        }
    }
}

impl FromIterator<LawCheck> for Report {
    fn from_iter<I: IntoIterator<Item = LawCheck>>(iter: I) -> Self {
        Report {
            checks: iter.into_iter().collect(),
        }
    }
}
