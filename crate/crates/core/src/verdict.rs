use std::fmt;

use serde::Serialize;

/// Outcome of a runtime check of a lemma or theorem on one instance.
///
/// `Vacuous` means the statement's hypothesis did not hold, so the instance
/// carries no evidence; `Skipped` means the instance fell outside the
/// statement's standing assumptions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "reason", rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Vacuous(String),
    Fail(String),
    Skipped(String),
}

impl Verdict {
    pub fn fail(reason: impl Into<String>) -> Verdict {
        Verdict::Fail(reason.into())
    }

    pub fn vacuous(reason: impl Into<String>) -> Verdict {
        Verdict::Vacuous(reason.into())
    }

    pub fn skipped(reason: impl Into<String>) -> Verdict {
        Verdict::Skipped(reason.into())
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, Verdict::Fail(_))
    }

    /// Pass or vacuous pass.
    pub fn is_ok(&self) -> bool {
        matches!(self, Verdict::Pass | Verdict::Vacuous(_))
    }

    /// Keeps the first failure; otherwise the strongest of the two outcomes.
    pub fn and(self, other: Verdict) -> Verdict {
        match (self, other) {
            (f @ Verdict::Fail(_), _) | (_, f @ Verdict::Fail(_)) => f,
            (Verdict::Pass, _) | (_, Verdict::Pass) => Verdict::Pass,
            (v, _) => v,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Pass => write!(f, "pass"),
            Verdict::Vacuous(r) => write!(f, "vacuous ({r})"),
            Verdict::Fail(r) => write!(f, "FAIL: {r}"),
            Verdict::Skipped(r) => write!(f, "skipped ({r})"),
        }
    }
}
