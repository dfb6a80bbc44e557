//! Side-by-side record of a computed quantity and the bound it must satisfy.

use serde::{Deserialize, Serialize};

/// Absolute slack below which a bound counts as violated.
pub const BOUND_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    /// `true ≥ bound`
    AtLeast,
    /// `true ≤ bound`
    AtMost,
    /// `true = bound`
    Equal,
}

impl Relation {
    pub fn symbol(self) -> &'static str {
        match self {
            Self::AtLeast => ">=",
            Self::AtMost => "<=",
            Self::Equal => "==",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub name: String,
    #[serde(rename = "true")]
    pub true_value: Option<f64>,
    #[serde(rename = "bound")]
    pub bound_value: Option<f64>,
    pub relation: Relation,
    pub slack: Option<f64>,
    pub pass: bool,
    /// Set when the row carries no assertion (precondition unmet, empty
    /// projection, bound-only mode).
    pub vacuous: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl BoundReport {
    pub fn check(name: impl Into<String>, true_value: f64, relation: Relation, bound: f64) -> Self {
        let slack = match relation {
            Relation::AtLeast => true_value - bound,
            Relation::AtMost => bound - true_value,
            Relation::Equal => -(true_value - bound).abs(),
        };
        let pass = slack >= -BOUND_TOLERANCE;
        Self {
            name: name.into(),
            true_value: Some(true_value),
            bound_value: Some(bound),
            relation,
            slack: Some(slack),
            pass,
            vacuous: false,
            note: None,
        }
    }

    /// Exact comparison with zero tolerance.
    pub fn exact(name: impl Into<String>, true_value: f64, relation: Relation, bound: f64) -> Self {
        let mut r = Self::check(name, true_value, relation, bound);
        r.pass = r.slack.is_some_and(|s| s >= 0.0);
        r
    }

    /// A row that is reported but asserts nothing.
    pub fn vacuous(
        name: impl Into<String>,
        true_value: Option<f64>,
        relation: Relation,
        bound: Option<f64>,
        reason: impl Into<String>,
    ) -> Self {
        let slack = match (true_value, bound) {
            (Some(t), Some(b)) => Some(match relation {
                Relation::AtLeast => t - b,
                Relation::AtMost => b - t,
                Relation::Equal => -(t - b).abs(),
            }),
            _ => None,
        };
        Self {
            name: name.into(),
            true_value,
            bound_value: bound,
            relation,
            slack,
            pass: true,
            vacuous: true,
            note: Some(reason.into()),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    /// Passing and not vacuous.
    pub fn holds(&self) -> bool {
        self.pass && !self.vacuous
    }

    /// Fails the assertion it carries.
    pub fn violated(&self) -> bool {
        !self.vacuous && !self.pass
    }
}
