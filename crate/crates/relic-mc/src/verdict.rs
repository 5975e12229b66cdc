//! Verdicts shared by the engine, the explicit-state oracle, and the
//! certificate layer.

use crate::types::{Assignment, Clause};

/// One trace step: latch valuation plus the input values driving the
/// transition out of this state. The final step's inputs are unused.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub state: Assignment,
    pub inputs: Vec<bool>,
}

/// A counterexample execution: starts in an initial state, each adjacent
/// pair is a transition under the recorded inputs, and the last state
/// violates the property.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace {
    pub steps: Vec<TraceStep>,
}

impl Trace {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

/// Outcome of a proof attempt: an inductive strengthening (a clause set `F`
/// such that `F ∧ P` is inductive), or a replayable counterexample.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Safe(Vec<Clause>),
    Unsafe(Trace),
}

impl Verdict {
    pub fn is_safe(&self) -> bool {
        matches!(self, Verdict::Safe(_))
    }
}
