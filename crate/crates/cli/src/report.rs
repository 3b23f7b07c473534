//! Machine-readable reports. Field order is fixed by the struct layout, so
//! identical inputs serialize byte-identically.

use brinkmann_core::{Decision, NoReason, OrbitTrace};
use serde::Serialize;

pub fn reason_slug(reason: NoReason) -> &'static str {
    match reason {
        NoReason::NotInImage => "not-in-image",
        NoReason::OrbitCycleExhausted => "orbit-cycle-exhausted",
        NoReason::FiniteWindowExhausted => "finite-window-exhausted",
    }
}

/// Report for the decision subcommands `brp` and `brcp`. Carries enough to
/// replay a yes offline: the inputs, the exponent and the witness.
#[derive(Serialize)]
pub struct DecisionReport {
    pub problem: &'static str,
    pub rank: usize,
    pub map: Vec<String>,
    pub u: String,
    pub v: String,
    pub max_depth: usize,
    pub answer: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub depth: Option<usize>,
}

impl DecisionReport {
    pub fn new(
        problem: &'static str,
        rank: usize,
        map: Vec<String>,
        u: String,
        v: String,
        max_depth: usize,
        decision: &Decision,
    ) -> DecisionReport {
        let mut report = DecisionReport {
            problem,
            rank,
            map,
            u,
            v,
            max_depth,
            answer: "",
            k: None,
            witness: None,
            reason: None,
            depth: None,
        };
        match decision {
            Decision::Yes { k, witness } => {
                report.answer = "yes";
                report.k = Some(*k);
                report.witness = Some(witness.to_string());
            }
            Decision::No { reason } => {
                report.answer = "no";
                report.reason = Some(reason_slug(*reason));
            }
            Decision::Unknown { depth } => {
                report.answer = "unknown";
                report.depth = Some(*depth);
            }
        }
        report
    }
}

#[derive(Serialize)]
pub struct ConjReport {
    pub problem: &'static str,
    pub rank: usize,
    pub u: String,
    pub v: String,
    pub conjugate: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conjugator: Option<String>,
}

#[derive(Serialize)]
pub struct MemberReport {
    pub problem: &'static str,
    pub rank: usize,
    pub generators: Vec<String>,
    pub word: String,
    pub member: bool,
}

#[derive(Serialize)]
pub struct ExpressReport {
    pub problem: &'static str,
    pub rank: usize,
    pub generators: Vec<String>,
    pub word: String,
    pub member: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expression: Option<String>,
}

#[derive(Serialize)]
pub struct PreimageReport {
    pub problem: &'static str,
    pub rank: usize,
    pub map: Vec<String>,
    pub v: String,
    pub in_image: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub preimage: Option<String>,
}

#[derive(Serialize)]
pub struct TraceStepReport {
    pub k: usize,
    pub word: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pred: Option<bool>,
}

#[derive(Serialize)]
pub struct CycleReport {
    pub preperiod: usize,
    pub period: usize,
}

#[derive(Serialize)]
pub struct TraceReport {
    pub problem: &'static str,
    pub rank: usize,
    pub map: Vec<String>,
    pub u: String,
    pub mode: &'static str,
    pub predicate: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub target: Option<String>,
    pub max_depth: usize,
    pub steps: Vec<TraceStepReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cycle: Option<CycleReport>,
}

impl TraceReport {
    pub fn steps_from(trace: &OrbitTrace) -> (Vec<TraceStepReport>, Option<CycleReport>) {
        let steps = trace
            .steps
            .iter()
            .map(|s| TraceStepReport { k: s.index, word: s.word.to_string(), pred: s.predicate })
            .collect();
        let cycle =
            trace.cycle.map(|(preperiod, period)| CycleReport { preperiod, period });
        (steps, cycle)
    }
}
