//! Independent checking of a claimed balanced matching and of a trace.
//!
//! Replay only uses the swap operator and direct colour lookups; it never
//! consults the balancer's case logic.

use thiserror::Error;

use crate::balancer::Trace;
use crate::graph::{Colour, ColouredGraph, EdgeColouring, Matching};
use crate::swap::swap;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum VerifyFailure {
    #[error("order mismatch: matching covers {matching} vertices, instance has {instance}")]
    OrderMismatch { matching: usize, instance: usize },
    #[error("unbalanced: b={b} r={r}")]
    Unbalanced { b: usize, r: usize },
    #[error("replay mismatch at step {step}: {reason}")]
    Replay { step: usize, reason: String },
    #[error("trace has {steps} steps, more than n = {n}")]
    TooManySteps { steps: usize, n: usize },
    #[error("trace final matching does not match the replayed matching")]
    FinalMismatch,
    #[error("trace final matching differs from the supplied matching")]
    SuppliedMismatch,
}

fn counts(g: &ColouredGraph, m: &Matching) -> (usize, usize) {
    let mut b = 0;
    let mut r = 0;
    for (u, v) in m.edges() {
        match g.colour(u, v) {
            Colour::Black => b += 1,
            Colour::Red => r += 1,
        }
    }
    (b, r)
}

fn check_order(g: &ColouredGraph, m: &Matching) -> Result<(), VerifyFailure> {
    if m.order() != g.order() {
        return Err(VerifyFailure::OrderMismatch {
            matching: m.order(),
            instance: g.order(),
        });
    }
    Ok(())
}

/// `m` is a perfect matching of `g` (by type) with equal colour counts.
pub fn check_balanced(g: &ColouredGraph, m: &Matching) -> Result<(), VerifyFailure> {
    check_order(g, m)?;
    let (b, r) = counts(g, m);
    if b != r {
        return Err(VerifyFailure::Unbalanced { b, r });
    }
    Ok(())
}

/// Replays every step of `trace` from its initial matching and re-checks each
/// record's contract; returns the replayed final matching.
pub fn replay_trace(g: &ColouredGraph, trace: &Trace) -> Result<Matching, VerifyFailure> {
    check_order(g, &trace.initial)?;
    if trace.steps.len() > g.n() {
        return Err(VerifyFailure::TooManySteps {
            steps: trace.steps.len(),
            n: g.n(),
        });
    }
    let mut current = trace.initial.clone();
    for (k, step) in trace.steps.iter().enumerate() {
        let fail = |reason: String| VerifyFailure::Replay { step: k, reason };
        if step.index != k {
            return Err(fail(format!("step numbered {}", step.index)));
        }
        let (b, r) = counts(g, &current);
        let d = b.abs_diff(r);
        if step.discrepancy_before != d {
            return Err(fail(format!(
                "recorded d before {} but matching has {d}",
                step.discrepancy_before
            )));
        }
        if step.flipped != (r > b) {
            return Err(fail(format!("flip flag {} with b={b} r={r}", step.flipped)));
        }
        if step.swaps.is_empty() || step.swaps.len() > 2 {
            return Err(fail(format!("{} swaps recorded", step.swaps.len())));
        }
        for q in &step.swaps {
            if !q.applies_to(&current) {
                return Err(fail(format!("swap {q} does not apply")));
            }
            current = swap(&current, *q);
        }
        let (b, r) = counts(g, &current);
        let after = b.abs_diff(r);
        if step.discrepancy_after != after {
            return Err(fail(format!(
                "recorded d after {} but replay gives {after}",
                step.discrepancy_after
            )));
        }
        let drop = d as i64 - after as i64;
        if !(drop == 2 || drop == 4) {
            return Err(fail(format!("discrepancy {d} -> {after}")));
        }
    }
    if current != trace.final_matching {
        return Err(VerifyFailure::FinalMismatch);
    }
    check_balanced(g, &current)?;
    Ok(current)
}

/// Full check used by `zsm verify`: the supplied matching is balanced and, if
/// a trace is given, the trace replays to exactly that matching.
pub fn verify(g: &ColouredGraph, m: &Matching, trace: Option<&Trace>) -> Result<(), VerifyFailure> {
    check_balanced(g, m)?;
    if let Some(t) = trace {
        let replayed = replay_trace(g, t)?;
        if &replayed != m {
            return Err(VerifyFailure::SuppliedMismatch);
        }
    }
    Ok(())
}
