//! Duquenne-Guigues basis computation.
//!
//! All drivers enumerate intents and pseudo-intents together in lectic order,
//! closing candidate sets under the implications found so far. A candidate
//! whose closure differs from its intent closure is a pseudo-intent `P`, and
//! `P ⇒ P↓↑` is appended to the basis.
//!
//! * [`lincbo`] walks the Close-by-One tree right to left, closing with
//!   counters reused from the parent node.
//! * [`lincbo1`] is the same walk with counters rebuilt for every closure.
//! * [`nextclosure_basis`] is the iterative NextClosure loop with a choice of
//!   closure procedure, optionally with the two shortcuts taken after a
//!   pseudo-intent: jump straight to its intent when that intent passes the
//!   canonicity test, or skip the rest of the subtree when it does not.

use std::fmt;
use std::rc::Rc;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::bitset::AttributeSet;
use crate::closures::{
    lin_closure_es, lin_closure_rc_traced, wild_closure, ClosureTrace, CounterState,
};
use crate::context::FormalContext;
use crate::enumeration::{all_closed_subsets_naive, canonicity};
use crate::error::Error;
use crate::implications::{models_bruteforce, naive_closure, Implication, Theory};
use crate::oracle::pseudo_intents_bruteforce;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AlgorithmId {
    LinCbO,
    LinCbO1,
    Nc1,
    Nc2,
    Nc3,
    Ncp1,
    Ncp2,
    Ncp3,
}

impl AlgorithmId {
    pub const ALL: [AlgorithmId; 8] = [
        AlgorithmId::LinCbO,
        AlgorithmId::LinCbO1,
        AlgorithmId::Nc1,
        AlgorithmId::Nc2,
        AlgorithmId::Nc3,
        AlgorithmId::Ncp1,
        AlgorithmId::Ncp2,
        AlgorithmId::Ncp3,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            AlgorithmId::LinCbO => "lincbo",
            AlgorithmId::LinCbO1 => "lincbo1",
            AlgorithmId::Nc1 => "nc1",
            AlgorithmId::Nc2 => "nc2",
            AlgorithmId::Nc3 => "nc3",
            AlgorithmId::Ncp1 => "ncp1",
            AlgorithmId::Ncp2 => "ncp2",
            AlgorithmId::Ncp3 => "ncp3",
        }
    }
}

impl fmt::Display for AlgorithmId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for AlgorithmId {
    type Err = Error;

    /// Accepts the lowercase names plus `nc+1` style spellings.
    fn from_str(s: &str) -> Result<Self, Error> {
        let key = s.trim().to_ascii_lowercase().replace('+', "p");
        AlgorithmId::ALL
            .into_iter()
            .find(|a| a.as_str() == key)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown algorithm `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClosureKind {
    Naive,
    Lin,
    Wild,
}

/// Output of a basis computation.
#[derive(Clone, Debug)]
pub struct BasisResult {
    pub algorithm: AlgorithmId,
    /// Implications in the order they were generated.
    pub basis: Theory,
    pub intent_count: u64,
    pub pseudo_intent_count: u64,
    /// Closures under the growing theory, including failed ones.
    pub closure_calls: u64,
    pub wall_time: Duration,
}

/// JSON summary line of a run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BasisSummary {
    pub algorithm: AlgorithmId,
    pub intents: u64,
    pub pseudo_intents: u64,
    pub closure_calls: u64,
    pub ms: f64,
}

impl BasisResult {
    pub fn summary(&self) -> BasisSummary {
        BasisSummary {
            algorithm: self.algorithm,
            intents: self.intent_count,
            pseudo_intents: self.pseudo_intent_count,
            closure_calls: self.closure_calls,
            ms: self.wall_time.as_secs_f64() * 1e3,
        }
    }
}

/// One counter-reusing closure performed by [`lincbo_observed`].
pub struct CounterClosureEvent<'a> {
    pub theory: &'a Theory,
    pub input: &'a AttributeSet,
    pub guard: usize,
    pub new_attrs: &'a AttributeSet,
    pub prev: &'a CounterState,
    /// `None` when the early stop fired.
    pub outcome: Option<(&'a AttributeSet, &'a CounterState)>,
    pub trace: ClosureTrace,
}

/// Hooks into a basis computation. All methods default to no-ops.
pub trait BasisObserver {
    /// Called for every intent and pseudo-intent in generation order.
    fn visit(&mut self, _set: &AttributeSet, _is_intent: bool) {}

    /// Called after every closure of [`lincbo_observed`].
    fn counter_closure(&mut self, _event: &CounterClosureEvent<'_>) {}
}

impl BasisObserver for () {}

#[derive(Default)]
struct Tally {
    intents: u64,
    closure_calls: u64,
}

struct Frame {
    set: AttributeSet,
    last: Option<usize>,
    new_attrs: AttributeSet,
    prev: Rc<CounterState>,
    known_intent: bool,
}

/// LinCbO: Close-by-One over intents and pseudo-intents with counter reuse.
pub fn lincbo(ctx: &FormalContext) -> BasisResult {
    lincbo_observed(ctx, &mut ())
}

pub fn lincbo_observed<O: BasisObserver + ?Sized>(
    ctx: &FormalContext,
    observer: &mut O,
) -> BasisResult {
    cbo_basis(ctx, true, observer)
}

/// LinCbO without counter reuse: every closure starts from premise sizes.
pub fn lincbo1(ctx: &FormalContext) -> BasisResult {
    lincbo1_observed(ctx, &mut ())
}

pub fn lincbo1_observed<O: BasisObserver + ?Sized>(
    ctx: &FormalContext,
    observer: &mut O,
) -> BasisResult {
    cbo_basis(ctx, false, observer)
}

fn cbo_basis<O: BasisObserver + ?Sized>(
    ctx: &FormalContext,
    reuse_counters: bool,
    observer: &mut O,
) -> BasisResult {
    let started = Instant::now();
    let n = ctx.n_attributes();
    let mut theory = Theory::new(n);
    let mut tally = Tally::default();
    let empty_state = Rc::new(CounterState::new());

    let mut stack = vec![Frame {
        set: AttributeSet::empty(n),
        last: None,
        new_attrs: AttributeSet::empty(n),
        prev: Rc::clone(&empty_state),
        known_intent: false,
    }];

    while let Some(frame) = stack.pop() {
        let guard = frame.last.unwrap_or(0);
        tally.closure_calls += 1;

        let closed = if reuse_counters {
            let mut trace = ClosureTrace::default();
            let outcome = lin_closure_rc_traced(
                &theory,
                &frame.set,
                guard,
                &frame.new_attrs,
                &frame.prev,
                &mut trace,
            );
            observer.counter_closure(&CounterClosureEvent {
                theory: &theory,
                input: &frame.set,
                guard,
                new_attrs: &frame.new_attrs,
                prev: &frame.prev,
                outcome: outcome.as_ref().map(|(d, c)| (d, c)),
                trace,
            });
            outcome.map(|(d, counts)| (d, Rc::new(counts)))
        } else {
            lin_closure_es(&theory, &frame.set, guard).map(|d| (d, Rc::clone(&empty_state)))
        };
        let Some((closed, counts)) = closed else {
            continue;
        };

        // Sets reached by jumping to an intent are known to be closed.
        let intent = if frame.known_intent {
            debug_assert_eq!(ctx.close(&closed), closed);
            closed.clone()
        } else {
            ctx.close(&closed)
        };

        if intent != closed {
            observer.visit(&closed, false);
            theory.push(Implication::new(closed.clone(), intent.clone()));
            if frame.last.is_none_or(|y| canonicity(&closed, &intent, y)) {
                let new_attrs = intent.difference(&closed);
                stack.push(Frame {
                    set: intent,
                    last: frame.last,
                    new_attrs,
                    prev: counts,
                    known_intent: true,
                });
            }
        } else {
            observer.visit(&closed, true);
            tally.intents += 1;
            let start = frame.last.map_or(0, |y| y + 1);
            // Ascending pushes pop the highest attribute first.
            for i in (start..n).filter(|&i| !closed.contains(i)) {
                let mut set = closed.clone();
                set.insert(i);
                let mut new_attrs = AttributeSet::empty(n);
                new_attrs.insert(i);
                stack.push(Frame {
                    set,
                    last: Some(i),
                    new_attrs,
                    prev: Rc::clone(&counts),
                    known_intent: false,
                });
            }
        }
    }

    finish(
        if reuse_counters {
            AlgorithmId::LinCbO
        } else {
            AlgorithmId::LinCbO1
        },
        theory,
        tally,
        started,
    )
}

fn finish(algorithm: AlgorithmId, basis: Theory, tally: Tally, started: Instant) -> BasisResult {
    BasisResult {
        algorithm,
        pseudo_intent_count: basis.len() as u64,
        basis,
        intent_count: tally.intents,
        closure_calls: tally.closure_calls,
        wall_time: started.elapsed(),
    }
}

/// NextClosure-based basis computation (NC1-NC3, and NC⁺1-NC⁺3 with `plus`).
pub fn nextclosure_basis(ctx: &FormalContext, kind: ClosureKind, plus: bool) -> BasisResult {
    nextclosure_basis_observed(ctx, kind, plus, &mut ())
}

pub fn nextclosure_basis_observed<O: BasisObserver + ?Sized>(
    ctx: &FormalContext,
    kind: ClosureKind,
    plus: bool,
    observer: &mut O,
) -> BasisResult {
    let started = Instant::now();
    let n = ctx.n_attributes();
    let mut theory = Theory::new(n);
    let mut tally = Tally::default();

    let mut current = AttributeSet::empty(n);
    let mut last: Option<usize> = None;
    let mut known_intent = false;
    loop {
        let intent = if known_intent {
            current.clone()
        } else {
            ctx.close(&current)
        };
        known_intent = false;

        let mut search_end = n;
        if intent != current {
            observer.visit(&current, false);
            theory.push(Implication::new(current.clone(), intent.clone()));
            if plus {
                match last {
                    Some(y) if !canonicity(&current, &intent, y) => {
                        // Nothing closed is left below this node.
                        search_end = y;
                    }
                    _ => {
                        current = intent;
                        known_intent = true;
                        continue;
                    }
                }
            }
        } else {
            observer.visit(&current, true);
            tally.intents += 1;
            if current.is_full() {
                break;
            }
        }

        match successor(&theory, kind, &current, search_end, &mut tally) {
            Some((next, i)) => {
                current = next;
                last = Some(i);
            }
            None => {
                current = AttributeSet::full(n);
                last = None;
            }
        }
    }

    let algorithm = match (kind, plus) {
        (ClosureKind::Naive, false) => AlgorithmId::Nc1,
        (ClosureKind::Lin, false) => AlgorithmId::Nc2,
        (ClosureKind::Wild, false) => AlgorithmId::Nc3,
        (ClosureKind::Naive, true) => AlgorithmId::Ncp1,
        (ClosureKind::Lin, true) => AlgorithmId::Ncp2,
        (ClosureKind::Wild, true) => AlgorithmId::Ncp3,
    };
    finish(algorithm, theory, tally, started)
}

/// Lectic successor of `current` under the theory closure, trying only
/// attributes below `end`.
fn successor(
    theory: &Theory,
    kind: ClosureKind,
    current: &AttributeSet,
    end: usize,
    tally: &mut Tally,
) -> Option<(AttributeSet, usize)> {
    let mut base = current.prefix(end);
    for i in (0..end).rev() {
        if base.remove(i) {
            continue;
        }
        let mut candidate = base.clone();
        candidate.insert(i);
        tally.closure_calls += 1;
        let closed = match kind {
            ClosureKind::Lin => lin_closure_es(theory, &candidate, i),
            ClosureKind::Naive => Some(naive_closure(theory, &candidate)),
            ClosureKind::Wild => Some(wild_closure(theory, &candidate)),
        };
        if let Some(d) = closed.filter(|d| canonicity(&base, d, i)) {
            return Some((d, i));
        }
    }
    None
}

/// Runs the named algorithm.
pub fn compute_basis(ctx: &FormalContext, algorithm: AlgorithmId) -> BasisResult {
    match algorithm {
        AlgorithmId::LinCbO => lincbo(ctx),
        AlgorithmId::LinCbO1 => lincbo1(ctx),
        AlgorithmId::Nc1 => nextclosure_basis(ctx, ClosureKind::Naive, false),
        AlgorithmId::Nc2 => nextclosure_basis(ctx, ClosureKind::Lin, false),
        AlgorithmId::Nc3 => nextclosure_basis(ctx, ClosureKind::Wild, false),
        AlgorithmId::Ncp1 => nextclosure_basis(ctx, ClosureKind::Naive, true),
        AlgorithmId::Ncp2 => nextclosure_basis(ctx, ClosureKind::Lin, true),
        AlgorithmId::Ncp3 => nextclosure_basis(ctx, ClosureKind::Wild, true),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckOutcome {
    Passed,
    Failed,
    Skipped,
}

#[derive(Clone, Debug)]
pub struct Check {
    pub name: &'static str,
    pub outcome: CheckOutcome,
    pub detail: String,
}

#[derive(Clone, Debug, Default)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks
            .iter()
            .all(|c| c.outcome != CheckOutcome::Failed)
    }

    pub fn outcome(&self, name: &str) -> Option<CheckOutcome> {
        self.checks
            .iter()
            .find(|c| c.name == name)
            .map(|c| c.outcome)
    }

    fn push(&mut self, name: &'static str, outcome: CheckOutcome, detail: impl Into<String>) {
        self.checks.push(Check {
            name,
            outcome,
            detail: detail.into(),
        });
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let tag = match c.outcome {
                CheckOutcome::Passed => "PASS",
                CheckOutcome::Failed => "FAIL",
                CheckOutcome::Skipped => "SKIP",
            };
            writeln!(f, "{tag} {}: {}", c.name, c.detail)?;
        }
        Ok(())
    }
}

/// Checks that `theory` is a sound, complete and non-redundant basis of
/// `ctx` with as many implications as there are pseudo-intents.
///
/// Soundness is checked at any size. The remaining checks enumerate all
/// attribute subsets and are skipped above `exhaustive_limit` attributes.
pub fn verify_basis(
    ctx: &FormalContext,
    theory: &Theory,
    exhaustive_limit: usize,
) -> VerificationReport {
    use CheckOutcome::*;
    let mut report = VerificationReport::default();

    match theory.iter().position(|imp| !imp.is_valid_in_context(ctx)) {
        None => report.push(
            "soundness",
            Passed,
            format!("all {} implications hold in every object", theory.len()),
        ),
        Some(j) => report.push(
            "soundness",
            Failed,
            format!("implication #{} fails in some object", j + 1),
        ),
    }

    let n = ctx.n_attributes();
    let intents = match all_closed_subsets_naive(ctx, exhaustive_limit) {
        Ok(intents) if theory.n_attributes() == n => intents,
        _ => {
            let why = format!("{n} attributes exceed the exhaustive limit {exhaustive_limit}");
            for name in ["completeness", "non_redundancy", "pseudo_intent_count"] {
                report.push(name, Skipped, why.clone());
            }
            return report;
        }
    };
    let models = |t: &Theory| models_bruteforce(t, exhaustive_limit).expect("within limit");

    let complete = models(theory) == intents;
    report.push(
        "completeness",
        if complete { Passed } else { Failed },
        format!("{} intents", intents.len()),
    );

    let redundant: Vec<usize> = (0..theory.len())
        .filter(|&j| models(&theory.without(j)) == intents)
        .collect();
    if redundant.is_empty() {
        report.push("non_redundancy", Passed, "every implication is needed");
    } else {
        report.push(
            "non_redundancy",
            Failed,
            format!("{} implications can be dropped", redundant.len()),
        );
    }

    let expected = pseudo_intents_bruteforce(ctx).expect("within limit").len();
    report.push(
        "pseudo_intent_count",
        if expected == theory.len() {
            Passed
        } else {
            Failed
        },
        format!("{} implications, {} pseudo-intents", theory.len(), expected),
    );
    report
}
