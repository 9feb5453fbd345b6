//! Closure of attribute sets under a theory.
//!
//! [`lin_closure`] keeps one counter per implication holding the number of
//! premise attributes not yet in the result; an implication fires when its
//! counter reaches zero. [`lin_closure_es`] adds an early stop that aborts as
//! soon as an attribute below a guard would be added, which is exactly when
//! the finished closure would fail the canonicity test at that guard.
//! [`lin_closure_rc`] starts from the counters left by an earlier closure of
//! a subset and only processes the attributes that are new.
//!
//! Attributes waiting in the queue are processed in ascending order.

use crate::bitset::AttributeSet;
use crate::implications::{Implication, Theory};

/// Remaining-premise counters captured at the end of a closure run.
///
/// Covers the first [`counted_prefix`](Self::counted_prefix) implications of
/// the theory it was computed against. After a successful run returning `D`,
/// `counts[j] == |premise_j ∖ D|`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CounterState {
    counts: Vec<i32>,
}

impl CounterState {
    /// State covering no implications.
    pub fn new() -> Self {
        Self::default()
    }

    pub fn counted_prefix(&self) -> usize {
        self.counts.len()
    }

    pub fn counts(&self) -> &[i32] {
        &self.counts
    }

    /// Checks `counts[j] == |premise_j ∖ d|` for every counted implication.
    pub fn is_consistent_with(&self, theory: &Theory, d: &AttributeSet) -> bool {
        self.counts.len() <= theory.len()
            && self
                .counts
                .iter()
                .zip(theory.iter())
                .all(|(&c, imp)| c >= 0 && c as usize == imp.premise.difference_len(d))
    }
}

/// Work statistics of a single closure run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ClosureTrace {
    /// Attributes taken from the queue.
    pub dequeued: usize,
    /// Implications whose counter reached zero.
    pub fired: usize,
}

/// Adds the conclusion of a fired implication; `false` means the early stop
/// triggered.
#[inline]
fn fire(
    imp: &Implication,
    d: &mut AttributeSet,
    queue: &mut AttributeSet,
    guard: usize,
    trace: &mut ClosureTrace,
) -> bool {
    trace.fired += 1;
    match imp.conclusion.min_difference(d) {
        None => true,
        Some(first) if first < guard => false,
        Some(_) => {
            d.union_tracking(&imp.conclusion, queue);
            true
        }
    }
}

#[inline]
fn propagate(
    theory: &Theory,
    d: &mut AttributeSet,
    queue: &mut AttributeSet,
    counts: &mut [i32],
    guard: usize,
    trace: &mut ClosureTrace,
) -> bool {
    debug_assert_eq!(counts.len(), theory.len());
    while let Some(m) = queue.pop_min() {
        trace.dequeued += 1;
        for &j in theory.list(m) {
            let j = j as usize;
            let count = &mut counts[j];
            *count -= 1;
            if *count == 0 && !fire(theory.get(j), d, queue, guard, trace) {
                return false;
            }
        }
    }
    true
}

fn fresh_run(
    theory: &Theory,
    b: &AttributeSet,
    guard: usize,
    trace: &mut ClosureTrace,
) -> Option<(AttributeSet, Vec<i32>)> {
    debug_assert_eq!(b.capacity(), theory.n_attributes());
    let mut counts: Vec<i32> = theory.premise_len().iter().map(|&n| n as i32).collect();
    let mut d = b.clone();
    let mut queue = b.clone();
    for &j in theory.empty_premises() {
        if !fire(theory.get(j as usize), &mut d, &mut queue, guard, trace) {
            return None;
        }
    }
    propagate(theory, &mut d, &mut queue, &mut counts, guard, trace).then_some((d, counts))
}

/// `c_T(b)`: the least model of `theory` containing `b`.
pub fn lin_closure(theory: &Theory, b: &AttributeSet) -> AttributeSet {
    let mut trace = ClosureTrace::default();
    fresh_run(theory, b, 0, &mut trace)
        .expect("a zero guard never stops early")
        .0
}

/// `c_T(b)`, or `None` as soon as an attribute below `guard` that is not in
/// `b` would be added.
///
/// `None` is returned exactly when `c_T(b) ∩ {0..guard-1} ≠ b ∩ {0..guard-1}`.
/// A guard of 0 never fails.
pub fn lin_closure_es(theory: &Theory, b: &AttributeSet, guard: usize) -> Option<AttributeSet> {
    let mut trace = ClosureTrace::default();
    fresh_run(theory, b, guard, &mut trace).map(|(d, _)| d)
}

/// [`lin_closure_es`] that also reports how much work the run did.
pub fn lin_closure_traced(
    theory: &Theory,
    b: &AttributeSet,
    guard: usize,
) -> (Option<AttributeSet>, ClosureTrace) {
    let mut trace = ClosureTrace::default();
    let d = fresh_run(theory, b, guard, &mut trace).map(|(d, _)| d);
    (d, trace)
}

/// Closure of `b` reusing the counters `prev` of an earlier run.
///
/// Contract (unchecked): `prev` was returned by a successful run that produced
/// `b ∖ new_attrs`, against a prefix of `theory`. Implications appended since
/// then get counters as if they had been counted in that run, and those whose
/// premise was already covered fire before the queue is processed. Only
/// `new_attrs` and attributes added on the way are dequeued.
///
/// Returns `None` under the same condition as [`lin_closure_es`]. On success
/// the returned state covers all of `theory`.
pub fn lin_closure_rc(
    theory: &Theory,
    b: &AttributeSet,
    guard: usize,
    new_attrs: &AttributeSet,
    prev: &CounterState,
) -> Option<(AttributeSet, CounterState)> {
    let mut trace = ClosureTrace::default();
    lin_closure_rc_traced(theory, b, guard, new_attrs, prev, &mut trace)
}

pub(crate) fn lin_closure_rc_traced(
    theory: &Theory,
    b: &AttributeSet,
    guard: usize,
    new_attrs: &AttributeSet,
    prev: &CounterState,
    trace: &mut ClosureTrace,
) -> Option<(AttributeSet, CounterState)> {
    debug_assert!(prev.counted_prefix() <= theory.len());
    debug_assert!(new_attrs.is_subset(b));

    let counted = prev.counted_prefix();
    let mut counts = Vec::with_capacity(theory.len());
    counts.extend_from_slice(&prev.counts);

    let base = b.difference(new_attrs);
    for imp in &theory.implications()[counted..] {
        counts.push(imp.premise.difference_len(&base) as i32);
    }

    let mut d = b.clone();
    let mut queue = new_attrs.clone();
    for (imp, &count) in theory.implications()[counted..]
        .iter()
        .zip(&counts[counted..])
    {
        if count == 0 && !fire(imp, &mut d, &mut queue, guard, trace) {
            return None;
        }
    }
    propagate(theory, &mut d, &mut queue, &mut counts, guard, trace)
        .then_some((d, CounterState { counts }))
}

/// `c_T(b)` by Wild's method: repeatedly apply every implication whose
/// premise has no attribute outside the current set, then drop them.
pub fn wild_closure(theory: &Theory, b: &AttributeSet) -> AttributeSet {
    debug_assert_eq!(b.capacity(), theory.n_attributes());
    let mut d = b.clone();
    for &j in theory.empty_premises() {
        d.union_with(&theory.get(j as usize).conclusion);
    }

    // Implications still in play; `blocked[j] == round` marks a premise
    // attribute outside `d` in the current round.
    let mut pending: Vec<u32> = (0..theory.len() as u32)
        .filter(|&j| theory.premise_len()[j as usize] > 0)
        .collect();
    let mut blocked = vec![0u32; theory.len()];
    let mut round = 0u32;
    loop {
        round += 1;
        for a in (0..theory.n_attributes()).filter(|&a| !d.contains(a)) {
            for &j in theory.list(a) {
                blocked[j as usize] = round;
            }
        }
        let before = pending.len();
        pending.retain(|&j| {
            if blocked[j as usize] == round {
                return true;
            }
            d.union_with(&theory.get(j as usize).conclusion);
            false
        });
        if pending.len() == before {
            return d;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::implications::naive_closure;
    use crate::implications::tests::{imp, k1_basis, s};

    #[test]
    fn lin_closure_examples() {
        let t = Theory::from_implications(3, [imp(3, &[1, 2], &[3])]);
        assert_eq!(lin_closure(&t, &s(3, &[1, 2])), s(3, &[1, 2, 3]));

        let t0 = Theory::from_implications(3, [imp(3, &[], &[1])]);
        assert_eq!(lin_closure(&t0, &s(3, &[])), s(3, &[1]));

        assert_eq!(lin_closure(&k1_basis(), &s(4, &[2, 3])), s(4, &[2, 3, 4]));
    }

    #[test]
    fn counter_two_to_zero() {
        let t = Theory::from_implications(3, [imp(3, &[1, 2], &[3])]);
        let (d, trace) = lin_closure_traced(&t, &s(3, &[1, 2]), 0);
        assert_eq!(d, Some(s(3, &[1, 2, 3])));
        assert_eq!(trace.fired, 1);
        assert_eq!(trace.dequeued, 3);
    }

    #[test]
    fn early_stop_examples() {
        let t = Theory::from_implications(4, [imp(4, &[4], &[2, 3, 4])]);
        // y = 3 (1-based) protects attributes {1, 2}: guard 2 in 0-based terms.
        assert_eq!(lin_closure_es(&t, &s(4, &[3, 4]), 2), None);
        assert_eq!(lin_closure_es(&t, &s(4, &[4]), 3), None);
        assert_eq!(
            lin_closure_es(&Theory::new(4), &s(4, &[2]), 1),
            Some(s(4, &[2]))
        );
        // The guard only looks at additions.
        assert_eq!(
            lin_closure_es(&t, &s(4, &[2, 3, 4]), 3),
            Some(s(4, &[2, 3, 4]))
        );
    }

    #[test]
    fn reused_counters_from_empty_state() {
        let t = k1_basis();
        let b = s(4, &[4]);
        let (d, state) = lin_closure_rc(&t, &b, 0, &b, &CounterState::new()).unwrap();
        assert_eq!(Some(d.clone()), lin_closure_es(&t, &b, 0));
        assert!(state.is_consistent_with(&t, &d));
        assert_eq!(state.counted_prefix(), 2);
    }

    #[test]
    fn reused_counters_with_new_implication() {
        // Closure of {2} under the empty theory leaves no counters. Then
        // {2,4} ⇒ {5} is appended and {2,4} is closed with 4 as the new attribute.
        let empty = Theory::new(5);
        let (d0, prev) =
            lin_closure_rc(&empty, &s(5, &[2]), 0, &s(5, &[2]), &CounterState::new()).unwrap();
        assert_eq!(d0, s(5, &[2]));
        assert_eq!(prev.counted_prefix(), 0);

        let t = Theory::from_implications(5, [imp(5, &[2, 4], &[5])]);
        let (d, state) = lin_closure_rc(&t, &s(5, &[2, 4]), 3, &s(5, &[4]), &prev).unwrap();
        assert_eq!(d, s(5, &[2, 4, 5]));
        assert_eq!(state.counts(), [0]);
        assert_eq!(d, lin_closure(&t, &s(5, &[2, 4])));
    }

    #[test]
    fn reused_counters_fire_covered_new_implications() {
        // The premise {1} lies entirely in the reused base.
        let t0 = Theory::new(3);
        let (_, prev) =
            lin_closure_rc(&t0, &s(3, &[1]), 0, &s(3, &[1]), &CounterState::new()).unwrap();
        let t = Theory::from_implications(3, [imp(3, &[1], &[1, 3])]);
        let (d, state) = lin_closure_rc(&t, &s(3, &[1, 2]), 1, &s(3, &[2]), &prev).unwrap();
        assert_eq!(d, s(3, &[1, 2, 3]));
        assert!(state.is_consistent_with(&t, &d));

        // The same addition below the guard fails.
        let t = Theory::from_implications(3, [imp(3, &[3], &[1, 3])]);
        let (_, prev) =
            lin_closure_rc(&t0, &s(3, &[3]), 0, &s(3, &[3]), &CounterState::new()).unwrap();
        assert_eq!(
            lin_closure_rc(&t, &s(3, &[2, 3]), 1, &s(3, &[2]), &prev),
            None
        );
    }

    #[test]
    fn wild_closure_examples() {
        assert_eq!(wild_closure(&k1_basis(), &s(4, &[4])), s(4, &[2, 3, 4]));
        let t0 = Theory::from_implications(3, [imp(3, &[], &[1])]);
        assert_eq!(wild_closure(&t0, &s(3, &[])), s(3, &[1]));
        assert_eq!(wild_closure(&Theory::new(3), &s(3, &[2])), s(3, &[2]));
    }

    #[test]
    fn chained_implications_agree() {
        let t = Theory::from_implications(
            6,
            [
                imp(6, &[1], &[1, 2]),
                imp(6, &[2, 3], &[2, 3, 4]),
                imp(6, &[4], &[4, 5]),
                imp(6, &[5, 1], &[1, 5, 6]),
            ],
        );
        for b in AttributeSet::all_subsets_lectic(6) {
            let expected = naive_closure(&t, &b);
            assert_eq!(lin_closure(&t, &b), expected);
            assert_eq!(wild_closure(&t, &b), expected);
        }
    }
}
