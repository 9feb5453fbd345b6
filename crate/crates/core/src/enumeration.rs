//! Enumeration of closed sets in lectic order.

use std::cmp::Ordering;

use crate::bitset::AttributeSet;
use crate::closures::lin_closure;
use crate::context::FormalContext;
use crate::error::Result;
use crate::implications::{check_limit, Theory};

/// A closure operator on `{0, .., n_attributes - 1}`: extensive, monotone
/// and idempotent.
pub trait ClosureOperator {
    fn n_attributes(&self) -> usize;
    fn close(&self, set: &AttributeSet) -> AttributeSet;
}

/// The intent closure `B↓↑`.
impl ClosureOperator for FormalContext {
    fn n_attributes(&self) -> usize {
        FormalContext::n_attributes(self)
    }

    fn close(&self, set: &AttributeSet) -> AttributeSet {
        FormalContext::close(self, set)
    }
}

/// The model closure `c_T`.
impl ClosureOperator for Theory {
    fn n_attributes(&self) -> usize {
        Theory::n_attributes(self)
    }

    fn close(&self, set: &AttributeSet) -> AttributeSet {
        lin_closure(self, set)
    }
}

impl<C: ClosureOperator + ?Sized> ClosureOperator for &C {
    fn n_attributes(&self) -> usize {
        (**self).n_attributes()
    }

    fn close(&self, set: &AttributeSet) -> AttributeSet {
        (**self).close(set)
    }
}

/// Closure operator given by a function.
pub struct FnClosure<F> {
    n_attributes: usize,
    f: F,
}

impl<F: Fn(&AttributeSet) -> AttributeSet> FnClosure<F> {
    pub fn new(n_attributes: usize, f: F) -> Self {
        Self { n_attributes, f }
    }
}

impl<F: Fn(&AttributeSet) -> AttributeSet> ClosureOperator for FnClosure<F> {
    fn n_attributes(&self) -> usize {
        self.n_attributes
    }

    fn close(&self, set: &AttributeSet) -> AttributeSet {
        (self.f)(set)
    }
}

/// Strict lectic order: the smallest attribute in which `a` and `b` differ
/// belongs to `b`.
pub fn lectic_less(a: &AttributeSet, b: &AttributeSet) -> bool {
    a.lectic_cmp(b) == Ordering::Less
}

/// Canonicity test for a closure `d` of `b ∪ {i}`: no attribute below `i`
/// was added.
pub fn canonicity(b: &AttributeSet, d: &AttributeSet, i: usize) -> bool {
    b.prefix_eq(d, i)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EnumerationStats {
    pub closed_sets: usize,
    pub closure_calls: usize,
}

/// Close-by-One with the right depth-first sweep.
///
/// Streams every closed set to `visit` exactly once, in strictly ascending
/// lectic order, starting with `c(∅)` and ending with the full set.
pub fn cbo_closed_sets<C, F>(c: &C, mut visit: F) -> EnumerationStats
where
    C: ClosureOperator + ?Sized,
    F: FnMut(&AttributeSet),
{
    let n = c.n_attributes();
    let mut stats = EnumerationStats {
        closure_calls: 1,
        ..Default::default()
    };
    // Frames are (closed set, first attribute its children may add).
    let mut stack = vec![(c.close(&AttributeSet::empty(n)), 0usize)];
    while let Some((b, start)) = stack.pop() {
        visit(&b);
        stats.closed_sets += 1;
        // Ascending pushes leave the highest attribute on top of the stack.
        for i in start..n {
            if b.contains(i) {
                continue;
            }
            let mut candidate = b.clone();
            candidate.insert(i);
            let d = c.close(&candidate);
            stats.closure_calls += 1;
            if canonicity(&b, &d, i) {
                stack.push((d, i + 1));
            }
        }
    }
    stats
}

/// Every closed set, collected in lectic order.
pub fn cbo_collect<C: ClosureOperator + ?Sized>(c: &C) -> Vec<AttributeSet> {
    let mut out = Vec::new();
    cbo_closed_sets(c, |b| out.push(b.clone()));
    out
}

/// Lectically smallest closed set greater than `b`, or the full set if
/// there is none.
pub fn next_closure<C: ClosureOperator + ?Sized>(c: &C, b: &AttributeSet) -> AttributeSet {
    let n = c.n_attributes();
    next_closure_from(c, b, n).map_or_else(|| AttributeSet::full(n), |(d, _)| d)
}

/// The NextClosure search restricted to attributes below `end`.
///
/// Returns the successor and the attribute whose addition produced it.
pub(crate) fn next_closure_from<C: ClosureOperator + ?Sized>(
    c: &C,
    b: &AttributeSet,
    end: usize,
) -> Option<(AttributeSet, usize)> {
    let mut base = b.prefix(end);
    for i in (0..end).rev() {
        if base.remove(i) {
            continue;
        }
        let mut candidate = base.clone();
        candidate.insert(i);
        let d = c.close(&candidate);
        if canonicity(&base, &d, i) {
            return Some((d, i));
        }
    }
    None
}

/// Iterator over all closed sets by repeated [`next_closure`].
pub struct NextClosureIter<'c, C: ?Sized> {
    op: &'c C,
    current: Option<AttributeSet>,
}

impl<'c, C: ClosureOperator + ?Sized> NextClosureIter<'c, C> {
    pub fn new(op: &'c C) -> Self {
        let start = op.close(&AttributeSet::empty(op.n_attributes()));
        Self {
            op,
            current: Some(start),
        }
    }
}

impl<C: ClosureOperator + ?Sized> Iterator for NextClosureIter<'_, C> {
    type Item = AttributeSet;

    fn next(&mut self) -> Option<AttributeSet> {
        let current = self.current.take()?;
        if !current.is_full() {
            self.current = Some(next_closure(self.op, &current));
        }
        Some(current)
    }
}

/// Every fixpoint of `c`, found by testing all `2^n` subsets. Lectic order.
pub fn all_closed_subsets_naive<C: ClosureOperator + ?Sized>(
    c: &C,
    limit: usize,
) -> Result<Vec<AttributeSet>> {
    let n = c.n_attributes();
    check_limit("naive closed-set enumeration", n, limit)?;
    Ok(AttributeSet::all_subsets_lectic(n)
        .filter(|b| c.close(b) == *b)
        .collect())
}
