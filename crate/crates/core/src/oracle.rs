//! Brute-force reference implementations for tests and verification.

use crate::bitset::AttributeSet;
use crate::context::FormalContext;
use crate::error::Result;
use crate::implications::{check_limit, Implication, Theory, DEFAULT_EXHAUSTIVE_LIMIT};

/// Least fixpoint of `Z ↦ Z ∪ ⋃{R | L ⇒ R ∈ T, L ⊂ Z}` with strict inclusion.
pub fn tilde_closure_naive(theory: &Theory, z: &AttributeSet) -> AttributeSet {
    let mut d = z.clone();
    loop {
        let mut next = d.clone();
        for imp in theory.iter() {
            if imp.premise.is_proper_subset(&d) {
                next.union_with(&imp.conclusion);
            }
        }
        if next == d {
            return d;
        }
        d = next;
    }
}

/// Every pseudo-intent of `ctx`, in lectic order.
///
/// Subsets are classified in lectic order, which extends `⊂`, so each check
/// against smaller pseudo-intents only sees already classified sets.
pub fn pseudo_intents_bruteforce(ctx: &FormalContext) -> Result<Vec<AttributeSet>> {
    let n = ctx.n_attributes();
    check_limit("pseudo-intent enumeration", n, DEFAULT_EXHAUSTIVE_LIMIT)?;
    let mut found: Vec<(AttributeSet, AttributeSet)> = Vec::new();
    for p in AttributeSet::all_subsets_lectic(n) {
        let intent = ctx.close(&p);
        if intent == p {
            continue;
        }
        let respects_smaller = found
            .iter()
            .filter(|(q, _)| q.is_proper_subset(&p))
            .all(|(_, q_intent)| q_intent.is_subset(&p));
        if respects_smaller {
            found.push((p, intent));
        }
    }
    Ok(found.into_iter().map(|(p, _)| p).collect())
}

/// The Duquenne-Guigues basis `{P ⇒ P↓↑}` over all pseudo-intents, lectic order.
pub fn dg_basis_bruteforce(ctx: &FormalContext) -> Result<Theory> {
    let premises = pseudo_intents_bruteforce(ctx)?;
    Ok(Theory::from_implications(
        ctx.n_attributes(),
        premises.into_iter().map(|p| {
            let intent = ctx.close(&p);
            Implication::new(p, intent)
        }),
    ))
}
