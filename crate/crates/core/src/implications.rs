//! Attribute implications, append-only theories, and the naive closure.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::bitset::AttributeSet;
use crate::context::FormalContext;
use crate::error::{Error, Result};

/// Default cap on attribute count for exhaustive model enumeration.
pub const DEFAULT_EXHAUSTIVE_LIMIT: usize = 20;

/// `premise ⇒ conclusion`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Implication {
    pub premise: AttributeSet,
    pub conclusion: AttributeSet,
}

impl Implication {
    pub fn new(premise: AttributeSet, conclusion: AttributeSet) -> Self {
        assert_eq!(
            premise.capacity(),
            conclusion.capacity(),
            "premise and conclusion must range over the same attributes"
        );
        Self {
            premise,
            conclusion,
        }
    }

    /// Whether the implication is valid in `m`: `premise ⊆ m` implies
    /// `conclusion ⊆ m`.
    pub fn holds_in(&self, m: &AttributeSet) -> bool {
        !self.premise.is_subset(m) || self.conclusion.is_subset(m)
    }

    /// Valid in every object intent of `ctx`.
    pub fn is_valid_in_context(&self, ctx: &FormalContext) -> bool {
        ctx.rows().iter().all(|row| self.holds_in(row))
    }

    /// The conclusion without the premise attributes.
    pub fn reduced_conclusion(&self) -> AttributeSet {
        self.conclusion.difference(&self.premise)
    }
}

/// Ordered, append-only set of implications with per-attribute premise lists.
///
/// Ordinals are stable: the `j`-th appended implication keeps ordinal `j`.
#[derive(Clone, Debug)]
pub struct Theory {
    n_attributes: usize,
    implications: Vec<Implication>,
    lists: Vec<Vec<u32>>,
    premise_len: Vec<u32>,
    empty_premises: Vec<u32>,
}

impl Theory {
    pub fn new(n_attributes: usize) -> Self {
        Self {
            n_attributes,
            implications: Vec::new(),
            lists: vec![Vec::new(); n_attributes],
            premise_len: Vec::new(),
            empty_premises: Vec::new(),
        }
    }

    pub fn from_implications<I>(n_attributes: usize, implications: I) -> Self
    where
        I: IntoIterator<Item = Implication>,
    {
        let mut theory = Self::new(n_attributes);
        for imp in implications {
            theory.push(imp);
        }
        theory
    }

    pub fn n_attributes(&self) -> usize {
        self.n_attributes
    }

    pub fn len(&self) -> usize {
        self.implications.len()
    }

    pub fn is_empty(&self) -> bool {
        self.implications.is_empty()
    }

    pub fn implications(&self) -> &[Implication] {
        &self.implications
    }

    pub fn get(&self, ordinal: usize) -> &Implication {
        &self.implications[ordinal]
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Implication> {
        self.implications.iter()
    }

    /// Ordinals of implications with `attribute` in the premise, ascending.
    pub fn list(&self, attribute: usize) -> &[u32] {
        &self.lists[attribute]
    }

    pub(crate) fn premise_len(&self) -> &[u32] {
        &self.premise_len
    }

    pub(crate) fn empty_premises(&self) -> &[u32] {
        &self.empty_premises
    }

    /// Appends `imp` and returns its ordinal.
    ///
    /// # Panics
    ///
    /// Panics if `imp` ranges over a different attribute count.
    pub fn push(&mut self, imp: Implication) -> usize {
        assert_eq!(
            imp.premise.capacity(),
            self.n_attributes,
            "implication does not match the theory's attributes"
        );
        let ordinal = self.implications.len();
        let tag = u32::try_from(ordinal).expect("theory exceeds u32::MAX implications");
        for a in &imp.premise {
            self.lists[a].push(tag);
        }
        let len = imp.premise.len() as u32;
        if len == 0 {
            self.empty_premises.push(tag);
        }
        self.premise_len.push(len);
        self.implications.push(imp);
        ordinal
    }

    /// Whether every implication holds in `m`.
    pub fn is_model(&self, m: &AttributeSet) -> bool {
        self.implications.iter().all(|imp| imp.holds_in(m))
    }

    /// Copy of the theory without the implication at `ordinal`.
    pub fn without(&self, ordinal: usize) -> Theory {
        Theory::from_implications(
            self.n_attributes,
            self.implications
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != ordinal)
                .map(|(_, imp)| imp.clone()),
        )
    }

    /// One implication per line as `a1 a2 -> a3 a4`, using `names`.
    ///
    /// With `reduced`, conclusions omit premise attributes.
    pub fn to_text(&self, names: &[String], reduced: bool) -> String {
        let mut out = String::new();
        for imp in &self.implications {
            let rhs = if reduced {
                imp.reduced_conclusion()
            } else {
                imp.conclusion.clone()
            };
            let _ = writeln!(
                out,
                "{} -> {}",
                join_names(&imp.premise, names),
                join_names(&rhs, names)
            );
        }
        out
    }

    pub fn to_records(&self, reduced: bool) -> Vec<ImplicationRecord> {
        self.implications
            .iter()
            .map(|imp| ImplicationRecord::from_implication(imp, reduced))
            .collect()
    }

    /// Parses the text form produced by [`Theory::to_text`].
    ///
    /// A conclusion that omits premise attributes is accepted; the stored
    /// conclusion is always `premise ∪ rhs`.
    pub fn parse_text(text: &str, names: &[String]) -> Result<Theory> {
        let lookup = |line: usize, token: &str| -> Result<usize> {
            names
                .iter()
                .position(|n| n == token)
                .ok_or_else(|| Error::parse(line, format!("unknown attribute `{token}`")))
        };
        let mut theory = Theory::new(names.len());
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (lhs, rhs) = line
                .split_once("->")
                .ok_or_else(|| Error::parse(i + 1, "expected `premise -> conclusion`"))?;
            let mut premise = AttributeSet::empty(names.len());
            for token in lhs.split_whitespace() {
                premise.insert(lookup(i + 1, token)?);
            }
            let mut conclusion = premise.clone();
            for token in rhs.split_whitespace() {
                conclusion.insert(lookup(i + 1, token)?);
            }
            theory.push(Implication::new(premise, conclusion));
        }
        Ok(theory)
    }

    /// Parses a JSON array of `{"premise": [..], "conclusion": [..]}` with
    /// 1-based attribute numbers.
    pub fn parse_json(text: &str, n_attributes: usize) -> Result<Theory> {
        let records: Vec<ImplicationRecord> = serde_json::from_str(text)?;
        let mut theory = Theory::new(n_attributes);
        for record in records {
            let imp = record.to_implication(n_attributes)?;
            theory.push(imp);
        }
        Ok(theory)
    }
}

fn join_names(set: &AttributeSet, names: &[String]) -> String {
    set.iter()
        .map(|a| names[a].as_str())
        .collect::<Vec<_>>()
        .join(" ")
}

/// JSON form of an implication, with 1-based attribute numbers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImplicationRecord {
    pub premise: Vec<usize>,
    pub conclusion: Vec<usize>,
}

impl ImplicationRecord {
    pub fn from_implication(imp: &Implication, reduced: bool) -> Self {
        let rhs = if reduced {
            imp.reduced_conclusion()
        } else {
            imp.conclusion.clone()
        };
        Self {
            premise: imp.premise.iter().map(|a| a + 1).collect(),
            conclusion: rhs.iter().map(|a| a + 1).collect(),
        }
    }

    pub fn to_implication(&self, n_attributes: usize) -> Result<Implication> {
        let convert = |ids: &[usize]| -> Result<AttributeSet> {
            let mut set = AttributeSet::empty(n_attributes);
            for &id in ids {
                if id == 0 || id > n_attributes {
                    return Err(Error::parse(
                        0,
                        format!("attribute number {id} outside 1..={n_attributes}"),
                    ));
                }
                set.insert(id - 1);
            }
            Ok(set)
        };
        let premise = convert(&self.premise)?;
        let mut conclusion = convert(&self.conclusion)?;
        conclusion.union_with(&premise);
        Ok(Implication::new(premise, conclusion))
    }
}

/// Least model of `theory` containing `z`, by repeated full passes.
pub fn naive_closure(theory: &Theory, z: &AttributeSet) -> AttributeSet {
    let mut d = z.clone();
    loop {
        let mut changed = false;
        for imp in theory.iter() {
            if imp.premise.is_subset(&d) && !imp.conclusion.is_subset(&d) {
                d.union_with(&imp.conclusion);
                changed = true;
            }
        }
        if !changed {
            return d;
        }
    }
}

/// All models of `theory` in lectic order, by checking every subset.
pub fn models_bruteforce(theory: &Theory, limit: usize) -> Result<Vec<AttributeSet>> {
    let n = theory.n_attributes();
    check_limit("model enumeration", n, limit)?;
    Ok(AttributeSet::all_subsets_lectic(n)
        .filter(|m| theory.is_model(m))
        .collect())
}

pub(crate) fn check_limit(what: &'static str, n: usize, limit: usize) -> Result<()> {
    let limit = limit.min(DEFAULT_EXHAUSTIVE_LIMIT);
    if n > limit {
        return Err(Error::LimitExceeded {
            what,
            limit,
            found: n,
        });
    }
    Ok(())
}
