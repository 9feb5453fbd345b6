//! Formal contexts and the concept-forming operators.

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;

use crate::bitset::{AttributeSet, ObjectSet};
use crate::error::{Error, Result};

/// Object × attribute incidence table with both row and column views.
///
/// Immutable once built; every constructor keeps the two views in sync.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalContext {
    name: String,
    rows: Vec<AttributeSet>,
    columns: Vec<ObjectSet>,
    object_names: Vec<String>,
    attribute_names: Vec<String>,
}

fn default_names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

impl FormalContext {
    /// Builds a context from object rows, naming objects `x1..` and
    /// attributes `a1..`.
    pub fn from_rows(n_attributes: usize, rows: Vec<AttributeSet>) -> Result<Self> {
        let n_objects = rows.len();
        Self::with_names(
            String::new(),
            rows,
            default_names("x", n_objects),
            default_names("a", n_attributes),
        )
    }

    pub fn with_names(
        name: String,
        rows: Vec<AttributeSet>,
        object_names: Vec<String>,
        attribute_names: Vec<String>,
    ) -> Result<Self> {
        let n_attributes = attribute_names.len();
        if object_names.len() != rows.len() {
            return Err(Error::InvalidParameter(format!(
                "{} object names for {} rows",
                object_names.len(),
                rows.len()
            )));
        }
        if let Some(row) = rows.iter().find(|r| r.capacity() != n_attributes) {
            return Err(Error::CapacityMismatch {
                expected: n_attributes,
                found: row.capacity(),
            });
        }
        let mut columns = vec![ObjectSet::empty(rows.len()); n_attributes];
        for (x, row) in rows.iter().enumerate() {
            for y in row {
                columns[y].insert(x);
            }
        }
        Ok(Self {
            name,
            rows,
            columns,
            object_names,
            attribute_names,
        })
    }

    /// Builds a context from 0-based `(object, attribute)` pairs.
    pub fn from_incidence<I>(n_objects: usize, n_attributes: usize, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut rows = vec![AttributeSet::empty(n_attributes); n_objects];
        for (x, y) in pairs {
            if x >= n_objects || y >= n_attributes {
                return Err(Error::InvalidParameter(format!(
                    "incidence ({x}, {y}) outside {n_objects}x{n_attributes}"
                )));
            }
            rows[x].insert(y);
        }
        Self::from_rows(n_attributes, rows)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    pub fn n_objects(&self) -> usize {
        self.rows.len()
    }

    pub fn n_attributes(&self) -> usize {
        self.attribute_names.len()
    }

    /// `{x}↑` for every object.
    pub fn rows(&self) -> &[AttributeSet] {
        &self.rows
    }

    /// `{y}↓` for every attribute.
    pub fn columns(&self) -> &[ObjectSet] {
        &self.columns
    }

    pub fn object_names(&self) -> &[String] {
        &self.object_names
    }

    pub fn attribute_names(&self) -> &[String] {
        &self.attribute_names
    }

    /// Number of incidences `|I|`.
    pub fn incidence_count(&self) -> usize {
        self.rows.iter().map(AttributeSet::len).sum()
    }

    pub fn has(&self, object: usize, attribute: usize) -> bool {
        self.rows[object].contains(attribute)
    }

    pub fn empty_attributes(&self) -> AttributeSet {
        AttributeSet::empty(self.n_attributes())
    }

    pub fn all_attributes(&self) -> AttributeSet {
        AttributeSet::full(self.n_attributes())
    }

    fn check_attributes(&self, b: &AttributeSet) -> Result<()> {
        if b.capacity() != self.n_attributes() {
            return Err(Error::CapacityMismatch {
                expected: self.n_attributes(),
                found: b.capacity(),
            });
        }
        Ok(())
    }

    /// Attributes shared by every object of `a`.
    pub fn up(&self, a: &ObjectSet) -> Result<AttributeSet> {
        if a.capacity() != self.n_objects() {
            return Err(Error::CapacityMismatch {
                expected: self.n_objects(),
                found: a.capacity(),
            });
        }
        Ok(self.intent_of(a))
    }

    /// Objects having every attribute of `b`.
    pub fn down(&self, b: &AttributeSet) -> Result<ObjectSet> {
        self.check_attributes(b)?;
        Ok(self.extent_of(b))
    }

    /// `b↓↑`, the smallest intent containing `b`.
    pub fn closure_downup(&self, b: &AttributeSet) -> Result<AttributeSet> {
        self.check_attributes(b)?;
        Ok(self.close(b))
    }

    pub(crate) fn extent_of(&self, b: &AttributeSet) -> ObjectSet {
        let mut extent = ObjectSet::full(self.n_objects());
        for y in b {
            extent.intersect_with(&self.columns[y]);
        }
        extent
    }

    pub(crate) fn intent_of(&self, a: &ObjectSet) -> AttributeSet {
        let mut intent = AttributeSet::full(self.n_attributes());
        for x in a {
            intent.intersect_with(&self.rows[x]);
        }
        intent
    }

    /// `b↓↑` without the capacity check.
    pub(crate) fn close(&self, b: &AttributeSet) -> AttributeSet {
        debug_assert_eq!(b.capacity(), self.n_attributes());
        let extent = self.extent_of(b);
        let mut intent = AttributeSet::full(self.n_attributes());
        for x in &extent {
            intent.intersect_with(&self.rows[x]);
            // The intent never drops below `b`.
            if intent == *b {
                break;
            }
        }
        intent
    }

    /// Whether `b` is an intent.
    pub fn is_intent(&self, b: &AttributeSet) -> bool {
        self.close(b) == *b
    }

    /// Context with attributes restricted to `keep`, in ascending order.
    pub fn select_attributes(&self, keep: &[usize]) -> Result<Self> {
        let rows = self
            .rows
            .iter()
            .map(|row| {
                AttributeSet::from_indices(
                    keep.len(),
                    keep.iter()
                        .enumerate()
                        .filter(|(_, &y)| row.contains(y))
                        .map(|(k, _)| k),
                )
            })
            .collect();
        let names = keep
            .iter()
            .map(|&y| self.attribute_names[y].clone())
            .collect();
        Self::with_names(self.name.clone(), rows, self.object_names.clone(), names)
    }
}

/// n×n context where object `x` has attribute `y` iff `x ≠ y`.
///
/// Every subset of attributes is an intent.
pub fn gen_contranominal(n: usize) -> FormalContext {
    let rows = (0..n)
        .map(|x| {
            let mut row = AttributeSet::full(n);
            row.remove(x);
            row
        })
        .collect();
    let mut ctx = FormalContext::from_rows(n, rows).expect("rows match attribute count");
    ctx.set_name(format!("{n}x{n}-{}", n.saturating_sub(1)));
    ctx
}

/// Random context where every object has exactly `d` distinct attributes.
///
/// The generator is xoshiro256** seeded through SplitMix64 from `seed`.
/// Each row is drawn by a partial Fisher-Yates shuffle of `0..ny`, restarted
/// from the identity permutation for every row: for `i` in `0..d`, swap
/// position `i` with `i + (next_u64() mod (ny - i))`. The row is the first
/// `d` entries.
pub fn gen_random(nx: usize, ny: usize, d: usize, seed: u64) -> Result<FormalContext> {
    if d > ny {
        return Err(Error::InvalidParameter(format!(
            "row cardinality {d} exceeds attribute count {ny}"
        )));
    }
    let mut rng = Xoshiro256StarStar::seed_from_u64(seed);
    let mut perm: Vec<usize> = Vec::with_capacity(ny);
    let rows = (0..nx)
        .map(|_| {
            perm.clear();
            perm.extend(0..ny);
            for i in 0..d {
                let span = (ny - i) as u64;
                let j = i + (rng.next_u64() % span) as usize;
                perm.swap(i, j);
            }
            AttributeSet::from_indices(ny, perm[..d].iter().copied())
        })
        .collect();
    let mut ctx = FormalContext::from_rows(ny, rows)?;
    ctx.set_name(format!("{nx}x{ny}-{d}"));
    Ok(ctx)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    /// The running 3×4 example: rows {1,2}, {1,3}, {2,3,4} (1-based).
    pub(crate) fn k1() -> FormalContext {
        FormalContext::from_incidence(
            3,
            4,
            [(0, 0), (0, 1), (1, 0), (1, 2), (2, 1), (2, 2), (2, 3)],
        )
        .unwrap()
    }

    fn attrs(xs: &[usize]) -> AttributeSet {
        AttributeSet::from_indices(4, xs.iter().map(|x| x - 1))
    }

    fn objs(xs: &[usize]) -> ObjectSet {
        ObjectSet::from_indices(3, xs.iter().map(|x| x - 1))
    }

    #[test]
    fn up_on_k1() {
        let ctx = k1();
        assert_eq!(ctx.up(&objs(&[])).unwrap(), attrs(&[1, 2, 3, 4]));
        assert_eq!(ctx.up(&objs(&[1, 2])).unwrap(), attrs(&[1]));
        assert_eq!(ctx.up(&objs(&[3])).unwrap(), attrs(&[2, 3, 4]));
    }

    #[test]
    fn down_on_k1() {
        let ctx = k1();
        assert_eq!(ctx.down(&attrs(&[])).unwrap(), objs(&[1, 2, 3]));
        assert_eq!(ctx.down(&attrs(&[1])).unwrap(), objs(&[1, 2]));
        assert_eq!(ctx.down(&attrs(&[1, 4])).unwrap(), objs(&[]));
    }

    #[test]
    fn closure_on_k1() {
        let ctx = k1();
        assert_eq!(ctx.closure_downup(&attrs(&[4])).unwrap(), attrs(&[2, 3, 4]));
        assert_eq!(
            ctx.closure_downup(&attrs(&[1, 2, 3, 4])).unwrap(),
            attrs(&[1, 2, 3, 4])
        );
        assert_eq!(ctx.closure_downup(&attrs(&[1])).unwrap(), attrs(&[1]));
    }

    #[test]
    fn capacity_mismatch_is_reported() {
        let ctx = k1();
        assert!(matches!(
            ctx.up(&ObjectSet::empty(4)),
            Err(Error::CapacityMismatch {
                expected: 3,
                found: 4
            })
        ));
        assert!(ctx.down(&AttributeSet::empty(5)).is_err());
        assert!(ctx.closure_downup(&AttributeSet::empty(3)).is_err());
    }

    #[test]
    fn rows_and_columns_agree() {
        let ctx = gen_random(40, 17, 6, 3).unwrap();
        for x in 0..ctx.n_objects() {
            for y in 0..ctx.n_attributes() {
                assert_eq!(ctx.rows()[x].contains(y), ctx.columns()[y].contains(x));
            }
        }
    }

    #[test]
    fn contranominal_counts() {
        assert_eq!(gen_contranominal(18).incidence_count(), 306);
        let one = gen_contranominal(1);
        assert_eq!((one.n_objects(), one.incidence_count()), (1, 0));
    }

    #[test]
    fn random_rows_have_fixed_cardinality() {
        let ctx = gen_random(100, 30, 4, 11).unwrap();
        assert!(ctx.rows().iter().all(|r| r.len() == 4));
        assert_eq!(ctx.incidence_count(), 400);
        assert_eq!(ctx.name(), "100x30-4");

        let full = gen_random(5, 5, 5, 1).unwrap();
        assert_eq!(full.incidence_count(), 25);

        assert_eq!(
            gen_random(20, 10, 3, 9).unwrap(),
            gen_random(20, 10, 3, 9).unwrap()
        );
        assert_ne!(
            gen_random(20, 10, 3, 9).unwrap(),
            gen_random(20, 10, 3, 10).unwrap()
        );
        assert!(gen_random(2, 3, 4, 0).is_err());
    }

    #[test]
    fn select_attributes_keeps_names() {
        let ctx = k1().select_attributes(&[1, 3]).unwrap();
        assert_eq!(ctx.attribute_names(), ["a2", "a4"]);
        assert_eq!(ctx.rows()[2], AttributeSet::from_indices(2, [0, 1]));
    }
}
