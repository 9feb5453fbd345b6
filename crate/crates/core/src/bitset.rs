//! Fixed-capacity bit vectors used for attribute and object sets.
//!
//! A [`BitSet`] is tagged with a zero-sized marker so that attribute sets and
//! object sets cannot be mixed up by accident. Both share one implementation.

use std::cmp::Ordering;
use std::fmt;
use std::marker::PhantomData;

use smallvec::SmallVec;

const WORD_BITS: usize = 64;

/// Marker for sets of attribute indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AttributeKind {}

/// Marker for sets of object indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ObjectKind {}

/// Subset of `{0, .., capacity - 1}` stored as a bit vector.
///
/// Contexts up to 256 attributes keep their sets inline.
pub struct BitSet<K> {
    capacity: usize,
    words: SmallVec<[u64; 4]>,
    _kind: PhantomData<K>,
}

/// Set of attribute indices (0-based).
pub type AttributeSet = BitSet<AttributeKind>;
/// Set of object indices (0-based).
pub type ObjectSet = BitSet<ObjectKind>;

#[inline]
fn word_count(capacity: usize) -> usize {
    capacity.div_ceil(WORD_BITS)
}

impl<K> BitSet<K> {
    pub fn empty(capacity: usize) -> Self {
        Self {
            capacity,
            words: SmallVec::from_elem(0, word_count(capacity)),
            _kind: PhantomData,
        }
    }

    pub fn full(capacity: usize) -> Self {
        let mut set = Self::empty(capacity);
        for w in set.words.iter_mut() {
            *w = u64::MAX;
        }
        set.trim();
        set
    }

    /// Builds a set from indices.
    ///
    /// # Panics
    ///
    /// Panics if an index is not below `capacity`.
    pub fn from_indices<I: IntoIterator<Item = usize>>(capacity: usize, indices: I) -> Self {
        let mut set = Self::empty(capacity);
        for i in indices {
            set.insert(i);
        }
        set
    }

    /// Set containing `{0, .., end - 1}`.
    pub fn prefix_range(capacity: usize, end: usize) -> Self {
        let mut set = Self::full(capacity);
        set.truncate_to(end);
        set
    }

    fn trim(&mut self) {
        let rem = self.capacity % WORD_BITS;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    #[inline]
    pub fn capacity(&self) -> usize {
        self.capacity
    }

    #[inline]
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        i < self.capacity && self.words[i / WORD_BITS] >> (i % WORD_BITS) & 1 == 1
    }

    /// Inserts `i`, returning whether it was newly added.
    #[inline]
    pub fn insert(&mut self, i: usize) -> bool {
        assert!(
            i < self.capacity,
            "index {i} out of range for capacity {}",
            self.capacity
        );
        let w = &mut self.words[i / WORD_BITS];
        let bit = 1u64 << (i % WORD_BITS);
        let fresh = *w & bit == 0;
        *w |= bit;
        fresh
    }

    #[inline]
    pub fn remove(&mut self, i: usize) -> bool {
        if i >= self.capacity {
            return false;
        }
        let w = &mut self.words[i / WORD_BITS];
        let bit = 1u64 << (i % WORD_BITS);
        let present = *w & bit != 0;
        *w &= !bit;
        present
    }

    pub fn clear(&mut self) {
        for w in self.words.iter_mut() {
            *w = 0;
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.capacity
    }

    /// Smallest member, if any.
    #[inline]
    pub fn first(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(k, w)| k * WORD_BITS + w.trailing_zeros() as usize)
    }

    pub fn last(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .rev()
            .find(|(_, &w)| w != 0)
            .map(|(k, w)| k * WORD_BITS + (WORD_BITS - 1 - w.leading_zeros() as usize))
    }

    /// Removes and returns the smallest member.
    #[inline]
    pub fn pop_min(&mut self) -> Option<usize> {
        for (k, w) in self.words.iter_mut().enumerate() {
            if *w != 0 {
                let bit = w.trailing_zeros() as usize;
                *w &= *w - 1;
                return Some(k * WORD_BITS + bit);
            }
        }
        None
    }

    pub fn iter(&self) -> Iter<'_> {
        Iter {
            words: &self.words,
            index: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    #[inline]
    fn check_capacity(&self, other: &Self) {
        debug_assert_eq!(
            self.capacity, other.capacity,
            "set operation on sets of different capacity"
        );
    }

    #[inline]
    pub fn union_with(&mut self, other: &Self) {
        self.check_capacity(other);
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a |= b;
        }
    }

    #[inline]
    pub fn intersect_with(&mut self, other: &Self) {
        self.check_capacity(other);
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a &= b;
        }
    }

    #[inline]
    pub fn difference_with(&mut self, other: &Self) {
        self.check_capacity(other);
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a &= !b;
        }
    }

    /// `self ∪= other`, also inserting the newly added members into `added`.
    #[inline]
    pub fn union_tracking(&mut self, other: &Self, added: &mut Self) {
        self.check_capacity(other);
        self.check_capacity(added);
        for ((a, b), t) in self
            .words
            .iter_mut()
            .zip(other.words.iter())
            .zip(added.words.iter_mut())
        {
            let fresh = b & !*a;
            *a |= fresh;
            *t |= fresh;
        }
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.union_with(other);
        out
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.intersect_with(other);
        out
    }

    pub fn difference(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.difference_with(other);
        out
    }

    /// Number of members of `self` that are not in `other`.
    #[inline]
    pub fn difference_len(&self, other: &Self) -> usize {
        self.check_capacity(other);
        self.words
            .iter()
            .zip(other.words.iter())
            .map(|(a, b)| (a & !b).count_ones() as usize)
            .sum()
    }

    /// Smallest member of `self` that is not in `other`.
    #[inline]
    pub fn min_difference(&self, other: &Self) -> Option<usize> {
        self.check_capacity(other);
        self.words
            .iter()
            .zip(other.words.iter())
            .enumerate()
            .find_map(|(k, (a, b))| {
                let w = a & !b;
                (w != 0).then(|| k * WORD_BITS + w.trailing_zeros() as usize)
            })
    }

    #[inline]
    pub fn is_subset(&self, other: &Self) -> bool {
        self.check_capacity(other);
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & !b == 0)
    }

    pub fn is_proper_subset(&self, other: &Self) -> bool {
        self.is_subset(other) && self != other
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.check_capacity(other);
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & b == 0)
    }

    /// Drops every member `>= end`, keeping `self ∩ {0, .., end - 1}`.
    pub fn truncate_to(&mut self, end: usize) {
        if end >= self.capacity {
            return;
        }
        let k = end / WORD_BITS;
        let rem = end % WORD_BITS;
        self.words[k] &= (1u64 << rem) - 1;
        for w in self.words[k + 1..].iter_mut() {
            *w = 0;
        }
    }

    /// `self ∩ {0, .., end - 1}`.
    pub fn prefix(&self, end: usize) -> Self {
        let mut out = self.clone();
        out.truncate_to(end);
        out
    }

    /// Whether `self` and `other` agree on `{0, .., end - 1}`.
    #[inline]
    pub fn prefix_eq(&self, other: &Self, end: usize) -> bool {
        self.check_capacity(other);
        let end = end.min(self.capacity);
        let full = end / WORD_BITS;
        if self.words[..full] != other.words[..full] {
            return false;
        }
        let rem = end % WORD_BITS;
        if rem == 0 {
            return true;
        }
        let mask = (1u64 << rem) - 1;
        (self.words[full] ^ other.words[full]) & mask == 0
    }

    /// Compares characteristic vectors read as binary numbers with index 0
    /// as the most significant digit.
    pub fn lectic_cmp(&self, other: &Self) -> Ordering {
        self.check_capacity(other);
        for (a, b) in self.words.iter().zip(other.words.iter()) {
            let diff = a ^ b;
            if diff != 0 {
                let first = diff & diff.wrapping_neg();
                return if b & first != 0 {
                    Ordering::Less
                } else {
                    Ordering::Greater
                };
            }
        }
        Ordering::Equal
    }

    /// Every subset of `{0, .., capacity - 1}` in ascending lectic order.
    ///
    /// # Panics
    ///
    /// Panics if `capacity >= 64`.
    pub fn all_subsets_lectic(capacity: usize) -> impl Iterator<Item = Self> {
        assert!(capacity < 64, "cannot enumerate 2^{capacity} subsets");
        (0u64..1 << capacity).map(move |code| {
            // Attribute 0 is the most significant digit of the code.
            let mut set = Self::empty(capacity);
            for i in 0..capacity {
                if code >> (capacity - 1 - i) & 1 == 1 {
                    set.insert(i);
                }
            }
            set
        })
    }
}

impl<K> Clone for BitSet<K> {
    fn clone(&self) -> Self {
        Self {
            capacity: self.capacity,
            words: self.words.clone(),
            _kind: PhantomData,
        }
    }

    fn clone_from(&mut self, source: &Self) {
        self.capacity = source.capacity;
        self.words.clear();
        self.words.extend_from_slice(&source.words);
    }
}

impl<K> PartialEq for BitSet<K> {
    fn eq(&self, other: &Self) -> bool {
        self.capacity == other.capacity && self.words == other.words
    }
}

impl<K> Eq for BitSet<K> {}

impl<K> std::hash::Hash for BitSet<K> {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.capacity.hash(state);
        self.words.hash(state);
    }
}

/// Ordered lectically so that sorted collections follow enumeration order.
impl<K> PartialOrd for BitSet<K> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<K> Ord for BitSet<K> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.capacity
            .cmp(&other.capacity)
            .then_with(|| self.lectic_cmp(other))
    }
}

/// Prints 1-based members, e.g. `{1, 3}`.
impl<K> fmt::Debug for BitSet<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", i + 1)?;
        }
        f.write_str("}")
    }
}

impl<'a, K> IntoIterator for &'a BitSet<K> {
    type Item = usize;
    type IntoIter = Iter<'a>;

    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}

/// Ascending iterator over members.
pub struct Iter<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.index * WORD_BITS + bit);
            }
            self.index += 1;
            self.current = *self.words.get(self.index)?;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(cap: usize, xs: &[usize]) -> AttributeSet {
        AttributeSet::from_indices(cap, xs.iter().copied())
    }

    #[test]
    fn basic_membership() {
        let mut s = AttributeSet::empty(130);
        assert!(s.is_empty());
        assert!(s.insert(0));
        assert!(s.insert(64));
        assert!(s.insert(129));
        assert!(!s.insert(64));
        assert_eq!(s.len(), 3);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 64, 129]);
        assert_eq!(s.first(), Some(0));
        assert_eq!(s.last(), Some(129));
        assert!(s.remove(0));
        assert_eq!(s.pop_min(), Some(64));
        assert_eq!(s.pop_min(), Some(129));
        assert_eq!(s.pop_min(), None);
    }

    #[test]
    fn full_respects_capacity() {
        for cap in [0, 1, 63, 64, 65, 200] {
            let s = AttributeSet::full(cap);
            assert_eq!(s.len(), cap);
            assert!(s.is_full());
        }
    }

    #[test]
    fn prefix_operations() {
        let s = set(100, &[1, 5, 70, 99]);
        assert_eq!(s.prefix(6), set(100, &[1, 5]));
        assert_eq!(s.prefix(0), AttributeSet::empty(100));
        assert_eq!(s.prefix(100), s);
        let t = set(100, &[1, 5, 71]);
        assert!(s.prefix_eq(&t, 70));
        assert!(!s.prefix_eq(&t, 71));
        assert_eq!(AttributeSet::prefix_range(10, 3), set(10, &[0, 1, 2]));
    }

    #[test]
    fn lectic_order_small() {
        // ∅ < {4} < {3} < {3,4} < {2}, written 0-based.
        let seq = [
            set(4, &[]),
            set(4, &[3]),
            set(4, &[2]),
            set(4, &[2, 3]),
            set(4, &[1]),
        ];
        for w in seq.windows(2) {
            assert_eq!(w[0].lectic_cmp(&w[1]), Ordering::Less);
            assert_eq!(w[1].lectic_cmp(&w[0]), Ordering::Greater);
        }
    }

    #[test]
    fn difference_helpers() {
        let a = set(70, &[1, 3, 66]);
        let b = set(70, &[3]);
        assert_eq!(a.difference_len(&b), 2);
        assert_eq!(a.min_difference(&b), Some(1));
        assert_eq!(b.min_difference(&a), None);
        assert!(b.is_subset(&a));
        assert!(b.is_proper_subset(&a));
        assert!(!a.is_subset(&b));
    }

    #[test]
    fn subsets_are_lectic() {
        let all: Vec<_> = AttributeSet::all_subsets_lectic(4).collect();
        assert_eq!(all.len(), 16);
        assert_eq!(all[1], set(4, &[3]));
        assert_eq!(all[15], AttributeSet::full(4));
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(AttributeSet::all_subsets_lectic(0).count(), 1);
    }

    #[test]
    fn debug_is_one_based() {
        assert_eq!(format!("{:?}", set(4, &[0, 2])), "{1, 3}");
    }
}
