/*!
A compact ordered set of vertex ids.

`VertexSet` is a growable bitset. Iteration is always in increasing order
and the ordering between sets is lexicographic on their sorted members, so
sets can be used directly as deterministic tie-break keys.
*/

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

const BITS: usize = 64;

/// A set of vertex ids backed by a bitset.
///
/// Trailing zero words are always trimmed, so two sets with the same members
/// compare equal and hash identically regardless of how they were built.
///
/// # Examples
///
/// ```
/// use idcode::VertexSet;
///
/// let mut s: VertexSet = [4, 0, 2].into_iter().collect();
/// assert!(s.contains(2));
/// s.remove(2);
/// assert_eq!(s.to_vec(), vec![0, 4]);
/// ```
#[derive(Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "Vec<usize>", into = "Vec<usize>")]
pub struct VertexSet {
    words: Vec<u64>,
}

impl VertexSet {
    /// The empty set.
    pub fn new() -> Self {
        VertexSet { words: Vec::new() }
    }

    /// The set `{0, 1, ..., n-1}`.
    pub fn full(n: usize) -> Self {
        let mut words = vec![u64::MAX; n / BITS];
        if !n.is_multiple_of(BITS) {
            words.push((1u64 << (n % BITS)) - 1);
        }
        VertexSet { words }
    }

    /// The set `{v}`.
    pub fn singleton(v: usize) -> Self {
        let mut s = VertexSet::new();
        s.insert(v);
        s
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    /// Inserts `v`, returning `true` if it was not already present.
    pub fn insert(&mut self, v: usize) -> bool {
        let (w, b) = (v / BITS, v % BITS);
        if w >= self.words.len() {
            self.words.resize(w + 1, 0);
        }
        let fresh = self.words[w] & (1 << b) == 0;
        self.words[w] |= 1 << b;
        fresh
    }

    /// Removes `v`, returning `true` if it was present.
    pub fn remove(&mut self, v: usize) -> bool {
        let (w, b) = (v / BITS, v % BITS);
        if w >= self.words.len() || self.words[w] & (1 << b) == 0 {
            return false;
        }
        self.words[w] &= !(1 << b);
        self.trim();
        true
    }

    pub fn contains(&self, v: usize) -> bool {
        let (w, b) = (v / BITS, v % BITS);
        w < self.words.len() && self.words[w] & (1 << b) != 0
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Smallest member, if any.
    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    /// Largest member, if any.
    pub fn last(&self) -> Option<usize> {
        let last = *self.words.last()?;
        Some((self.words.len() - 1) * BITS + (BITS - 1 - last.leading_zeros() as usize))
    }

    /// Members in increasing order.
    pub fn iter(&self) -> Iter<'_> {
        Iter { words: &self.words, index: 0, current: self.words.first().copied().unwrap_or(0) }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut out = self.clone();
        out.union_with(other);
        out
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        let mut out = self.clone();
        out.intersect_with(other);
        out
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        let mut out = self.clone();
        out.difference_with(other);
        out
    }

    pub fn symmetric_difference(&self, other: &VertexSet) -> VertexSet {
        let len = self.words.len().max(other.words.len());
        let words = (0..len).map(|i| self.word(i) ^ other.word(i)).collect();
        let mut out = VertexSet { words };
        out.trim();
        out
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        if other.words.len() > self.words.len() {
            self.words.resize(other.words.len(), 0);
        }
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &VertexSet) {
        self.words.truncate(other.words.len());
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
        self.trim();
    }

    pub fn difference_with(&mut self, other: &VertexSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
        self.trim();
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        (0..self.words.len()).all(|i| self.words[i] & !other.word(i) == 0)
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    /// Size of the intersection without allocating it.
    pub fn intersection_len(&self, other: &VertexSet) -> usize {
        self.words.iter().zip(&other.words).map(|(a, b)| (a & b).count_ones() as usize).sum()
    }

    /// Raw backing words, least significant vertex first, without trailing
    /// zero words. Equal sets have equal word slices.
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    fn word(&self, i: usize) -> u64 {
        self.words.get(i).copied().unwrap_or(0)
    }
}

impl Ord for VertexSet {
    /// Lexicographic order on the increasing member sequences.
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::new();
        s.extend(iter);
        s
    }
}

impl Extend<usize> for VertexSet {
    fn extend<I: IntoIterator<Item = usize>>(&mut self, iter: I) {
        for v in iter {
            self.insert(v);
        }
    }
}

impl From<&[usize]> for VertexSet {
    fn from(vs: &[usize]) -> Self {
        vs.iter().copied().collect()
    }
}

impl<const N: usize> From<[usize; N]> for VertexSet {
    fn from(vs: [usize; N]) -> Self {
        vs.into_iter().collect()
    }
}

impl From<Vec<usize>> for VertexSet {
    fn from(vs: Vec<usize>) -> Self {
        vs.into_iter().collect()
    }
}

impl From<VertexSet> for Vec<usize> {
    fn from(s: VertexSet) -> Self {
        s.to_vec()
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = usize;
    type IntoIter = Iter<'a>;

    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}

/// Increasing iterator over the members of a [`VertexSet`].
pub struct Iter<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        while self.current == 0 {
            self.index += 1;
            if self.index >= self.words.len() {
                return None;
            }
            self.current = self.words[self.index];
        }
        let bit = self.current.trailing_zeros() as usize;
        self.current &= self.current - 1;
        Some(self.index * BITS + bit)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    #[test]
    fn full_and_bounds() {
        assert_eq!(VertexSet::full(0), VertexSet::new());
        assert_eq!(VertexSet::full(64).len(), 64);
        assert_eq!(VertexSet::full(65).last(), Some(64));
        assert_eq!(VertexSet::new().last(), None);
        assert_eq!(VertexSet::from([3, 70]).first(), Some(3));
    }

    #[test]
    fn removal_trims_so_equality_holds() {
        let mut a = VertexSet::from([1, 200]);
        a.remove(200);
        assert_eq!(a, VertexSet::singleton(1));
        assert_eq!(a.words().len(), 1);
    }

    #[test]
    fn order_is_lexicographic() {
        assert!(VertexSet::from([0, 5]) < VertexSet::from([1]));
        assert!(VertexSet::from([0]) < VertexSet::from([0, 1]));
        assert!(VertexSet::new() < VertexSet::from([0]));
    }

    #[test]
    fn serde_as_sorted_list() {
        #[derive(Serialize, Deserialize)]
        struct Wrap {
            s: VertexSet,
        }
        let text = toml::to_string(&Wrap { s: VertexSet::from([9, 2]) }).unwrap();
        assert_eq!(text.trim(), "s = [2, 9]");
        let back: Wrap = toml::from_str(&text).unwrap();
        assert_eq!(back.s, VertexSet::from([2, 9]));
    }

    fn model(v: &[usize]) -> BTreeSet<usize> {
        v.iter().copied().collect()
    }

    proptest! {
        #[test]
        fn matches_btreeset(a in proptest::collection::vec(0usize..150, 0..40),
                            b in proptest::collection::vec(0usize..150, 0..40)) {
            let (sa, sb) = (VertexSet::from(a.clone()), VertexSet::from(b.clone()));
            let (ma, mb) = (model(&a), model(&b));
            prop_assert_eq!(sa.to_vec(), ma.iter().copied().collect::<Vec<_>>());
            prop_assert_eq!(sa.union(&sb).to_vec(), ma.union(&mb).copied().collect::<Vec<_>>());
            prop_assert_eq!(sa.intersection(&sb).to_vec(), ma.intersection(&mb).copied().collect::<Vec<_>>());
            prop_assert_eq!(sa.difference(&sb).to_vec(), ma.difference(&mb).copied().collect::<Vec<_>>());
            prop_assert_eq!(sa.symmetric_difference(&sb).to_vec(),
                            ma.symmetric_difference(&mb).copied().collect::<Vec<_>>());
            prop_assert_eq!(sa.is_subset(&sb), ma.is_subset(&mb));
            prop_assert_eq!(sa.is_disjoint(&sb), ma.is_disjoint(&mb));
            prop_assert_eq!(sa.intersection_len(&sb), ma.intersection(&mb).count());
            prop_assert_eq!(sa.cmp(&sb), ma.iter().cmp(mb.iter()));
            prop_assert_eq!(sa.last(), ma.iter().next_back().copied());
            prop_assert_eq!(sa.len(), ma.len());
        }
    }
}
