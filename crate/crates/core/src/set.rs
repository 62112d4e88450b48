//! Fixed-width subsets of a finite carrier.

use core::cmp::Ordering;
use core::fmt;

use alloc::vec::Vec;
use smallvec::SmallVec;

type Words = SmallVec<[u64; 1]>;

/// A subset of the carrier `0..universe`, stored as a bit mask.
///
/// Every set remembers the size of the carrier it was built for; operations that
/// combine two sets require equal universes.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElementSet {
    universe: usize,
    words: Words,
}

#[inline]
fn word_count(universe: usize) -> usize {
    universe.div_ceil(64)
}

impl ElementSet {
    pub fn empty(universe: usize) -> Self {
        let mut words = Words::new();
        words.resize(word_count(universe), 0);
        ElementSet { universe, words }
    }

    pub fn full(universe: usize) -> Self {
        let mut set = Self::empty(universe);
        for (i, w) in set.words.iter_mut().enumerate() {
            let lo = i * 64;
            let hi = (lo + 64).min(universe);
            *w = if hi - lo == 64 { u64::MAX } else { (1u64 << (hi - lo)) - 1 };
        }
        set
    }

    pub fn singleton(universe: usize, element: usize) -> Self {
        let mut set = Self::empty(universe);
        set.insert(element);
        set
    }

    /// Builds a set from indices; panics if an index is outside the universe.
    pub fn from_indices<I: IntoIterator<Item = usize>>(universe: usize, indices: I) -> Self {
        let mut set = Self::empty(universe);
        for i in indices {
            set.insert(i);
        }
        set
    }

    #[inline]
    pub fn universe(&self) -> usize {
        self.universe
    }

    #[inline]
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn contains(&self, element: usize) -> bool {
        element < self.universe && (self.words[element / 64] >> (element % 64)) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, element: usize) -> bool {
        assert!(element < self.universe, "element {element} outside carrier of size {}", self.universe);
        let w = &mut self.words[element / 64];
        let bit = 1u64 << (element % 64);
        let fresh = *w & bit == 0;
        *w |= bit;
        fresh
    }

    #[inline]
    pub fn remove(&mut self, element: usize) -> bool {
        if element >= self.universe {
            return false;
        }
        let w = &mut self.words[element / 64];
        let bit = 1u64 << (element % 64);
        let present = *w & bit != 0;
        *w &= !bit;
        present
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.universe
    }

    /// Smallest member, if any.
    pub fn first(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, &w)| i * 64 + w.trailing_zeros() as usize)
    }

    pub fn iter(&self) -> Iter<'_> {
        Iter { words: &self.words, index: 0, current: self.words.first().copied().unwrap_or(0) }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    #[inline]
    fn check_universe(&self, other: &Self) {
        debug_assert_eq!(self.universe, other.universe, "element sets over different carriers");
    }

    #[inline]
    pub fn union_with(&mut self, other: &Self) {
        self.check_universe(other);
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a |= *b;
        }
    }

    #[inline]
    pub fn intersect_with(&mut self, other: &Self) {
        self.check_universe(other);
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a &= *b;
        }
    }

    #[inline]
    pub fn difference_with(&mut self, other: &Self) {
        self.check_universe(other);
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a &= !*b;
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

    /// Complement within the carrier.
    pub fn complement(&self) -> Self {
        Self::full(self.universe).difference(self)
    }

    #[inline]
    pub fn is_subset(&self, other: &Self) -> bool {
        self.check_universe(other);
        self.words.iter().zip(other.words.iter()).all(|(a, b)| a & !b == 0)
    }

    #[inline]
    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.check_universe(other);
        self.words.iter().zip(other.words.iter()).all(|(a, b)| a & b == 0)
    }

    #[inline]
    pub fn intersects(&self, other: &Self) -> bool {
        !self.is_disjoint(other)
    }

    /// Image of the set under an index map into a carrier of size `target`.
    pub fn map(&self, target: usize, f: impl Fn(usize) -> usize) -> Self {
        let mut out = Self::empty(target);
        for i in self.iter() {
            out.insert(f(i));
        }
        out
    }
}

impl Ord for ElementSet {
    /// Canonical order: carrier size, then cardinality, then mask value.
    fn cmp(&self, other: &Self) -> Ordering {
        self.universe
            .cmp(&other.universe)
            .then_with(|| self.len().cmp(&other.len()))
            .then_with(|| self.words.iter().rev().cmp(other.words.iter().rev()))
    }
}

impl PartialOrd for ElementSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str("}")
    }
}

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
                return Some(self.index * 64 + bit);
            }
            self.index += 1;
            if self.index >= self.words.len() {
                return None;
            }
            self.current = self.words[self.index];
        }
    }
}

impl<'a> IntoIterator for &'a ElementSet {
    type Item = usize;
    type IntoIter = Iter<'a>;

    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn full_handles_word_boundaries() {
        for m in [1, 63, 64, 65, 128, 130] {
            let s = ElementSet::full(m);
            assert_eq!(s.len(), m);
            assert!(s.contains(m - 1));
            assert!(!s.contains(m));
        }
    }

    #[test]
    fn iteration_is_ascending() {
        let s = ElementSet::from_indices(130, [129, 3, 64, 0]);
        assert_eq!(s.to_vec(), vec![0, 3, 64, 129]);
        assert_eq!(s.first(), Some(0));
        assert_eq!(ElementSet::empty(5).first(), None);
    }

    #[test]
    fn canonical_order_is_popcount_then_mask() {
        let a = ElementSet::from_indices(8, [7]);
        let b = ElementSet::from_indices(8, [0, 1]);
        let c = ElementSet::from_indices(8, [0, 2]);
        assert!(a < b);
        assert!(b < c);
    }

    #[test]
    fn subset_and_difference() {
        let p = ElementSet::from_indices(16, [0, 4, 8, 12]);
        let ip = ElementSet::from_indices(16, [0, 8]);
        assert!(ip.is_subset(&p));
        assert_eq!(p.difference(&ip).to_vec(), vec![4, 12]);
        assert!(p.difference(&ip).is_disjoint(&ip));
    }
}
