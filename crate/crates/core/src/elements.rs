//! Dense element indices and bitmask subsets of a carrier.

use std::fmt;
use std::ops::{BitAnd, BitOr, Not};

use serde::{Deserialize, Serialize};

/// Largest carrier supported. Subsets are packed into a single `u64`.
pub const MAX_ELEMENTS: usize = 64;

/// Index of an element of a finite carrier.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ElementId(u8);

impl ElementId {
    /// Panics if `index >= MAX_ELEMENTS`.
    #[inline]
    pub fn new(index: usize) -> Self {
        assert!(index < MAX_ELEMENTS, "element index {index} out of range");
        ElementId(index as u8)
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    fn bit(self) -> u64 {
        1u64 << self.0
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// A subset of a carrier of at most [`MAX_ELEMENTS`] elements.
///
/// Ordering is by the numeric value of the bitmask, which is the canonical
/// ordering used for every enumeration in this crate.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElementSet(u64);

impl ElementSet {
    pub const EMPTY: ElementSet = ElementSet(0);

    #[inline]
    pub const fn from_bits(bits: u64) -> Self {
        ElementSet(bits)
    }

    #[inline]
    pub const fn bits(self) -> u64 {
        self.0
    }

    /// The whole carrier `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_ELEMENTS);
        if n == MAX_ELEMENTS {
            ElementSet(u64::MAX)
        } else {
            ElementSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(a: ElementId) -> Self {
        ElementSet(a.bit())
    }

    #[inline]
    pub fn contains(self, a: ElementId) -> bool {
        self.0 & a.bit() != 0
    }

    #[inline]
    pub fn insert(&mut self, a: ElementId) {
        self.0 |= a.bit();
    }

    #[inline]
    pub fn remove(&mut self, a: ElementId) {
        self.0 &= !a.bit();
    }

    #[inline]
    pub fn with(self, a: ElementId) -> Self {
        ElementSet(self.0 | a.bit())
    }

    #[inline]
    pub fn is_subset(self, other: ElementSet) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Elements in increasing index order.
    pub fn iter(self) -> ElementSetIter {
        ElementSetIter(self.0)
    }

    pub fn to_vec(self) -> Vec<ElementId> {
        self.iter().collect()
    }

    /// Smallest element, if any.
    pub fn first(self) -> Option<ElementId> {
        if self.0 == 0 {
            None
        } else {
            Some(ElementId(self.0.trailing_zeros() as u8))
        }
    }
}

impl BitOr for ElementSet {
    type Output = ElementSet;
    fn bitor(self, rhs: ElementSet) -> ElementSet {
        ElementSet(self.0 | rhs.0)
    }
}

impl BitAnd for ElementSet {
    type Output = ElementSet;
    fn bitand(self, rhs: ElementSet) -> ElementSet {
        ElementSet(self.0 & rhs.0)
    }
}

impl Not for ElementSet {
    type Output = ElementSet;
    fn not(self) -> ElementSet {
        ElementSet(!self.0)
    }
}

impl FromIterator<ElementId> for ElementSet {
    fn from_iter<I: IntoIterator<Item = ElementId>>(iter: I) -> Self {
        let mut s = ElementSet::EMPTY;
        for a in iter {
            s.insert(a);
        }
        s
    }
}

impl IntoIterator for ElementSet {
    type Item = ElementId;
    type IntoIter = ElementSetIter;
    fn into_iter(self) -> ElementSetIter {
        self.iter()
    }
}

#[derive(Clone)]
pub struct ElementSetIter(u64);

impl Iterator for ElementSetIter {
    type Item = ElementId;

    fn next(&mut self) -> Option<ElementId> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros();
        self.0 &= self.0 - 1;
        Some(ElementId(i as u8))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for ElementSetIter {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_set_edges() {
        assert_eq!(ElementSet::full(0), ElementSet::EMPTY);
        assert_eq!(ElementSet::full(3).bits(), 0b111);
        assert_eq!(ElementSet::full(64).len(), 64);
    }

    #[test]
    fn iteration_is_increasing() {
        let s: ElementSet = [5, 1, 63, 2].into_iter().map(ElementId::new).collect();
        let v: Vec<usize> = s.iter().map(|e| e.index()).collect();
        assert_eq!(v, vec![1, 2, 5, 63]);
        assert_eq!(s.first(), Some(ElementId::new(1)));
    }

    #[test]
    fn subset_and_ops() {
        let a = ElementSet::from_bits(0b0110);
        let b = ElementSet::from_bits(0b1110);
        assert!(a.is_subset(b));
        assert!(!b.is_subset(a));
        assert_eq!((a | b), b);
        assert_eq!((a & b), a);
        assert!(a.with(ElementId::new(0)).contains(ElementId::new(0)));
    }
}
