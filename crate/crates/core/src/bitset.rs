//! Packed subsets of a ground set indexed `0..universe`.

use std::fmt;

const WORD: usize = 64;

/// A subset of `{0, .., universe-1}` stored as packed 64-bit words.
///
/// Bits above `universe` are always zero, so derived equality, hashing and
/// ordering are well defined.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementSet {
    universe: usize,
    words: Vec<u64>,
}

impl ElementSet {
    pub fn empty(universe: usize) -> Self {
        ElementSet { universe, words: vec![0; universe.div_ceil(WORD)] }
    }

    pub fn full(universe: usize) -> Self {
        let mut s = Self::empty(universe);
        for w in s.words.iter_mut() {
            *w = !0;
        }
        s.trim();
        s
    }

    pub fn singleton(universe: usize, i: usize) -> Self {
        let mut s = Self::empty(universe);
        s.insert(i);
        s
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(universe: usize, it: I) -> Self {
        let mut s = Self::empty(universe);
        for i in it {
            s.insert(i);
        }
        s
    }

    fn trim(&mut self) {
        let rem = self.universe % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    #[inline]
    pub fn universe(&self) -> usize {
        self.universe
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        i < self.universe && self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        assert!(i < self.universe, "index {i} outside universe {}", self.universe);
        self.words[i / WORD] |= 1 << (i % WORD);
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        if i < self.universe {
            self.words[i / WORD] &= !(1 << (i % WORD));
        }
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.universe
    }

    pub fn complement(&self) -> Self {
        let mut s = ElementSet { universe: self.universe, words: self.words.iter().map(|w| !w).collect() };
        s.trim();
        s
    }

    #[inline]
    pub fn is_subset(&self, other: &ElementSet) -> bool {
        debug_assert_eq!(self.universe, other.universe);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    #[inline]
    pub fn is_disjoint(&self, other: &ElementSet) -> bool {
        debug_assert_eq!(self.universe, other.universe);
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    /// `self^c ⊆ other`, i.e. `self ∪ other` is everything.
    #[inline]
    pub fn complement_is_subset(&self, other: &ElementSet) -> bool {
        let n = self.words.len();
        self.words.iter().zip(&other.words).enumerate().all(|(k, (a, b))| {
            let mask = if k + 1 == n && !self.universe.is_multiple_of(WORD) {
                (1u64 << (self.universe % WORD)) - 1
            } else {
                !0
            };
            (!a & !b) & mask == 0
        })
    }

    pub fn union(&self, other: &ElementSet) -> Self {
        ElementSet { universe: self.universe, words: self.words.iter().zip(&other.words).map(|(a, b)| a | b).collect() }
    }

    pub fn intersection(&self, other: &ElementSet) -> Self {
        ElementSet { universe: self.universe, words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect() }
    }

    pub fn difference(&self, other: &ElementSet) -> Self {
        ElementSet {
            universe: self.universe,
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & !b).collect(),
        }
    }

    pub fn union_with(&mut self, other: &ElementSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(k * WORD + b)
                }
            })
        })
    }

    /// Re-embed into a larger universe, keeping indices.
    pub fn widen(&self, universe: usize) -> Self {
        assert!(universe >= self.universe);
        let mut s = Self::empty(universe);
        s.words[..self.words.len()].copy_from_slice(&self.words);
        s
    }

    /// Re-embed into a smaller universe; members beyond it must be absent.
    pub fn narrow(&self, universe: usize) -> Self {
        assert!(universe <= self.universe);
        let mut s = Self::empty(universe);
        let k = s.words.len();
        s.words.copy_from_slice(&self.words[..k]);
        s.trim();
        debug_assert!(self.iter().all(|i| i < universe));
        s
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn complement_respects_universe() {
        let s = ElementSet::from_indices(70, [0, 5, 69]);
        let c = s.complement();
        assert_eq!(c.len(), 67);
        assert!(!c.contains(69));
        assert_eq!(c.complement(), s);
        assert!(ElementSet::full(70).is_full());
    }

    #[test]
    fn widen_and_narrow() {
        let s = ElementSet::from_indices(10, [1, 9]);
        let w = s.widen(130);
        assert_eq!(w.iter().collect::<Vec<_>>(), vec![1, 9]);
        assert_eq!(w.narrow(10), s);
    }

    proptest! {
        #[test]
        fn set_algebra_matches_naive(a in proptest::collection::btree_set(0usize..100, 0..40),
                                     b in proptest::collection::btree_set(0usize..100, 0..40)) {
            let sa = ElementSet::from_indices(100, a.iter().copied());
            let sb = ElementSet::from_indices(100, b.iter().copied());
            prop_assert_eq!(sa.is_subset(&sb), a.is_subset(&b));
            prop_assert_eq!(sa.is_disjoint(&sb), a.is_disjoint(&b));
            let all: std::collections::BTreeSet<usize> = a.union(&b).copied().collect();
            prop_assert_eq!(sa.complement_is_subset(&sb), all.len() == 100);
            prop_assert_eq!(sa.union(&sb).iter().collect::<Vec<_>>(), all.into_iter().collect::<Vec<_>>());
            prop_assert_eq!(sa.intersection(&sb).len(), a.intersection(&b).count());
        }
    }
}
