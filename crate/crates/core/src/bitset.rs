//! Fixed-capacity bit sets over element (or lattice node) indices.
//!
//! Every submodule is stored as an [`ElemSet`] over the parent module's
//! element enumeration, and the lattice keeps its order relation as one
//! `ElemSet` per node over node indices. Equality and hashing are on the raw
//! words, so two sets with the same members are the same key.

use std::cmp::Ordering;
use std::fmt;

const WORD: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElemSet {
    words: Vec<u64>,
    capacity: usize,
}

impl ElemSet {
    pub fn new(capacity: usize) -> Self {
        ElemSet {
            words: vec![0; capacity.div_ceil(WORD)],
            capacity,
        }
    }

    pub fn full(capacity: usize) -> Self {
        let mut s = Self::new(capacity);
        for w in s.words.iter_mut() {
            *w = !0;
        }
        s.trim();
        s
    }

    pub fn from_indices(capacity: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::new(capacity);
        for i in indices {
            s.insert(i);
        }
        s
    }

    fn trim(&mut self) {
        let rem = self.capacity % WORD;
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
    pub fn contains(&self, i: usize) -> bool {
        debug_assert!(i < self.capacity);
        self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    /// Inserts `i`, returning `true` if it was not already present.
    #[inline]
    pub fn insert(&mut self, i: usize) -> bool {
        debug_assert!(i < self.capacity);
        let w = &mut self.words[i / WORD];
        let mask = 1u64 << (i % WORD);
        let fresh = *w & mask == 0;
        *w |= mask;
        fresh
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        self.words[i / WORD] &= !(1u64 << (i % WORD));
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_subset(&self, other: &ElemSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &ElemSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn union_with(&mut self, other: &ElemSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &ElemSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn difference_with(&mut self, other: &ElemSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn intersection(&self, other: &ElemSet) -> ElemSet {
        let mut s = self.clone();
        s.intersect_with(other);
        s
    }

    pub fn union(&self, other: &ElemSet) -> ElemSet {
        let mut s = self.clone();
        s.union_with(other);
        s
    }

    /// Size of the intersection without allocating it.
    pub fn intersection_len(&self, other: &ElemSet) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// Whether `self ∩ b ∩ c` has a member other than `skip`.
    #[inline]
    pub fn meets3_except(&self, b: &ElemSet, c: &ElemSet, skip: usize) -> bool {
        let (sw, sb) = (skip / WORD, 1u64 << (skip % WORD));
        for (i, ((x, y), z)) in self.words.iter().zip(&b.words).zip(&c.words).enumerate() {
            let mut w = x & y & z;
            if i == sw {
                w &= !sb;
            }
            if w != 0 {
                return true;
            }
        }
        false
    }

    pub fn iter(&self) -> Iter<'_> {
        Iter {
            words: &self.words,
            idx: 0,
            cur: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Lexicographic order on the ascending member lists.
    ///
    /// `{0, 1, 5}` precedes `{0, 2}`, and a proper prefix precedes its
    /// extensions. Used for deterministic tie-breaking in witness searches.
    pub fn lex_cmp(&self, other: &ElemSet) -> Ordering {
        let mut a = self.iter();
        let mut b = other.iter();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some(x), Some(y)) if x != y => return x.cmp(&y),
                _ => {}
            }
        }
    }
}

impl fmt::Debug for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct Iter<'a> {
    words: &'a [u64],
    idx: usize,
    cur: u64,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        while self.cur == 0 {
            self.idx += 1;
            if self.idx >= self.words.len() {
                return None;
            }
            self.cur = self.words[self.idx];
        }
        let bit = self.cur.trailing_zeros() as usize;
        self.cur &= self.cur - 1;
        Some(self.idx * WORD + bit)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn full_respects_capacity() {
        let s = ElemSet::full(70);
        assert_eq!(s.len(), 70);
        assert_eq!(s.iter().last(), Some(69));
        assert!(ElemSet::full(0).is_empty());
    }

    #[test]
    fn lex_order_prefix_and_divergence() {
        let a = ElemSet::from_indices(10, [0, 1, 5]);
        let b = ElemSet::from_indices(10, [0, 2]);
        let c = ElemSet::from_indices(10, [0, 1]);
        assert_eq!(a.lex_cmp(&b), Ordering::Less);
        assert_eq!(c.lex_cmp(&a), Ordering::Less);
        assert_eq!(a.lex_cmp(&a), Ordering::Equal);
    }

    proptest! {
        #[test]
        fn set_ops_match_btreeset(xs in proptest::collection::btree_set(0usize..150, 0..40),
                                  ys in proptest::collection::btree_set(0usize..150, 0..40)) {
            let a = ElemSet::from_indices(150, xs.iter().copied());
            let b = ElemSet::from_indices(150, ys.iter().copied());
            let inter: Vec<usize> = xs.intersection(&ys).copied().collect();
            let uni: Vec<usize> = xs.union(&ys).copied().collect();
            prop_assert_eq!(a.intersection(&b).to_vec(), inter.clone());
            prop_assert_eq!(a.union(&b).to_vec(), uni);
            prop_assert_eq!(a.intersection_len(&b), inter.len());
            prop_assert_eq!(a.is_subset(&b), xs.is_subset(&ys));
            prop_assert_eq!(a.is_disjoint(&b), xs.is_disjoint(&ys));
            let av: Vec<usize> = xs.iter().copied().collect();
            let bv: Vec<usize> = ys.iter().copied().collect();
            prop_assert_eq!(a.lex_cmp(&b), av.cmp(&bv));
        }
    }
}
