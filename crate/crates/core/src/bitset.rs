//! Fixed-width bitsets over element indices.
//!
//! Every set in a lattice shares the same width (the number of vertices or
//! facets of the polytope), so binary operations assume equal widths.

use std::cmp::Ordering;
use std::fmt;

const WORD: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitSet {
    width: usize,
    words: Vec<u64>,
}

impl BitSet {
    pub fn empty(width: usize) -> Self {
        BitSet {
            width,
            words: vec![0; width.div_ceil(WORD)],
        }
    }

    pub fn full(width: usize) -> Self {
        let mut set = BitSet {
            width,
            words: vec![!0; width.div_ceil(WORD)],
        };
        set.clear_tail();
        set
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(width: usize, indices: I) -> Self {
        let mut set = BitSet::empty(width);
        for i in indices {
            set.insert(i);
        }
        set
    }

    fn clear_tail(&mut self) {
        let rem = self.width % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.width
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        assert!(i < self.width, "bit {i} out of range for width {}", self.width);
        self.words[i / WORD] |= 1 << (i % WORD);
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        assert!(i < self.width, "bit {i} out of range for width {}", self.width);
        self.words[i / WORD] &= !(1 << (i % WORD));
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        i < self.width && self.words[i / WORD] & (1 << (i % WORD)) != 0
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.width
    }

    pub fn is_subset(&self, other: &BitSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &BitSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn intersect_with(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn union_with(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn difference_with(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn intersection(&self, other: &BitSet) -> BitSet {
        let mut out = self.clone();
        out.intersect_with(other);
        out
    }

    pub fn union(&self, other: &BitSet) -> BitSet {
        let mut out = self.clone();
        out.union_with(other);
        out
    }

    pub fn complement(&self) -> BitSet {
        let mut out = BitSet {
            width: self.width,
            words: self.words.iter().map(|w| !w).collect(),
        };
        out.clear_tail();
        out
    }

    /// Size of the intersection without allocating.
    pub fn intersection_len(&self, other: &BitSet) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn iter(&self) -> Ones<'_> {
        Ones {
            words: &self.words,
            index: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Copy of this set re-embedded at a new width with every index shifted by `offset`.
    pub fn shifted(&self, width: usize, offset: usize) -> BitSet {
        BitSet::from_indices(width, self.iter().map(|i| i + offset))
    }
}

/// Orders sets by their sorted index lists, lexicographically.
impl Ord for BitSet {
    fn cmp(&self, other: &Self) -> Ordering {
        let mut a = self.iter();
        let mut b = other.iter();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return self.width.cmp(&other.width),
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some(x), Some(y)) if x != y => return x.cmp(&y),
                _ => {}
            }
        }
    }
}

impl PartialOrd for BitSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for BitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct Ones<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl Iterator for Ones<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.index * WORD + bit);
            }
            self.index += 1;
            if self.index >= self.words.len() {
                return None;
            }
            self.current = self.words[self.index];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_respects_width() {
        let s = BitSet::full(70);
        assert_eq!(s.len(), 70);
        assert!(s.contains(69));
        assert!(!s.contains(70));
        assert_eq!(s.complement().len(), 0);
    }

    #[test]
    fn set_algebra() {
        let a = BitSet::from_indices(130, [0, 5, 64, 129]);
        let b = BitSet::from_indices(130, [5, 64, 100]);
        assert_eq!(a.intersection(&b).to_vec(), vec![5, 64]);
        assert_eq!(a.union(&b).len(), 5);
        assert_eq!(a.intersection_len(&b), 2);
        assert!(BitSet::from_indices(130, [5]).is_subset(&a));
        assert!(!b.is_subset(&a));
        let mut d = a.clone();
        d.difference_with(&b);
        assert_eq!(d.to_vec(), vec![0, 129]);
        assert!(d.is_disjoint(&b));
    }

    #[test]
    fn lexicographic_order() {
        let w = 8;
        let a = BitSet::from_indices(w, [0, 1, 2]);
        let b = BitSet::from_indices(w, [0, 1, 3]);
        let c = BitSet::from_indices(w, [0, 1]);
        assert!(a < b);
        assert!(c < a);
        assert!(BitSet::empty(w) < c);
    }
}
