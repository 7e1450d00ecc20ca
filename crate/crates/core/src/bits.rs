//! Fixed-width bitsets over element indices.

use std::cmp::Ordering;
use std::fmt;

/// A set of indices in `0..len`, packed into 64-bit words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitSet {
    len: usize,
    words: Vec<u64>,
}

impl BitSet {
    pub fn new(len: usize) -> Self {
        Self { len, words: vec![0; len.div_ceil(64)] }
    }

    pub fn full(len: usize) -> Self {
        let mut s = Self::new(len);
        for i in 0..len {
            s.insert(i);
        }
        s
    }

    pub fn from_indices(len: usize, items: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::new(len);
        for i in items {
            s.insert(i);
        }
        s
    }

    /// Universe size, not the number of members.
    pub fn capacity(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn insert(&mut self, i: usize) -> bool {
        debug_assert!(i < self.len);
        let (w, b) = (i / 64, i % 64);
        let fresh = self.words[w] & (1 << b) == 0;
        self.words[w] |= 1 << b;
        fresh
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        i < self.len && self.words[i / 64] & (1 << (i % 64)) != 0
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn union_with(&mut self, other: &Self) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &Self) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut s = self.clone();
        s.union_with(other);
        s
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let mut s = self.clone();
        s.intersect_with(other);
        s
    }

    /// Members of `self` that are not in `other`.
    pub fn difference(&self, other: &Self) -> Self {
        let mut s = self.clone();
        for (a, b) in s.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
        s
    }

    pub fn first(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + b)
            })
        })
    }

    /// Lexicographic comparison of the sorted member lists.
    ///
    /// The set holding the lowest index on which the two differ sorts first.
    pub fn cmp_members(&self, other: &Self) -> Ordering {
        for (a, b) in self.words.iter().zip(&other.words) {
            let diff = a ^ b;
            if diff != 0 {
                let bit = 1u64 << diff.trailing_zeros();
                return if a & bit != 0 { Ordering::Less } else { Ordering::Greater };
            }
        }
        Ordering::Equal
    }

    /// Ordering used for every enumerated list: size first, then members.
    pub fn cmp_canonical(&self, other: &Self) -> Ordering {
        self.count().cmp(&other.count()).then_with(|| self.cmp_members(other))
    }
}

impl fmt::Debug for BitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_ops() {
        let a = BitSet::from_indices(130, [0, 5, 64, 129]);
        let b = BitSet::from_indices(130, [5, 64]);
        assert_eq!(a.count(), 4);
        assert!(b.is_subset(&a));
        assert!(!a.is_subset(&b));
        assert_eq!(a.difference(&b).iter().collect::<Vec<_>>(), vec![0, 129]);
        assert_eq!(a.intersection(&b), b);
        assert_eq!(b.first(), Some(5));
        assert!(BitSet::new(3).first().is_none());
    }

    #[test]
    fn member_order() {
        let a = BitSet::from_indices(10, [0, 9]);
        let b = BitSet::from_indices(10, [1, 2]);
        assert_eq!(a.cmp_members(&b), Ordering::Less);
        assert_eq!(b.cmp_canonical(&a), Ordering::Greater);
        let c = BitSet::from_indices(10, [3]);
        assert_eq!(c.cmp_canonical(&a), Ordering::Less);
    }
}
