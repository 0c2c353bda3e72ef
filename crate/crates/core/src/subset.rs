//! Subsets of a finite carrier `{0, .., n-1}`.
//!
//! Every structure in this crate is a finite table model, so ideals,
//! submodules and multiplicative sets are all just subsets of element
//! indices. Ordering is by cardinality first, then lexicographically by the
//! sorted member list, which is the order every enumeration reports in.

use std::cmp::Ordering;
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Serialize, Serializer};

/// Index of an element in a table-based ring or module.
pub type Elem = usize;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subset {
    bits: FixedBitSet,
}

impl Subset {
    pub fn empty(universe: usize) -> Self {
        Self {
            bits: FixedBitSet::with_capacity(universe),
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(universe);
        bits.insert_range(..);
        Self { bits }
    }

    pub fn from_elems<I: IntoIterator<Item = Elem>>(universe: usize, elems: I) -> Self {
        let mut s = Self::empty(universe);
        for x in elems {
            s.insert(x);
        }
        s
    }

    pub fn singleton(universe: usize, x: Elem) -> Self {
        Self::from_elems(universe, [x])
    }

    /// Size of the carrier this subset lives in.
    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.universe()
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.bits.contains(x)
    }

    /// Inserts `x`, returning `true` if it was not already present.
    ///
    /// Panics if `x` is outside the carrier.
    pub fn insert(&mut self, x: Elem) -> bool {
        assert!(x < self.universe(), "element {x} outside carrier of size {}", self.universe());
        !self.bits.put(x)
    }

    pub fn remove(&mut self, x: Elem) {
        self.bits.set(x, false);
    }

    pub fn iter(&self) -> impl Iterator<Item = Elem> + '_ {
        self.bits.ones()
    }

    pub fn to_vec(&self) -> Vec<Elem> {
        self.iter().collect()
    }

    pub fn first(&self) -> Option<Elem> {
        self.iter().next()
    }

    pub fn is_subset(&self, other: &Subset) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn is_disjoint(&self, other: &Subset) -> bool {
        self.bits.is_disjoint(&other.bits)
    }

    pub fn union(&self, other: &Subset) -> Subset {
        let mut bits = self.bits.clone();
        bits.union_with(&other.bits);
        Subset { bits }
    }

    pub fn intersection(&self, other: &Subset) -> Subset {
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        Subset { bits }
    }

    pub fn difference(&self, other: &Subset) -> Subset {
        let mut bits = self.bits.clone();
        bits.difference_with(&other.bits);
        Subset { bits }
    }

    pub fn complement(&self) -> Subset {
        let mut bits = self.bits.clone();
        bits.toggle_range(..);
        Subset { bits }
    }

    pub fn with(&self, x: Elem) -> Subset {
        let mut s = self.clone();
        s.insert(x);
        s
    }

    pub fn without(&self, x: Elem) -> Subset {
        let mut s = self.clone();
        s.remove(x);
        s
    }
}

impl Ord for Subset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.iter().cmp(other.iter()))
            .then_with(|| self.universe().cmp(&other.universe()))
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, x) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for Subset {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

/// Closes `seeds ∪ {zero}` under the binary operation `add`.
///
/// In a finite abelian group the result is the subgroup generated by the
/// seeds.
pub(crate) fn additive_closure<F>(universe: usize, zero: Elem, add: F, seeds: impl IntoIterator<Item = Elem>) -> Subset
where
    F: Fn(Elem, Elem) -> Elem,
{
    let mut members = Subset::singleton(universe, zero);
    let mut list = vec![zero];
    let mut queue = Vec::new();
    for s in seeds {
        if members.insert(s) {
            list.push(s);
            queue.push(s);
        }
    }
    while let Some(x) = queue.pop() {
        let mut i = 0;
        while i < list.len() {
            let y = add(x, list[i]);
            if members.insert(y) {
                list.push(y);
                queue.push(y);
            }
            i += 1;
        }
    }
    members
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordering_is_size_then_lex() {
        let a = Subset::from_elems(8, [0, 5]);
        let b = Subset::from_elems(8, [0, 1, 2]);
        let c = Subset::from_elems(8, [0, 4]);
        let mut v = vec![b.clone(), a.clone(), c.clone()];
        v.sort();
        assert_eq!(v, vec![c, a, b]);
    }

    #[test]
    fn closure_in_z12() {
        let s = additive_closure(12, 0, |x, y| (x + y) % 12, [8]);
        assert_eq!(s.to_vec(), vec![0, 4, 8]);
        let s = additive_closure(12, 0, |x, y| (x + y) % 12, [2, 3]);
        assert!(s.is_full());
    }

    #[test]
    fn set_algebra() {
        let a = Subset::from_elems(6, [0, 1, 2]);
        let b = Subset::from_elems(6, [2, 3]);
        assert_eq!(a.union(&b).to_vec(), vec![0, 1, 2, 3]);
        assert_eq!(a.intersection(&b).to_vec(), vec![2]);
        assert_eq!(a.difference(&b).to_vec(), vec![0, 1]);
        assert_eq!(b.complement().to_vec(), vec![0, 1, 4, 5]);
        assert_eq!(a.to_string(), "{0,1,2}");
    }
}
