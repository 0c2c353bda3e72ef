use std::collections::{HashSet, VecDeque};

use serde::Serialize;

use super::ring::GradedRing;
use crate::error::{AlgebraError, Result};
use crate::subset::{Elem, Subset};

/// A multiplicatively closed set of homogeneous elements containing 1 and
/// not containing 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct MultiplicativeSet {
    members: Subset,
}

impl MultiplicativeSet {
    pub fn members(&self) -> &Subset {
        &self.members
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.members.contains(x)
    }

    pub fn to_vec(&self) -> Vec<Elem> {
        self.members.to_vec()
    }
}

impl GradedRing {
    pub fn multiplicative_set(&self, members: Subset) -> Result<MultiplicativeSet> {
        if members.universe() != self.order() {
            return Err(AlgebraError::Mismatch);
        }
        if !members.contains(self.one()) {
            return Err(AlgebraError::NotMultiplicative("1 is missing".into()));
        }
        if members.contains(self.zero()) {
            return Err(AlgebraError::NotMultiplicative("0 is a member".into()));
        }
        if let Some(x) = members.iter().find(|&x| !self.is_homogeneous(x)) {
            return Err(AlgebraError::NotMultiplicative(format!("{x} is not homogeneous")));
        }
        for a in members.iter() {
            for b in members.iter() {
                if !members.contains(self.mul(a, b)) {
                    return Err(AlgebraError::NotMultiplicative(format!("{a} * {b} is missing")));
                }
            }
        }
        Ok(MultiplicativeSet { members })
    }

    /// Multiplicative closure of `{1} ∪ generators`, or `None` when it
    /// contains 0 or a non-homogeneous element.
    pub fn multiplicative_closure<I: IntoIterator<Item = Elem>>(&self, generators: I) -> Option<MultiplicativeSet> {
        let mut members = Subset::singleton(self.order(), self.one());
        let mut queue: Vec<Elem> = Vec::new();
        for g in generators {
            if members.insert(g) {
                queue.push(g);
            }
        }
        let mut list: Vec<Elem> = members.to_vec();
        while let Some(x) = queue.pop() {
            let mut i = 0;
            while i < list.len() {
                let y = self.mul(x, list[i]);
                if members.insert(y) {
                    list.push(y);
                    queue.push(y);
                }
                i += 1;
            }
        }
        if members.contains(self.zero()) || !members.is_subset(self.homogeneous_elements()) {
            return None;
        }
        Some(MultiplicativeSet { members })
    }

    /// Every multiplicative set of homogeneous elements, sorted by
    /// (size, members).
    ///
    /// The product of two homogeneous elements need not be homogeneous in
    /// general, so closures leaving `h(R)` are discarded along with those
    /// reaching 0.
    pub fn enumerate_multiplicative_sets(&self, bound: usize) -> Result<Vec<MultiplicativeSet>> {
        if self.order() > bound {
            return Err(AlgebraError::BudgetExceeded { what: "ring", size: self.order(), bound });
        }
        let singles: Vec<MultiplicativeSet> = self
            .homogeneous_elements()
            .iter()
            .filter_map(|h| self.multiplicative_closure([h]))
            .collect();
        let start = self.multiplicative_closure([]).expect("{1} is multiplicative in a nonzero ring");
        let mut seen = HashSet::from([start.clone()]);
        let mut queue = VecDeque::from([start]);
        while let Some(s) = queue.pop_front() {
            for p in &singles {
                if p.members.is_subset(&s.members) {
                    continue;
                }
                if let Some(t) = self.multiplicative_closure(s.members.union(&p.members).iter()) {
                    if seen.insert(t.clone()) {
                        queue.push_back(t);
                    }
                }
            }
        }
        let mut all: Vec<_> = seen.into_iter().collect();
        all.sort();
        Ok(all)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        let z12 = GradedRing::zn(12).unwrap();
        assert!(z12.multiplicative_set(z12.subset([1, 3, 9]).unwrap()).is_ok());
        assert!(z12.multiplicative_set(z12.subset([3, 9]).unwrap()).is_err());
        assert!(z12.multiplicative_set(z12.subset([1, 2, 4, 8]).unwrap()).is_ok());
        assert!(z12.multiplicative_set(z12.subset([1, 2, 4, 6]).unwrap()).is_err());
        assert!(z12.multiplicative_set(z12.subset([1, 5, 7]).unwrap()).is_err());
        let q = GradedRing::quadratic(3, 1).unwrap();
        // 1 + x is not homogeneous
        assert!(q.multiplicative_set(q.subset([1, 4]).unwrap()).is_err());
    }

    #[test]
    fn counts_match_brute_force() {
        // Independently counted by closing every subset of Z/n \ {0}.
        for (n, expected) in [(2, 1), (6, 7), (12, 30), (24, 190)] {
            let r = GradedRing::zn(n).unwrap();
            assert_eq!(r.enumerate_multiplicative_sets(64).unwrap().len(), expected, "Z/{n}");
        }
    }

    #[test]
    fn zero_ring_has_none() {
        let r = GradedRing::zn(1).unwrap();
        assert!(r.multiplicative_closure([]).is_none());
    }
}
