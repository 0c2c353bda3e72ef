//! Graded ideals of a [`GradedRing`]: membership tests, generation, the
//! ideal lattice, products, homogeneous radicals and weak primeness.

use std::collections::{HashSet, VecDeque};

use serde::Serialize;

use super::ring::GradedRing;
use crate::error::{AlgebraError, Result};
use crate::subset::{additive_closure, Elem, Subset};

/// Default bound on the carrier size for exhaustive enumeration.
pub const DEFAULT_ENUMERATION_BOUND: usize = 64;

/// A subset of a ring known to be a graded ideal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct GradedIdeal {
    members: Subset,
}

impl GradedIdeal {
    pub fn members(&self) -> &Subset {
        &self.members
    }

    pub fn into_members(self) -> Subset {
        self.members
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.members.contains(x)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_subset(&self, other: &GradedIdeal) -> bool {
        self.members.is_subset(&other.members)
    }
}

/// First condition a candidate subset fails on its way to being a graded
/// ideal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum IdealViolation {
    MissingZero,
    NotAdditive { a: Elem, b: Elem },
    NotAbsorbing { r: Elem, a: Elem },
    NotGraded { a: Elem, component: Elem },
}

impl std::fmt::Display for IdealViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::MissingZero => write!(f, "0 is missing"),
            Self::NotAdditive { a, b } => write!(f, "{a} + {b} is missing"),
            Self::NotAbsorbing { r, a } => write!(f, "{r} * {a} is missing"),
            Self::NotGraded { a, component } => write!(f, "homogeneous component {component} of {a} is missing"),
        }
    }
}

impl GradedRing {
    /// Checks the graded-ideal conditions in order: zero, additive closure,
    /// absorption, then closure under homogeneous components.
    pub fn graded_ideal_violation(&self, s: &Subset) -> Option<IdealViolation> {
        if !s.contains(self.zero()) {
            return Some(IdealViolation::MissingZero);
        }
        for a in s.iter() {
            for b in s.iter() {
                if !s.contains(self.add(a, b)) {
                    return Some(IdealViolation::NotAdditive { a, b });
                }
            }
        }
        for a in s.iter() {
            for r in self.elements() {
                if !s.contains(self.mul(r, a)) {
                    return Some(IdealViolation::NotAbsorbing { r, a });
                }
            }
        }
        for a in s.iter() {
            if let Some(&c) = self.decomp(a).iter().find(|&&c| !s.contains(c)) {
                return Some(IdealViolation::NotGraded { a, component: c });
            }
        }
        None
    }

    pub fn is_graded_ideal(&self, s: &Subset) -> bool {
        s.universe() == self.order() && self.graded_ideal_violation(s).is_none()
    }

    pub fn ideal(&self, s: Subset) -> Result<GradedIdeal> {
        if s.universe() != self.order() {
            return Err(AlgebraError::Mismatch);
        }
        match self.graded_ideal_violation(&s) {
            None => Ok(GradedIdeal { members: s }),
            Some(v) => Err(AlgebraError::NotIdeal(v.to_string())),
        }
    }

    pub fn zero_ideal(&self) -> GradedIdeal {
        GradedIdeal { members: Subset::singleton(self.order(), self.zero()) }
    }

    pub fn unit_ideal(&self) -> GradedIdeal {
        GradedIdeal { members: Subset::full(self.order()) }
    }

    /// Smallest graded ideal containing `generators`.
    ///
    /// The graded ideal generated by a set is the ideal generated by the
    /// homogeneous components of its elements, i.e. the additive span of all
    /// `r * c` with `c` such a component.
    pub fn ideal_generated_by<I: IntoIterator<Item = Elem>>(&self, generators: I) -> GradedIdeal {
        let mut comps = Subset::empty(self.order());
        for x in generators {
            for &c in self.decomp(x) {
                comps.insert(c);
            }
        }
        let seeds: Vec<Elem> = comps
            .iter()
            .flat_map(|c| self.elements().map(move |r| (r, c)))
            .map(|(r, c)| self.mul(r, c))
            .collect();
        GradedIdeal { members: additive_closure(self.order(), self.zero(), |x, y| self.add(x, y), seeds) }
    }

    pub fn principal_ideal(&self, x: Elem) -> GradedIdeal {
        self.ideal_generated_by([x])
    }

    pub fn ideal_sum(&self, a: &GradedIdeal, b: &GradedIdeal) -> Result<GradedIdeal> {
        self.same_carrier(a)?;
        self.same_carrier(b)?;
        let seeds = a.members.union(&b.members);
        Ok(GradedIdeal { members: additive_closure(self.order(), self.zero(), |x, y| self.add(x, y), seeds.iter()) })
    }

    pub fn ideal_intersection(&self, a: &GradedIdeal, b: &GradedIdeal) -> Result<GradedIdeal> {
        self.same_carrier(a)?;
        self.same_carrier(b)?;
        Ok(GradedIdeal { members: a.members.intersection(&b.members) })
    }

    /// `IJ`: the additive span of all products `ij`. Graded because `I` and
    /// `J` are spanned by homogeneous elements.
    pub fn ideal_product(&self, a: &GradedIdeal, b: &GradedIdeal) -> Result<GradedIdeal> {
        self.same_carrier(a)?;
        self.same_carrier(b)?;
        let seeds: Vec<Elem> = a.members.iter().flat_map(|x| b.members.iter().map(move |y| (x, y))).map(|(x, y)| self.mul(x, y)).collect();
        Ok(GradedIdeal { members: additive_closure(self.order(), self.zero(), |x, y| self.add(x, y), seeds) })
    }

    fn same_carrier(&self, i: &GradedIdeal) -> Result<()> {
        if i.members.universe() == self.order() {
            Ok(())
        } else {
            Err(AlgebraError::Mismatch)
        }
    }

    /// Every graded ideal, sorted by (size, members).
    ///
    /// Every graded ideal is a sum of principal ideals of homogeneous
    /// elements, so a breadth-first search over joins with those principal
    /// ideals reaches all of them.
    pub fn enumerate_graded_ideals(&self, bound: usize) -> Result<Vec<GradedIdeal>> {
        if self.order() > bound {
            return Err(AlgebraError::BudgetExceeded { what: "ring", size: self.order(), bound });
        }
        let mut principal: Vec<GradedIdeal> =
            self.homogeneous_elements().iter().map(|h| self.principal_ideal(h)).collect();
        principal.sort();
        principal.dedup();
        let start = self.zero_ideal();
        let mut seen: HashSet<GradedIdeal> = HashSet::from([start.clone()]);
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            for p in &principal {
                if p.is_subset(&i) {
                    continue;
                }
                let j = self.ideal_sum(&i, p)?;
                if seen.insert(j.clone()) {
                    queue.push_back(j);
                }
            }
        }
        let mut all: Vec<GradedIdeal> = seen.into_iter().collect();
        all.sort();
        Ok(all)
    }

    /// `{x ∈ h(R) : x^n ∈ I for some 1 <= n <= |R|}`.
    ///
    /// The powers of an element of a finite ring become periodic within
    /// `|R|` steps, so the bound is exhaustive.
    pub fn homogeneous_radical(&self, i: &GradedIdeal) -> Subset {
        let mut out = Subset::empty(self.order());
        for x in self.homogeneous_elements().iter() {
            let mut p = x;
            for _ in 0..self.order() {
                if i.contains(p) {
                    out.insert(x);
                    break;
                }
                p = self.mul(p, x);
            }
        }
        out
    }

    /// First pair of homogeneous `x, y` with `0 != xy ∈ I`, `x ∉ I`, `y ∉ I`,
    /// or `None` when `I` is graded weakly prime.
    pub fn weakly_prime_counterexample(&self, i: &GradedIdeal) -> Result<Option<(Elem, Elem)>> {
        self.same_carrier(i)?;
        if i.contains(self.one()) {
            return Err(AlgebraError::UnitIdeal);
        }
        let h = self.homogeneous_elements();
        for x in h.iter() {
            if i.contains(x) {
                continue;
            }
            for y in h.iter() {
                let xy = self.mul(x, y);
                if xy != self.zero() && i.contains(xy) && !i.contains(y) {
                    return Ok(Some((x, y)));
                }
            }
        }
        Ok(None)
    }

    pub fn is_graded_weakly_prime_ideal(&self, i: &GradedIdeal) -> Result<bool> {
        Ok(self.weakly_prime_counterexample(i)?.is_none())
    }

    /// Writes `target` as `Σ r_k * g_k` with every `g_k` taken from
    /// `generators`, if `target` lies in the ideal they generate.
    ///
    /// Breadth-first over partial sums, so the expression found is one of
    /// minimal length.
    pub fn express_in_ideal(&self, generators: &Subset, target: Elem) -> Option<Vec<(Elem, Elem)>> {
        let n = self.order();
        let mut parent: Vec<Option<(Elem, (Elem, Elem))>> = vec![None; n];
        let mut seen = Subset::singleton(n, self.zero());
        let mut queue = VecDeque::from([self.zero()]);
        let terms: Vec<(Elem, Elem)> = generators.iter().flat_map(|g| self.elements().map(move |r| (r, g))).collect();
        while let Some(x) = queue.pop_front() {
            if x == target {
                let mut out = Vec::new();
                let mut cur = x;
                while let Some((prev, term)) = parent[cur] {
                    out.push(term);
                    cur = prev;
                }
                out.reverse();
                return Some(out);
            }
            for &(r, g) in &terms {
                let y = self.add(x, self.mul(r, g));
                if seen.insert(y) {
                    parent[y] = Some((x, (r, g)));
                    queue.push_back(y);
                }
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(r: &GradedRing, xs: &[Elem]) -> Subset {
        r.subset(xs.iter().copied()).unwrap()
    }

    #[test]
    fn is_graded_ideal_examples() {
        let z24 = GradedRing::zn(24).unwrap();
        assert!(z24.is_graded_ideal(&set(&z24, &[0, 8, 16])));
        let gw = set(&z24, &[0, 2, 4, 8, 10, 14, 16, 20, 22]);
        assert_eq!(z24.graded_ideal_violation(&gw), Some(IdealViolation::NotAdditive { a: 2, b: 4 }));
        let q = GradedRing::quadratic(3, 1).unwrap();
        let r0 = set(&q, &[0, 1, 2]);
        assert!(matches!(q.graded_ideal_violation(&r0), Some(IdealViolation::NotAbsorbing { .. })));
    }

    #[test]
    fn generated_ideals() {
        let z24 = GradedRing::zn(24).unwrap();
        assert_eq!(z24.ideal_generated_by([8]).members().to_vec(), vec![0, 8, 16]);
        assert!(z24.ideal_generated_by([2, 3]).members().is_full());
        let q = GradedRing::quadratic(3, 1).unwrap();
        assert!(q.ideal_generated_by([3]).members().is_full());
        // 1 + x is not homogeneous; its graded closure contains 1.
        assert!(q.ideal_generated_by([4]).members().is_full());
    }

    #[test]
    fn ideal_lattices() {
        let count = |n| GradedRing::zn(n).unwrap().enumerate_graded_ideals(64).unwrap().len();
        assert_eq!(count(4), 3);
        assert_eq!(count(12), 6);
        assert_eq!(count(30), 8);
        let z4 = GradedRing::zn(4).unwrap().enumerate_graded_ideals(64).unwrap();
        let lists: Vec<Vec<Elem>> = z4.iter().map(|i| i.members().to_vec()).collect();
        assert_eq!(lists, vec![vec![0], vec![0, 2], vec![0, 1, 2, 3]]);

        let q = GradedRing::quadratic(2, 0).unwrap();
        let ideals = q.enumerate_graded_ideals(64).unwrap();
        let lists: Vec<Vec<Elem>> = ideals.iter().map(|i| i.members().to_vec()).collect();
        assert!(lists.contains(&vec![0]));
        assert!(lists.contains(&vec![0, 2])); // {0, x}
        assert!(lists.contains(&vec![0, 1, 2, 3]));
    }

    #[test]
    fn enumeration_refuses_above_bound() {
        let r = GradedRing::zn(65).unwrap();
        assert!(matches!(r.enumerate_graded_ideals(64), Err(AlgebraError::BudgetExceeded { .. })));
        assert!(r.enumerate_graded_ideals(65).is_ok());
    }

    #[test]
    fn products() {
        let z24 = GradedRing::zn(24).unwrap();
        let p = z24.ideal_product(&z24.principal_ideal(2), &z24.principal_ideal(3)).unwrap();
        assert_eq!(p, z24.principal_ideal(6));
        let i = z24.principal_ideal(8);
        assert_eq!(z24.ideal_product(&i, &z24.unit_ideal()).unwrap(), i);
        let z4 = GradedRing::zn(4).unwrap();
        let two = z4.principal_ideal(2);
        assert_eq!(z4.ideal_product(&two, &two).unwrap(), z4.zero_ideal());
        assert_eq!(z24.ideal_product(&i, &z4.zero_ideal()), Err(AlgebraError::Mismatch));
    }

    #[test]
    fn radicals() {
        let z24 = GradedRing::zn(24).unwrap();
        let rad = z24.homogeneous_radical(&z24.principal_ideal(8));
        assert_eq!(rad, z24.principal_ideal(2).into_members());
        assert_eq!(z24.homogeneous_radical(&z24.unit_ideal()), *z24.homogeneous_elements());
        let z12 = GradedRing::zn(12).unwrap();
        assert_eq!(z12.homogeneous_radical(&z12.zero_ideal()).to_vec(), vec![0, 6]);
    }

    #[test]
    fn weakly_prime_ideals_in_z12() {
        let z12 = GradedRing::zn(12).unwrap();
        assert!(z12.is_graded_weakly_prime_ideal(&z12.zero_ideal()).unwrap());
        assert!(z12.is_graded_weakly_prime_ideal(&z12.principal_ideal(2)).unwrap());
        assert_eq!(z12.weakly_prime_counterexample(&z12.principal_ideal(4)).unwrap(), Some((2, 2)));
        assert_eq!(z12.weakly_prime_counterexample(&z12.unit_ideal()), Err(AlgebraError::UnitIdeal));
    }

    #[test]
    fn expression_in_ideal() {
        let z24 = GradedRing::zn(24).unwrap();
        let gens = z24.subset([2, 4]).unwrap();
        let expr = z24.express_in_ideal(&gens, 6).unwrap();
        let total = expr.iter().fold(0, |acc, &(r, g)| z24.add(acc, z24.mul(r, g)));
        assert_eq!(total, 6);
        assert!(z24.express_in_ideal(&z24.subset([8]).unwrap(), 4).is_none());
    }
}
