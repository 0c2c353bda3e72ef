//! Graded submodules and the colon, annihilator, quotient and structure
//! operations built on them.

use std::collections::{HashSet, VecDeque};
use std::sync::Arc;

use serde::Serialize;

use super::graded::{GradedModule, RawModule};
use crate::algebra::{GradedIdeal, RawComponent, RawGrading};
use crate::error::{AlgebraError, Result};
use crate::subset::{additive_closure, Elem, Subset};

/// A subset of a module known to be a graded submodule.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct GradedSubmodule {
    members: Subset,
}

impl GradedSubmodule {
    pub fn members(&self) -> &Subset {
        &self.members
    }

    pub fn into_members(self) -> Subset {
        self.members
    }

    pub fn contains(&self, m: Elem) -> bool {
        self.members.contains(m)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_subset(&self, other: &GradedSubmodule) -> bool {
        self.members.is_subset(&other.members)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum SubmoduleViolation {
    MissingZero,
    NotAdditive { a: Elem, b: Elem },
    NotClosedUnderAction { r: Elem, m: Elem },
    NotGraded { m: Elem, component: Elem },
}

impl std::fmt::Display for SubmoduleViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::MissingZero => write!(f, "0 is missing"),
            Self::NotAdditive { a, b } => write!(f, "{a} + {b} is missing"),
            Self::NotClosedUnderAction { r, m } => write!(f, "{r}·{m} is missing"),
            Self::NotGraded { m, component } => write!(f, "homogeneous component {component} of {m} is missing"),
        }
    }
}

impl GradedModule {
    pub fn submodule_violation(&self, s: &Subset) -> Option<SubmoduleViolation> {
        if !s.contains(self.zero()) {
            return Some(SubmoduleViolation::MissingZero);
        }
        for a in s.iter() {
            for b in s.iter() {
                if !s.contains(self.add(a, b)) {
                    return Some(SubmoduleViolation::NotAdditive { a, b });
                }
            }
        }
        for m in s.iter() {
            for r in self.ring().elements() {
                if !s.contains(self.act(r, m)) {
                    return Some(SubmoduleViolation::NotClosedUnderAction { r, m });
                }
            }
        }
        for m in s.iter() {
            if let Some(&c) = self.decomp(m).iter().find(|&&c| !s.contains(c)) {
                return Some(SubmoduleViolation::NotGraded { m, component: c });
            }
        }
        None
    }

    pub fn is_graded_submodule(&self, s: &Subset) -> bool {
        s.universe() == self.order() && self.submodule_violation(s).is_none()
    }

    pub fn submodule(&self, s: Subset) -> Result<GradedSubmodule> {
        if s.universe() != self.order() {
            return Err(AlgebraError::Mismatch);
        }
        match self.submodule_violation(&s) {
            None => Ok(GradedSubmodule { members: s }),
            Some(v) => Err(AlgebraError::NotSubmodule(v.to_string())),
        }
    }

    pub fn zero_submodule(&self) -> GradedSubmodule {
        GradedSubmodule { members: Subset::singleton(self.order(), self.zero()) }
    }

    pub fn whole(&self) -> GradedSubmodule {
        GradedSubmodule { members: Subset::full(self.order()) }
    }

    fn span(&self, seeds: impl IntoIterator<Item = Elem>) -> Subset {
        additive_closure(self.order(), self.zero(), |x, y| self.add(x, y), seeds)
    }

    /// Smallest graded submodule containing `generators`.
    pub fn submodule_generated_by<I: IntoIterator<Item = Elem>>(&self, generators: I) -> GradedSubmodule {
        let mut comps = Subset::empty(self.order());
        for m in generators {
            for &c in self.decomp(m) {
                comps.insert(c);
            }
        }
        let ring = self.ring();
        let seeds: Vec<Elem> = comps.iter().flat_map(|c| ring.elements().map(move |r| (r, c))).map(|(r, c)| self.act(r, c)).collect();
        GradedSubmodule { members: self.span(seeds) }
    }

    /// `Rm` for a single element.
    pub fn cyclic_submodule(&self, m: Elem) -> Subset {
        Subset::from_elems(self.order(), self.ring().elements().map(|r| self.act(r, m)))
    }

    pub fn submodule_sum(&self, a: &GradedSubmodule, b: &GradedSubmodule) -> GradedSubmodule {
        GradedSubmodule { members: self.span(a.members.union(&b.members).iter()) }
    }

    /// Every graded submodule, sorted by (size, members).
    pub fn enumerate_graded_submodules(&self, bound: usize) -> Result<Vec<GradedSubmodule>> {
        if self.order() > bound {
            return Err(AlgebraError::BudgetExceeded { what: "module", size: self.order(), bound });
        }
        let mut principal: Vec<GradedSubmodule> =
            self.homogeneous_elements().iter().map(|h| self.submodule_generated_by([h])).collect();
        principal.sort();
        principal.dedup();
        let start = self.zero_submodule();
        let mut seen: HashSet<GradedSubmodule> = HashSet::from([start.clone()]);
        let mut queue = VecDeque::from([start]);
        while let Some(n) = queue.pop_front() {
            for p in &principal {
                if p.is_subset(&n) {
                    continue;
                }
                let j = self.submodule_sum(&n, p);
                if seen.insert(j.clone()) {
                    queue.push_back(j);
                }
            }
        }
        let mut all: Vec<_> = seen.into_iter().collect();
        all.sort();
        Ok(all)
    }

    /// `(N :_R L) = {r : rL ⊆ N}`.
    pub fn colon_ring(&self, n: &GradedSubmodule, l: &GradedSubmodule) -> GradedIdeal {
        let ring = self.ring();
        let members = Subset::from_elems(ring.order(), ring.elements().filter(|&r| l.members.iter().all(|m| n.contains(self.act(r, m)))));
        ring.ideal(members).expect("(N :_R L) of graded submodules is a graded ideal")
    }

    /// `(N :_R M)`.
    pub fn colon_into_ring(&self, n: &GradedSubmodule) -> GradedIdeal {
        self.colon_ring(n, &self.whole())
    }

    /// `(N :_M I) = {m : Im ⊆ N}`.
    pub fn colon_into_module(&self, n: &GradedSubmodule, i: &GradedIdeal) -> GradedSubmodule {
        let members = Subset::from_elems(self.order(), self.elements().filter(|&m| i.members().iter().all(|a| n.contains(self.act(a, m)))));
        GradedSubmodule { members }
    }

    /// `(N :_M s)`, read as `(N :_M I)` with `I` the graded ideal generated
    /// by `s`. For homogeneous `s` this is `{m : sm ∈ N}`.
    pub fn colon_by_element(&self, n: &GradedSubmodule, s: Elem) -> GradedSubmodule {
        self.colon_into_module(n, &self.ring().principal_ideal(s))
    }

    /// `(0 :_M x) = {m : xm = 0}`.
    pub fn ann_in_module(&self, x: Elem) -> Subset {
        Subset::from_elems(self.order(), self.elements().filter(|&m| self.act(x, m) == self.zero()))
    }

    /// `(0 :_R M)`.
    pub fn ann_of_module(&self) -> GradedIdeal {
        self.colon_into_ring(&self.zero_submodule())
    }

    pub fn is_faithful(&self) -> bool {
        self.ann_of_module().len() == 1
    }

    /// `IM`.
    pub fn ideal_times_module(&self, i: &GradedIdeal) -> GradedSubmodule {
        self.ideal_times_submodule(i, &self.whole())
    }

    /// `IN`: the additive span of all `a·n`.
    pub fn ideal_times_submodule(&self, i: &GradedIdeal, n: &GradedSubmodule) -> GradedSubmodule {
        let seeds: Vec<Elem> = i.members().iter().flat_map(|a| n.members.iter().map(move |m| (a, m))).map(|(a, m)| self.act(a, m)).collect();
        GradedSubmodule { members: self.span(seeds) }
    }

    /// `M/N` together with the projection `M → M/N`.
    ///
    /// Cosets are labelled by their least element and ordered by it, so the
    /// zero coset is always first when 0 is the least element.
    pub fn quotient_module(&self, n: &GradedSubmodule) -> Result<(GradedModule, Vec<Elem>)> {
        let reps: Vec<Elem> = self.elements().filter(|&m| n.members.iter().all(|k| self.add(m, k) >= m)).collect();
        let mut proj = vec![0; self.order()];
        for (i, &r) in reps.iter().enumerate() {
            for k in n.members.iter() {
                proj[self.add(r, k)] = i;
            }
        }
        let q = reps.len();
        let add = (0..q).map(|i| (0..q).map(|j| proj[self.add(reps[i], reps[j])]).collect()).collect();
        let action = self.ring().elements().map(|r| (0..q).map(|j| proj[self.act(r, reps[j])]).collect()).collect();
        let group = self.ring().group();
        let components = group
            .elements()
            .map(|g| {
                let img = Subset::from_elems(q, self.component(g).iter().map(|m| proj[m]));
                RawComponent { degree: group.tuple(g), elements: img.to_vec() }
            })
            .collect();
        let raw = RawModule { add, action, grading: Some(RawGrading { group: group.cyclic_orders().to_vec(), components }) };
        let names = reps.iter().map(|&r| format!("{}+N", self.name(r))).collect();
        let module = GradedModule::from_raw_named(Arc::clone(self.ring()), &raw, Some(names))?;
        Ok((module, proj))
    }

    /// A homogeneous generator `m` with `Rm = M`, if one exists.
    pub fn cyclic_generator(&self) -> Option<Elem> {
        self.homogeneous_elements().iter().find(|&m| self.cyclic_submodule(m).is_full())
    }

    pub fn is_cyclic(&self) -> bool {
        self.cyclic_generator().is_some()
    }

    /// Homogeneous generators chosen greedily in index order.
    pub fn finite_generators(&self) -> Vec<Elem> {
        let mut gens = Vec::new();
        let mut span = self.zero_submodule();
        for h in self.homogeneous_elements().iter() {
            if span.members.is_full() {
                break;
            }
            if !span.contains(h) {
                gens.push(h);
                span = self.submodule_generated_by(gens.iter().copied());
            }
        }
        gens
    }

    /// First graded submodule `N` with `N != (N :_R M)M`, if any.
    pub fn multiplication_failure(&self, bound: usize) -> Result<Option<GradedSubmodule>> {
        Ok(self
            .enumerate_graded_submodules(bound)?
            .into_iter()
            .find(|n| self.ideal_times_module(&self.colon_into_ring(n)) != *n))
    }

    pub fn is_multiplication(&self, bound: usize) -> Result<bool> {
        Ok(self.multiplication_failure(bound)?.is_none())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::GradedRing;

    fn zn_module(n: usize) -> GradedModule {
        GradedModule::regular(&Arc::new(GradedRing::zn(n).unwrap()))
    }

    fn gen(m: &GradedModule, x: Elem) -> GradedSubmodule {
        m.submodule_generated_by([x])
    }

    fn v2() -> GradedModule {
        let m = zn_module(2);
        m.direct_sum(&m).unwrap()
    }

    #[test]
    fn colon_into_ring_examples() {
        let m = zn_module(24);
        let n = gen(&m, 8);
        assert_eq!(m.colon_into_ring(&n).members().to_vec(), vec![0, 8, 16]);
        assert!(m.colon_into_ring(&m.whole()).members().is_full());
        assert_eq!(m.colon_into_ring(&m.zero_submodule()).members().to_vec(), vec![0]);
    }

    #[test]
    fn colon_into_module_examples() {
        let m = zn_module(24);
        let n = gen(&m, 8);
        assert_eq!(m.colon_by_element(&n, 2).members().to_vec(), vec![0, 4, 8, 12, 16, 20]);
        let r = m.ring();
        assert_eq!(m.colon_into_module(&n, &r.unit_ideal()), n);
        assert!(m.colon_into_module(&n, &r.zero_ideal()).members().is_full());
    }

    #[test]
    fn annihilators() {
        let m = zn_module(24);
        assert_eq!(m.ann_in_module(2).to_vec(), vec![0, 12]);
        assert!(m.is_faithful());
        let z24 = Arc::clone(m.ring());
        let (z12, _) = m.quotient_module(&gen(&m, 12)).unwrap();
        assert!(Arc::ptr_eq(z12.ring(), &z24));
        assert_eq!(z12.order(), 12);
        assert!(!z12.is_faithful());
        assert_eq!(z12.ann_of_module().members().to_vec(), vec![0, 12]);
    }

    #[test]
    fn quotients() {
        let m = zn_module(24);
        let (q, proj) = m.quotient_module(&gen(&m, 8)).unwrap();
        assert_eq!(q.order(), 8);
        assert_eq!(proj[9], proj[1]);
        let (zero, _) = m.quotient_module(&m.whole()).unwrap();
        assert_eq!(zero.order(), 1);
        let (same, proj) = m.quotient_module(&m.zero_submodule()).unwrap();
        assert_eq!(same.order(), 24);
        assert_eq!(proj, (0..24).collect::<Vec<_>>());
    }

    #[test]
    fn structure_predicates() {
        let m = zn_module(24);
        assert_eq!(m.cyclic_generator(), Some(1));
        assert!(m.is_multiplication(64).unwrap());

        let v = v2();
        assert!(!v.is_cyclic());
        assert_eq!(v.finite_generators().len(), 2);
        let fail = v.multiplication_failure(64).unwrap().unwrap();
        assert_eq!(fail.len(), 2);
        assert_eq!(v.colon_into_ring(&fail).members().to_vec(), vec![0]);

        let z = GradedModule::zero_module(m.ring());
        assert!(z.is_cyclic());
        assert!(z.is_multiplication(64).unwrap());
    }

    #[test]
    fn products_with_ideals() {
        let m = zn_module(24);
        let r = Arc::clone(m.ring());
        assert_eq!(m.ideal_times_module(&r.principal_ideal(8)).members().to_vec(), vec![0, 8, 16]);
        assert_eq!(m.ideal_times_module(&r.unit_ideal()), m.whole());
        assert_eq!(m.ideal_times_module(&r.zero_ideal()), m.zero_submodule());
    }

    #[test]
    fn submodule_counts() {
        assert_eq!(zn_module(12).enumerate_graded_submodules(64).unwrap().len(), 6);
        let z = GradedModule::zero_module(&Arc::new(GradedRing::zn(3).unwrap()));
        assert_eq!(z.enumerate_graded_submodules(64).unwrap().len(), 1);
        assert_eq!(v2().enumerate_graded_submodules(64).unwrap().len(), 5);
    }

    #[test]
    fn graded_submodules_of_quadratic() {
        let q = Arc::new(GradedRing::quadratic(3, 1).unwrap());
        let m = GradedModule::regular(&q);
        for n in m.enumerate_graded_submodules(64).unwrap() {
            assert!(m.is_graded_submodule(n.members()));
            assert!(q.is_graded_ideal(m.colon_into_ring(&n).members()));
        }
    }
}
