//! Rings and modules of fractions at a multiplicative set of homogeneous
//! elements.
//!
//! Fractions are built over every numerator, not only homogeneous ones, so
//! that `R_S` and `M_S` are closed under addition. A homogeneous fraction
//! `r/s` has degree `deg r - deg s`.

use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{GradedIdeal, GradedRing, MultiplicativeSet, RawComponent, RawGrading, RawRing};
use crate::error::{AlgebraError, Result, ValidationError, Violation};
use crate::module::{GradedModule, GradedSubmodule, RawModule};
use crate::primality::{classify, gw_set};
use crate::subset::{Elem, Subset};

/// An equivalence class of pairs `(numerator, denominator)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FractionClass {
    /// Lexicographically least member.
    pub rep: (Elem, Elem),
    pub members: Vec<(Elem, Elem)>,
}

/// Classes of `X × S` under `(x, s) ~ (y, t)` iff `u(tx - sy) = 0` for some
/// `u ∈ S`.
#[derive(Debug, Clone)]
struct FractionTable {
    s_list: Vec<Elem>,
    s_index: Vec<Option<usize>>,
    classes: Vec<FractionClass>,
    class_of: Vec<usize>,
}

impl FractionTable {
    fn build(
        order: usize,
        ring_order: usize,
        s: &MultiplicativeSet,
        act: &dyn Fn(Elem, Elem) -> Elem,
        sub: &dyn Fn(Elem, Elem) -> Elem,
        zero: Elem,
    ) -> Result<Self, Violation> {
        let s_list = s.to_vec();
        let k = s_list.len();
        let mut s_index = vec![None; ring_order];
        for (j, &t) in s_list.iter().enumerate() {
            s_index[t] = Some(j);
        }
        let killed: Vec<bool> = (0..order).map(|x| s_list.iter().any(|&u| act(u, x) == zero)).collect();
        let rel = |a: usize, b: usize| {
            let (x, s) = (a / k, s_list[a % k]);
            let (y, t) = (b / k, s_list[b % k]);
            killed[sub(act(t, x), act(s, y))]
        };
        let pairs = order * k;
        let mut reps: Vec<usize> = Vec::new();
        let mut class_of = vec![usize::MAX; pairs];
        for p in 0..pairs {
            match reps.iter().position(|&r| rel(r, p)) {
                Some(c) => class_of[p] = c,
                None => {
                    class_of[p] = reps.len();
                    reps.push(p);
                }
            }
        }
        // The relation is an equivalence iff it coincides with "same class".
        for a in 0..pairs {
            for b in 0..pairs {
                if rel(a, b) != (class_of[a] == class_of[b]) {
                    let pair = |p: usize| (p / k, s_list[p % k]);
                    return Err(Violation::NotEquivalence(format!(
                        "{:?} ~ {:?} is {} but the classes say otherwise",
                        pair(a),
                        pair(b),
                        rel(a, b)
                    )));
                }
            }
        }
        let mut classes: Vec<FractionClass> = reps
            .iter()
            .map(|&r| FractionClass { rep: (r / k, s_list[r % k]), members: Vec::new() })
            .collect();
        for p in 0..pairs {
            classes[class_of[p]].members.push((p / k, s_list[p % k]));
        }
        Ok(Self { s_list, s_index, classes, class_of })
    }

    fn class(&self, x: Elem, s: Elem) -> usize {
        let j = self.s_index[s].expect("denominator lies in S");
        self.class_of[x * self.s_list.len() + j]
    }

    fn len(&self) -> usize {
        self.classes.len()
    }

    /// Binary operation on classes, checked on every pair of members.
    fn table(&self, op: &'static str, right: &FractionTable, f: &dyn Fn((Elem, Elem), (Elem, Elem)) -> usize) -> Result<Vec<Vec<usize>>, Violation> {
        let mut out = vec![vec![0; right.len()]; self.len()];
        for (i, a) in self.classes.iter().enumerate() {
            for (j, b) in right.classes.iter().enumerate() {
                let v = f(a.rep, b.rep);
                for &x in &a.members {
                    for &y in &b.members {
                        if f(x, y) != v {
                            return Err(Violation::IllDefined { op, a: i, b: j });
                        }
                    }
                }
                out[i][j] = v;
            }
        }
        Ok(out)
    }

    /// Components by degree: classes having a homogeneous numerator of
    /// degree `g + deg s`, plus zero.
    fn components(&self, group: &crate::algebra::GradingGroup, zero_class: usize, degree_of: &dyn Fn(Elem) -> Option<usize>, ring: &GradedRing) -> RawGrading {
        let mut comps: Vec<Subset> = (0..group.order()).map(|_| Subset::singleton(self.len(), zero_class)).collect();
        for (c, class) in self.classes.iter().enumerate() {
            for &(x, s) in &class.members {
                if let (Some(dx), Some(ds)) = (degree_of(x), ring.degree(s)) {
                    comps[group.sub(dx, ds)].insert(c);
                }
            }
        }
        RawGrading {
            group: group.cyclic_orders().to_vec(),
            components: comps
                .iter()
                .enumerate()
                .map(|(g, c)| RawComponent { degree: group.tuple(g), elements: c.to_vec() })
                .collect(),
        }
    }
}

fn invalid(v: Violation) -> AlgebraError {
    AlgebraError::Invalid(ValidationError(vec![v]))
}

/// `R_S` together with `φ : R → R_S`.
#[derive(Debug, Clone)]
pub struct LocalizedRing {
    base: Arc<GradedRing>,
    s: MultiplicativeSet,
    table: FractionTable,
    ring: Arc<GradedRing>,
    phi: Vec<Elem>,
}

impl LocalizedRing {
    pub fn new(base: &Arc<GradedRing>, s: &MultiplicativeSet) -> Result<Self> {
        let r = base.as_ref();
        if s.members().universe() != r.order() {
            return Err(AlgebraError::Mismatch);
        }
        let table = FractionTable::build(r.order(), r.order(), s, &|u, x| r.mul(u, x), &|x, y| r.sub(x, y), r.zero()).map_err(invalid)?;
        let add = table
            .table("addition", &table, &|(a, s), (b, t)| table.class(r.add(r.mul(a, t), r.mul(b, s)), r.mul(s, t)))
            .map_err(invalid)?;
        let mul = table.table("multiplication", &table, &|(a, s), (b, t)| table.class(r.mul(a, b), r.mul(s, t))).map_err(invalid)?;
        let zero_class = table.class(r.zero(), r.one());
        let grading = table.components(r.group(), zero_class, &|x| r.degree(x), r);
        let names = table.classes.iter().map(|c| format!("{}/{}", r.name(c.rep.0), r.name(c.rep.1))).collect();
        let ring = GradedRing::from_raw_named(&RawRing { add, mul, grading: Some(grading) }, Some(names))?;
        let phi = r.elements().map(|x| table.class(x, r.one())).collect();
        Ok(Self { base: Arc::clone(base), s: s.clone(), table, ring: Arc::new(ring), phi })
    }

    pub fn base(&self) -> &Arc<GradedRing> {
        &self.base
    }

    pub fn s(&self) -> &MultiplicativeSet {
        &self.s
    }

    /// `R_S` as a validated graded ring; element `i` is class `i`.
    pub fn ring(&self) -> &Arc<GradedRing> {
        &self.ring
    }

    pub fn classes(&self) -> &[FractionClass] {
        &self.table.classes
    }

    /// Class of `r/s`, or `None` if `s ∉ S`.
    pub fn fraction(&self, r: Elem, s: Elem) -> Option<Elem> {
        (s < self.base.order() && self.s.contains(s) && r < self.base.order()).then(|| self.table.class(r, s))
    }

    pub fn phi(&self, r: Elem) -> Elem {
        self.phi[r]
    }

    /// `P_S = {p/s}`.
    pub fn extend_ideal(&self, p: &GradedIdeal) -> Result<GradedIdeal> {
        let members = Subset::from_elems(self.ring.order(), p.members().iter().flat_map(|x| self.s.members().iter().map(move |s| (x, s))).map(|(x, s)| self.table.class(x, s)));
        self.ring.ideal(members)
    }

    /// `φ⁻¹(P')`.
    pub fn contract_ideal(&self, p: &GradedIdeal) -> GradedIdeal {
        let members = Subset::from_elems(self.base.order(), self.base.elements().filter(|&x| p.contains(self.phi[x])));
        self.base.ideal(members).expect("preimage of a graded ideal under a degree-preserving map is a graded ideal")
    }

    /// First failure of φ being a unital ring homomorphism preserving degree.
    pub fn phi_violation(&self) -> Option<String> {
        let (r, l) = (self.base.as_ref(), self.ring.as_ref());
        if self.phi[r.one()] != l.one() {
            return Some("φ(1) ≠ 1".into());
        }
        for x in r.elements() {
            for y in r.elements() {
                if self.phi[r.add(x, y)] != l.add(self.phi[x], self.phi[y]) {
                    return Some(format!("φ({x}+{y}) ≠ φ({x})+φ({y})"));
                }
                if self.phi[r.mul(x, y)] != l.mul(self.phi[x], self.phi[y]) {
                    return Some(format!("φ({x}·{y}) ≠ φ({x})·φ({y})"));
                }
            }
        }
        for g in r.group().elements() {
            if let Some(x) = r.component(g).iter().find(|&x| !l.component(g).contains(self.phi[x])) {
                return Some(format!("φ({x}) leaves degree {:?}", r.group().tuple(g)));
            }
        }
        None
    }
}

/// `M_S` over `R_S` together with `φ : M → M_S`.
#[derive(Debug, Clone)]
pub struct LocalizedModule {
    base: Arc<GradedModule>,
    ring: Arc<LocalizedRing>,
    table: FractionTable,
    module: Arc<GradedModule>,
    phi: Vec<Elem>,
}

impl LocalizedModule {
    pub fn new(base: &Arc<GradedModule>, ring: &Arc<LocalizedRing>) -> Result<Self> {
        let m = base.as_ref();
        let r = m.ring().as_ref();
        if !Arc::ptr_eq(m.ring(), ring.base()) {
            return Err(AlgebraError::Mismatch);
        }
        let table = FractionTable::build(m.order(), r.order(), &ring.s, &|u, x| m.act(u, x), &|x, y| m.sub(x, y), m.zero()).map_err(invalid)?;
        let add = table
            .table("addition", &table, &|(a, s), (b, t)| table.class(m.add(m.act(t, a), m.act(s, b)), r.mul(s, t)))
            .map_err(invalid)?;
        let action = ring
            .table
            .table("action", &table, &|(x, s), (a, t)| table.class(m.act(x, a), r.mul(s, t)))
            .map_err(invalid)?;
        let zero_class = table.class(m.zero(), r.one());
        let grading = table.components(r.group(), zero_class, &|x| m.degree(x), r);
        let names = table.classes.iter().map(|c| format!("{}/{}", m.name(c.rep.0), r.name(c.rep.1))).collect();
        let module = GradedModule::from_raw_named(Arc::clone(&ring.ring), &RawModule { add, action, grading: Some(grading) }, Some(names))?;
        let phi = m.elements().map(|x| table.class(x, r.one())).collect();
        Ok(Self { base: Arc::clone(base), ring: Arc::clone(ring), table, module: Arc::new(module), phi })
    }

    pub fn base(&self) -> &Arc<GradedModule> {
        &self.base
    }

    pub fn localized_ring(&self) -> &Arc<LocalizedRing> {
        &self.ring
    }

    /// `M_S` as a validated graded module over `R_S`.
    pub fn module(&self) -> &Arc<GradedModule> {
        &self.module
    }

    pub fn classes(&self) -> &[FractionClass] {
        &self.table.classes
    }

    pub fn fraction(&self, m: Elem, s: Elem) -> Option<Elem> {
        (s < self.ring.base.order() && self.ring.s.contains(s) && m < self.base.order()).then(|| self.table.class(m, s))
    }

    pub fn phi(&self, m: Elem) -> Elem {
        self.phi[m]
    }

    /// `N_S = {n/s}`.
    pub fn extend(&self, n: &GradedSubmodule) -> Result<GradedSubmodule> {
        let s = self.ring.s.members();
        let members = Subset::from_elems(self.module.order(), n.members().iter().flat_map(|x| s.iter().map(move |t| (x, t))).map(|(x, t)| self.table.class(x, t)));
        self.module.submodule(members)
    }

    /// `N' ∩ M = φ⁻¹(N')`.
    pub fn contract(&self, n: &GradedSubmodule) -> GradedSubmodule {
        let members = Subset::from_elems(self.base.order(), self.base.elements().filter(|&x| n.contains(self.phi[x])));
        self.base.submodule(members).expect("preimage of a graded submodule under a degree-preserving map is a graded submodule")
    }

    /// First failure of φ being an additive, `R`-linear, degree-preserving map.
    pub fn phi_violation(&self) -> Option<String> {
        let (m, l) = (self.base.as_ref(), self.module.as_ref());
        let r = m.ring();
        for x in m.elements() {
            for y in m.elements() {
                if self.phi[m.add(x, y)] != l.add(self.phi[x], self.phi[y]) {
                    return Some(format!("φ({x}+{y}) ≠ φ({x})+φ({y})"));
                }
            }
            for a in r.elements() {
                if self.phi[m.act(a, x)] != l.act(self.ring.phi(a), self.phi[x]) {
                    return Some(format!("φ({a}·{x}) ≠ φ({a})·φ({x})"));
                }
            }
        }
        for g in r.group().elements() {
            if let Some(x) = m.component(g).iter().find(|&x| !l.component(g).contains(self.phi[x])) {
                return Some(format!("φ({x}) leaves degree {:?}", r.group().tuple(g)));
            }
        }
        None
    }
}

/// Localizes the ring and module at once.
pub fn localize(m: &Arc<GradedModule>, s: &MultiplicativeSet) -> Result<LocalizedModule> {
    let ring = Arc::new(LocalizedRing::new(m.ring(), s)?);
    LocalizedModule::new(m, &ring)
}

/// Both sides of `(N :_R L)_S = (N_S :_{R_S} L_S)`.
#[derive(Debug, Clone, Serialize)]
pub struct ColonComparison {
    pub lhs: GradedIdeal,
    pub rhs: GradedIdeal,
    pub equal: bool,
}

/// Computes both sides independently. Requires `N` weakly primal with
/// `GW(N) ∩ S = ∅`.
pub fn colon_localization_check(lm: &LocalizedModule, n: &GradedSubmodule, l: &GradedSubmodule) -> Result<ColonComparison> {
    let m = lm.base();
    let gw = gw_set(m, n);
    if !classify(m, n).is_weakly_primal {
        return Err(AlgebraError::HypothesisUnmet("N is not weakly primal".into()));
    }
    if let Some(x) = gw.members.intersection(lm.ring.s.members()).first() {
        return Err(AlgebraError::HypothesisUnmet(format!("{x} ∈ GW(N) ∩ S")));
    }
    let lhs = lm.ring.extend_ideal(&m.colon_ring(n, l))?;
    let rhs = lm.module.colon_ring(&lm.extend(n)?, &lm.extend(l)?);
    let equal = lhs == rhs;
    Ok(ColonComparison { lhs, rhs, equal })
}

/// Why extension and contraction fail to be inverse bijections.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum CorrespondenceFailure {
    /// `N` is `P`-weakly primal but `N_S` is not `P_S`-weakly primal.
    ExtensionLeavesFamily { n: Subset, extended: Subset },
    /// `N'` is `P_S`-weakly primal but `N' ∩ M` is not `P`-weakly primal.
    ContractionLeavesFamily { n: Subset, contracted: Subset },
    /// `(N_S) ∩ M ≠ N`.
    NotLeftInverse { n: Subset, roundtrip: Subset },
    /// `(N' ∩ M)_S ≠ N'`.
    NotRightInverse { n: Subset, roundtrip: Subset },
}

#[derive(Debug, Clone, Serialize)]
pub struct Correspondence {
    /// Pairs `(N, N_S)` over the `P`-weakly primal submodules of `M`.
    pub pairs: Vec<(Subset, Subset)>,
    pub family_sizes: (usize, usize),
    pub failure: Option<CorrespondenceFailure>,
}

fn has_adjoint(m: &GradedModule, n: &GradedSubmodule, p: &GradedIdeal) -> bool {
    classify(m, n).adjoint.as_ref() == Some(p)
}

/// Compares the `P`-weakly primal submodules of `M` with the `P_S`-weakly
/// primal submodules of `M_S` under extension and contraction. Requires `P`
/// graded weakly prime with `P ∩ S = ∅`.
pub fn correspondence_check(lm: &LocalizedModule, p: &GradedIdeal, bound: usize) -> Result<Correspondence> {
    let m = lm.base().as_ref();
    let r = m.ring();
    if !p.members().is_disjoint(lm.ring.s.members()) {
        return Err(AlgebraError::HypothesisUnmet("P ∩ S ≠ ∅".into()));
    }
    if !r.is_graded_weakly_prime_ideal(p)? {
        return Err(AlgebraError::HypothesisUnmet("P is not graded weakly prime".into()));
    }
    let ps = lm.ring.extend_ideal(p)?;
    let ms = lm.module().as_ref();
    let left: Vec<GradedSubmodule> = m.enumerate_graded_submodules(bound)?.into_iter().filter(|n| has_adjoint(m, n, p)).collect();
    let right: Vec<GradedSubmodule> = ms.enumerate_graded_submodules(bound)?.into_iter().filter(|n| has_adjoint(ms, n, &ps)).collect();
    let mut pairs = Vec::new();
    let mut failure = None;
    for n in &left {
        let e = lm.extend(n)?;
        pairs.push((n.members().clone(), e.members().clone()));
        if failure.is_some() {
            continue;
        }
        let back = lm.contract(&e);
        if !right.contains(&e) {
            failure = Some(CorrespondenceFailure::ExtensionLeavesFamily { n: n.members().clone(), extended: e.members().clone() });
        } else if &back != n {
            failure = Some(CorrespondenceFailure::NotLeftInverse { n: n.members().clone(), roundtrip: back.into_members() });
        }
    }
    if failure.is_none() {
        for n in &right {
            let c = lm.contract(n);
            if !left.contains(&c) {
                failure = Some(CorrespondenceFailure::ContractionLeavesFamily { n: n.members().clone(), contracted: c.into_members() });
                break;
            }
            let e = lm.extend(&c)?;
            if &e != n {
                failure = Some(CorrespondenceFailure::NotRightInverse { n: n.members().clone(), roundtrip: e.into_members() });
                break;
            }
        }
    }
    Ok(Correspondence { pairs, family_sizes: (left.len(), right.len()), failure })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup(n: usize, s: &[Elem]) -> (Arc<GradedModule>, LocalizedModule) {
        let r = Arc::new(GradedRing::zn(n).unwrap());
        let m = Arc::new(GradedModule::regular(&r));
        let s = r.multiplicative_set(r.subset(s.iter().copied()).unwrap()).unwrap();
        let lm = localize(&m, &s).unwrap();
        (m, lm)
    }

    #[test]
    fn inverting_units_changes_nothing() {
        let (_, lm) = setup(12, &[1, 5]);
        assert_eq!(lm.localized_ring().ring().order(), 12);
        let phi: Subset = Subset::from_elems(12, (0..12).map(|x| lm.localized_ring().phi(x)));
        assert!(phi.is_full());
        assert!(lm.phi_violation().is_none());
    }

    #[test]
    fn z12_at_powers_of_three() {
        let (m, lm) = setup(12, &[1, 3, 9]);
        let lr = lm.localized_ring();
        assert_eq!(lr.ring().order(), 4);
        assert!(lr.phi_violation().is_none());
        assert_eq!(lr.phi(5), lr.phi(1));
        assert_ne!(lr.fraction(1, 1), lr.fraction(0, 1));
        let n = m.submodule_generated_by([4]);
        assert_eq!(lm.extend(&n).unwrap().len(), 1);
        let zero = lm.module().zero_submodule();
        assert_eq!(lm.contract(&zero).members().to_vec(), vec![0, 4, 8]);
        let cmp = colon_localization_check(&lm, &m.zero_submodule(), &m.whole()).unwrap();
        assert!(cmp.equal);
    }

    #[test]
    fn colon_guard() {
        let (m, lm) = setup(12, &[1, 3, 9]);
        let n = m.submodule_generated_by([9]);
        assert!(matches!(colon_localization_check(&lm, &n, &m.whole()), Err(AlgebraError::HypothesisUnmet(_))));
    }

    #[test]
    fn correspondence_at_units() {
        let (m, lm) = setup(12, &[1, 5]);
        let p = m.ring().zero_ideal();
        let c = correspondence_check(&lm, &p, 64).unwrap();
        assert!(c.failure.is_none());
        assert_eq!(c.family_sizes.0, c.family_sizes.1);
    }

    #[test]
    fn quadratic_localization_is_graded() {
        let r = Arc::new(GradedRing::quadratic(3, 1).unwrap());
        let m = Arc::new(GradedModule::regular(&r));
        for s in r.enumerate_multiplicative_sets(64).unwrap() {
            let lm = localize(&m, &s).unwrap();
            assert!(lm.localized_ring().phi_violation().is_none());
            assert!(lm.phi_violation().is_none());
            for n in m.enumerate_graded_submodules(64).unwrap() {
                assert!(n.is_subset(&lm.contract(&lm.extend(&n).unwrap())));
            }
        }
    }
}
