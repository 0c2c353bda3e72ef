//! Element-level and submodule-level primality predicates.
//!
//! A submodule is weakly primal when `GW(N) ∪ {0}` is exactly the set of
//! homogeneous elements of a graded ideal, namely the graded ideal `P` that
//! `GW(N)` generates. Under the trivial grading this is the plain condition
//! that `GW(N) ∪ {0}` be an ideal. The same reading is used for `G(N)` and
//! for `gw(P)`.

use serde::Serialize;

use crate::algebra::{GradedIdeal, GradedRing};
use crate::error::{AlgebraError, Result};
use crate::module::{GradedModule, GradedSubmodule};
use crate::subset::{Elem, Subset};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessKind {
    /// `m ∈ h(M) ∖ N`, `0 ≠ xm ∈ N`.
    NgwpToSubmodule,
    /// `m ∈ h(M) ∖ N`, `xm ∈ N`.
    NotPrimeToSubmodule,
    /// `m ∈ M ∖ N`, `0 ≠ xm ∈ N`, any `x`.
    NotWeaklyPrimeUngraded,
    /// `y ∈ h(R) ∖ P`, `0 ≠ xy ∈ P`.
    NgwpToIdeal,
    /// `m ∈ h(M) ∖ N`, `0 ≠ xm ∈ N`, `x ∉ (N :_R M)`.
    NotWeaklyPrime,
    /// As [`WitnessKind::NotWeaklyPrime`] with no power of `x` in `(N :_R M)`.
    NotWeaklyPrimary,
}

/// `scalar` is `x`; `vector` is the module element `m`, or the second
/// scalar `y` for ideal-level kinds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Witness {
    pub kind: WitnessKind,
    pub scalar: Elem,
    pub vector: Elem,
}

impl Witness {
    /// Re-checks a submodule-level witness from the tables alone.
    pub fn holds(&self, m: &GradedModule, n: &GradedSubmodule) -> bool {
        let (x, v) = (self.scalar, self.vector);
        if x >= m.ring().order() || v >= m.order() {
            return false;
        }
        let xv = m.act(x, v);
        let hom = m.ring().is_homogeneous(x) && m.is_homogeneous(v);
        let base = !n.contains(v) && n.contains(xv);
        match self.kind {
            WitnessKind::NgwpToSubmodule => hom && base && xv != m.zero(),
            WitnessKind::NotPrimeToSubmodule => hom && base,
            WitnessKind::NotWeaklyPrimeUngraded => base && xv != m.zero(),
            WitnessKind::NotWeaklyPrime => hom && base && xv != m.zero() && !m.colon_into_ring(n).contains(x),
            WitnessKind::NotWeaklyPrimary => {
                let colon = m.colon_into_ring(n);
                let r = m.ring();
                hom && base && xv != m.zero() && (1..=r.order()).all(|k| !colon.contains(r.pow(x, k)))
            }
            WitnessKind::NgwpToIdeal => false,
        }
    }

    /// Re-checks an ideal-level witness.
    pub fn holds_for_ideal(&self, r: &GradedRing, p: &GradedIdeal) -> bool {
        let (x, y) = (self.scalar, self.vector);
        if self.kind != WitnessKind::NgwpToIdeal || x >= r.order() || y >= r.order() {
            return false;
        }
        let xy = r.mul(x, y);
        r.is_homogeneous(x) && r.is_homogeneous(y) && !p.contains(y) && xy != r.zero() && p.contains(xy)
    }
}

/// A set of ring elements, each carrying the witness that put it there.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ElementSet {
    pub members: Subset,
    pub witnesses: Vec<Witness>,
}

impl ElementSet {
    fn collect(universe: usize, found: impl Iterator<Item = Witness>) -> Self {
        let witnesses: Vec<Witness> = found.collect();
        let members = Subset::from_elems(universe, witnesses.iter().map(|w| w.scalar));
        Self { members, witnesses }
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.members.contains(x)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn witness(&self, x: Elem) -> Option<&Witness> {
        self.witnesses.iter().find(|w| w.scalar == x)
    }
}

/// Shows that a set `X ∪ {0}` is not the homogeneous part of the graded
/// ideal `X` generates: `target` is homogeneous, outside `X ∪ {0}`, and
/// equals `Σ r_k g_k` with every `g_k ∈ X`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosureFailure {
    pub target: Elem,
    pub expression: Vec<(Elem, Elem)>,
}

/// Graded ideal generated by `set` and, if `set ∪ {0}` is not its
/// homogeneous part, a failure certificate.
pub fn homogeneous_ideal_closure(ring: &GradedRing, set: &Subset) -> (GradedIdeal, Option<ClosureFailure>) {
    let p = ring.ideal_generated_by(set.iter());
    let with_zero = set.with(ring.zero());
    let hp = p.members().intersection(ring.homogeneous_elements());
    let failure = hp.difference(&with_zero).first().map(|target| ClosureFailure {
        target,
        expression: ring.express_in_ideal(set, target).expect("target lies in the generated ideal"),
    });
    (p, failure)
}

fn require_homogeneous(ring: &GradedRing, x: Elem) -> Result<()> {
    if x >= ring.order() {
        Err(AlgebraError::OutOfRange(x))
    } else if !ring.is_homogeneous(x) {
        Err(AlgebraError::NonHomogeneousScalar(x))
    } else {
        Ok(())
    }
}

fn ngwp_scan(m: &GradedModule, n: &GradedSubmodule, x: Elem) -> Option<Witness> {
    m.homogeneous_elements()
        .iter()
        .find(|&v| {
            let xv = m.act(x, v);
            !n.contains(v) && xv != m.zero() && n.contains(xv)
        })
        .map(|v| Witness { kind: WitnessKind::NgwpToSubmodule, scalar: x, vector: v })
}

/// `None` when `x` is graded weakly prime to `N`, otherwise the `m` that
/// shows it is not.
pub fn gwp_witness(m: &GradedModule, n: &GradedSubmodule, x: Elem) -> Result<Option<Witness>> {
    require_homogeneous(m.ring(), x)?;
    Ok(ngwp_scan(m, n, x))
}

pub fn is_gwp_to_submodule(m: &GradedModule, n: &GradedSubmodule, x: Elem) -> Result<bool> {
    Ok(gwp_witness(m, n, x)?.is_none())
}

/// `GW(N)`.
pub fn gw_set(m: &GradedModule, n: &GradedSubmodule) -> ElementSet {
    let r = m.ring();
    ElementSet::collect(r.order(), r.homogeneous_elements().iter().filter_map(|x| ngwp_scan(m, n, x)))
}

/// `G(N)`: homogeneous elements not graded prime to `N`.
pub fn g_set(m: &GradedModule, n: &GradedSubmodule) -> ElementSet {
    let r = m.ring();
    let h = m.homogeneous_elements();
    let found = r.homogeneous_elements().iter().filter_map(|x| {
        h.iter()
            .find(|&v| !n.contains(v) && n.contains(m.act(x, v)))
            .map(|v| Witness { kind: WitnessKind::NotPrimeToSubmodule, scalar: x, vector: v })
    });
    ElementSet::collect(r.order(), found)
}

/// `W(N)`: elements of `R` not weakly prime to `N` in the ungraded sense.
pub fn w_set(m: &GradedModule, n: &GradedSubmodule) -> ElementSet {
    let r = m.ring();
    let found = r.elements().filter_map(|x| {
        m.elements()
            .find(|&v| {
                let xv = m.act(x, v);
                !n.contains(v) && xv != m.zero() && n.contains(xv)
            })
            .map(|v| Witness { kind: WitnessKind::NotWeaklyPrimeUngraded, scalar: x, vector: v })
    });
    ElementSet::collect(r.order(), found)
}

/// Full classification of a submodule.
#[derive(Debug, Clone, Serialize)]
pub struct PrimalityVerdict {
    pub gw_set: ElementSet,
    pub g_set: ElementSet,
    pub w_set: ElementSet,
    pub is_weakly_primal: bool,
    pub is_primal: bool,
    pub is_weakly_prime: bool,
    pub is_weakly_primary: bool,
    /// The graded ideal generated by `GW(N)`; present iff weakly primal.
    pub adjoint: Option<GradedIdeal>,
    pub gw_closure_failure: Option<ClosureFailure>,
    pub g_closure_failure: Option<ClosureFailure>,
    /// `(x, m)` breaking weak primeness, if any. `None` with
    /// `is_weakly_prime == false` means `N = M`.
    pub weakly_prime_failure: Option<Witness>,
    pub weakly_primary_failure: Option<Witness>,
}

pub fn classify(m: &GradedModule, n: &GradedSubmodule) -> PrimalityVerdict {
    let r = m.ring();
    let gw = gw_set(m, n);
    let g = g_set(m, n);
    let w = w_set(m, n);
    let (adj, gw_fail) = homogeneous_ideal_closure(r, &gw.members);
    let (_, g_fail) = homogeneous_ideal_closure(r, &g.members);

    let colon = m.colon_into_ring(n);
    let mut prime_fail = None;
    let mut primary_fail = None;
    for x in r.homogeneous_elements().iter() {
        if colon.contains(x) {
            continue;
        }
        for v in m.homogeneous_elements().iter() {
            let xv = m.act(x, v);
            if n.contains(v) || xv == m.zero() || !n.contains(xv) {
                continue;
            }
            prime_fail.get_or_insert(Witness { kind: WitnessKind::NotWeaklyPrime, scalar: x, vector: v });
            if primary_fail.is_none() && (1..=r.order()).all(|k| !colon.contains(r.pow(x, k))) {
                primary_fail = Some(Witness { kind: WitnessKind::NotWeaklyPrimary, scalar: x, vector: v });
            }
            break;
        }
    }
    let proper = n.len() != m.order();
    PrimalityVerdict {
        is_weakly_primal: gw_fail.is_none(),
        is_primal: g_fail.is_none(),
        is_weakly_prime: proper && prime_fail.is_none(),
        is_weakly_primary: primary_fail.is_none(),
        adjoint: gw_fail.is_none().then_some(adj),
        gw_set: gw,
        g_set: g,
        w_set: w,
        gw_closure_failure: gw_fail,
        g_closure_failure: g_fail,
        weakly_prime_failure: prime_fail,
        weakly_primary_failure: primary_fail,
    }
}

pub fn is_weakly_primal(m: &GradedModule, n: &GradedSubmodule) -> bool {
    homogeneous_ideal_closure(m.ring(), &gw_set(m, n).members).1.is_none()
}

/// `gw(P)` for a graded ideal `P`.
pub fn gw_set_ideal(r: &GradedRing, p: &GradedIdeal) -> ElementSet {
    let h = r.homogeneous_elements();
    let found = h.iter().filter_map(|x| {
        h.iter()
            .find(|&y| {
                let xy = r.mul(x, y);
                !p.contains(y) && xy != r.zero() && p.contains(xy)
            })
            .map(|y| Witness { kind: WitnessKind::NgwpToIdeal, scalar: x, vector: y })
    });
    ElementSet::collect(r.order(), found)
}

pub fn weakly_primal_ideal_failure(r: &GradedRing, p: &GradedIdeal) -> Option<ClosureFailure> {
    homogeneous_ideal_closure(r, &gw_set_ideal(r, p).members).1
}

pub fn is_graded_weakly_primal_ideal(r: &GradedRing, p: &GradedIdeal) -> bool {
    weakly_primal_ideal_failure(r, p).is_none()
}

/// Colon-based characterization of `N` being weakly primal with adjoint
/// `P`, computed without any GWP scan: for homogeneous `p ∉ P ∖ {0}`,
/// `(N :_M p) ∩ h(M) ⊆ N ∪ (0 :_M p)`, and for homogeneous `0 ≠ p ∈ P`
/// the containment fails. Returns false if `p` is not a graded ideal.
pub fn characterization_check(m: &GradedModule, n: &GradedSubmodule, p: &Subset) -> bool {
    let r = m.ring();
    if !r.is_graded_ideal(p) {
        return false;
    }
    r.homogeneous_elements().iter().all(|x| {
        let colon = m.colon_by_element(n, x).into_members().intersection(m.homogeneous_elements());
        let escape = n.members().union(&m.ann_in_module(x));
        let contained = colon.is_subset(&escape);
        let in_p = x != r.zero() && p.contains(x);
        contained != in_p
    })
}
