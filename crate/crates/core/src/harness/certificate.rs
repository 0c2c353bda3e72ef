//! Certificates: self-contained bundles of element-level facts about one
//! instance, re-checkable by [`super::verify`].

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::descriptor::InstanceDescriptor;
use crate::subset::{Elem, Subset};

/// Which structure a fact talks about: the instance itself or its
/// localization at the certificate's `s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum At {
    Base,
    Localized,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Universe {
    Ring,
    Module,
}

/// An element, or a fraction `a/s` named by any member pair of its class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElemRef {
    Plain(Elem),
    Fraction(Elem, Elem),
}

impl From<Elem> for ElemRef {
    fn from(x: Elem) -> Self {
        ElemRef::Plain(x)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedSet {
    pub at: At,
    pub universe: Universe,
    pub elements: Vec<ElemRef>,
}

/// A set recomputed by the verifier. Ring-valued expressions are ideals or
/// sets of scalars; module-valued ones are submodules.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SetExpr {
    Named(String),
    /// `{0}` of the ring.
    ZeroIdeal,
    UnitIdeal,
    /// `{0}` of the module.
    ZeroSubmodule,
    WholeModule,
    Gw(Box<SetExpr>),
    G(Box<SetExpr>),
    W(Box<SetExpr>),
    /// `(N :_R M)`.
    ColonRM(Box<SetExpr>),
    /// `(N :_R L)`.
    ColonRL(Box<SetExpr>, Box<SetExpr>),
    GwIdeal(Box<SetExpr>),
    /// Graded ideal generated by a set of scalars.
    IdealGen(Box<SetExpr>),
    /// Graded ideal generated by `GW(N)`.
    Adjoint(Box<SetExpr>),
    /// `IN`.
    IdealTimes(Box<SetExpr>, Box<SetExpr>),
    /// `(0 :_R M)`.
    Ann,
    /// `X_S`, for a module set `X` of the base structure.
    Ext(Box<SetExpr>),
    /// `I_S`, for a ring set `I` of the base structure.
    ExtIdeal(Box<SetExpr>),
    /// `φ⁻¹(X)` for a module set of the localized structure.
    Contract(Box<SetExpr>),
    /// `φ⁻¹(I)` for a ring set of the localized structure.
    ContractIdeal(Box<SetExpr>),
}

impl SetExpr {
    pub fn named(s: &str) -> Self {
        SetExpr::Named(s.to_string())
    }

    pub fn b(self) -> Box<Self> {
        Box::new(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rel {
    Subset,
    Equal,
    Disjoint,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "name")]
pub enum Predicate {
    /// args: `N`.
    WeaklyPrimal,
    Primal,
    WeaklyPrime,
    WeaklyPrimary,
    GradedSubmodule,
    /// args: `N`, `P`.
    WeaklyPrimalWithAdjoint,
    Characterization,
    /// args: `P`.
    WeaklyPrimalIdeal,
    /// Double-loop condition only, without requiring `P ≠ R`.
    WeaklyPrimeIdeal,
    GradedIdeal,
    /// No args.
    Faithful,
    Multiplication,
    Cyclic,
    WpRing { max_len: usize, proper_only: bool },
    WpModule { max_len: usize, proper_only: bool },
}

/// Facts about the integer instance `(Z, mZ)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "int")]
pub enum IntFact {
    /// `y ∉ mZ`, `0 ≠ xy ∈ mZ`.
    Ngwp { x: i64, y: i64 },
    Gwp { x: i64 },
    NotPrimeTo { x: i64, y: i64 },
    PrimeTo { x: i64 },
    Flag { predicate: IntPredicate, value: bool },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IntPredicate {
    WeaklyPrimal,
    Primal,
    WeaklyPrime,
    WeaklyPrimary,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "fact")]
pub enum Fact {
    /// `x, m` homogeneous, `m ∉ N`, `0 ≠ xm ∈ N`.
    Ngwp { at: At, x: ElemRef, m: ElemRef, n: SetExpr },
    /// No homogeneous `m` witnesses `Ngwp`.
    Gwp { at: At, x: ElemRef, n: SetExpr },
    /// `x, m` homogeneous, `m ∉ N`, `xm ∈ N`.
    NotPrimeTo { at: At, x: ElemRef, m: ElemRef, n: SetExpr },
    PrimeTo { at: At, x: ElemRef, n: SetExpr },
    /// `m ∉ N`, `0 ≠ xm ∈ N`, no homogeneity required.
    NotWeaklyPrimeUngraded { at: At, x: ElemRef, m: ElemRef, n: SetExpr },
    /// `x, y` homogeneous, `y ∉ P`, `0 ≠ xy ∈ P`.
    NgwpIdeal { at: At, x: ElemRef, y: ElemRef, p: SetExpr },
    /// `x, y` homogeneous, `x, y ∉ P`, `0 ≠ xy ∈ P`.
    NotWeaklyPrimeIdeal { at: At, x: ElemRef, y: ElemRef, p: SetExpr },
    /// `target = Σ r_k g_k` with each `g_k` in `generators`.
    InIdealSpan { at: At, target: ElemRef, terms: Vec<(ElemRef, ElemRef)>, generators: SetExpr },
    Homogeneous { at: At, universe: Universe, x: ElemRef, holds: bool },
    Member { at: At, universe: Universe, x: ElemRef, set: SetExpr, holds: bool },
    Relation { at: At, universe: Universe, rel: Rel, a: SetExpr, b: SetExpr, holds: bool },
    Flag { at: At, predicate: Predicate, args: Vec<SetExpr>, value: bool },
    /// `target = P_1 ⋯ P_n · tail` (or `P_1 ⋯ P_n` without a tail), every
    /// factor a weakly primal ideal (proper if `proper_only`), the tail
    /// weakly primal.
    Factorizes { target: SetExpr, factors: Vec<SetExpr>, tail: Option<SetExpr>, proper_only: bool },
    Int(IntFact),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub instance: InstanceDescriptor,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<Vec<Elem>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub sets: BTreeMap<String, NamedSet>,
    pub facts: Vec<Fact>,
}

impl Certificate {
    pub fn new(instance: InstanceDescriptor) -> Self {
        Self { instance, s: None, sets: BTreeMap::new(), facts: Vec::new() }
    }

    pub fn with_s(mut self, s: &Subset) -> Self {
        self.s = Some(s.to_vec());
        self
    }

    pub fn set(mut self, name: &str, universe: Universe, members: &Subset) -> Self {
        self.sets.insert(
            name.to_string(),
            NamedSet { at: At::Base, universe, elements: members.iter().map(ElemRef::Plain).collect() },
        );
        self
    }

    pub fn set_localized(mut self, name: &str, universe: Universe, pairs: Vec<(Elem, Elem)>) -> Self {
        self.sets.insert(
            name.to_string(),
            NamedSet { at: At::Localized, universe, elements: pairs.into_iter().map(|(a, s)| ElemRef::Fraction(a, s)).collect() },
        );
        self
    }

    pub fn fact(mut self, f: Fact) -> Self {
        self.facts.push(f);
        self
    }

    pub fn facts(mut self, fs: impl IntoIterator<Item = Fact>) -> Self {
        self.facts.extend(fs);
        self
    }
}
