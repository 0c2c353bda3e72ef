//! Weakly primal factorizations of graded ideals and submodules.
//!
//! Products are searched up to a length bound with factors in
//! non-decreasing enumeration order. The empty product is allowed: it is
//! `R` for ideals, and leaves `N = N*` for submodules.

use std::collections::HashMap;

use serde::Serialize;

use crate::algebra::{GradedIdeal, GradedRing};
use crate::error::{AlgebraError, Result};
use crate::module::{GradedModule, GradedSubmodule};
use crate::primality::{is_graded_weakly_primal_ideal, is_weakly_primal};

pub const DEFAULT_MAX_FACTORS: usize = 4;

/// Whether factors may be the unit ideal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FactorConvention {
    AnyIdeal,
    ProperOnly,
}

impl FactorConvention {
    pub const ALL: [FactorConvention; 2] = [FactorConvention::AnyIdeal, FactorConvention::ProperOnly];
}

/// `N = P_1 ⋯ P_n N*`, or `I = P_1 ⋯ P_n` when `tail` is `None`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Factorization {
    pub factors: Vec<GradedIdeal>,
    pub tail: Option<GradedSubmodule>,
}

impl Factorization {
    /// Recomputes the product from scratch.
    pub fn ideal_product(&self, r: &GradedRing) -> GradedIdeal {
        self.factors.iter().fold(r.unit_ideal(), |acc, p| r.ideal_product(&acc, p).expect("factors live in r"))
    }

    pub fn module_product(&self, m: &GradedModule) -> Option<GradedSubmodule> {
        let tail = self.tail.as_ref()?;
        Some(m.ideal_times_submodule(&self.ideal_product(m.ring()), tail))
    }
}

/// The search space was exhausted without a factorization.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NotFound {
    pub searched: usize,
}

/// Distinct products of at most `max_len` factors, each with the first
/// factor tuple reaching it, in search order.
struct Products {
    factors: Vec<GradedIdeal>,
    products: Vec<(GradedIdeal, Vec<usize>)>,
    tuples: usize,
}

impl Products {
    fn new(r: &GradedRing, factors: Vec<GradedIdeal>, max_len: usize) -> Self {
        let mut first: HashMap<GradedIdeal, usize> = HashMap::new();
        let mut products = vec![(r.unit_ideal(), Vec::new())];
        first.insert(r.unit_ideal(), 0);
        let mut layer: Vec<(GradedIdeal, Vec<usize>)> = vec![(r.unit_ideal(), Vec::new())];
        let mut tuples = 1;
        for _ in 0..max_len {
            let mut next = Vec::new();
            for (acc, tuple) in &layer {
                let start = tuple.last().copied().unwrap_or(0);
                for (j, p) in factors.iter().enumerate().skip(start) {
                    let prod = r.ideal_product(acc, p).expect("same ring");
                    let mut t = tuple.clone();
                    t.push(j);
                    tuples += 1;
                    if !first.contains_key(&prod) {
                        first.insert(prod.clone(), products.len());
                        products.push((prod.clone(), t.clone()));
                    }
                    next.push((prod, t));
                }
            }
            layer = next;
        }
        Self { factors, products, tuples }
    }

    fn factorization(&self, tuple: &[usize], tail: Option<GradedSubmodule>) -> Factorization {
        Factorization { factors: tuple.iter().map(|&i| self.factors[i].clone()).collect(), tail }
    }
}

pub fn weakly_primal_ideals(r: &GradedRing, bound: usize, convention: FactorConvention) -> Result<Vec<GradedIdeal>> {
    Ok(r.enumerate_graded_ideals(bound)?
        .into_iter()
        .filter(|p| convention == FactorConvention::AnyIdeal || !p.contains(r.one()))
        .filter(|p| is_graded_weakly_primal_ideal(r, p))
        .collect())
}

#[derive(Debug, Clone, Serialize)]
pub struct WpRingReport {
    pub is_wp: bool,
    /// Every graded ideal with its first factorization, if found.
    pub ideals: Vec<(GradedIdeal, std::result::Result<Factorization, NotFound>)>,
}

impl WpRingReport {
    pub fn first_unfactorable(&self) -> Option<&GradedIdeal> {
        self.ideals.iter().find(|(_, f)| f.is_err()).map(|(i, _)| i)
    }
}

pub fn is_wp_ring(r: &GradedRing, max_len: usize, convention: FactorConvention, bound: usize) -> Result<WpRingReport> {
    let search = Products::new(r, weakly_primal_ideals(r, bound, convention)?, max_len);
    let ideals: Vec<_> = r
        .enumerate_graded_ideals(bound)?
        .into_iter()
        .map(|i| {
            let f = search
                .products
                .iter()
                .find(|(p, _)| *p == i)
                .map(|(_, t)| search.factorization(t, None))
                .ok_or(NotFound { searched: search.tuples });
            (i, f)
        })
        .collect();
    Ok(WpRingReport { is_wp: ideals.iter().all(|(_, f)| f.is_ok()), ideals })
}

/// Factorization search for every submodule of `M` at once.
pub struct ModuleSearch<'a> {
    module: &'a GradedModule,
    products: Products,
    tails: Vec<GradedSubmodule>,
}

impl<'a> ModuleSearch<'a> {
    pub fn new(m: &'a GradedModule, max_len: usize, convention: FactorConvention, bound: usize) -> Result<Self> {
        let r = m.ring();
        let products = Products::new(r, weakly_primal_ideals(r, bound, convention)?, max_len);
        let tails = m.enumerate_graded_submodules(bound)?.into_iter().filter(|n| is_weakly_primal(m, n)).collect();
        Ok(Self { module: m, products, tails })
    }

    /// First factorization of `N` in search order: shorter factor tuples
    /// first, then tuple order, then tail enumeration order.
    pub fn factorize(&self, n: &GradedSubmodule) -> std::result::Result<Factorization, NotFound> {
        let mut ranked: Vec<&(GradedIdeal, Vec<usize>)> = self.products.products.iter().collect();
        ranked.sort_by(|a, b| (a.1.len(), &a.1).cmp(&(b.1.len(), &b.1)));
        for (ideal, tuple) in ranked {
            for tail in &self.tails {
                if self.module.ideal_times_submodule(ideal, tail) == *n {
                    return Ok(self.products.factorization(tuple, Some(tail.clone())));
                }
            }
        }
        Err(NotFound { searched: self.products.tuples * self.tails.len() })
    }
}

pub fn weakly_primal_factorization(
    m: &GradedModule,
    n: &GradedSubmodule,
    max_len: usize,
    convention: FactorConvention,
    bound: usize,
) -> Result<std::result::Result<Factorization, NotFound>> {
    Ok(ModuleSearch::new(m, max_len, convention, bound)?.factorize(n))
}

#[derive(Debug, Clone, Serialize)]
pub struct WpModuleReport {
    pub is_wp: bool,
    pub submodules: Vec<(GradedSubmodule, std::result::Result<Factorization, NotFound>)>,
}

impl WpModuleReport {
    pub fn first_unfactorable(&self) -> Option<&GradedSubmodule> {
        self.submodules.iter().find(|(_, f)| f.is_err()).map(|(n, _)| n)
    }
}

pub fn is_wp_module(m: &GradedModule, max_len: usize, convention: FactorConvention, bound: usize) -> Result<WpModuleReport> {
    let search = ModuleSearch::new(m, max_len, convention, bound)?;
    let submodules: Vec<_> = m.enumerate_graded_submodules(bound)?.into_iter().map(|n| {
        let f = search.factorize(&n);
        (n, f)
    }).collect();
    Ok(WpModuleReport { is_wp: submodules.iter().all(|(_, f)| f.is_ok()), submodules })
}

/// Outcome of checking "WP-ring ⇒ WP-module" for a faithful finitely
/// generated multiplication module.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "snake_case", tag = "outcome")]
pub enum Thm5Check {
    /// `R` is not a WP-ring, so the implication holds vacuously.
    RingNotWp { ideal: GradedIdeal },
    Holds,
    Fails { submodule: GradedSubmodule, searched: usize },
}

pub fn check_thm5(m: &GradedModule, max_len: usize, convention: FactorConvention, bound: usize) -> Result<Thm5Check> {
    if !m.is_faithful() {
        return Err(AlgebraError::HypothesisUnmet("M is not faithful".into()));
    }
    if let Some(n) = m.multiplication_failure(bound)? {
        return Err(AlgebraError::HypothesisUnmet(format!("M is not a multiplication module: {} ≠ (N:M)M", n.members())));
    }
    let ring = is_wp_ring(m.ring(), max_len, convention, bound)?;
    if let Some(i) = ring.first_unfactorable() {
        return Ok(Thm5Check::RingNotWp { ideal: i.clone() });
    }
    let module = is_wp_module(m, max_len, convention, bound)?;
    Ok(match module.submodules.into_iter().find(|(_, f)| f.is_err()) {
        Some((n, Err(nf))) => Thm5Check::Fails { submodule: n, searched: nf.searched },
        _ => Thm5Check::Holds,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct Rem2Check {
    pub pm_colon: GradedIdeal,
    pub equal: bool,
}

/// Compares `(PM :_R M)` with `P`. Requires `M` multiplication and
/// `(0 :_R M) ⊆ P`.
pub fn check_rem2(m: &GradedModule, p: &GradedIdeal, bound: usize) -> Result<Rem2Check> {
    if m.multiplication_failure(bound)?.is_some() {
        return Err(AlgebraError::HypothesisUnmet("M is not a multiplication module".into()));
    }
    if !m.ann_of_module().is_subset(p) {
        return Err(AlgebraError::HypothesisUnmet("(0 :_R M) ⊄ P".into()));
    }
    let pm_colon = m.colon_into_ring(&m.ideal_times_module(p));
    let equal = pm_colon == *p;
    Ok(Rem2Check { pm_colon, equal })
}
