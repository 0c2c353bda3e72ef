//! The claim registry: one entry per statement, in source order, each with
//! an exhaustive evaluator and a certificate builder for counterexamples.

use std::sync::Arc;

use super::budget::Budget;
use super::certificate::{At, Certificate, ElemRef, Fact, IntFact, IntPredicate, Predicate, Rel, SetExpr as E, Universe};
use super::context::{CtxKind, FiniteCtx, InstanceCtx};
use super::descriptor::InstanceDescriptor;
use super::report::{ClaimStatus, Counts, PartResult};
use crate::algebra::{GradedIdeal, MultiplicativeSet};
use crate::error::{AlgebraError, Result};
use crate::factorization::{check_rem2, check_thm5, is_wp_module, is_wp_ring, FactorConvention, Factorization, Thm5Check};
use crate::localization::{colon_localization_check, correspondence_check, CorrespondenceFailure, LocalizedModule};
use crate::module::{GradedSubmodule, ResidueSummary, ZInstance};
use crate::primality::{characterization_check, classify, gw_set_ideal, is_graded_weakly_primal_ideal, PrimalityVerdict};
use crate::subset::{Elem, Subset};

/// Everything one (claim, instance) evaluation produced.
#[derive(Debug, Default)]
pub struct Tally {
    pub counts: Counts,
    pub notes: Vec<String>,
    pub certificate: Option<Certificate>,
    pub evidence: Vec<Certificate>,
    pub parts: Vec<PartResult>,
    pub unmet: Option<String>,
}

impl Tally {
    /// Records one case. `refute` runs only for the first failing case.
    fn case(&mut self, hypothesis: bool, holds: impl FnOnce() -> bool, refute: impl FnOnce() -> Certificate) {
        self.counts.cases += 1;
        if !hypothesis {
            return;
        }
        self.counts.hypothesis_met += 1;
        if holds() {
            self.counts.confirmed += 1;
        } else {
            self.counts.refuted += 1;
            if self.certificate.is_none() {
                self.certificate = Some(refute());
            }
        }
    }

    fn unmet(reason: &str) -> Self {
        Self { unmet: Some(reason.to_string()), ..Self::default() }
    }

    pub fn status(&self) -> ClaimStatus {
        if self.counts.refuted > 0 {
            ClaimStatus::Refuted
        } else if self.counts.confirmed > 0 {
            ClaimStatus::Confirmed
        } else {
            ClaimStatus::HypothesisUnmet
        }
    }

    fn from_parts(parts: Vec<PartResult>) -> Self {
        let mut t = Tally::default();
        for p in &parts {
            t.counts.cases += 1;
            t.counts.hypothesis_met += 1;
            if p.status == ClaimStatus::Confirmed {
                t.counts.confirmed += 1;
            } else {
                t.counts.refuted += 1;
                if t.certificate.is_none() {
                    t.certificate = Some(p.certificate.clone());
                }
            }
        }
        t.parts = parts;
        t
    }
}

type Eval = fn(&InstanceCtx, &Budget) -> Result<Tally>;

pub struct ClaimSpec {
    pub id: &'static str,
    /// The statement checked, in plain mathematical terms.
    pub statement: &'static str,
    /// Only these instances are evaluated; `None` means all.
    pub instance: Option<ZInstance>,
    eval: Eval,
}

impl ClaimSpec {
    pub fn applies(&self, d: &InstanceDescriptor) -> bool {
        match (self.instance, d) {
            (None, _) => true,
            (Some(z), InstanceDescriptor::Integer(w)) => z == *w,
            _ => false,
        }
    }

    pub fn evaluate(&self, ctx: &InstanceCtx, budget: &Budget) -> Result<Tally> {
        if let CtxKind::Broken(e) = &ctx.kind {
            return Err(e.clone());
        }
        (self.eval)(ctx, budget)
    }
}

const NEEDS_TABLES: &str = "requires finite table model";

macro_rules! claim {
    ($id:expr, $stmt:expr, $eval:expr) => {
        ClaimSpec { id: $id, statement: $stmt, instance: None, eval: $eval }
    };
    ($id:expr, $stmt:expr, $eval:expr, $inst:expr) => {
        ClaimSpec { id: $id, statement: $stmt, instance: Some($inst), eval: $eval }
    };
}

pub fn registry() -> Vec<ClaimSpec> {
    vec![
        claim!("lem1", "every graded primal submodule is graded weakly primal", lem1),
        claim!("rem1.1", "0 is a GWP to N", rem1_1),
        claim!("rem1.2", "a homogeneous x prime to N is a GWP to N", rem1_2),
        claim!("rem1.3", "W(N) ⊆ GW(N)", rem1_3),
        claim!("lem2.1", "every nonzero homogeneous element of (N :_R M) lies in GW(N)", lem2_1),
        claim!("lem2.2", "gw((N :_R M)) ⊆ GW(N)", lem2_2),
        claim!("prop1", "N is P-weakly primal iff (N :_M p) = N ∪ (0 :_M p) on h(M) exactly for homogeneous p ∉ P ∖ {0}", prop1),
        claim!("thm1", "M cyclic, N weakly primal ⇒ (N :_R M) is a graded weakly primal ideal", thm1),
        claim!("thm2", "N weakly primal ⇒ its adjoint ideal is graded weakly prime", thm2),
        claim!("thm3", "N weakly primal, (N :_R M) ⊆ P, (N :_R M)N ≠ 0 ⇒ N primal", thm3),
        claim!("thm4.1", "graded weakly primary ⇒ graded weakly primal", thm4_1),
        claim!("thm4.2", "graded weakly prime ⇒ graded weakly primal", thm4_2),
        claim!("rem2", "M multiplication, (0 :_R M) ⊆ P ⇒ (PM :_R M) = P", rem2),
        claim!("prop2", "M multiplication, P weakly primal ideal ⊇ (0 :_R M) ⇒ PM weakly primal", prop2),
        claim!("thm5", "M faithful multiplication, R a WP-ring ⇒ M a WP-module", thm5),
        claim!("prop3.1", "M faithful, N P-weakly primal ⇒ (N :_R M) ⊆ P", prop3_1),
        claim!("prop3.2", "M faithful, N 0-weakly primal ⇒ M/N faithful, i.e. (N :_R M) = 0", prop3_2),
        claim!("thm6.1", "N weakly primal, GW(N) ∩ S = ∅, 0 ≠ n/s ∈ N_S with n homogeneous ⇒ n ∈ N", thm6_1),
        claim!("thm6.2", "N weakly primal, GW(N) ∩ S = ∅ ⇒ (N :_R L)_S = (N_S :_{R_S} L_S)", thm6_2),
        claim!("prop4", "N P-weakly primal in M_S ⇒ N ∩ M is (P ∩ R)-weakly primal", prop4),
        claim!("thm7.1", "N P-weakly primal, P ∩ S = ∅ ⇒ N_S is P_S-weakly primal", thm7_1),
        claim!("thm7.2", "N P-weakly primal, P ∩ S = ∅ ⇒ N = N_S ∩ M", thm7_2),
        claim!("thm8", "P weakly prime, P ∩ S = ∅ ⇒ P-weakly primal submodules of M correspond to P_S-weakly primal submodules of M_S", thm8),
        claim!("exm1.1", "(Z, 12Z): 3 is NGWP, GW(N) = Z, N weakly primal, N not primal", exm1_1, ZInstance::Integers { m: 12 }),
        claim!("exm1.2", "(Z_24, 8Z_24): 2, 4 ∈ GW(N), 6 is GWP, N not weakly primal, N primal", exm1_2, ZInstance::Cyclic { n: 24, d: 8 }),
        claim!("exm1.3", "(Z_12, 0): GW(N) = ∅, N weakly primal, 3, 4 ∈ G(N), 1 prime to N, N not primal", exm1_3, ZInstance::Cyclic { n: 12, d: 12 }),
        claim!("exm1.4", "(Z_32, 8Z_32): 4 not prime to N, 4 is GWP to N", exm1_4, ZInstance::Cyclic { n: 32, d: 8 }),
    ]
}

// ---------------------------------------------------------------------------
// certificate helpers

fn cert(ctx: &InstanceCtx) -> Certificate {
    Certificate::new(ctx.descriptor.clone())
}

fn n() -> E {
    E::named("N")
}

fn with_n(ctx: &InstanceCtx, sub: &GradedSubmodule) -> Certificate {
    cert(ctx).set("N", Universe::Module, sub.members())
}

fn flag(at: At, predicate: Predicate, args: Vec<E>, value: bool) -> Fact {
    Fact::Flag { at, predicate, args, value }
}

fn member(at: At, universe: Universe, x: impl Into<ElemRef>, set: E, holds: bool) -> Fact {
    Fact::Member { at, universe, x: x.into(), set, holds }
}

fn relation(at: At, universe: Universe, rel: Rel, a: E, b: E, holds: bool) -> Fact {
    Fact::Relation { at, universe, rel, a, b, holds }
}

fn ngwp(v: &PrimalityVerdict, x: Elem) -> Fact {
    let w = v.gw_set.witness(x).expect("GW members carry witnesses");
    Fact::Ngwp { at: At::Base, x: x.into(), m: w.vector.into(), n: n() }
}

/// Why GW(N) ∪ {0} is not the homogeneous part of the ideal it generates.
fn gw_closure_facts(v: &PrimalityVerdict) -> Vec<Fact> {
    let mut out = Vec::new();
    if let Some(cf) = &v.gw_closure_failure {
        for &(_, g) in &cf.expression {
            out.push(ngwp(v, g));
        }
        out.push(Fact::InIdealSpan {
            at: At::Base,
            target: cf.target.into(),
            terms: cf.expression.iter().map(|&(r, g)| (r.into(), g.into())).collect(),
            generators: E::Gw(n().b()),
        });
        out.push(Fact::Gwp { at: At::Base, x: cf.target.into(), n: n() });
    }
    out.push(flag(At::Base, Predicate::WeaklyPrimal, vec![n()], v.is_weakly_primal));
    out
}

fn g_closure_facts(v: &PrimalityVerdict) -> Vec<Fact> {
    let mut out = Vec::new();
    if let Some(cf) = &v.g_closure_failure {
        for &(_, g) in &cf.expression {
            let w = v.g_set.witness(g).expect("G members carry witnesses");
            out.push(Fact::NotPrimeTo { at: At::Base, x: g.into(), m: w.vector.into(), n: n() });
        }
        out.push(Fact::InIdealSpan {
            at: At::Base,
            target: cf.target.into(),
            terms: cf.expression.iter().map(|&(r, g)| (r.into(), g.into())).collect(),
            generators: E::G(n().b()),
        });
        out.push(Fact::PrimeTo { at: At::Base, x: cf.target.into(), n: n() });
    }
    out.push(flag(At::Base, Predicate::Primal, vec![n()], v.is_primal));
    out
}

fn finite(ctx: &InstanceCtx) -> Option<&FiniteCtx> {
    match &ctx.kind {
        CtxKind::Finite(f) => Some(f),
        _ => None,
    }
}

/// Runs `f` on every (N, verdict) pair of a finite instance.
fn per_submodule(ctx: &InstanceCtx, mut f: impl FnMut(&mut Tally, &FiniteCtx, &GradedSubmodule, &PrimalityVerdict) -> Result<()>) -> Result<Tally> {
    let Some(fc) = finite(ctx) else {
        return Ok(Tally::unmet(NEEDS_TABLES));
    };
    let mut t = Tally::default();
    for (sub, v) in fc.submodules()?.iter().zip(fc.verdicts()?) {
        f(&mut t, fc, sub, v)?;
    }
    Ok(t)
}

/// Runs `f` on every (S, M_S) pair of a finite instance.
fn per_localization(ctx: &InstanceCtx, mut f: impl FnMut(&mut Tally, &FiniteCtx, &MultiplicativeSet, &Arc<LocalizedModule>) -> Result<()>) -> Result<Tally> {
    let Some(fc) = finite(ctx) else {
        return Ok(Tally::unmet(NEEDS_TABLES));
    };
    let mut t = Tally::default();
    for (s, lm) in fc.s_sets()?.iter().zip(fc.localizations()?) {
        let lm = lm.as_ref().map_err(Clone::clone)?;
        f(&mut t, fc, s, lm)?;
    }
    Ok(t)
}

fn residue_window(m: usize) -> std::ops::RangeInclusive<i64> {
    let m = m as i64;
    -2 * m..=2 * m
}

fn smallest_killer(m: i64, x: i64) -> Option<i64> {
    (1..m).find(|y| (x * y).rem_euclid(m) == 0)
}

fn integer(ctx: &InstanceCtx) -> Option<(usize, &ResidueSummary)> {
    match &ctx.kind {
        CtxKind::Integer(ZInstance::Integers { m }, s) => Some((*m, s)),
        _ => None,
    }
}

fn int_cert(ctx: &InstanceCtx, facts: Vec<IntFact>) -> Certificate {
    cert(ctx).facts(facts.into_iter().map(Fact::Int))
}

/// Integer facts placing `x` inside or outside GW(mZ).
fn int_gw_fact(m: usize, s: &ResidueSummary, x: i64) -> IntFact {
    if s.gw.contains(x) {
        let y = smallest_killer(m as i64, x).expect("GW members are zero divisors mod m");
        IntFact::Ngwp { x, y }
    } else {
        IntFact::Gwp { x }
    }
}

// ---------------------------------------------------------------------------
// section 2

fn lem1(ctx: &InstanceCtx, _: &Budget) -> Result<Tally> {
    if let Some((_, s)) = integer(ctx) {
        let mut t = Tally::default();
        t.case(s.is_primal, || s.is_weakly_primal, || {
            int_cert(ctx, vec![IntFact::Flag { predicate: IntPredicate::Primal, value: true }, IntFact::Flag { predicate: IntPredicate::WeaklyPrimal, value: false }])
        });
        return Ok(t);
    }
    per_submodule(ctx, |t, _, sub, v| {
        t.case(v.is_primal, || v.is_weakly_primal, || with_n(ctx, sub).fact(flag(At::Base, Predicate::Primal, vec![n()], true)).facts(gw_closure_facts(v)));
        Ok(())
    })
}

fn rem1_1(ctx: &InstanceCtx, _: &Budget) -> Result<Tally> {
    if let Some((m, s)) = integer(ctx) {
        let mut t = Tally::default();
        t.case(true, || !s.gw.contains(0), || int_cert(ctx, vec![int_gw_fact(m, s, 0)]));
        return Ok(t);
    }
    per_submodule(ctx, |t, fc, sub, v| {
        let zero = fc.module.ring().zero();
        t.case(true, || !v.gw_set.contains(zero), || with_n(ctx, sub).fact(ngwp(v, zero)));
        Ok(())
    })
}

fn rem1_2(ctx: &InstanceCtx, _: &Budget) -> Result<Tally> {
    if let Some((m, s)) = integer(ctx) {
        let mut t = Tally::default();
        for x in residue_window(m) {
            t.case(!s.g.contains(x), || !s.gw.contains(x), || int_cert(ctx, vec![IntFact::PrimeTo { x }, int_gw_fact(m, s, x)]));
        }
        return Ok(t);
    }
    per_submodule(ctx, |t, fc, sub, v| {
        for x in fc.module.ring().homogeneous_elements().iter() {
            t.case(!v.g_set.contains(x), || !v.gw_set.contains(x), || {
                with_n(ctx, sub).facts([Fact::PrimeTo { at: At::Base, x: x.into(), n: n() }, ngwp(v, x)])
            });
        }
        Ok(())
    })
}

fn rem1_3(ctx: &InstanceCtx, _: &Budget) -> Result<Tally> {
    if let Some((m, s)) = integer(ctx) {
        let mut t = Tally::default();
        for x in residue_window(m) {
            t.case(s.w.contains(x), || s.gw.contains(x), || int_cert(ctx, vec![int_gw_fact(m, s, x)]));
        }
        return Ok(t);
    }
    per_submodule(ctx, |t, _, sub, v| {
        for x in v.w_set.members.iter() {
            t.case(true, || v.gw_set.contains(x), || {
                let w = v.w_set.witness(x).expect("W members carry witnesses");
                with_n(ctx, sub).facts([
                    Fact::NotWeaklyPrimeUngraded { at: At::Base, x: x.into(), m: w.vector.into(), n: n() },
                    member(At::Base, Universe::Ring, x, E::Gw(n().b()), false),
                ])
            });
        }
        Ok(())
    })
}

fn lem2_1(ctx: &InstanceCtx, _: &Budget) -> Result<Tally> {
    per_submodule(ctx, |t, fc, sub, v| {
        let r = fc.module.ring();
        let colon = fc.module.colon_into_ring(sub);
        for x in colon.members().iter().filter(|&x| x != r.zero() && r.is_homogeneous(x)) {
            t.case(true, || v.gw_set.contains(x), || {
                with_n(ctx, sub).facts([
                    member(At::Base, Universe::Ring, x, E::ColonRM(n().b()), true),
                    member(At::Base, Universe::Ring, x, E::ZeroIdeal, false),
                    Fact::Homogeneous { at: At::Base, universe: Universe::Ring, x: x.into(), holds: true },
                    Fact::Gwp { at: At::Base, x: x.into(), n: n() },
                ])
            });
        }
        Ok(())
    })
}

fn lem2_2(ctx: &InstanceCtx, _: &Budget) -> Result<Tally> {
    per_submodule(ctx, |t, fc, sub, v| {
        let colon = fc.module.colon_into_ring(sub);
        let gw = gw_set_ideal(fc.module.ring(), &colon);
        for x in gw.members.iter() {
            t.case(true, || v.gw_set.contains(x), || {
                let w = gw.witness(x).expect("gw members carry witnesses");
                with_n(ctx, sub).facts([
                    Fact::NgwpIdeal { at: At::Base, x: x.into(), y: w.vector.into(), p: E::ColonRM(n().b()) },
                    Fact::Gwp { at: At::Base, x: x.into(), n: n() },
                ])
            });
        }
        Ok(())
    })
}

fn prop1(ctx: &InstanceCtx, _: &Budget) -> Result<Tally> {
    per_submodule(ctx, |t, fc, sub, v| {
        for p in fc.ideals()? {
            let by_colon = characterization_check(&fc.module, sub, p.members());
            let by_scan = v.is_weakly_primal && v.adjoint.as_ref() == Some(p);
            t.case(true, || by_colon == by_scan, || {
                with_n(ctx, sub).set("P", Universe::Ring, p.members()).facts([
                    flag(At::Base, Predicate::Characterization, vec![n(), E::named("P")], by_colon),
                    flag(At::Base, Predicate::WeaklyPrimalWithAdjoint, vec![n(), E::named("P")], by_scan),
                ])
            });
        }
        Ok(())
    })
}

fn thm1(ctx: &InstanceCtx, _: &Budget) -> Result<Tally> {
    let mut gw_equal = 0;
    let mut t = per_submodule(ctx, |t, fc, sub, v| {
        let hyp = fc.module.is_cyclic() && v.is_weakly_primal;
        let colon = fc.module.colon_into_ring(sub);
        let r = fc.module.ring();
        if hyp && gw_set_ideal(r, &colon).members == v.gw_set.members {
            gw_equal += 1;
        }
        t.case(hyp, || is_graded_weakly_primal_ideal(r, &colon), || {
            with_n(ctx, sub).facts([
                flag(At::Base, Predicate::Cyclic, vec![], true),
                flag(At::Base, Predicate::WeaklyPrimal, vec![n()], true),
                flag(At::Base, Predicate::WeaklyPrimalIdeal, vec![E::ColonRM(n().b())], false),
            ])
        });
        Ok(())
    })?;
    if t.counts.hypothesis_met > 0 {
        t.notes.push(format!("gw((N:M)) = GW(N) in {gw_equal} of {} cases", t.counts.hypothesis_met));
    }
    Ok(t)
}

fn thm2(ctx: &InstanceCtx, _: &Budget) -> Result<Tally> {
    if let Some((m, s)) = integer(ctx) {
        // The adjoint of mZ is dZ with d the gcd of m and the GW residues.
        let gcd = |mut a: usize, mut b: usize| {
            while b != 0 {
                (a, b) = (b, a % b);
            }
            a
        };
        let d = s.gw.residues.iter().fold(m, |acc, &r| gcd(acc, r));
        let prime = d == 1 || (2..d).all(|k| d % k != 0);
        let mut t = Tally::default();
        t.case(s.is_weakly_primal, || prime, || {
            int_cert(ctx, vec![IntFact::Flag { predicate: IntPredicate::WeaklyPrimal, value: true }, int_gw_fact(m, s, d as i64)])
        });
        t.notes.push(format!("adjoint {d}Z"));
        return Ok(t);
    }
    per_submodule(ctx, |t, fc, sub, v| {
        let r = fc.module.ring();
        let counter = match &v.adjoint {
            Some(p) if v.is_weakly_primal && !p.contains(r.one()) => r.weakly_prime_counterexample(p)?,
            _ => None,
        };
        t.case(v.is_weakly_primal, || counter.is_none(), || {
            let (x, y) = counter.expect("refuted");
            with_n(ctx, sub).facts([
                flag(At::Base, Predicate::WeaklyPrimal, vec![n()], true),
                Fact::NotWeaklyPrimeIdeal { at: At::Base, x: x.into(), y: y.into(), p: E::Adjoint(n().b()) },
            ])
        });
        Ok(())
    })
}

fn thm3(ctx: &InstanceCtx, _: &Budget) -> Result<Tally> {
    per_submodule(ctx, |t, fc, sub, v| {
        let m = &fc.module;
        let colon = m.colon_into_ring(sub);
        let hyp = match &v.adjoint {
            Some(p) if v.is_weakly_primal => colon.is_subset(p) && m.ideal_times_submodule(&colon, sub) != m.zero_submodule(),
            _ => false,
        };
        t.case(hyp, || v.is_primal, || {
            with_n(ctx, sub)
                .facts([
                    flag(At::Base, Predicate::WeaklyPrimal, vec![n()], true),
                    relation(At::Base, Universe::Ring, Rel::Subset, E::ColonRM(n().b()), E::Adjoint(n().b()), true),
                    relation(At::Base, Universe::Module, Rel::Equal, E::IdealTimes(E::ColonRM(n().b()).b(), n().b()), E::ZeroSubmodule, false),
                ])
                .facts(g_closure_facts(v))
        });
        Ok(())
    })
}

fn thm4(ctx: &InstanceCtx, primary: bool) -> Result<Tally> {
    let (pred, ipred) = if primary {
        (Predicate::WeaklyPrimary, IntPredicate::WeaklyPrimary)
    } else {
        (Predicate::WeaklyPrime, IntPredicate::WeaklyPrime)
    };
    if let Some((_, s)) = integer(ctx) {
        let hyp = if primary { s.is_weakly_primary } else { s.is_weakly_prime };
        let mut t = Tally::default();
        t.case(hyp, || s.is_weakly_primal, || {
            int_cert(ctx, vec![IntFact::Flag { predicate: ipred, value: true }, IntFact::Flag { predicate: IntPredicate::WeaklyPrimal, value: false }])
        });
        return Ok(t);
    }
    per_submodule(ctx, |t, _, sub, v| {
        let hyp = if primary { v.is_weakly_primary } else { v.is_weakly_prime };
        t.case(hyp, || v.is_weakly_primal, || with_n(ctx, sub).fact(flag(At::Base, pred, vec![n()], true)).facts(gw_closure_facts(v)));
        Ok(())
    })
}

fn thm4_1(ctx: &InstanceCtx, _: &Budget) -> Result<Tally> {
    thm4(ctx, true)
}

fn thm4_2(ctx: &InstanceCtx, _: &Budget) -> Result<Tally> {
    thm4(ctx, false)
}

fn per_ideal(ctx: &InstanceCtx, mut f: impl FnMut(&mut Tally, &FiniteCtx, &GradedIdeal) -> Result<()>) -> Result<Tally> {
    let Some(fc) = finite(ctx) else {
        return Ok(Tally::unmet(NEEDS_TABLES));
    };
    let mut t = Tally::default();
    for p in fc.ideals()? {
        f(&mut t, fc, p)?;
    }
    Ok(t)
}

fn with_p(ctx: &InstanceCtx, p: &GradedIdeal) -> Certificate {
    cert(ctx).set("P", Universe::Ring, p.members())
}

fn rem2(ctx: &InstanceCtx, b: &Budget) -> Result<Tally> {
    per_ideal(ctx, |t, fc, p| {
        let m = &fc.module;
        let hyp = fc.is_multiplication()? && m.ann_of_module().is_subset(p);
        let equal = if hyp { check_rem2(m, p, b.max_order)?.equal } else { true };
        t.case(hyp, || equal, || {
            with_p(ctx, p).facts([
                flag(At::Base, Predicate::Multiplication, vec![], true),
                relation(At::Base, Universe::Ring, Rel::Subset, E::Ann, E::named("P"), true),
                relation(At::Base, Universe::Ring, Rel::Equal, E::ColonRM(E::IdealTimes(E::named("P").b(), E::WholeModule.b()).b()), E::named("P"), false),
            ])
        });
        Ok(())
    })
}

fn prop2(ctx: &InstanceCtx, _: &Budget) -> Result<Tally> {
    per_ideal(ctx, |t, fc, p| {
        let m = &fc.module;
        let r = m.ring();
        let hyp = fc.is_multiplication()? && m.ann_of_module().is_subset(p) && is_graded_weakly_primal_ideal(r, p);
        t.case(hyp, || classify(m, &m.ideal_times_module(p)).is_weakly_primal, || {
            with_p(ctx, p).facts([
                flag(At::Base, Predicate::Multiplication, vec![], true),
                relation(At::Base, Universe::Ring, Rel::Subset, E::Ann, E::named("P"), true),
                flag(At::Base, Predicate::WeaklyPrimalIdeal, vec![E::named("P")], true),
                flag(At::Base, Predicate::WeaklyPrimal, vec![E::IdealTimes(E::named("P").b(), E::WholeModule.b())], false),
            ])
        });
        Ok(())
    })
}

/// Certificate listing every factorization found, for independent rechecking.
fn factorization_evidence(ctx: &InstanceCtx, found: &[(Subset, Factorization)], proper_only: bool) -> Certificate {
    let mut c = cert(ctx);
    let mut facts = Vec::new();
    for (i, (target, f)) in found.iter().enumerate() {
        let module_target = f.tail.is_some();
        let tname = format!("T{i}");
        c = c.set(&tname, if module_target { Universe::Module } else { Universe::Ring }, target);
        let mut factors = Vec::new();
        for (k, p) in f.factors.iter().enumerate() {
            let name = format!("T{i}.P{k}");
            c = c.set(&name, Universe::Ring, p.members());
            factors.push(E::named(&name));
        }
        let tail = f.tail.as_ref().map(|n| {
            let name = format!("T{i}.N");
            c = c.clone().set(&name, Universe::Module, n.members());
            E::named(&name)
        });
        facts.push(Fact::Factorizes { target: E::named(&tname), factors, tail, proper_only });
    }
    c.facts(facts)
}

fn thm5(ctx: &InstanceCtx, b: &Budget) -> Result<Tally> {
    let Some(fc) = finite(ctx) else {
        return Ok(Tally::unmet(NEEDS_TABLES));
    };
    let m = &fc.module;
    let mut t = Tally::default();
    for conv in FactorConvention::ALL {
        let proper_only = conv == FactorConvention::ProperOnly;
        let outcome = match check_thm5(m, b.max_factors, conv, b.max_order) {
            Err(AlgebraError::HypothesisUnmet(_)) => None,
            other => Some(other?),
        };
        let hyp = matches!(outcome, Some(Thm5Check::Holds | Thm5Check::Fails { .. }));
        if let Some(Thm5Check::RingNotWp { ideal }) = &outcome {
            t.notes.push(format!("{conv:?}: R is not a WP-ring (ideal {ideal:?} has no factorization)"));
        }
        if hyp {
            let mut found = Vec::new();
            for (i, f) in is_wp_ring(m.ring(), b.max_factors, conv, b.max_order)?.ideals {
                if let Ok(f) = f {
                    found.push((i.into_members(), f));
                }
            }
            for (n, f) in is_wp_module(m, b.max_factors, conv, b.max_order)?.submodules {
                if let Ok(f) = f {
                    found.push((n.into_members(), f));
                }
            }
            t.evidence.push(factorization_evidence(ctx, &found, proper_only));
        }
        t.case(hyp, || matches!(outcome, Some(Thm5Check::Holds)), || {
            let Some(Thm5Check::Fails { submodule, .. }) = &outcome else { unreachable!() };
            with_n(ctx, submodule).facts([
                flag(At::Base, Predicate::Faithful, vec![], true),
                flag(At::Base, Predicate::Multiplication, vec![], true),
                flag(At::Base, Predicate::WpRing { max_len: b.max_factors, proper_only }, vec![], true),
                flag(At::Base, Predicate::WpModule { max_len: b.max_factors, proper_only }, vec![], false),
                flag(At::Base, Predicate::GradedSubmodule, vec![n()], true),
            ])
        });
    }
    Ok(t)
}

fn prop3_1(ctx: &InstanceCtx, _: &Budget) -> Result<Tally> {
    per_submodule(ctx, |t, fc, sub, v| {
        let m = &fc.module;
        let hyp = m.is_faithful() && v.is_weakly_primal;
        t.case(hyp, || v.adjoint.as_ref().is_some_and(|p| m.colon_into_ring(sub).is_subset(p)), || {
            with_n(ctx, sub).facts([
                flag(At::Base, Predicate::Faithful, vec![], true),
                flag(At::Base, Predicate::WeaklyPrimal, vec![n()], true),
                relation(At::Base, Universe::Ring, Rel::Subset, E::ColonRM(n().b()), E::Adjoint(n().b()), false),
            ])
        });
        Ok(())
    })
}

fn prop3_2(ctx: &InstanceCtx, _: &Budget) -> Result<Tally> {
    per_submodule(ctx, |t, fc, sub, v| {
        let m = &fc.module;
        let hyp = m.is_faithful() && v.gw_set.is_empty();
        t.case(hyp, || m.colon_into_ring(sub) == m.ring().zero_ideal(), || {
            with_n(ctx, sub).facts([
                flag(At::Base, Predicate::Faithful, vec![], true),
                relation(At::Base, Universe::Ring, Rel::Disjoint, E::Gw(n().b()), E::Gw(n().b()), true),
                relation(At::Base, Universe::Ring, Rel::Equal, E::ColonRM(n().b()), E::ZeroIdeal, false),
            ])
        });
        Ok(())
    })
}

// ---------------------------------------------------------------------------
// section 3

fn s_cert(ctx: &InstanceCtx, s: &MultiplicativeSet) -> Certificate {
    cert(ctx).with_s(s.members()).set("S", Universe::Ring, s.members())
}

fn localized_pairs(lm: &LocalizedModule, members: &Subset) -> Vec<(Elem, Elem)> {
    members.iter().map(|c| lm.classes()[c].rep).collect()
}

fn gw_avoids(v: &PrimalityVerdict, s: &MultiplicativeSet) -> bool {
    v.is_weakly_primal && v.gw_set.members.is_disjoint(s.members())
}

fn adjoint_avoids(v: &PrimalityVerdict, s: &MultiplicativeSet) -> bool {
    v.is_weakly_primal && v.adjoint.as_ref().is_some_and(|p| p.members().is_disjoint(s.members()))
}

fn thm6_hypotheses() -> [Fact; 2] {
    [
        flag(At::Base, Predicate::WeaklyPrimal, vec![n()], true),
        relation(At::Base, Universe::Ring, Rel::Disjoint, E::Gw(n().b()), E::named("S"), true),
    ]
}

fn thm6_1(ctx: &InstanceCtx, _: &Budget) -> Result<Tally> {
    per_localization(ctx, |t, fc, s, lm| {
        let m = &fc.module;
        for (sub, v) in fc.submodules()?.iter().zip(fc.verdicts()?) {
            let hyp = gw_avoids(v, s);
            let bad = if hyp {
                let ext = lm.extend(sub)?;
                let zero = lm.module().zero();
                let found = ext.members().iter().filter(|&c| c != zero).flat_map(|c| lm.classes()[c].members.iter().copied()).find(|&(x, _)| m.is_homogeneous(x) && !sub.contains(x));
                found
            } else {
                None
            };
            t.case(hyp, || bad.is_none(), || {
                let (x, d) = bad.expect("refuted");
                s_cert(ctx, s).set("N", Universe::Module, sub.members()).facts(thm6_hypotheses()).facts([
                    member(At::Localized, Universe::Module, ElemRef::Fraction(x, d), E::Ext(n().b()), true),
                    member(At::Localized, Universe::Module, ElemRef::Fraction(x, d), E::ZeroSubmodule, false),
                    Fact::Homogeneous { at: At::Base, universe: Universe::Module, x: x.into(), holds: true },
                    member(At::Base, Universe::Module, x, n(), false),
                ])
            });
        }
        Ok(())
    })
}

fn thm6_2(ctx: &InstanceCtx, _: &Budget) -> Result<Tally> {
    per_localization(ctx, |t, fc, s, lm| {
        let all = fc.all_submodules()?;
        for (sub, v) in fc.submodules()?.iter().zip(fc.verdicts()?) {
            let hyp = gw_avoids(v, s);
            for l in &all {
                let equal = if hyp { colon_localization_check(lm, sub, l)?.equal } else { true };
                t.case(hyp, || equal, || {
                    s_cert(ctx, s).set("N", Universe::Module, sub.members()).set("L", Universe::Module, l.members()).facts(thm6_hypotheses()).fact(relation(
                        At::Localized,
                        Universe::Ring,
                        Rel::Equal,
                        E::ExtIdeal(E::ColonRL(n().b(), E::named("L").b()).b()),
                        E::ColonRL(E::Ext(n().b()).b(), E::Ext(E::named("L").b()).b()),
                        false,
                    ))
                });
            }
        }
        Ok(())
    })
}

fn prop4(ctx: &InstanceCtx, b: &Budget) -> Result<Tally> {
    per_localization(ctx, |t, fc, s, lm| {
        let ms = lm.module();
        for sub in ms.enumerate_graded_submodules(b.max_order)? {
            let v = classify(ms, &sub);
            let hyp = v.is_weakly_primal;
            t.case(hyp, || {
                let p = v.adjoint.as_ref().expect("weakly primal has an adjoint");
                let c = classify(&fc.module, &lm.contract(&sub));
                c.is_weakly_primal && c.adjoint == Some(lm.localized_ring().contract_ideal(p))
            }, || {
                s_cert(ctx, s).set_localized("N", Universe::Module, localized_pairs(lm, sub.members())).facts([
                    flag(At::Localized, Predicate::WeaklyPrimal, vec![n()], true),
                    flag(At::Base, Predicate::WeaklyPrimalWithAdjoint, vec![E::Contract(n().b()), E::ContractIdeal(E::Adjoint(n().b()).b())], false),
                ])
            });
        }
        Ok(())
    })
}

fn thm7_hypotheses() -> [Fact; 2] {
    [
        flag(At::Base, Predicate::WeaklyPrimal, vec![n()], true),
        relation(At::Base, Universe::Ring, Rel::Disjoint, E::Adjoint(n().b()), E::named("S"), true),
    ]
}

fn thm7_1(ctx: &InstanceCtx, _: &Budget) -> Result<Tally> {
    per_localization(ctx, |t, fc, s, lm| {
        for (sub, v) in fc.submodules()?.iter().zip(fc.verdicts()?) {
            let hyp = adjoint_avoids(v, s);
            let ok = if hyp {
                let p = v.adjoint.as_ref().expect("weakly primal has an adjoint");
                let e = classify(lm.module(), &lm.extend(sub)?);
                e.is_weakly_primal && e.adjoint == Some(lm.localized_ring().extend_ideal(p)?)
            } else {
                true
            };
            t.case(hyp, || ok, || {
                s_cert(ctx, s).set("N", Universe::Module, sub.members()).facts(thm7_hypotheses()).fact(flag(
                    At::Localized,
                    Predicate::WeaklyPrimalWithAdjoint,
                    vec![E::Ext(n().b()), E::ExtIdeal(E::Adjoint(n().b()).b())],
                    false,
                ))
            });
        }
        Ok(())
    })
}

fn thm7_2(ctx: &InstanceCtx, _: &Budget) -> Result<Tally> {
    per_localization(ctx, |t, fc, s, lm| {
        for (sub, v) in fc.submodules()?.iter().zip(fc.verdicts()?) {
            let hyp = adjoint_avoids(v, s);
            let ok = !hyp || lm.contract(&lm.extend(sub)?) == *sub;
            t.case(hyp, || ok, || {
                s_cert(ctx, s).set("N", Universe::Module, sub.members()).facts(thm7_hypotheses()).fact(relation(
                    At::Base,
                    Universe::Module,
                    Rel::Equal,
                    E::Contract(E::Ext(n().b()).b()),
                    n(),
                    false,
                ))
            });
        }
        Ok(())
    })
}

fn thm8(ctx: &InstanceCtx, b: &Budget) -> Result<Tally> {
    per_localization(ctx, |t, fc, s, lm| {
        let r = fc.module.ring();
        for p in fc.ideals()? {
            let proper = !p.contains(r.one());
            let hyp = proper && p.members().is_disjoint(s.members()) && r.is_graded_weakly_prime_ideal(p)?;
            let corr = if hyp { Some(correspondence_check(lm, p, b.max_order)?) } else { None };
            let ok = corr.as_ref().is_some_and(|c| c.failure.is_none());
            t.case(hyp, || ok, || {
                let base = s_cert(ctx, s).set("P", Universe::Ring, p.members());
                let pe = || E::named("P");
                let hyps = [
                    relation(At::Base, Universe::Ring, Rel::Equal, pe(), E::UnitIdeal, false),
                    relation(At::Base, Universe::Ring, Rel::Disjoint, pe(), E::named("S"), true),
                    flag(At::Base, Predicate::WeaklyPrimeIdeal, vec![pe()], true),
                ];
                let base_wp = |v| flag(At::Base, Predicate::WeaklyPrimalWithAdjoint, vec![n(), pe()], v);
                let loc_wp = |x: E, v| flag(At::Localized, Predicate::WeaklyPrimalWithAdjoint, vec![x, E::ExtIdeal(pe().b())], v);
                let c = match corr.and_then(|c| c.failure).expect("refuted") {
                    CorrespondenceFailure::ExtensionLeavesFamily { n: x, .. } => {
                        base.set("N", Universe::Module, &x).facts([base_wp(true), loc_wp(E::Ext(n().b()), false)])
                    }
                    CorrespondenceFailure::NotLeftInverse { n: x, .. } => base.set("N", Universe::Module, &x).facts([
                        base_wp(true),
                        relation(At::Base, Universe::Module, Rel::Equal, E::Contract(E::Ext(n().b()).b()), n(), false),
                    ]),
                    CorrespondenceFailure::ContractionLeavesFamily { n: x, .. } => base
                        .set_localized("N", Universe::Module, localized_pairs(lm, &x))
                        .facts([loc_wp(n(), true), flag(At::Base, Predicate::WeaklyPrimalWithAdjoint, vec![E::Contract(n().b()), pe()], false)]),
                    CorrespondenceFailure::NotRightInverse { n: x, .. } => base.set_localized("N", Universe::Module, localized_pairs(lm, &x)).facts([
                        loc_wp(n(), true),
                        relation(At::Localized, Universe::Module, Rel::Equal, E::Ext(E::Contract(n().b()).b()), n(), false),
                    ]),
                };
                c.facts(hyps)
            });
        }
        Ok(())
    })
}

// ---------------------------------------------------------------------------
// worked examples

fn part(statement: &str, claimed: &str, computed: String, agrees: bool, certificate: Certificate) -> PartResult {
    PartResult {
        statement: statement.to_string(),
        claimed: claimed.to_string(),
        computed,
        status: if agrees { ClaimStatus::Confirmed } else { ClaimStatus::Refuted },
        certificate,
    }
}

fn exm1_1(ctx: &InstanceCtx, _: &Budget) -> Result<Tally> {
    let Some((m, s)) = integer(ctx) else {
        return Ok(Tally::unmet("bundle is bound to (Z, 12Z)"));
    };
    let mi = m as i64;
    let mut parts = Vec::new();
    let three = s.gw.contains(3);
    parts.push(part(
        "3 is NGWP to N (0 ≠ 3·4 = 12 ∈ N, 4 ∉ N)",
        "3 ∈ GW(N)",
        format!("3 {} GW(N)", if three { "∈" } else { "∉" }),
        three && (3 * 4) % mi == 0 && 4 % mi != 0,
        int_cert(ctx, vec![if three { IntFact::Ngwp { x: 3, y: 4 } } else { IntFact::Gwp { x: 3 } }]),
    ));
    let outside = (1..=mi).find(|&x| !s.gw.contains(x));
    parts.push(part(
        "GW(N) = Z",
        "GW(N) = Z",
        match outside {
            Some(x) => format!("{x} is GWP to N, GW(N) = {}", s.gw),
            None => format!("GW(N) = {}", s.gw),
        },
        outside.is_none() && s.gw.contains(0),
        int_cert(ctx, vec![IntFact::Gwp { x: outside.unwrap_or(0) }]),
    ));
    let mut facts = Vec::new();
    if !s.is_weakly_primal {
        let pair = (1..mi).flat_map(|a| (a..mi).map(move |b| (a, b))).find(|&(a, b)| s.gw.contains(a) && s.gw.contains(b) && !s.gw.contains(a + b));
        if let Some((a, b)) = pair {
            facts.extend([int_gw_fact(m, s, a), int_gw_fact(m, s, b), IntFact::Gwp { x: a + b }]);
        }
    }
    facts.push(IntFact::Flag { predicate: IntPredicate::WeaklyPrimal, value: s.is_weakly_primal });
    parts.push(part(
        "N is graded weakly primal",
        "weakly primal",
        format!("{}weakly primal", if s.is_weakly_primal { "" } else { "not " }),
        s.is_weakly_primal,
        int_cert(ctx, facts),
    ));
    parts.push(part(
        "N is not graded primal",
        "not primal",
        format!("{}primal", if s.is_primal { "" } else { "not " }),
        !s.is_primal,
        int_cert(ctx, vec![IntFact::Flag { predicate: IntPredicate::Primal, value: s.is_primal }]),
    ));
    Ok(Tally::from_parts(parts))
}

/// The designated submodule and its verdict on a cyclic-shape instance.
fn designated(ctx: &InstanceCtx) -> Option<(&FiniteCtx, &GradedSubmodule, &PrimalityVerdict)> {
    let fc = finite(ctx)?;
    let sub = fc.designated.as_ref()?;
    let v = fc.verdicts().ok()?.first()?;
    Some((fc, sub, v))
}

fn gw_part(ctx: &InstanceCtx, sub: &GradedSubmodule, v: &PrimalityVerdict, x: Elem, expect_in: bool, statement: &str) -> PartResult {
    let inside = v.gw_set.contains(x);
    let fact = if inside { ngwp(v, x) } else { Fact::Gwp { at: At::Base, x: x.into(), n: n() } };
    let computed = match v.gw_set.witness(x) {
        Some(w) => format!("{x} is NGWP to N (witness m = {})", w.vector),
        None => format!("{x} is GWP to N"),
    };
    let claimed = if expect_in { format!("{x} ∈ GW(N)") } else { format!("{x} is GWP to N") };
    part(statement, &claimed, computed, inside == expect_in, with_n(ctx, sub).fact(fact))
}

fn g_part(ctx: &InstanceCtx, sub: &GradedSubmodule, v: &PrimalityVerdict, x: Elem, expect_in: bool, statement: &str) -> PartResult {
    let inside = v.g_set.contains(x);
    let fact = match v.g_set.witness(x) {
        Some(w) => Fact::NotPrimeTo { at: At::Base, x: x.into(), m: w.vector.into(), n: n() },
        None => Fact::PrimeTo { at: At::Base, x: x.into(), n: n() },
    };
    let computed = match v.g_set.witness(x) {
        Some(w) => format!("{x} is not prime to N (witness m = {})", w.vector),
        None => format!("{x} is prime to N"),
    };
    let claimed = if expect_in { format!("{x} ∈ G(N)") } else { format!("{x} is prime to N") };
    part(statement, &claimed, computed, inside == expect_in, with_n(ctx, sub).fact(fact))
}

fn wp_part(ctx: &InstanceCtx, sub: &GradedSubmodule, v: &PrimalityVerdict, expect: bool, statement: &str) -> PartResult {
    let word = |b: bool| if b { "weakly primal" } else { "not weakly primal" };
    part(statement, word(expect), word(v.is_weakly_primal).to_string(), v.is_weakly_primal == expect, with_n(ctx, sub).facts(gw_closure_facts(v)))
}

fn primal_part(ctx: &InstanceCtx, sub: &GradedSubmodule, v: &PrimalityVerdict, expect: bool, statement: &str) -> PartResult {
    let word = |b: bool| if b { "primal" } else { "not primal" };
    part(statement, word(expect), word(v.is_primal).to_string(), v.is_primal == expect, with_n(ctx, sub).facts(g_closure_facts(v)))
}

fn exm1_2(ctx: &InstanceCtx, _: &Budget) -> Result<Tally> {
    let Some((_, sub, v)) = designated(ctx) else {
        return Ok(Tally::unmet("bundle is bound to (Z_24, 8Z_24)"));
    };
    Ok(Tally::from_parts(vec![
        primal_part(ctx, sub, v, true, "N is graded primal"),
        gw_part(ctx, sub, v, 2, true, "2 ∈ GW(N) (0 ≠ 2·4 ∈ N)"),
        gw_part(ctx, sub, v, 4, true, "4 ∈ GW(N) (0 ≠ 4·2 ∈ N)"),
        gw_part(ctx, sub, v, 6, false, "2 + 4 = 6 is a GWP to N"),
        wp_part(ctx, sub, v, false, "N is not graded weakly primal"),
    ]))
}

fn exm1_3(ctx: &InstanceCtx, _: &Budget) -> Result<Tally> {
    let Some((_, sub, v)) = designated(ctx) else {
        return Ok(Tally::unmet("bundle is bound to (Z_12, 0)"));
    };
    let empty = v.gw_set.is_empty();
    let gw_empty = part(
        "GW(N) = ∅",
        "GW(N) = ∅",
        format!("GW(N) = {{{}}}", v.gw_set.members.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")),
        empty,
        with_n(ctx, sub).fact(relation(At::Base, Universe::Ring, Rel::Disjoint, E::Gw(n().b()), E::Gw(n().b()), empty)),
    );
    Ok(Tally::from_parts(vec![
        gw_empty,
        wp_part(ctx, sub, v, true, "N is graded weakly primal"),
        g_part(ctx, sub, v, 3, true, "3 ∈ G(N) (3·4 = 0 ∈ N)"),
        g_part(ctx, sub, v, 4, true, "4 ∈ G(N) (4·3 = 0 ∈ N)"),
        g_part(ctx, sub, v, 1, false, "4 - 3 = 1 is prime to N"),
        primal_part(ctx, sub, v, false, "N is not graded primal"),
    ]))
}

fn exm1_4(ctx: &InstanceCtx, _: &Budget) -> Result<Tally> {
    let Some((_, sub, v)) = designated(ctx) else {
        return Ok(Tally::unmet("bundle is bound to (Z_32, 8Z_32)"));
    };
    Ok(Tally::from_parts(vec![
        g_part(ctx, sub, v, 4, true, "4 is not prime to N"),
        gw_part(ctx, sub, v, 4, false, "4 is a GWP to N"),
    ]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::descriptor::{ModuleDescriptor, RingDescriptor};
    use crate::harness::verify::check_certificate;

    #[test]
    fn ids_unique_and_ordered() {
        let r = registry();
        assert_eq!(r.len(), 27);
        let mut ids: Vec<_> = r.iter().map(|c| c.id).collect();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), 27);
        assert_eq!(r[0].id, "lem1");
        assert_eq!(r[26].id, "exm1.4");
    }

    #[test]
    fn zero_module_smoke() {
        let d = InstanceDescriptor::Finite { ring: RingDescriptor::Zn { n: 6 }, module: ModuleDescriptor::Zero };
        let ctx = InstanceCtx::new(0, d, 64);
        let b = Budget::default();
        for c in registry().iter().filter(|c| c.applies(&ctx.descriptor)) {
            let t = c.evaluate(&ctx, &b).unwrap_or_else(|e| panic!("{}: {e}", c.id));
            if let Some(cert) = &t.certificate {
                assert_eq!(check_certificate(cert), Ok(()), "{}", c.id);
            }
        }
    }

    #[test]
    fn examples_have_valid_certificates() {
        let b = Budget::default();
        let reg = registry();
        for c in reg.iter().filter(|c| c.instance.is_some()) {
            let ctx = InstanceCtx::new(0, InstanceDescriptor::Integer(c.instance.unwrap()), 64);
            let t = c.evaluate(&ctx, &b).unwrap();
            assert!(!t.parts.is_empty());
            for p in &t.parts {
                assert_eq!(check_certificate(&p.certificate), Ok(()), "{} / {}", c.id, p.statement);
            }
        }
    }

    #[test]
    fn lem1_on_z24_mod_8() {
        let ctx = InstanceCtx::new(0, InstanceDescriptor::Integer(ZInstance::Cyclic { n: 24, d: 8 }), 64);
        let t = lem1(&ctx, &Budget::default()).unwrap();
        assert_eq!(t.status(), ClaimStatus::Refuted);
        assert_eq!(check_certificate(t.certificate.as_ref().unwrap()), Ok(()));
    }
}
