//! Primary acceptance criteria. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails.

mod common;

use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use common::zoracle;
use graded_lab::algebra::GradedRing;
use graded_lab::exec::Executor;
use graded_lab::harness::examples::{render, reproduce};
use graded_lab::harness::{check_certificate, enumerate_instances, registry, run_claims, Budget, ClaimStatus, Instance, InstanceDescriptor};
use graded_lab::localization::localize;
use graded_lab::module::{GradedModule, GradedSubmodule, ZInstance};
use graded_lab::primality::{characterization_check, classify, is_weakly_primal};

type Outcome = Result<String, String>;

fn finite(d: &InstanceDescriptor) -> Result<(Arc<GradedModule>, Option<GradedSubmodule>), String> {
    match d.build().map_err(|e| e.to_string())? {
        Instance::Finite { module, designated } => Ok((module, designated)),
        Instance::Integer(z) => Err(format!("{} has no table model", z.label())),
    }
}

fn example_instance(id: &str) -> Result<InstanceDescriptor, String> {
    let spec = registry().into_iter().find(|s| s.id == id).ok_or(format!("no claim {id}"))?;
    spec.instance.map(InstanceDescriptor::Integer).ok_or(format!("{id} has no instance"))
}

/// Naive sets over Z_n with submodule dZ_n: (GW, G, weakly primal).
fn zn_oracle(n: usize, d: usize) -> (Vec<usize>, Vec<usize>, bool) {
    let in_n = |x: usize| x.is_multiple_of(d);
    let mut gw = Vec::new();
    let mut g = Vec::new();
    for r in 0..n {
        let outside = (0..n).filter(|&m| !in_n(m));
        let hits: Vec<usize> = outside.map(|m| r * m % n).filter(|&rm| in_n(rm)).collect();
        if !hits.is_empty() {
            g.push(r);
        }
        if hits.iter().any(|&rm| rm != 0) {
            gw.push(r);
        }
    }
    let mut set = gw.clone();
    set.push(0);
    let ideal = set.iter().all(|&a| set.iter().all(|&b| set.contains(&((a + b) % n))) && (0..n).all(|r| set.contains(&(r * a % n))));
    (gw, g, ideal)
}

fn criterion1() -> Outcome {
    let d = example_instance("exm1.3")?;
    let (m, n) = finite(&d)?;
    let n = n.ok_or("no designated submodule")?;
    if n.len() != 1 {
        return Err(format!("designated submodule has {} elements", n.len()));
    }
    let v = classify(&m, &n);
    let adj = v.adjoint.as_ref().map(|p| p.members().to_vec());
    let (gw, g, wp) = zn_oracle(12, 12);
    let checks = [
        ("gw empty", v.gw_set.is_empty() && gw.is_empty()),
        ("weakly primal", v.is_weakly_primal && wp),
        ("adjoint {0}", adj == Some(vec![0])),
        ("3, 4 in g, 1 not", [3, 4].iter().all(|&x| v.g_set.contains(x) && g.contains(&x)) && !v.g_set.contains(1) && !g.contains(&1)),
        ("g matches oracle", v.g_set.members.to_vec() == g),
        ("not primal", !v.is_primal),
    ];
    match checks.iter().find(|c| !c.1) {
        Some((what, _)) => Err(format!("{what} failed on {}", d.label())),
        None => Ok(format!("{}: gw = {{}}, adjoint {{0}}, g = {g:?}, not primal", d.label())),
    }
}

fn criterion2() -> Outcome {
    let d = example_instance("exm1.2")?;
    let (m, n) = finite(&d)?;
    let n = n.ok_or("no designated submodule")?;
    let v = classify(&m, &n);
    let (gw, _, wp) = zn_oracle(24, 8);
    let checks = [
        ("N = 8Z_24", n.members().to_vec() == vec![0, 8, 16]),
        ("2, 4 in gw", [2, 4].iter().all(|&x| v.gw_set.contains(x) && gw.contains(&x))),
        ("6 not in gw", !v.gw_set.contains(6) && !gw.contains(&6)),
        ("gw matches oracle", v.gw_set.members.to_vec() == gw),
        ("not weakly primal", !v.is_weakly_primal && !wp),
    ];
    match checks.iter().find(|c| !c.1) {
        Some((what, _)) => Err(format!("{what} failed on {}", d.label())),
        None => Ok(format!("{}: gw = {gw:?}, not weakly primal", d.label())),
    }
}

fn criterion3() -> Outcome {
    let blocks = reproduce()?;
    for id in ["exm1.1", "exm1.4"] {
        let b = blocks.iter().find(|b| b.id == id).ok_or(format!("{id} missing"))?;
        if b.parts.is_empty() {
            return Err(format!("{id} has no parts"));
        }
    }
    let checks: Vec<_> = blocks.iter().flat_map(|b| &b.checks).collect();
    if let Some(e) = checks.iter().find_map(|c| c.as_ref().err()) {
        return Err(format!("certificate rejected: {e}"));
    }
    let text = render(&blocks);
    if !blocks.iter().all(|b| text.contains(&format!("{} on {}", b.id, b.instance))) {
        return Err("rendering misses a block".into());
    }
    let differ = blocks.iter().filter(|b| !b.agrees()).map(|b| b.id.as_str()).collect::<Vec<_>>();
    Ok(format!("{} blocks, {}/{} certificates verify, differing: {differ:?}", blocks.len(), checks.len(), checks.len()))
}

/// Ideal generated by a set, by naive closure.
fn naive_ideal(m: &GradedModule, gens: &[usize]) -> Vec<usize> {
    let r = m.ring();
    let mut set = vec![false; r.order()];
    set[r.zero()] = true;
    for &g in gens {
        set[g] = true;
    }
    loop {
        let cur: Vec<usize> = (0..r.order()).filter(|&x| set[x]).collect();
        let sums = cur.iter().flat_map(|&a| cur.iter().map(move |&b| r.add(a, b)));
        let multiples = cur.iter().flat_map(|&a| r.elements().map(move |x| r.mul(x, a)));
        let new: Vec<usize> = sums.chain(multiples).filter(|&y| !set[y]).collect();
        if new.is_empty() {
            return cur;
        }
        for y in new {
            set[y] = true;
        }
    }
}

/// Naive weak primality: GW ∪ {0} is the homogeneous part of the ideal it
/// generates.
fn naive_weakly_primal(m: &GradedModule, n: &GradedSubmodule) -> bool {
    let r = m.ring();
    let h = r.homogeneous_elements();
    let hm = m.homogeneous_elements();
    let gw: Vec<usize> = h
        .iter()
        .filter(|&x| hm.iter().any(|v| !n.contains(v) && m.act(x, v) != m.zero() && n.contains(m.act(x, v))))
        .collect();
    let ideal = naive_ideal(m, &gw);
    let hp: Vec<usize> = ideal.into_iter().filter(|&x| h.contains(x)).collect();
    let mut expect = gw;
    expect.push(r.zero());
    expect.sort();
    hp == expect
}

fn criterion4() -> Outcome {
    let budget = Budget::default();
    let descs: Vec<_> = enumerate_instances(&budget)
        .into_iter()
        .filter(|d| matches!(d, InstanceDescriptor::Finite { .. }))
        .collect();
    let mut checked = 0;
    for d in &descs {
        let (m, _) = finite(d)?;
        for n in m.enumerate_graded_submodules(budget.max_order).map_err(|e| e.to_string())? {
            let v = classify(&m, &n);
            let mut gens = v.gw_set.members.to_vec();
            gens.push(m.ring().zero());
            let p = m.ring().ideal_generated_by(gens);
            let oracle = naive_weakly_primal(&m, &n);
            let via_check = characterization_check(&m, &n, p.members());
            if via_check != oracle || is_weakly_primal(&m, &n) != oracle || v.is_weakly_primal != oracle {
                return Err(format!("{} N = {:?}: check {via_check}, oracle {oracle}", d.label(), n.members().to_vec()));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} submodules over {} instances", descs.len()))
}

fn equivalent(act: impl Fn(usize, usize) -> usize, sub: impl Fn(usize, usize) -> usize, zero: usize, s: &[usize], (a, x): (usize, usize), (b, y): (usize, usize)) -> bool {
    let diff = sub(act(y, a), act(x, b));
    s.iter().any(|&u| act(u, diff) == zero)
}

fn criterion5() -> Outcome {
    let budget = Budget::default();
    let mut descs: Vec<_> = enumerate_instances(&budget)
        .into_iter()
        .filter(|d| matches!(d, InstanceDescriptor::Finite { .. }))
        .collect();
    descs.extend((budget.max_zn + 1..=budget.max_cyclic_n).map(|n| InstanceDescriptor::Integer(ZInstance::Cyclic { n, d: n })));
    let (mut localizations, mut pairs) = (0, 0);
    for d in &descs {
        let (m, _) = finite(d)?;
        let r = m.ring();
        let subs = m.enumerate_graded_submodules(budget.max_order).map_err(|e| e.to_string())?;
        for s in r.enumerate_multiplicative_sets(budget.max_order).map_err(|e| e.to_string())? {
            let sv = s.to_vec();
            let lm = localize(&m, &s).map_err(|e| format!("{}: {e}", d.label()))?;
            let lr = lm.localized_ring();
            let at = |what: &str| format!("{} S = {sv:?}: {what}", d.label());
            for x in r.elements() {
                for &t in &sv {
                    let c = lr.fraction(x, t).ok_or_else(|| at("ring fraction undefined"))?;
                    for (k, class) in lr.classes().iter().enumerate() {
                        if equivalent(|a, b| r.mul(a, b), |a, b| r.sub(a, b), r.zero(), &sv, (x, t), class.rep) != (k == c) {
                            return Err(at(&format!("ring pair {x}/{t} misplaced")));
                        }
                    }
                    pairs += 1;
                }
            }
            for x in m.elements() {
                for &t in &sv {
                    let c = lm.fraction(x, t).ok_or_else(|| at("module fraction undefined"))?;
                    for (k, class) in lm.classes().iter().enumerate() {
                        if equivalent(|a, b| m.act(a, b), |a, b| m.sub(a, b), m.zero(), &sv, (x, t), class.rep) != (k == c) {
                            return Err(at(&format!("module pair {x}/{t} misplaced")));
                        }
                    }
                    pairs += 1;
                }
            }
            let ring = GradedRing::from_raw(&lr.ring().to_raw()).map_err(|e| at(&format!("R_S fails validation: {e}")))?;
            GradedModule::from_raw(Arc::new(ring), &lm.module().to_raw()).map_err(|e| at(&format!("M_S fails validation: {e}")))?;
            if let Some(v) = lr.phi_violation().or_else(|| lm.phi_violation()) {
                return Err(at(&v));
            }
            for n in &subs {
                let back = lm.contract(&lm.extend(n).map_err(|e| at(&e.to_string()))?);
                if !n.is_subset(&back) {
                    return Err(at(&format!("N = {:?} not inside its contracted extension", n.members().to_vec())));
                }
            }
            localizations += 1;
        }
    }
    let report = run_claims(&budget, Some("thm7.2"), Executor::default())?;
    if !report.errors.is_empty() {
        return Err(report.errors.join("; "));
    }
    let results: Vec<_> = report.claims.iter().flat_map(|c| &c.results).collect();
    let refuted: Vec<_> = results.iter().filter(|r| r.status == ClaimStatus::Refuted).collect();
    for r in &refuted {
        let c = r.certificate.as_ref().ok_or(format!("thm7.2 on {} refuted without certificate", r.instance))?;
        check_certificate(c).map_err(|e| format!("thm7.2 certificate on {}: {e}", r.instance))?;
    }
    Ok(format!(
        "{localizations} localizations, {pairs} pairs; thm7.2 refuted on {} of {} instances, every certificate verifies",
        refuted.len(),
        results.len()
    ))
}

fn criterion6() -> Outcome {
    let mut count = 0;
    let mut instances: Vec<(ZInstance, zoracle::WindowVerdict, i64)> = Vec::new();
    for n in 1..=32usize {
        for d in (1..=n).filter(|d| n % d == 0) {
            instances.push((ZInstance::Cyclic { n, d }, zoracle::cyclic(n as i64, d as i64), 4 * n as i64));
        }
    }
    for m in 1..=16usize {
        instances.push((ZInstance::Integers { m }, zoracle::integers(m as i64), 4 * m as i64));
    }
    for (z, o, w) in &instances {
        let s = z.residue_reduction().map_err(|e| e.to_string())?;
        if !o.periodic {
            return Err(format!("{}: oracle window not periodic", z.label()));
        }
        for x in -w..=*w {
            for (name, set, oracle) in [("gw", &s.gw, &o.gw), ("g", &s.g, &o.g), ("w", &s.w, &o.w), ("colon", &s.colon, &o.colon)] {
                if set.contains(x) != oracle.contains(&x) {
                    return Err(format!("{}: {name} disagrees at {x}", z.label()));
                }
            }
        }
        let flags = [
            (s.is_weakly_primal, o.weakly_primal),
            (s.is_primal, o.primal),
            (s.is_weakly_prime, o.weakly_prime),
            (s.is_weakly_primary, o.weakly_primary),
        ];
        if flags.iter().any(|(a, b)| a != b) {
            return Err(format!("{}: verdict flags disagree", z.label()));
        }
        count += 1;
    }
    Ok(format!("{count} instances agree with the windowed oracle"))
}

fn criterion7() -> Outcome {
    let budget = Budget::default();
    let a = run_claims(&budget, None, Executor::default())?;
    let b = run_claims(&budget, None, Executor::default())?;
    let (ja, jb) = (a.to_json(), b.to_json());
    if ja != jb {
        return Err("reports differ between runs".into());
    }
    if !a.errors.is_empty() {
        return Err(format!("{} errors: {}", a.errors.len(), a.errors[0]));
    }
    let mut refuted = 0;
    for r in a.claims.iter().flat_map(|c| &c.results).filter(|r| r.status == ClaimStatus::Refuted) {
        let c = r.certificate.as_ref().ok_or(format!("{} on {} refuted without certificate", r.claim, r.instance))?;
        check_certificate(c).map_err(|e| format!("{} on {}: {e}", r.claim, r.instance))?;
        refuted += 1;
    }
    Ok(format!("{} bytes identical, {refuted} refutations verify, {} discrepancies", ja.len(), a.discrepancies.len()))
}

fn criterion8() -> Outcome {
    let report = run_claims(&Budget::default(), Some("thm5"), Executor::default())?;
    let evidence: Vec<_> = report.claims.iter().flat_map(|c| &c.results).flat_map(|r| r.evidence.iter().map(move |e| (r, e))).collect();
    if evidence.is_empty() {
        return Err("no factorization evidence".into());
    }
    let mut facts = 0;
    for (r, e) in &evidence {
        check_certificate(e).map_err(|err| format!("factorization on {}: {err}", r.instance))?;
        facts += e.facts.len();
    }
    Ok(format!("{facts} factorizations in {} certificates revalidate", evidence.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome, Option<Duration>); 8] = [
        ("zero submodule of Z_12", criterion1, Some(Duration::from_secs(1))),
        ("8Z_24 in Z_24", criterion2, Some(Duration::from_secs(1))),
        ("worked examples reproduce with valid certificates", criterion3, None),
        ("characterization agrees with weak primality", criterion4, Some(Duration::from_secs(60))),
        ("localization suite", criterion5, None),
        ("integer backends agree", criterion6, None),
        ("claims run deterministic and certified", criterion7, Some(Duration::from_secs(600))),
        ("factorizations revalidate", criterion8, None),
    ];
    let mut failed = 0;
    for (i, (name, f, limit)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let took = start.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(_), Some(l)) if took > l => Err(format!("took {took:.2?}, limit {l:?}")),
            (o, _) => o,
        };
        match outcome {
            Ok(msg) => println!("criterion {}: PASS  {name} ({took:.2?}): {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {}: FAIL  {name} ({took:.2?}): {msg}", i + 1);
            }
        }
    }
    if failed > 0 {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
