//! Certificate checker.
//!
//! Rebuilds the instance from its descriptor, reads back plain operation
//! tables and grading components, and re-derives every fact by direct loops
//! over those tables. Nothing here calls into the primality, localization
//! or factorization modules.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use super::certificate::{At, Certificate, ElemRef, Fact, IntFact, IntPredicate, Predicate, Rel, SetExpr, Universe};
use super::descriptor::{Instance, InstanceDescriptor};
use crate::algebra::RawGrading;
use crate::module::ZInstance;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("cannot rebuild instance: {0}")]
    StaleDescriptor(String),
    #[error("malformed certificate: {0}")]
    Malformed(String),
    #[error("fact {index} does not hold: {reason}")]
    FactFailed { index: usize, reason: String },
}

pub fn verify_certificate(cert: &Certificate) -> bool {
    check_certificate(cert).is_ok()
}

pub fn check_certificate(cert: &Certificate) -> Result<(), VerifyError> {
    if let InstanceDescriptor::Integer(ZInstance::Integers { m }) = cert.instance {
        for (index, f) in cert.facts.iter().enumerate() {
            let Fact::Int(f) = f else {
                return Err(VerifyError::Malformed("only integer facts apply to (Z, mZ)".into()));
            };
            if !int_fact(m as i64, f) {
                return Err(VerifyError::FactFailed { index, reason: format!("{f:?}") });
            }
        }
        return Ok(());
    }
    let inst = cert.instance.build().map_err(|e| VerifyError::StaleDescriptor(e.to_string()))?;
    let Instance::Finite { module, .. } = inst else {
        return Err(VerifyError::StaleDescriptor("not a finite instance".into()));
    };
    let rr = module.ring().to_raw();
    let mr = module.to_raw();
    let base = Side::new(rr.add, rr.mul, rr.grading, mr.add, mr.action, mr.grading).map_err(VerifyError::StaleDescriptor)?;
    let loc = match &cert.s {
        None => None,
        Some(s) => Some(Loc::new(&base, s).map_err(VerifyError::Malformed)?),
    };
    let env = Env { base, loc, cert };
    for (index, f) in cert.facts.iter().enumerate() {
        match env.fact(f) {
            Ok(true) => {}
            Ok(false) => return Err(VerifyError::FactFailed { index, reason: format!("{f:?}") }),
            Err(e) => return Err(VerifyError::FactFailed { index, reason: e }),
        }
    }
    Ok(())
}

type Set = Vec<bool>;

/// Ring and module tables with homogeneous decompositions.
struct Side {
    rn: usize,
    radd: Vec<Vec<usize>>,
    rmul: Vec<Vec<usize>>,
    rzero: usize,
    rone: usize,
    rneg: Vec<usize>,
    rhom: Set,
    rdeg: Vec<Option<Vec<usize>>>,
    rparts: Vec<Vec<usize>>,
    mn: usize,
    madd: Vec<Vec<usize>>,
    mact: Vec<Vec<usize>>,
    mzero: usize,
    mneg: Vec<usize>,
    mhom: Set,
    mdeg: Vec<Option<Vec<usize>>>,
    mparts: Vec<Vec<usize>>,
    orders: Vec<usize>,
}

fn identity(add: &[Vec<usize>]) -> Result<usize, String> {
    (0..add.len()).find(|&z| (0..add.len()).all(|x| add[z][x] == x)).ok_or_else(|| "no identity".into())
}

fn negs(add: &[Vec<usize>], zero: usize) -> Vec<usize> {
    (0..add.len()).map(|x| (0..add.len()).find(|&y| add[x][y] == zero).unwrap_or(zero)).collect()
}

/// Degree tuples and homogeneous parts from explicit component lists.
fn grading(n: usize, add: &[Vec<usize>], zero: usize, comps: &[(Vec<usize>, Vec<usize>)]) -> Result<(Set, Vec<Option<Vec<usize>>>, Vec<Vec<usize>>), String> {
    let mut hom = vec![false; n];
    let mut deg = vec![None; n];
    for (d, elems) in comps {
        for &x in elems {
            hom[x] = true;
            if x != zero {
                deg[x] = Some(d.clone());
            }
        }
    }
    let mut parts: Vec<Option<Vec<usize>>> = vec![None; n];
    let mut tuple = vec![0usize; comps.len()];
    loop {
        let sum = tuple.iter().zip(comps).fold(zero, |acc, (&i, (_, e))| add[acc][e[i]]);
        let t: Vec<usize> = tuple.iter().zip(comps).map(|(&i, (_, e))| e[i]).collect();
        if parts[sum].replace(t).is_some() {
            return Err(format!("element {sum} decomposes twice"));
        }
        let mut k = 0;
        loop {
            if k == comps.len() {
                return parts.into_iter().enumerate().map(|(x, p)| p.ok_or(format!("element {x} not reached"))).collect::<Result<Vec<_>, _>>().map(|p| (hom, deg, p));
            }
            tuple[k] += 1;
            if tuple[k] < comps[k].1.len() {
                break;
            }
            tuple[k] = 0;
            k += 1;
        }
    }
}

fn raw_components(g: &Option<RawGrading>, n: usize, zero: usize) -> (Vec<usize>, Vec<(Vec<usize>, Vec<usize>)>) {
    match g {
        None => (Vec::new(), vec![(Vec::new(), (0..n).collect())]),
        Some(g) => {
            let mut comps: Vec<(Vec<usize>, Vec<usize>)> = g.components.iter().map(|c| (c.degree.clone(), c.elements.clone())).collect();
            for d in all_degrees(&g.group) {
                if !comps.iter().any(|(e, _)| *e == d) {
                    comps.push((d, vec![zero]));
                }
            }
            comps.sort();
            (g.group.clone(), comps)
        }
    }
}

fn all_degrees(orders: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &o in orders {
        out = out.into_iter().flat_map(|t| (0..o).map(move |r| { let mut u = t.clone(); u.push(r); u })).collect();
    }
    out
}

impl Side {
    fn new(
        radd: Vec<Vec<usize>>,
        rmul: Vec<Vec<usize>>,
        rg: Option<RawGrading>,
        madd: Vec<Vec<usize>>,
        mact: Vec<Vec<usize>>,
        mg: Option<RawGrading>,
    ) -> Result<Self, String> {
        let rn = radd.len();
        let mn = madd.len();
        let rzero = identity(&radd)?;
        let rone = identity(&rmul)?;
        let mzero = identity(&madd)?;
        let (orders, rc) = raw_components(&rg, rn, rzero);
        let (_, mc) = raw_components(&mg, mn, mzero);
        let (rhom, rdeg, rparts) = grading(rn, &radd, rzero, &rc)?;
        let (mhom, mdeg, mparts) = grading(mn, &madd, mzero, &mc)?;
        Ok(Self {
            rn,
            rneg: negs(&radd, rzero),
            radd,
            rmul,
            rzero,
            rone,
            rhom,
            rdeg,
            rparts,
            mn,
            mneg: negs(&madd, mzero),
            madd,
            mact,
            mzero,
            mhom,
            mdeg,
            mparts,
            orders,
        })
    }

    fn gw(&self, n: &Set) -> Set {
        (0..self.rn)
            .map(|x| self.rhom[x] && (0..self.mn).any(|m| self.mhom[m] && !n[m] && self.mact[x][m] != self.mzero && n[self.mact[x][m]]))
            .collect()
    }

    fn g(&self, n: &Set) -> Set {
        (0..self.rn).map(|x| self.rhom[x] && (0..self.mn).any(|m| self.mhom[m] && !n[m] && n[self.mact[x][m]])).collect()
    }

    fn w(&self, n: &Set) -> Set {
        (0..self.rn).map(|x| (0..self.mn).any(|m| !n[m] && self.mact[x][m] != self.mzero && n[self.mact[x][m]])).collect()
    }

    fn colon_rl(&self, n: &Set, l: &Set) -> Set {
        (0..self.rn).map(|r| (0..self.mn).all(|m| !l[m] || n[self.mact[r][m]])).collect()
    }

    fn gw_ideal(&self, p: &Set) -> Set {
        (0..self.rn)
            .map(|x| self.rhom[x] && (0..self.rn).any(|y| self.rhom[y] && !p[y] && self.rmul[x][y] != self.rzero && p[self.rmul[x][y]]))
            .collect()
    }

    /// Fixed point of: add homogeneous parts, sums, and scalar multiples.
    fn ideal_gen(&self, x: &Set) -> Set {
        let mut s = x.clone();
        s[self.rzero] = true;
        loop {
            let mut next = s.clone();
            for a in (0..self.rn).filter(|&a| s[a]) {
                for &p in &self.rparts[a] {
                    next[p] = true;
                }
                for b in (0..self.rn).filter(|&b| s[b]) {
                    next[self.radd[a][b]] = true;
                }
                for r in 0..self.rn {
                    next[self.rmul[r][a]] = true;
                }
            }
            if next == s {
                return s;
            }
            s = next;
        }
    }

    fn submodule_gen(&self, x: &Set) -> Set {
        let mut s = x.clone();
        s[self.mzero] = true;
        loop {
            let mut next = s.clone();
            for a in (0..self.mn).filter(|&a| s[a]) {
                for &p in &self.mparts[a] {
                    next[p] = true;
                }
                for b in (0..self.mn).filter(|&b| s[b]) {
                    next[self.madd[a][b]] = true;
                }
                for r in 0..self.rn {
                    next[self.mact[r][a]] = true;
                }
            }
            if next == s {
                return s;
            }
            s = next;
        }
    }

    fn ideal_times(&self, i: &Set, n: &Set) -> Set {
        let mut seed = vec![false; self.mn];
        for a in (0..self.rn).filter(|&a| i[a]) {
            for m in (0..self.mn).filter(|&m| n[m]) {
                seed[self.mact[a][m]] = true;
            }
        }
        self.submodule_gen(&seed)
    }

    fn ideal_product(&self, a: &Set, b: &Set) -> Set {
        let mut seed = vec![false; self.rn];
        for x in (0..self.rn).filter(|&x| a[x]) {
            for y in (0..self.rn).filter(|&y| b[y]) {
                seed[self.rmul[x][y]] = true;
            }
        }
        self.ideal_gen(&seed)
    }

    /// `X ∪ {0}` is the homogeneous part of the graded ideal `X` generates.
    fn homogeneous_ideal(&self, x: &Set) -> bool {
        let p = self.ideal_gen(x);
        (0..self.rn).all(|r| !self.rhom[r] || p[r] == (x[r] || r == self.rzero))
    }

    fn is_ideal(&self, p: &Set) -> bool {
        self.ideal_gen(p) == *p
    }

    fn is_submodule(&self, n: &Set) -> bool {
        self.submodule_gen(n) == *n
    }

    fn weakly_primal(&self, n: &Set) -> bool {
        self.homogeneous_ideal(&self.gw(n))
    }

    fn weakly_prime_like(&self, n: &Set, primary: bool) -> bool {
        let colon = self.colon_rl(n, &vec![true; self.mn]);
        let pow_in = |x: usize| {
            let mut p = x;
            for _ in 0..self.rn {
                if colon[p] {
                    return true;
                }
                p = self.rmul[p][x];
            }
            false
        };
        let ok = (0..self.rn).filter(|&x| self.rhom[x]).all(|x| {
            (0..self.mn).filter(|&m| self.mhom[m]).all(|m| {
                let xm = self.mact[x][m];
                xm == self.mzero || !n[xm] || n[m] || if primary { pow_in(x) } else { colon[x] }
            })
        });
        ok && (primary || n.iter().any(|b| !b))
    }

    fn cyclic(&self, m: usize) -> Set {
        let mut s = vec![false; self.mn];
        for r in 0..self.rn {
            s[self.mact[r][m]] = true;
        }
        s
    }

    fn all_ideals(&self) -> Vec<Set> {
        let principal: BTreeSet<Set> = (0..self.rn).filter(|&h| self.rhom[h]).map(|h| self.ideal_gen(&single(self.rn, h))).collect();
        closure_family(single(self.rn, self.rzero), &principal, |a, b| self.ideal_gen(&or(a, b)))
    }

    fn all_submodules(&self) -> Vec<Set> {
        let principal: BTreeSet<Set> = (0..self.mn).filter(|&h| self.mhom[h]).map(|h| self.submodule_gen(&single(self.mn, h))).collect();
        closure_family(single(self.mn, self.mzero), &principal, |a, b| self.submodule_gen(&or(a, b)))
    }

    /// Every product of at most `max_len` factors, including the empty one.
    fn products(&self, factors: &[Set], max_len: usize) -> BTreeSet<Set> {
        let mut all: BTreeSet<Set> = BTreeSet::from([vec![true; self.rn]]);
        let mut layer = all.clone();
        for _ in 0..max_len {
            let next: BTreeSet<Set> = layer.iter().flat_map(|a| factors.iter().map(move |f| (a, f))).map(|(a, f)| self.ideal_product(a, f)).collect();
            all.extend(next.iter().cloned());
            layer = next;
        }
        all
    }

    fn wp_factors(&self, proper_only: bool) -> Vec<Set> {
        self.all_ideals().into_iter().filter(|p| !(proper_only && p[self.rone])).filter(|p| self.homogeneous_ideal(&self.gw_ideal(p))).collect()
    }

    fn wp_ring(&self, max_len: usize, proper_only: bool) -> bool {
        let prods = self.products(&self.wp_factors(proper_only), max_len);
        self.all_ideals().iter().all(|i| prods.contains(i))
    }

    fn wp_module(&self, max_len: usize, proper_only: bool) -> bool {
        let prods = self.products(&self.wp_factors(proper_only), max_len);
        let subs = self.all_submodules();
        let tails: Vec<&Set> = subs.iter().filter(|n| self.weakly_primal(n)).collect();
        subs.iter().all(|n| prods.iter().any(|i| tails.iter().any(|t| self.ideal_times(i, t) == *n)))
    }
}

fn single(n: usize, x: usize) -> Set {
    let mut s = vec![false; n];
    s[x] = true;
    s
}

fn or(a: &Set, b: &Set) -> Set {
    a.iter().zip(b).map(|(x, y)| *x || *y).collect()
}

fn closure_family(start: Set, gens: &BTreeSet<Set>, join: impl Fn(&Set, &Set) -> Set) -> Vec<Set> {
    let mut seen = BTreeSet::from([start.clone()]);
    let mut stack = vec![start];
    while let Some(s) = stack.pop() {
        for g in gens {
            let j = join(&s, g);
            if seen.insert(j.clone()) {
                stack.push(j);
            }
        }
    }
    seen.into_iter().collect()
}

/// Naive localization: classes of pairs found by scanning representatives.
struct Loc {
    side: Side,
    s: Vec<usize>,
    ring_class: Vec<usize>,
    mod_class: Vec<usize>,
}

impl Loc {
    fn new(b: &Side, s: &[usize]) -> Result<Self, String> {
        let mut s = s.to_vec();
        s.sort();
        s.dedup();
        if s.iter().any(|&x| x >= b.rn || !b.rhom[x] || x == b.rzero) || !s.contains(&b.rone) {
            return Err("S must be homogeneous, contain 1 and avoid 0".into());
        }
        if s.iter().any(|&x| s.iter().any(|&y| !s.contains(&b.rmul[x][y]))) {
            return Err("S is not multiplicatively closed".into());
        }
        let k = s.len();
        let rsub = |x: usize, y: usize| b.radd[x][b.rneg[y]];
        let msub = |x: usize, y: usize| b.madd[x][b.mneg[y]];
        let ring_eq = |(a, p): (usize, usize), (c, q): (usize, usize)| s.iter().any(|&u| b.rmul[u][rsub(b.rmul[q][a], b.rmul[p][c])] == b.rzero);
        let mod_eq = |(a, p): (usize, usize), (c, q): (usize, usize)| s.iter().any(|&u| b.mact[u][msub(b.mact[q][a], b.mact[p][c])] == b.mzero);
        let classes = |n: usize, eq: &dyn Fn((usize, usize), (usize, usize)) -> bool| {
            let mut reps: Vec<(usize, usize)> = Vec::new();
            let mut class = Vec::with_capacity(n * k);
            for a in 0..n {
                for &p in &s {
                    match reps.iter().position(|&r| eq(r, (a, p))) {
                        Some(c) => class.push(c),
                        None => {
                            class.push(reps.len());
                            reps.push((a, p));
                        }
                    }
                }
            }
            (reps, class)
        };
        let (rreps, ring_class) = classes(b.rn, &ring_eq);
        let (mreps, mod_class) = classes(b.mn, &mod_eq);
        let sidx = |p: usize| s.iter().position(|&q| q == p).expect("closed");
        let rc = |a: usize, p: usize| ring_class[a * k + sidx(p)];
        let mc = |a: usize, p: usize| mod_class[a * k + sidx(p)];
        let radd = rreps.iter().map(|&(a, p)| rreps.iter().map(|&(c, q)| rc(b.radd[b.rmul[a][q]][b.rmul[c][p]], b.rmul[p][q])).collect()).collect();
        let rmul = rreps.iter().map(|&(a, p)| rreps.iter().map(|&(c, q)| rc(b.rmul[a][c], b.rmul[p][q])).collect()).collect();
        let madd = mreps.iter().map(|&(a, p)| mreps.iter().map(|&(c, q)| mc(b.madd[b.mact[q][a]][b.mact[p][c]], b.rmul[p][q])).collect()).collect();
        let mact = rreps.iter().map(|&(x, p)| mreps.iter().map(|&(a, q)| mc(b.mact[x][a], b.rmul[p][q])).collect()).collect();
        let sub_deg = |g: &[usize], h: &[usize]| -> Vec<usize> { g.iter().zip(h).zip(&b.orders).map(|((x, y), o)| (x + o - y) % o).collect() };
        let comps = |n: usize, class: &[usize], deg: &[Option<Vec<usize>>], zero: usize| -> Vec<(Vec<usize>, Vec<usize>)> {
            let mut by: BTreeMap<Vec<usize>, BTreeSet<usize>> = all_degrees(&b.orders).into_iter().map(|d| (d, BTreeSet::from([zero]))).collect();
            for a in 0..n {
                for &p in &s {
                    if let (Some(da), Some(dp)) = (&deg[a], &b.rdeg[p]) {
                        by.get_mut(&sub_deg(da, dp)).expect("degree in group").insert(class[a * k + sidx(p)]);
                    }
                }
            }
            by.into_iter().map(|(d, e)| (d, e.into_iter().collect())).collect()
        };
        let rzero = rc(b.rzero, b.rone);
        let mzero = mc(b.mzero, b.rone);
        let rcomps = comps(b.rn, &ring_class, &b.rdeg, rzero);
        let mcomps = comps(b.mn, &mod_class, &b.mdeg, mzero);
        let grading = |c: Vec<(Vec<usize>, Vec<usize>)>| RawGrading {
            group: b.orders.clone(),
            components: c.into_iter().map(|(degree, elements)| crate::algebra::RawComponent { degree, elements }).collect(),
        };
        let side = Side::new(radd, rmul, Some(grading(rcomps)), madd, mact, Some(grading(mcomps)))?;
        Ok(Self { side, s, ring_class, mod_class })
    }

    fn class(&self, universe: Universe, a: usize, p: usize) -> Result<usize, String> {
        let k = self.s.len();
        let j = self.s.iter().position(|&q| q == p).ok_or(format!("{p} is not in S"))?;
        let table = match universe {
            Universe::Ring => &self.ring_class,
            Universe::Module => &self.mod_class,
        };
        table.get(a * k + j).copied().ok_or(format!("numerator {a} out of range"))
    }
}

struct Env<'a> {
    base: Side,
    loc: Option<Loc>,
    cert: &'a Certificate,
}

impl Env<'_> {
    fn side(&self, at: At) -> Result<&Side, String> {
        match at {
            At::Base => Ok(&self.base),
            At::Localized => self.loc.as_ref().map(|l| &l.side).ok_or("no localization in certificate".into()),
        }
    }

    fn loc(&self) -> Result<&Loc, String> {
        self.loc.as_ref().ok_or("no localization in certificate".into())
    }

    fn elem(&self, at: At, universe: Universe, x: ElemRef) -> Result<usize, String> {
        match (at, x) {
            (At::Base, ElemRef::Plain(x)) => {
                let n = match universe {
                    Universe::Ring => self.base.rn,
                    Universe::Module => self.base.mn,
                };
                if x < n { Ok(x) } else { Err(format!("{x} out of range")) }
            }
            (At::Localized, ElemRef::Fraction(a, p)) => self.loc()?.class(universe, a, p),
            _ => Err(format!("{x:?} does not fit {at:?}")),
        }
    }

    fn ring_set(&self, at: At, e: &SetExpr) -> Result<Set, String> {
        match self.eval(at, e)? {
            (Universe::Ring, s) => Ok(s),
            _ => Err(format!("{e:?} is not a ring set")),
        }
    }

    fn mod_set(&self, at: At, e: &SetExpr) -> Result<Set, String> {
        match self.eval(at, e)? {
            (Universe::Module, s) => Ok(s),
            _ => Err(format!("{e:?} is not a module set")),
        }
    }

    fn eval(&self, at: At, e: &SetExpr) -> Result<(Universe, Set), String> {
        let sd = self.side(at)?;
        use SetExpr::*;
        Ok(match e {
            Named(name) => {
                let ns = self.cert.sets.get(name).ok_or(format!("unknown set {name}"))?;
                if ns.at != at {
                    return Err(format!("set {name} lives in {:?}", ns.at));
                }
                let n = match ns.universe {
                    Universe::Ring => sd.rn,
                    Universe::Module => sd.mn,
                };
                let mut s = vec![false; n];
                for &x in &ns.elements {
                    s[self.elem(at, ns.universe, x)?] = true;
                }
                (ns.universe, s)
            }
            ZeroIdeal => (Universe::Ring, single(sd.rn, sd.rzero)),
            UnitIdeal => (Universe::Ring, vec![true; sd.rn]),
            ZeroSubmodule => (Universe::Module, single(sd.mn, sd.mzero)),
            WholeModule => (Universe::Module, vec![true; sd.mn]),
            Gw(n) => (Universe::Ring, sd.gw(&self.mod_set(at, n)?)),
            G(n) => (Universe::Ring, sd.g(&self.mod_set(at, n)?)),
            W(n) => (Universe::Ring, sd.w(&self.mod_set(at, n)?)),
            ColonRM(n) => (Universe::Ring, sd.colon_rl(&self.mod_set(at, n)?, &vec![true; sd.mn])),
            ColonRL(n, l) => (Universe::Ring, sd.colon_rl(&self.mod_set(at, n)?, &self.mod_set(at, l)?)),
            GwIdeal(p) => (Universe::Ring, sd.gw_ideal(&self.ring_set(at, p)?)),
            IdealGen(x) => (Universe::Ring, sd.ideal_gen(&self.ring_set(at, x)?)),
            Adjoint(n) => (Universe::Ring, sd.ideal_gen(&sd.gw(&self.mod_set(at, n)?))),
            IdealTimes(i, n) => (Universe::Module, sd.ideal_times(&self.ring_set(at, i)?, &self.mod_set(at, n)?)),
            Ann => (Universe::Ring, sd.colon_rl(&single(sd.mn, sd.mzero), &vec![true; sd.mn])),
            Ext(x) | ExtIdeal(x) => {
                if at != At::Localized {
                    return Err("extension lands in the localized structure".into());
                }
                let (u, base) = self.eval(At::Base, x)?;
                let loc = self.loc()?;
                let mut out = vec![false; match u { Universe::Ring => sd.rn, Universe::Module => sd.mn }];
                for a in (0..base.len()).filter(|&a| base[a]) {
                    for &p in &loc.s {
                        out[loc.class(u, a, p)?] = true;
                    }
                }
                (u, out)
            }
            Contract(x) | ContractIdeal(x) => {
                if at != At::Base {
                    return Err("contraction lands in the base structure".into());
                }
                let (u, up) = self.eval(At::Localized, x)?;
                let loc = self.loc()?;
                let n = match u { Universe::Ring => sd.rn, Universe::Module => sd.mn };
                let one = self.base.rone;
                (u, (0..n).map(|a| loc.class(u, a, one).map(|c| up[c])).collect::<Result<_, _>>()?)
            }
        })
    }

    fn fact(&self, f: &Fact) -> Result<bool, String> {
        use Fact::*;
        Ok(match f {
            Ngwp { at, x, m, n } | NotPrimeTo { at, x, m, n } | NotWeaklyPrimeUngraded { at, x, m, n } => {
                let sd = self.side(*at)?;
                let (x, m) = (self.elem(*at, Universe::Ring, *x)?, self.elem(*at, Universe::Module, *m)?);
                let n = self.mod_set(*at, n)?;
                let xm = sd.mact[x][m];
                let hom = sd.rhom[x] && sd.mhom[m];
                match f {
                    Ngwp { .. } => hom && !n[m] && xm != sd.mzero && n[xm],
                    NotPrimeTo { .. } => hom && !n[m] && n[xm],
                    _ => !n[m] && xm != sd.mzero && n[xm],
                }
            }
            Gwp { at, x, n } => {
                let x = self.elem(*at, Universe::Ring, *x)?;
                let sd = self.side(*at)?;
                sd.rhom[x] && !sd.gw(&self.mod_set(*at, n)?)[x]
            }
            PrimeTo { at, x, n } => {
                let x = self.elem(*at, Universe::Ring, *x)?;
                let sd = self.side(*at)?;
                sd.rhom[x] && !sd.g(&self.mod_set(*at, n)?)[x]
            }
            NgwpIdeal { at, x, y, p } | NotWeaklyPrimeIdeal { at, x, y, p } => {
                let sd = self.side(*at)?;
                let (x, y) = (self.elem(*at, Universe::Ring, *x)?, self.elem(*at, Universe::Ring, *y)?);
                let p = self.ring_set(*at, p)?;
                let xy = sd.rmul[x][y];
                let base = sd.rhom[x] && sd.rhom[y] && !p[y] && xy != sd.rzero && p[xy];
                match f {
                    NgwpIdeal { .. } => base,
                    _ => base && !p[x],
                }
            }
            InIdealSpan { at, target, terms, generators } => {
                let sd = self.side(*at)?;
                let g = self.ring_set(*at, generators)?;
                let mut sum = sd.rzero;
                for &(r, k) in terms {
                    let (r, k) = (self.elem(*at, Universe::Ring, r)?, self.elem(*at, Universe::Ring, k)?);
                    if !g[k] {
                        return Ok(false);
                    }
                    sum = sd.radd[sum][sd.rmul[r][k]];
                }
                sum == self.elem(*at, Universe::Ring, *target)?
            }
            Homogeneous { at, universe, x, holds } => {
                let sd = self.side(*at)?;
                let x = self.elem(*at, *universe, *x)?;
                let h = match universe {
                    Universe::Ring => sd.rhom[x],
                    Universe::Module => sd.mhom[x],
                };
                h == *holds
            }
            Member { at, universe, x, set, holds } => {
                let (u, s) = self.eval(*at, set)?;
                if u != *universe {
                    return Err("universe mismatch".into());
                }
                s[self.elem(*at, *universe, *x)?] == *holds
            }
            Relation { at, universe, rel, a, b, holds } => {
                let (ua, a) = self.eval(*at, a)?;
                let (ub, b) = self.eval(*at, b)?;
                if ua != *universe || ub != *universe {
                    return Err("universe mismatch".into());
                }
                let r = match rel {
                    Rel::Subset => a.iter().zip(&b).all(|(x, y)| !x || *y),
                    Rel::Equal => a == b,
                    Rel::Disjoint => a.iter().zip(&b).all(|(x, y)| !(x & y)),
                };
                r == *holds
            }
            Flag { at, predicate, args, value } => self.flag(*at, predicate, args)? == *value,
            Factorizes { target, factors, tail, proper_only } => {
                let sd = &self.base;
                let mut prod = vec![true; sd.rn];
                for f in factors {
                    let p = self.ring_set(At::Base, f)?;
                    if !sd.is_ideal(&p) || (*proper_only && p[sd.rone]) || !sd.homogeneous_ideal(&sd.gw_ideal(&p)) {
                        return Ok(false);
                    }
                    prod = sd.ideal_product(&prod, &p);
                }
                match tail {
                    None => prod == self.ring_set(At::Base, target)?,
                    Some(t) => {
                        let t = self.mod_set(At::Base, t)?;
                        sd.is_submodule(&t) && sd.weakly_primal(&t) && sd.ideal_times(&prod, &t) == self.mod_set(At::Base, target)?
                    }
                }
            }
            Int(_) => return Err("integer fact on a finite instance".into()),
        })
    }

    fn flag(&self, at: At, p: &Predicate, args: &[SetExpr]) -> Result<bool, String> {
        let sd = self.side(at)?;
        let arg = |i: usize| args.get(i).ok_or(format!("{p:?} needs {} argument(s)", i + 1));
        use Predicate::*;
        Ok(match p {
            WeaklyPrimal => sd.weakly_primal(&self.mod_set(at, arg(0)?)?),
            Primal => sd.homogeneous_ideal(&sd.g(&self.mod_set(at, arg(0)?)?)),
            WeaklyPrime => sd.weakly_prime_like(&self.mod_set(at, arg(0)?)?, false),
            WeaklyPrimary => sd.weakly_prime_like(&self.mod_set(at, arg(0)?)?, true),
            GradedSubmodule => sd.is_submodule(&self.mod_set(at, arg(0)?)?),
            WeaklyPrimalWithAdjoint => {
                let n = self.mod_set(at, arg(0)?)?;
                sd.weakly_primal(&n) && sd.ideal_gen(&sd.gw(&n)) == self.ring_set(at, arg(1)?)?
            }
            Characterization => {
                let n = self.mod_set(at, arg(0)?)?;
                let pset = self.ring_set(at, arg(1)?)?;
                sd.is_ideal(&pset)
                    && (0..sd.rn).filter(|&x| sd.rhom[x]).all(|x| {
                        let contained = (0..sd.mn).filter(|&m| sd.mhom[m] && n[sd.mact[x][m]]).all(|m| n[m] || sd.mact[x][m] == sd.mzero);
                        contained != (x != sd.rzero && pset[x])
                    })
            }
            WeaklyPrimalIdeal => sd.homogeneous_ideal(&sd.gw_ideal(&self.ring_set(at, arg(0)?)?)),
            WeaklyPrimeIdeal => {
                let pset = self.ring_set(at, arg(0)?)?;
                (0..sd.rn).filter(|&x| sd.rhom[x]).all(|x| {
                    (0..sd.rn).filter(|&y| sd.rhom[y]).all(|y| {
                        let xy = sd.rmul[x][y];
                        xy == sd.rzero || !pset[xy] || pset[x] || pset[y]
                    })
                })
            }
            GradedIdeal => sd.is_ideal(&self.ring_set(at, arg(0)?)?),
            Faithful => (0..sd.rn).all(|r| r == sd.rzero || (0..sd.mn).any(|m| sd.mact[r][m] != sd.mzero)),
            Multiplication => (0..sd.mn).filter(|&m| sd.mhom[m]).all(|m| {
                let rm = sd.cyclic(m);
                sd.ideal_times(&sd.colon_rl(&rm, &vec![true; sd.mn]), &vec![true; sd.mn]) == rm
            }),
            Cyclic => (0..sd.mn).any(|m| sd.mhom[m] && sd.cyclic(m).iter().all(|&b| b)),
            WpRing { max_len, proper_only } => sd.wp_ring(*max_len, *proper_only),
            WpModule { max_len, proper_only } => sd.wp_module(*max_len, *proper_only),
        })
    }
}

/// Residues `r` (mod `m`) with a nonzero residue `r'` such that `rr' ≡ 0`.
fn zero_divisor_residues(m: i64) -> Vec<i64> {
    (0..m).filter(|&r| (1..m).any(|q| (r * q) % m == 0)).collect()
}

fn int_fact(m: i64, f: &IntFact) -> bool {
    let res = |x: i64| x.rem_euclid(m);
    let kills_nonzero = |x: i64| (1..m).any(|q| (res(x) * q) % m == 0);
    match *f {
        IntFact::Ngwp { x, y } => res(y) != 0 && x.checked_mul(y).is_some_and(|p| p != 0 && p % m == 0),
        // For x ≠ 0 and y ∉ mZ the product xy is never 0.
        IntFact::Gwp { x } => x == 0 || !kills_nonzero(x),
        IntFact::NotPrimeTo { x, y } => res(y) != 0 && x.checked_mul(y).is_some_and(|p| p % m == 0),
        IntFact::PrimeTo { x } => !kills_nonzero(x),
        IntFact::Flag { predicate, value } => {
            let zd = zero_divisor_residues(m);
            let mut set: BTreeSet<i64> = zd.iter().copied().collect();
            set.insert(0);
            let ideal = set.iter().all(|&a| set.iter().all(|&b| set.contains(&((a + b) % m))) && (0..m).all(|r| set.contains(&((a * r) % m))));
            let nilpotent = |r: i64| {
                let mut p = r % m;
                for _ in 0..m {
                    if p == 0 {
                        return true;
                    }
                    p = (p * r) % m;
                }
                false
            };
            let got = match predicate {
                IntPredicate::WeaklyPrimal | IntPredicate::Primal => ideal,
                IntPredicate::WeaklyPrime => m >= 2 && zd.iter().all(|&r| r == 0),
                IntPredicate::WeaklyPrimary => zd.iter().all(|&r| nilpotent(r)),
            };
            got == value
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::certificate::SetExpr as E;
    use crate::harness::descriptor::{ModuleDescriptor, RingDescriptor};
    use crate::subset::Subset;

    fn z(n: usize) -> InstanceDescriptor {
        InstanceDescriptor::Finite { ring: RingDescriptor::Zn { n }, module: ModuleDescriptor::Regular }
    }

    fn n8() -> Certificate {
        Certificate::new(z(24)).set("N", Universe::Module, &Subset::from_elems(24, [0, 8, 16]))
    }

    #[test]
    fn ngwp_witness_and_tamper() {
        let ok = n8().fact(Fact::Ngwp { at: At::Base, x: 2.into(), m: 4.into(), n: E::named("N") });
        assert!(verify_certificate(&ok));
        let bad = n8().fact(Fact::Ngwp { at: At::Base, x: 6.into(), m: 4.into(), n: E::named("N") });
        assert!(!verify_certificate(&bad));
    }

    #[test]
    fn closure_failure() {
        let c = n8().facts([
            Fact::Ngwp { at: At::Base, x: 2.into(), m: 4.into(), n: E::named("N") },
            Fact::Ngwp { at: At::Base, x: 4.into(), m: 2.into(), n: E::named("N") },
            Fact::InIdealSpan { at: At::Base, target: 6.into(), terms: vec![(1.into(), 2.into()), (1.into(), 4.into())], generators: E::Gw(E::named("N").b()) },
            Fact::Gwp { at: At::Base, x: 6.into(), n: E::named("N") },
            Fact::Flag { at: At::Base, predicate: Predicate::WeaklyPrimal, args: vec![E::named("N")], value: false },
            Fact::Flag { at: At::Base, predicate: Predicate::Primal, args: vec![E::named("N")], value: true },
        ]);
        assert_eq!(check_certificate(&c), Ok(()));
    }

    #[test]
    fn localized_facts() {
        let c = Certificate::new(z(12))
            .with_s(&Subset::from_elems(12, [1, 3, 9]))
            .set("N", Universe::Module, &Subset::from_elems(12, [0, 4, 8]))
            .facts([
                Fact::Relation {
                    at: At::Localized,
                    universe: Universe::Module,
                    rel: Rel::Equal,
                    a: E::Ext(E::named("N").b()),
                    b: E::ZeroSubmodule,
                    holds: true,
                },
                Fact::Relation {
                    at: At::Base,
                    universe: Universe::Module,
                    rel: Rel::Equal,
                    a: E::Contract(E::ZeroSubmodule.b()),
                    b: E::named("N"),
                    holds: true,
                },
                Fact::Member { at: At::Localized, universe: Universe::Ring, x: ElemRef::Fraction(1, 3), set: E::UnitIdeal, holds: true },
            ]);
        assert_eq!(check_certificate(&c), Ok(()));
    }

    #[test]
    fn integer_facts() {
        let c = Certificate::new(InstanceDescriptor::Integer(ZInstance::Integers { m: 12 })).facts([
            Fact::Int(IntFact::Ngwp { x: 3, y: 4 }),
            Fact::Int(IntFact::Gwp { x: 1 }),
            Fact::Int(IntFact::Gwp { x: 5 }),
            Fact::Int(IntFact::Flag { predicate: IntPredicate::WeaklyPrimal, value: false }),
        ]);
        assert_eq!(check_certificate(&c), Ok(()));
        let bad = Certificate::new(InstanceDescriptor::Integer(ZInstance::Integers { m: 12 })).fact(Fact::Int(IntFact::Gwp { x: 2 }));
        assert!(!verify_certificate(&bad));
    }

    #[test]
    fn wp_flags() {
        let c = Certificate::new(z(4)).facts([
            Fact::Flag { at: At::Base, predicate: Predicate::WpRing { max_len: 1, proper_only: false }, args: vec![], value: true },
            Fact::Flag { at: At::Base, predicate: Predicate::WpModule { max_len: 1, proper_only: false }, args: vec![], value: true },
            Fact::Flag { at: At::Base, predicate: Predicate::Multiplication, args: vec![], value: true },
        ]);
        assert_eq!(check_certificate(&c), Ok(()));
    }
}
