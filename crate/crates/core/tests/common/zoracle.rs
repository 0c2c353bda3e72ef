//! Brute-force oracle for the integer instances, written against plain
//! integer arithmetic only.

#![allow(dead_code)]

use std::collections::BTreeSet;

/// Verdicts of the oracle on a window of scalars `[-w, w]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WindowVerdict {
    pub gw: BTreeSet<i64>,
    pub g: BTreeSet<i64>,
    pub w: BTreeSet<i64>,
    pub colon: BTreeSet<i64>,
    pub weakly_primal: bool,
    pub primal: bool,
    pub weakly_prime: bool,
    pub weakly_primary: bool,
    /// Whether every status in the window is periodic in the modulus.
    pub periodic: bool,
    /// Literal test over `ℤ`: `GW ∪ {0}` closed under sums and integer
    /// multiples inside the window.
    pub literal_ideal: bool,
}

fn modpow(mut x: i64, mut k: u32, n: i64) -> i64 {
    let mut acc = 1i64.rem_euclid(n);
    x = x.rem_euclid(n);
    while k > 0 {
        if k & 1 == 1 {
            acc = acc * x % n;
        }
        x = x * x % n;
        k >>= 1;
    }
    acc
}

fn residues(set: &BTreeSet<i64>, n: i64) -> BTreeSet<i64> {
    set.iter().map(|x| x.rem_euclid(n)).collect()
}

fn residue_ideal(res: &BTreeSet<i64>, n: i64) -> bool {
    let mut with_zero = res.clone();
    with_zero.insert(0);
    with_zero.iter().all(|&a| with_zero.iter().all(|&b| with_zero.contains(&((a + b) % n))))
        && with_zero.iter().all(|&a| (0..n).all(|r| with_zero.contains(&(a * r % n))))
}

fn literal_ideal(set: &BTreeSet<i64>, w: i64) -> bool {
    let mut s = set.clone();
    s.insert(0);
    let inside = |x: i64| x.abs() <= w;
    s.iter().all(|&a| s.iter().all(|&b| !inside(a + b) || s.contains(&(a + b))))
        && s.iter().all(|&a| (-w..=w).all(|r| !inside(a * r) || s.contains(&(a * r))))
}

fn periodic(set: &BTreeSet<i64>, n: i64, w: i64, skip_zero: bool) -> bool {
    (-w..=w - n).all(|x| {
        if skip_zero && (x == 0 || x + n == 0) {
            return true;
        }
        set.contains(&x) == set.contains(&(x + n))
    })
}

/// `ℤ_n` over `ℤ` with `N = dℤ_n`; scalars range over `[-4n, 4n]`.
pub fn cyclic(n: i64, d: i64) -> WindowVerdict {
    let w = 4 * n;
    let in_n = |v: i64| v.rem_euclid(n) % d == 0;
    let act = |x: i64, v: i64| (x * v).rem_euclid(n);
    let scalars = -w..=w;
    let mut gw = BTreeSet::new();
    let mut g = BTreeSet::new();
    let mut colon = BTreeSet::new();
    for x in scalars.clone() {
        if (0..n).any(|v| !in_n(v) && act(x, v) != 0 && in_n(act(x, v))) {
            gw.insert(x);
        }
        if (0..n).any(|v| !in_n(v) && in_n(act(x, v))) {
            g.insert(x);
        }
        if (0..n).all(|v| in_n(act(x, v))) {
            colon.insert(x);
        }
    }
    let proper = d != 1;
    let mut prime = proper;
    let mut primary = true;
    for x in scalars.clone() {
        for v in 0..n {
            let xv = act(x, v);
            if xv != 0 && in_n(xv) && !in_n(v) {
                if !colon.contains(&x) {
                    prime = false;
                }
                if !(1..=n as u32).any(|k| colon.contains(&modpow(x, k, n))) {
                    primary = false;
                }
            }
        }
    }
    WindowVerdict {
        weakly_primal: residue_ideal(&residues(&gw, n), n),
        primal: residue_ideal(&residues(&g, n), n),
        weakly_prime: prime,
        weakly_primary: primary,
        periodic: periodic(&gw, n, w, false) && periodic(&g, n, w, false) && periodic(&colon, n, w, false),
        literal_ideal: literal_ideal(&gw, w),
        w: gw.clone(),
        gw,
        g,
        colon,
    }
}

/// `ℤ` over itself with `N = mℤ`; scalars and module elements range over
/// `[-4m, 4m]`.
pub fn integers(m: i64) -> WindowVerdict {
    let w = 4 * m;
    let in_n = |v: i64| v % m == 0;
    let mut gw = BTreeSet::new();
    let mut g = BTreeSet::new();
    let mut colon = BTreeSet::new();
    for x in -w..=w {
        if (-w..=w).any(|y| !in_n(y) && x * y != 0 && in_n(x * y)) {
            gw.insert(x);
        }
        if (-w..=w).any(|y| !in_n(y) && in_n(x * y)) {
            g.insert(x);
        }
        if in_n(x) {
            colon.insert(x);
        }
    }
    let mut prime = m != 1;
    let mut primary = true;
    for x in -w..=w {
        for y in -w..=w {
            if x * y != 0 && in_n(x * y) && !in_n(y) {
                if !colon.contains(&x) {
                    prime = false;
                }
                if !(1..=m as u32).any(|k| modpow(x, k, m) == 0) {
                    primary = false;
                }
            }
        }
    }
    let mut g_residues = residues(&g, m);
    if g.contains(&0) {
        g_residues.insert(0);
    }
    WindowVerdict {
        weakly_primal: residue_ideal(&residues(&gw, m), m),
        primal: residue_ideal(&g_residues, m),
        weakly_prime: prime,
        weakly_primary: primary,
        periodic: periodic(&gw, m, w, true) && periodic(&g, m, w, false),
        literal_ideal: literal_ideal(&gw, w),
        w: gw.clone(),
        gw,
        g,
        colon,
    }
}
