mod common;

use common::zoracle;
use graded_lab::module::{ResidueSummary, ZInstance};

fn agree(s: &ResidueSummary, o: &zoracle::WindowVerdict, w: i64) -> Vec<String> {
    let mut bad = Vec::new();
    for x in -w..=w {
        for (name, set, oracle) in [("gw", &s.gw, &o.gw), ("g", &s.g, &o.g), ("w", &s.w, &o.w), ("colon", &s.colon, &o.colon)] {
            if set.contains(x) != oracle.contains(&x) {
                bad.push(format!("{name} at {x}"));
            }
        }
    }
    for (name, a, b) in [
        ("weakly_primal", s.is_weakly_primal, o.weakly_primal),
        ("primal", s.is_primal, o.primal),
        ("weakly_prime", s.is_weakly_prime, o.weakly_prime),
        ("weakly_primary", s.is_weakly_primary, o.weakly_primary),
    ] {
        if a != b {
            bad.push(format!("{name}: table {a}, oracle {b}"));
        }
    }
    bad
}

#[test]
fn cyclic_instances_agree_with_window() {
    for n in 1..=32usize {
        for d in (1..=n).filter(|d| n % d == 0) {
            let z = ZInstance::Cyclic { n, d };
            let o = zoracle::cyclic(n as i64, d as i64);
            assert!(o.periodic, "{z:?}");
            let bad = agree(&z.residue_reduction().unwrap(), &o, 4 * n as i64);
            assert!(bad.is_empty(), "{z:?}: {bad:?}");
            assert_eq!(o.literal_ideal, o.gw.is_empty(), "{z:?}");
        }
    }
}

#[test]
fn integer_instances_agree_with_window() {
    for m in 1..=16usize {
        let z = ZInstance::Integers { m };
        let o = zoracle::integers(m as i64);
        assert!(o.periodic, "{z:?}");
        let bad = agree(&z.residue_reduction().unwrap(), &o, 4 * m as i64);
        assert!(bad.is_empty(), "{z:?}: {bad:?}");
    }
}

#[test]
fn twelve_z() {
    let o = zoracle::integers(12);
    assert!(o.gw.contains(&3));
    assert!(!o.gw.contains(&1));
    let expected: Vec<i64> = (-48i64..=48).filter(|&x| x != 0 && gcd(x.rem_euclid(12), 12) > 1).collect();
    assert_eq!(o.gw.iter().copied().collect::<Vec<_>>(), expected);
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 { a } else { gcd(b, a % b) }
}
