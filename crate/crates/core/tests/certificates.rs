use graded_lab::exec::Executor;
use graded_lab::harness::certificate::Fact;
use graded_lab::harness::descriptor::{ModuleDescriptor, RingDescriptor};
use graded_lab::harness::{check_certificate, run_claims, Budget, Certificate, ClaimStatus, InstanceDescriptor};

fn small() -> Budget {
    Budget { max_zn: 12, quadratic_n: vec![2, 3], max_integer_m: 12, max_cyclic_n: 12, ..Budget::default() }
}

fn negate(f: &Fact) -> Option<Fact> {
    let mut f = f.clone();
    match &mut f {
        Fact::Homogeneous { holds, .. } | Fact::Member { holds, .. } | Fact::Relation { holds, .. } => *holds = !*holds,
        Fact::Flag { value, .. } => *value = !*value,
        _ => return None,
    }
    Some(f)
}

#[test]
fn negated_facts_are_rejected() {
    let report = run_claims(&small(), None, Executor::default()).unwrap();
    assert!(report.errors.is_empty(), "{:?}", report.errors);
    let certs: Vec<&Certificate> = report.certificates().collect();
    assert!(!certs.is_empty());
    let mut flipped = 0;
    for c in certs {
        check_certificate(c).unwrap();
        for (i, f) in c.facts.iter().enumerate() {
            let Some(neg) = negate(f) else { continue };
            let mut t = c.clone();
            t.facts[i] = neg;
            assert!(check_certificate(&t).is_err(), "negated fact {i} accepted on {:?}", c.instance);
            flipped += 1;
        }
    }
    assert!(flipped > 100);
}

#[test]
fn refutations_survive_json_round_trip() {
    let report = run_claims(&small(), None, Executor::default()).unwrap();
    let back: graded_lab::harness::Report = serde_json::from_str(&report.to_json()).unwrap();
    assert_eq!(back, report);
    for r in back.claims.iter().flat_map(|c| &c.results).filter(|r| r.status == ClaimStatus::Refuted) {
        check_certificate(r.certificate.as_ref().unwrap()).unwrap();
    }
}

#[test]
fn wrong_instance_is_rejected() {
    let report = run_claims(&small(), Some("lem1"), Executor::default()).unwrap();
    let r = report.claims[0].results.iter().find(|r| r.status == ClaimStatus::Refuted).expect("lem1 refuted");
    let mut c = r.certificate.clone().unwrap();
    check_certificate(&c).unwrap();
    c.instance = InstanceDescriptor::Finite { ring: RingDescriptor::Zn { n: 2 }, module: ModuleDescriptor::Regular };
    assert!(check_certificate(&c).is_err(), "{} certificate accepted on Z_2", r.instance);
}
