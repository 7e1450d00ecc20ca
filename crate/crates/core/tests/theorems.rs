use std::sync::{Arc, LazyLock};

use absorb_core::theorems::*;
use absorb_core::*;

static FAMILY: LazyLock<Vec<Instance>> = LazyLock::new(|| default_family(FamilyOptions::default()).unwrap());

#[test]
fn registry_has_25_checks_with_unique_ids() {
    let checks = all_checks();
    assert_eq!(checks.len(), 25);
    let mut ids: Vec<&str> = checks.iter().map(|c| c.id).collect();
    ids.sort();
    ids.dedup();
    assert_eq!(ids.len(), 25);
    for c in &checks {
        assert_eq!(find_check(c.id).unwrap().index, c.index);
        assert_eq!(find_check(&c.index.to_string()).unwrap().id, c.id);
    }
    assert!(find_check("0").is_none() && find_check("26").is_none());
}

#[test]
fn family_is_large_enough() {
    let triples: usize = FAMILY
        .iter()
        .filter_map(|i| i.module.as_ref())
        .map(|m| m.lattice().unwrap().len())
        .sum();
    assert!(triples >= 200, "{triples}");
    assert!(FAMILY.iter().any(|i| i.product.is_some()));
    assert!(FAMILY.iter().any(|i| i.idealization.is_some()));
    assert!(FAMILY.iter().enumerate().all(|(k, i)| i.index == k));
}

#[test]
fn empty_family_is_vacuous() {
    let out = verify(&all_checks()[0], &[]);
    assert_eq!(out.instances_tested, 0);
    assert_eq!(out.status, CheckStatus::Vacuous);
    assert_eq!(out.status.to_string(), "pass-vacuous");
}

#[test]
fn every_check_passes_and_fires() {
    for check in all_checks() {
        let out = verify(&check, &FAMILY);
        assert!(out.failures.is_empty(), "{} refuted: {:?}", check.id, out.failures);
        assert!(out.asserted > 0, "{} never fired", check.id);
        assert_eq!(out.skipped, 0, "{}", check.id);
        let expected = if check.index == 9 { CheckStatus::Discrepancy } else { CheckStatus::Passed };
        assert_eq!(out.status, expected, "{}", check.id);
    }
}

#[test]
fn strong_claim_on_z4_is_reported_as_discrepancy() {
    let out = verify(&find_check("strong-vs-s2as").unwrap(), &FAMILY);
    assert_eq!(out.discrepancies.len(), 1);
    let d = &out.discrepancies[0];
    assert!(!d.claimed && d.computed);
    assert!(d.to_string().starts_with("paper-discrepancy: "));
}

#[test]
fn verification_is_deterministic() {
    let check = find_check("s2as-quotient").unwrap();
    let a = verify(&check, &FAMILY);
    let b = verify(&check, &FAMILY);
    assert_eq!((a.asserted, a.vacuous, a.instances_tested), (b.asserted, b.vacuous, b.instances_tested));
}

#[test]
fn product_dichotomy_on_integer_factors() {
    let inst = FAMILY
        .iter()
        .find(|i| {
            i.product.as_ref().is_some_and(|p| {
                p.factors.iter().all(|f| matches!(f.ring().kind(), RingKind::IntegerBase(d) if !d.excluded_primes.is_empty()))
            })
        })
        .unwrap();
    let m = inst.module.as_ref().unwrap();
    let p = inst.product.as_ref().unwrap();
    for f in &p.factors {
        assert!(f.holds(Predicate::S2AbsorbingSecond, &Submodule::whole(&f.module)).unwrap());
        assert!(!f.holds(Predicate::SSecond, &Submodule::whole(&f.module)).unwrap());
    }
    assert!(!m.holds(Predicate::S2AbsorbingSecond, &Submodule::whole(&m.module)).unwrap());
    let out = verify(&find_check("product-dichotomy").unwrap(), std::slice::from_ref(inst));
    assert_eq!(out.status, CheckStatus::Passed);
}

#[test]
fn fast_localization_matches_fractions_on_family() {
    let mut compared = 0;
    for m in FAMILY.iter().filter_map(|i| i.module.as_ref()).filter(|m| m.module.size() <= 64) {
        let Ok(fast) = localize_module(&m.module, &m.s) else {
            assert!(m.s.contains_zero());
            continue;
        };
        let slow = localization_fraction_oracle(&m.module, &m.s).unwrap();
        let (a, b) = (Arc::new(fast.over_base().unwrap()), Arc::new(slow.over_base().unwrap()));
        assert!(find_isomorphism(&a, &b).is_some(), "{}", m.label());
        compared += 1;
    }
    assert!(compared > 500);
}
