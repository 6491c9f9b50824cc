use std::sync::Arc;

use super::*;
use crate::catalog::{conic_translation_family, heisenberg3_family};
use crate::group::{cyclic, dihedral, elementary_abelian, quaternion8, GroupTable};
use crate::par::Exec;

fn e8_family() -> KantorFamily {
    conic_translation_family(2).unwrap()
}

#[test]
fn builtin_families_verify() {
    assert!(e8_family().verify().passed());
    let h = heisenberg3_family().unwrap();
    assert_eq!(h.ktype, KantorType::new(3, 3));
    assert!(h.verify().passed());
}

#[test]
fn axiom_d_violation_has_witness() {
    let fam = e8_family();
    let g = fam.group.clone();
    // an order-4 subgroup containing F[0] and F[1]
    let bad = g.subgroup_generated(&[fam.f[0].to_vec()[1], fam.f[1].to_vec()[1]]).unwrap();
    let broken = fam.with_fstar(0, bad);
    let report = broken.verify();
    assert!(report.axiom_a.passed() && report.axiom_b.passed());
    match report.axiom_d {
        AxiomResult::Fail { witness: Witness::Pair { i, j, elem } } => {
            assert_eq!((i, j), (1, 0));
            assert!(broken.f[1].contains(elem) && broken.fstar[0].contains(elem));
        }
        other => panic!("expected axiom (d) failure, got {other:?}"),
    }
}

#[test]
fn structural_and_size_failures() {
    let fam = e8_family();
    let mut short = fam.clone();
    short.f.pop();
    short.fstar.pop();
    assert!(matches!(short.verify().axiom_a, AxiomResult::Fail { witness: Witness::Count { .. } }));

    let wrong_type = KantorFamily::new(fam.group.clone(), KantorType::new(2, 3), fam.f.clone(), fam.fstar.clone());
    let r = wrong_type.verify();
    assert!(r.structural.is_some());
    assert!(!r.passed());

    // F[2] replaced by a member of F*[0]: axiom (c) or (d) must catch it
    let mut clash = fam.clone();
    clash.f[2] = fam.f[0].clone();
    assert!(!clash.verify().passed());
}

#[test]
fn frohardt_classification() {
    let fam = e8_family();
    let r = frohardt_condition(&fam, 0, 1).unwrap();
    assert!(r.central && r.quotient_abelian);
    assert_eq!(r.case, FrohardtCase::One);
    assert_eq!(classify(&fam).case, FrohardtCase::One);
    assert_eq!(frohardt_condition(&fam, 1, 1), Err(KantorError::SameIndex(1)));

    let h = heisenberg3_family().unwrap();
    let r = frohardt_condition(&h, 0, 2).unwrap();
    assert_eq!(r.s, h.group.center().to_vec());
    assert_eq!(r.case, FrohardtCase::One);
}

#[test]
fn frohardt_not_applicable_when_s_is_not_central() {
    // not a Kantor family; only exercises the centrality branch
    let d8 = Arc::new(dihedral(8).unwrap());
    let s = Subgroup::new(&d8, [0, 4]).unwrap();
    let big = Subgroup::new(&d8, [0, 2, 4, 6]).unwrap();
    let fake = KantorFamily::new(d8.clone(), KantorType::new(2, 2), vec![s.clone(), s], vec![big.clone(), big]);
    let r = frohardt_condition(&fake, 0, 1).unwrap();
    assert!(!r.central);
    assert_eq!(r.case, FrohardtCase::NotApplicable);
}

#[test]
fn stgq_condition_examples() {
    let fam = e8_family();
    let c = stgq_condition(&fam).unwrap();
    assert_eq!(c.order(), 2);
    assert_eq!(c.to_vec(), vec![0, 2]);

    let h = heisenberg3_family().unwrap();
    assert_eq!(stgq_condition(&h).unwrap(), h.group.center());

    // T2(conic) over F_3: tangent planes are not concurrent
    let e27 = Arc::new(elementary_abelian(3, 3).unwrap());
    let out = search_kantor_families(e27, 3, 3, &SearchOptions { max_families: Some(1), ..Default::default() }).unwrap();
    let conic = &out.families[0];
    assert!(stgq_condition(conic).is_none());
}

fn search(g: GroupTable, u: usize, v: usize) -> SearchOutcome {
    search_kantor_families(Arc::new(g), u, v, &SearchOptions::default()).unwrap()
}

#[test]
fn search_examples() {
    let out = search(elementary_abelian(2, 3).unwrap(), 2, 2);
    assert!(out.exhaustive());
    assert!(!out.families.is_empty());
    assert!(out.families.iter().all(|f| classify(f).case == FrohardtCase::One));
    assert!(out.families.contains(&e8_family()));

    assert!(search(cyclic(8).unwrap(), 2, 2).families.is_empty());
    assert!(search(quaternion8().unwrap(), 2, 2).families.is_empty());
}

#[test]
fn search_is_deterministic_across_execution_modes() {
    let g = Arc::new(crate::group::heisenberg(3, 3).unwrap());
    let serial = SearchOptions { exec: Exec::Serial, ..Default::default() };
    let parallel = SearchOptions { exec: Exec::Parallel, ..Default::default() };
    let a = search_kantor_families(g.clone(), 3, 3, &serial).unwrap();
    let b = search_kantor_families(g, 3, 3, &parallel).unwrap();
    assert_eq!(a.families, b.families);
    assert!(!a.families.is_empty());
}

#[test]
fn tiny_budget_truncates() {
    let g = Arc::new(elementary_abelian(3, 3).unwrap());
    let out = search_kantor_families(g, 3, 3, &SearchOptions { budget: Some(5), ..Default::default() }).unwrap();
    assert!(out.truncated);
    assert!(!out.exhaustive());
}

#[test]
fn stgq_filter_and_case_filter() {
    let g = Arc::new(elementary_abelian(2, 3).unwrap());
    let all = search_kantor_families(g.clone(), 2, 2, &SearchOptions::default()).unwrap();
    let stgq = search_kantor_families(g.clone(), 2, 2, &SearchOptions { require_stgq: true, ..Default::default() }).unwrap();
    let expected: Vec<_> = all.families.iter().filter(|f| stgq_condition(f).is_some()).cloned().collect();
    assert_eq!(stgq.families, expected);

    let case3 = search_kantor_families(g, 2, 2, &SearchOptions { require_case: Some(3), ..Default::default() }).unwrap();
    assert!(case3.families.is_empty());
    assert!(case3.pruned_reason.is_some());
    assert!(search_kantor_families(Arc::new(cyclic(8).unwrap()), 3, 3, &SearchOptions::default()).is_err());
}
