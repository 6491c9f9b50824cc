//! Acceptance suite: one test per criterion, each printing a single
//! PASS/FAIL line (written straight to stderr so it survives capture).

use std::collections::BTreeSet;
use std::io::Write;
use std::sync::Arc;
use std::time::{Duration, Instant};

use forge_core::catalog;
use forge_core::geometry::{
    benson_check, gq_from_kantor, gq_isomorphic, incidence_isomorphism, kantor_from_egq, symplectic_quadrangle,
    verify_gq, GeometryMap, IsoOptions, KantorGq,
};
use forge_core::group::{GroupTable, Subgroup};
use forge_core::kantor::{search_kantor_families, stgq_condition, KantorFamily, SearchOptions};
use forge_core::planes::{derived_plane, find_spreads, plane_from_spread, plane_translation_group};
use forge_core::regularity::{is_center_of_symmetry, is_regular_point, symmetry_group, Element};
use forge_core::subgq::classical_subgqs;
use forge_core::suite::{suite_even_stgq_is_tgq, suite_frohardt_case3, Catalog, InstanceStatus, SuiteOptions, Verdict};

/// Runs a criterion, prints its line and fails the test on a miss.
fn criterion(n: u32, title: &str, limit: Duration, body: impl FnOnce() -> Result<String, String>) {
    let start = Instant::now();
    let outcome = body();
    let elapsed = start.elapsed();
    let (ok, detail) = match outcome {
        Ok(d) if elapsed <= limit => (true, d),
        Ok(d) => (false, format!("{d}; over the {limit:?} limit")),
        Err(e) => (false, e),
    };
    let verdict = if ok { "PASS" } else { "FAIL" };
    let _ = writeln!(
        std::io::stderr(),
        "[acceptance] criterion {n} {verdict}: {title} ({:.2}s, limit {}s) {detail}",
        elapsed.as_secs_f64(),
        limit.as_secs()
    );
    assert!(ok, "criterion {n}: {detail}");
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn base_instances() -> Vec<(KantorFamily, usize)> {
    vec![(catalog::e8_family(), 2), (catalog::heisenberg3_family().expect("Heis(3) has a family"), 3)]
}

fn all_families(groups: Vec<GroupTable>, t: usize) -> Vec<KantorFamily> {
    groups
        .into_iter()
        .flat_map(|g| {
            let out = search_kantor_families(Arc::new(g), t, t, &SearchOptions::default()).unwrap();
            assert!(out.exhaustive());
            out.families
        })
        .collect()
}

#[test]
fn criterion_1_construction_soundness() {
    criterion(1, "coset quadrangles of the base families", Duration::from_secs(5), || {
        let mut detail = Vec::new();
        for (fam, t) in base_instances() {
            let kg = gq_from_kantor(&fam).map_err(|e| e.to_string())?;
            let (s, tt) = kg.gq.order();
            ensure((s, tt) == (t, t), || format!("order ({s},{tt})"))?;
            let expected = (1 + s) * (1 + s * tt);
            ensure(kg.gq.num_points() == expected, || format!("{} points, expected {expected}", kg.gq.num_points()))?;
            verify_gq(kg.gq.geometry()).map_err(|f| f.to_string())?;
            let far: Vec<usize> = (0..kg.gq.num_points()).filter(|&p| !kg.gq.collinear(0, p)).collect();
            let base = kg.layout.element_point(0);
            let images: BTreeSet<usize> = kg.action.maps.iter().map(|m| m.point(base)).collect();
            ensure(far.len() == fam.group.order(), || "far points differ from |K|".into())?;
            ensure(images.into_iter().collect::<Vec<_>>() == far, || "K is not transitive off (∞)^⊥".into())?;
            detail.push(format!("GQ({t},{t}) {} points", kg.gq.num_points()));
        }
        Ok(detail.join(", "))
    });
}

#[test]
fn criterion_2_round_trip() {
    criterion(2, "kantor_from_egq after gq_from_kantor, every family of order (2,2) and (3,3)", Duration::from_secs(30), || {
        let mut fams = all_families(catalog::order8_groups(), 2);
        fams.extend(all_families(catalog::order27_groups(), 3));
        let mut other_basepoint = 0;
        for (i, fam) in fams.iter().enumerate() {
            let kg = gq_from_kantor(fam).map_err(|e| e.to_string())?;
            let y = kg.layout.element_point(0);
            let back = kantor_from_egq(&kg.gq, &kg.action, 0, y).map_err(|e| e.to_string())?;
            let rebuilt = gq_from_kantor(&back).map_err(|e| e.to_string())?;
            let iso = gq_isomorphic(&kg.gq, &rebuilt.gq, IsoOptions::default()).map_err(|e| e.to_string())?;
            ensure(iso.is_some(), || format!("family {i}: rebuilt quadrangle not isomorphic"))?;
            if i % 10 == 0 {
                let y2 = kg.layout.element_point(fam.group.order() - 1);
                let back2 = kantor_from_egq(&kg.gq, &kg.action, 0, y2).map_err(|e| e.to_string())?;
                let rebuilt2 = gq_from_kantor(&back2).map_err(|e| e.to_string())?;
                let iso2 = gq_isomorphic(&kg.gq, &rebuilt2.gq, IsoOptions::default()).map_err(|e| e.to_string())?;
                ensure(iso2.is_some(), || format!("family {i}: other basepoint not isomorphic"))?;
                other_basepoint += 1;
            }
        }
        Ok(format!("{} families, {other_basepoint} also from a second basepoint", fams.len()))
    });
}

#[test]
fn criterion_3_benson() {
    criterion(3, "Benson congruence on the elation maps and the identity", Duration::from_secs(5), || {
        let mut checked = 0;
        for (fam, _) in base_instances() {
            let kg = gq_from_kantor(&fam).map_err(|e| e.to_string())?;
            let id = GeometryMap::identity(kg.gq.num_points(), kg.gq.num_lines());
            let mut maps = kg.action.maps.clone();
            maps.push(id.clone());
            for m in &maps {
                let r = benson_check(&kg.gq, m).map_err(|e| e.to_string())?;
                ensure(r.ok, || format!("{r:?}"))?;
                checked += 1;
            }
            if kg.gq.order() == (2, 2) {
                let r = benson_check(&kg.gq, &id).map_err(|e| e.to_string())?;
                ensure((r.f0, r.f1, r.lhs, r.rhs, r.modulus) == (15, 0, 45, 5, 4), || format!("{r:?}"))?;
                ensure(45 % 4 == 5 % 4, || "worked case".into())?;
            }
        }
        Ok(format!("{checked} maps (8 + 1 and 27 + 1)"))
    });
}

/// Elements of `K` whose image lies in the symmetry group about `(∞)`.
fn symmetry_subgroup(kg: &KantorGq) -> Subgroup {
    let sym = symmetry_group(&kg.gq, Element::point(0), &kg.action.maps).unwrap();
    let ids: Vec<usize> = (0..kg.action.maps.len()).filter(|&k| sym.maps.contains(&kg.action.maps[k])).collect();
    Subgroup::new(&kg.family.group, ids).unwrap()
}

#[test]
fn criterion_4_regularity_symmetry_planes() {
    criterion(4, "regular center of symmetry, derived plane, translations K/S", Duration::from_secs(10), || {
        let mut detail = Vec::new();
        for (fam, t) in base_instances() {
            let kg = gq_from_kantor(&fam).map_err(|e| e.to_string())?;
            ensure(is_regular_point(&kg.gq, 0).unwrap(), || "(∞) not regular".into())?;
            let sym = symmetry_group(&kg.gq, Element::point(0), &kg.action.maps).map_err(|e| e.to_string())?;
            ensure(sym.len() == t, || format!("|S((∞))| = {}", sym.len()))?;
            ensure(is_center_of_symmetry(&kg.gq, Element::point(0), &kg.action.maps).unwrap(), || "not a center".into())?;
            let plane = derived_plane(&kg.gq, 0).map_err(|e| e.to_string())?;
            ensure(plane.order == t && plane.num_lines() == t * t + t, || "plane counts".into())?;
            let s = symmetry_subgroup(&kg);
            let tr = plane_translation_group(&plane, &kg.action, &s).map_err(|e| e.to_string())?;
            ensure(tr.kernel.as_ref() == Some(&s), || "kernel".into())?;
            ensure(tr.order() == t * t, || format!("|K/S| = {}", tr.order()))?;
            for p in 0..plane.num_points() {
                let stab = tr.maps.iter().filter(|m| m.point(p) == p).count();
                ensure(stab == 1, || format!("point {p} has stabilizer of size {stab}"))?;
            }
            detail.push(format!("t={t}: |S|={}, plane {}x{}", sym.len(), plane.num_points(), plane.num_lines()));
        }
        Ok(detail.join("; "))
    });
}

#[test]
fn criterion_5_subquadrangle_lemma() {
    criterion(5, "W(2) subquadrangles of a GQ(4,4) from E(2^6)", Duration::from_secs(300), || {
        let fam = catalog::conic_translation_family(4).map_err(|e| e.to_string())?;
        let kg = gq_from_kantor(&fam).map_err(|e| e.to_string())?;
        let gq = verify_gq(kg.gq.geometry()).map_err(|f| f.to_string())?;
        ensure(gq.order() == (4, 4) && gq.num_points() == 85, || "not GQ(4,4)".into())?;
        // the plane at (∞) is the plane of the regular spread of PG(3,2)
        let spread = &find_spreads(2, 2, 1).map_err(|e| e.to_string())?[0];
        let (spread_plane, _) = plane_from_spread(spread).map_err(|e| e.to_string())?;
        let derived = derived_plane(&kg.gq, 0).map_err(|e| e.to_string())?;
        let iso = incidence_isomorphism(&derived.geom, &spread_plane.geom, IsoOptions::default()).map_err(|e| e.to_string())?;
        ensure(iso.is_some(), || "derived plane differs from the spread plane".into())?;
        let s = stgq_condition(&fam).ok_or("no STGQ subgroup")?;
        let out = classical_subgqs(&kg, &s, None).map_err(|e| e.to_string())?;
        ensure(!out.truncated, || "truncated".into())?;
        ensure(!out.results.is_empty(), || "no subquadrangle".into())?;
        let w2 = symplectic_quadrangle(2).map_err(|e| e.to_string())?;
        let mut sigmas = BTreeSet::new();
        for res in &out.results {
            ensure(res.r == 2 && res.report.passed(), || format!("r = {}, {}", res.r, res.report.summary()))?;
            let w = gq_isomorphic(&res.sub.gq, &w2, IsoOptions::default()).map_err(|e| e.to_string())?;
            ensure(w.is_some(), || "sub-geometry not W(2)".into())?;
            sigmas.insert(res.sigma);
        }
        Ok(format!("{} subquadrangles, all W(2), measured sigma {:?}", out.results.len(), sigmas))
    });
}

#[test]
fn criterion_6_no_case_three() {
    criterion(6, "no Frohardt case (3): order 8 exhaustive", Duration::from_secs(60), || {
        let r = suite_frohardt_case3(&Catalog::builtin(2).unwrap(), 2, SuiteOptions::default()).map_err(|e| e.to_string())?;
        ensure(r.verdict == Verdict::Confirmed, || format!("{:?}", r.verdict))?;
        ensure(r.instances.len() == 5 && r.instances.iter().all(|i| !i.truncated), || "coverage".into())?;
        let case3: usize = r.instances.iter().map(|i| i.case_tallies.get("3").copied().unwrap_or(0)).sum();
        ensure(case3 == 0, || format!("{case3} case-3 families"))?;
        Ok(format!("{} families examined", r.instances.iter().map(|i| i.families).sum::<usize>()))
    });
    criterion(6, "no Frohardt case (3): order-64 catalogue", Duration::from_secs(1800), || {
        let r = suite_frohardt_case3(&Catalog::builtin(4).unwrap(), 4, SuiteOptions::default()).map_err(|e| e.to_string())?;
        ensure(r.verdict == Verdict::ConfirmedOnSearchedSpace, || format!("{:?}", r.verdict))?;
        ensure(r.instances.iter().all(|i| i.families == 0 && i.status != InstanceStatus::Fail), || "case 3 found".into())?;
        Ok(format!("{} groups, verdict confirmed-on-searched-space", r.instances.len()))
    });
}

#[test]
fn criterion_7_even_stgq_is_tgq() {
    criterion(7, "skew-translation families of order (2,2) are translation families", Duration::from_secs(60), || {
        let r = suite_even_stgq_is_tgq(&Catalog::builtin(2).unwrap(), 2, SuiteOptions::default()).map_err(|e| e.to_string())?;
        ensure(r.verdict == Verdict::Confirmed, || format!("{:?}", r.verdict))?;
        let mut with_families = Vec::new();
        for i in &r.instances {
            if i.families > 0 {
                with_families.push(i.group.clone());
            }
        }
        ensure(with_families == ["E(2^3)"], || format!("families in {with_families:?}"))?;
        // independent count: every order-8 group, filter by the STGQ condition directly
        for g in catalog::order8_groups() {
            let ea = g.is_elementary_abelian();
            let out = search_kantor_families(Arc::new(g), 2, 2, &SearchOptions::default()).unwrap();
            let n = out.families.iter().filter(|f| stgq_condition(f).is_some()).count();
            ensure(ea || n == 0, || "STGQ family outside E(2^3)".into())?;
        }
        let e8 = r.instances.iter().find(|i| i.group == "E(2^3)").unwrap();
        Ok(format!("{} STGQ families in E(2^3); {}", e8.families, e8.notes.join("; ")))
    });
}

// ---- brute-force oracle for criterion 8 ----

fn oracle_subgroups(g: &GroupTable, order: usize) -> Vec<Vec<usize>> {
    let n = g.order();
    let close = |gens: &[usize]| -> Vec<usize> {
        let mut set: BTreeSet<usize> = BTreeSet::from([0]);
        loop {
            let cur: Vec<usize> = set.iter().copied().collect();
            let before = set.len();
            for &a in &cur {
                for &b in gens {
                    set.insert(g.mul(a, b));
                }
            }
            if set.len() == before {
                return cur;
            }
        }
    };
    let mut out = BTreeSet::new();
    for a in 0..n {
        for b in a..n {
            let h = close(&[a, b]);
            if h.len() == order {
                out.insert(h);
            }
        }
    }
    out.into_iter().collect()
}

fn meets_trivially(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| *x == 0 || !b.contains(x))
}

fn is_family(g: &GroupTable, pairs: &[(&Vec<usize>, &Vec<usize>)]) -> bool {
    let m = pairs.len();
    for i in 0..m {
        for j in 0..m {
            if i == j {
                continue;
            }
            if !meets_trivially(pairs[i].0, pairs[j].1) {
                return false;
            }
            for k in 0..m {
                if k == i || k == j {
                    continue;
                }
                let prod: BTreeSet<usize> =
                    pairs[i].0.iter().flat_map(|&a| pairs[j].0.iter().map(move |&b| g.mul(a, b))).collect();
                if pairs[k].0.iter().any(|c| *c != 0 && prod.contains(c)) {
                    return false;
                }
            }
        }
    }
    true
}

fn brute_force(g: &GroupTable, t: usize) -> BTreeSet<Vec<(Vec<usize>, Vec<usize>)>> {
    let small = oracle_subgroups(g, t);
    let big = oracle_subgroups(g, t * t);
    let pairs: Vec<(&Vec<usize>, &Vec<usize>)> =
        small.iter().flat_map(|a| big.iter().filter(|b| a.iter().all(|x| b.contains(x))).map(move |b| (a, b))).collect();
    let mut out = BTreeSet::new();
    let mut idx: Vec<usize> = (0..=t).collect();
    let n = pairs.len();
    if n < t + 1 {
        return out;
    }
    loop {
        let pick: Vec<(&Vec<usize>, &Vec<usize>)> = idx.iter().map(|&i| pairs[i]).collect();
        if is_family(g, &pick) {
            let mut fam: Vec<(Vec<usize>, Vec<usize>)> = pick.iter().map(|(a, b)| ((*a).clone(), (*b).clone())).collect();
            fam.sort();
            out.insert(fam);
        }
        // next combination
        let k = idx.len();
        let mut i = k;
        while i > 0 && idx[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

#[test]
fn criterion_8_search_matches_brute_force() {
    criterion(8, "pruned search equals brute-force assembly, orders 8 and 27", Duration::from_secs(600), || {
        let mut total = 0;
        for (groups, t) in [(catalog::order8_groups(), 2), (catalog::order27_groups(), 3)] {
            for g in groups {
                let oracle = brute_force(&g, t);
                let out = search_kantor_families(Arc::new(g.clone()), t, t, &SearchOptions::default()).unwrap();
                ensure(out.exhaustive(), || "search not exhaustive".into())?;
                let found: BTreeSet<Vec<(Vec<usize>, Vec<usize>)>> = out
                    .families
                    .iter()
                    .map(|f| {
                        let mut v: Vec<_> = f.f.iter().zip(&f.fstar).map(|(a, b)| (a.to_vec(), b.to_vec())).collect();
                        v.sort();
                        v
                    })
                    .collect();
                ensure(found.len() == out.families.len(), || "duplicate families emitted".into())?;
                ensure(found == oracle, || format!("{}: search {} vs oracle {}", g.name(), found.len(), oracle.len()))?;
                total += oracle.len();
            }
        }
        Ok(format!("{total} families agree"))
    });
}
