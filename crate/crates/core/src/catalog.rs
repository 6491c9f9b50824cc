//! Built-in groups and families used by the suites and tests.

use std::sync::Arc;

use crate::group::{
    cyclic, dihedral, direct_product, elementary_abelian, heisenberg, quaternion8, semidirect_cyclic,
    FiniteField, GroupError, GroupKind, GroupTable, Subgroup,
};
use crate::kantor::{search_kantor_families, KantorError, KantorFamily, KantorType, SearchOptions};

/// The five groups of order 8.
pub fn order8_groups() -> Vec<GroupTable> {
    let c2 = cyclic(2).unwrap();
    vec![
        cyclic(8).unwrap(),
        direct_product(&cyclic(4).unwrap(), &c2).unwrap(),
        elementary_abelian(2, 3).unwrap(),
        dihedral(8).unwrap(),
        quaternion8().unwrap(),
    ]
}

/// The five groups of order 27.
pub fn order27_groups() -> Vec<GroupTable> {
    vec![
        cyclic(27).unwrap(),
        direct_product(&cyclic(9).unwrap(), &cyclic(3).unwrap()).unwrap(),
        elementary_abelian(3, 3).unwrap(),
        heisenberg(3, 3).unwrap(),
        semidirect_cyclic(9, 3, 4).unwrap(),
    ]
}

/// A partial catalog of groups of order 64: `E(2^6)`, `Heis(4)`, and every
/// direct product of the factors `C2, C4, D8, Q8, Heis(2)` of order 64.
/// It is not a list of all 267 groups of order 64.
pub fn order64_catalog() -> Vec<GroupKind> {
    use GroupKind::*;
    let factors: [(GroupKind, u32); 5] = [
        (Cyclic { n: 2 }, 1),
        (Cyclic { n: 4 }, 2),
        (Dihedral { order: 8 }, 3),
        (Quaternion8, 3),
        (Heisenberg { q: 2 }, 3),
    ];
    let mut out = vec![ElementaryAbelian { p: 2, k: 6 }, Heisenberg { q: 4 }];
    // multisets of factor indices (non-decreasing) whose log2 orders sum to 6
    fn rec(factors: &[(GroupKind, u32)], start: usize, left: u32, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..factors.len() {
            if factors[i].1 <= left {
                cur.push(i);
                rec(factors, i, left - factors[i].1, cur, out);
                cur.pop();
            }
        }
    }
    let mut combos = Vec::new();
    rec(&factors, 0, 6, &mut Vec::new(), &mut combos);
    for combo in combos {
        // all-C2 is the elementary abelian group already listed
        if combo.iter().all(|&i| i == 0) {
            continue;
        }
        // largest factors first reads naturally: D8 x C4 x C2
        let parts: Vec<GroupKind> = combo.iter().rev().map(|&i| factors[i].0.clone()).collect();
        out.push(Product(parts));
    }
    out
}

pub fn describe(kind: &GroupKind) -> String {
    match kind {
        GroupKind::ElementaryAbelian { p, k } => format!("E{p}^{k}"),
        GroupKind::Heisenberg { q } => format!("Heis{q}"),
        GroupKind::Cyclic { n } => format!("C{n}"),
        GroupKind::Dihedral { order } => format!("D{order}"),
        GroupKind::Quaternion8 => "Q8".into(),
        GroupKind::Semidirect { n, m, r } => format!("C{n}:C{m}({r})"),
        GroupKind::Product(parts) => parts.iter().map(describe).collect::<Vec<_>>().join(" x "),
    }
}

/// The translation family of the conic `{(1, m, m^2)} ∪ {(0, 0, 1)}` over
/// `F_q`, `q` even, in `K = F_q^3` realized as `E(2^(3k))`.
///
/// Members are ordered `A_inf, A_0, A_1, ...` (field elements by id) and
/// `A* = A + N` with `N = {(0, y, 0)}` the nucleus direction. For `q = 4`
/// the field `F_4 = F_2[x]/(x^2+x+1)` is the one whose 1-spaces in `F_4^2`
/// form the regular spread of `PG(3,2)`.
pub fn conic_translation_family(q: usize) -> Result<KantorFamily, KantorError> {
    let f = FiniteField::new(q)?;
    if f.characteristic() != 2 {
        return Err(GroupError::Unsupported(format!("q = {q} must be even")).into());
    }
    let k = f.degree();
    let g = Arc::new(elementary_abelian(2, 3 * k)?);
    let id = |x0: usize, x1: usize, x2: usize| x0 | (x1 << k) | (x2 << (2 * k));
    let n = g.order();
    let span = |dir: (usize, usize, usize)| -> Subgroup {
        let mut ids: Vec<usize> = (0..q).map(|x| id(f.mul(x, dir.0), f.mul(x, dir.1), f.mul(x, dir.2))).collect();
        ids.sort_unstable();
        Subgroup::new(&g, ids).expect("F_q-span of a vector")
    };
    let nucleus = span((0, 1, 0));
    let mut dirs = vec![(0, 0, 1)];
    dirs.extend((0..q).map(|m| (1, m, f.mul(m, m))));
    let fam_f: Vec<Subgroup> = dirs.iter().map(|&d| span(d)).collect();
    let fam_fstar: Vec<Subgroup> = fam_f
        .iter()
        .map(|a| Subgroup::from_mask(g.product_set(a, &nucleus)))
        .collect();
    debug_assert!(fam_fstar.iter().all(|s| s.parent_order() == n));
    KantorFamily::verified(g, KantorType::new(q, q), fam_f, fam_fstar)
}

/// The type-(2,2) family in `E(2^3)` from the conic over `F_2`.
pub fn e8_family() -> KantorFamily {
    conic_translation_family(2).expect("the conic family over F_2 verifies")
}

/// The lexicographically first type-(3,3) family in `Heis(3)`.
pub fn heisenberg3_family() -> Result<KantorFamily, KantorError> {
    let g = Arc::new(heisenberg(3, 3)?);
    let out = search_kantor_families(g, 3, 3, &SearchOptions { max_families: Some(1), ..Default::default() })?;
    out.families
        .into_iter()
        .next()
        .ok_or_else(|| KantorError::NotVerified("no type-(3,3) family in Heis(3)".into()))
}
