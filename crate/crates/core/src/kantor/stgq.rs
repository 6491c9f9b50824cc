use super::KantorFamily;
use crate::group::Subgroup;

/// A normal subgroup `C` of order `v` with `F*[i] = F[i] C` for every `i`,
/// if one exists (the lexicographically first is returned).
pub fn stgq_condition(fam: &KantorFamily) -> Option<Subgroup> {
    let g = &*fam.group;
    let normals = g.normal_subgroups_of_order(fam.ktype.v, None).ok()?;
    let c = normals.subgroups.into_iter().find(|c| {
        fam.f
            .iter()
            .zip(&fam.fstar)
            .all(|(a, astar)| g.product_set(a, c) == *astar.mask())
    })?;
    for i in 0..fam.len() {
        for j in i + 1..fam.len() {
            assert_eq!(
                fam.fstar[i].intersection(&fam.fstar[j]),
                c,
                "A* ∩ B* must equal C in a skew translation family"
            );
        }
    }
    Some(c)
}
