use super::{verify_affine_plane, AffinePlane, PlaneError, PlaneTranslationGroup};
use crate::geometry::IncidenceGeometry;
use crate::group::Subgroup;
use crate::par::{self, Exec};

/// A subplane of order `r` through the base point, carried by a subgroup
/// `T'` of the translation group.
#[derive(Clone, Debug)]
pub struct Subplane {
    pub tsub: Subgroup,
    /// Parallel-class indices of the parent used by the subplane.
    pub classes: Vec<usize>,
    /// `T'_i = T_i ∩ T'` for each class in `classes`.
    pub components: Vec<Subgroup>,
    pub plane: AffinePlane,
    /// Parent point id of each subplane point.
    pub points: Vec<usize>,
    /// Parent line id of each subplane line.
    pub lines: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct SubplaneSearch {
    pub subplanes: Vec<Subplane>,
    pub truncated: bool,
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// For every subgroup `T'` of order `r^2` and every `r+1` parallel classes,
/// tests whether the `T'`-orbit of `basepoint` with the induced lines of
/// those classes is an affine plane of order `r`. Results are ordered by
/// `T'` and then by class set.
pub fn find_subplanes(
    plane: &AffinePlane,
    tgroup: &PlaneTranslationGroup,
    r: usize,
    basepoint: usize,
    budget: Option<u64>,
) -> Result<SubplaneSearch, PlaneError> {
    let order = tgroup.order();
    if r < 2 || !order.is_multiple_of(r * r) {
        return Err(PlaneError::Unsupported(format!("r^2 = {} does not divide |T| = {order}", r * r)));
    }
    if basepoint >= plane.num_points() {
        return Err(PlaneError::Unsupported(format!("no plane point {basepoint}")));
    }
    let g = &tgroup.group;
    let stream = g.enumerate_subgroups_of_order(r * r, budget)?;
    let class_groups: Vec<Subgroup> = (0..plane.parallel_classes.len())
        .map(|i| tgroup.line_stabilizer(plane.line_through(i, basepoint)))
        .collect();
    let per_t = par::map(Exec::default(), &stream.subgroups, |tsub| {
        let comps: Vec<Subgroup> = class_groups.iter().map(|ti| ti.intersection(tsub)).collect();
        let usable: Vec<usize> = (0..comps.len()).filter(|&i| comps[i].order() == r).collect();
        let orbit: Vec<usize> = {
            let mut o: Vec<usize> = tsub.members().map(|e| tgroup.maps[e].point(basepoint)).collect();
            o.sort_unstable();
            o
        };
        let mut found = Vec::new();
        for pick in combinations(usable.len(), r + 1) {
            let classes: Vec<usize> = pick.iter().map(|&i| usable[i]).collect();
            if let Some(sp) = try_subplane(plane, tsub, &classes, &comps, &orbit, r) {
                found.push(sp);
            }
        }
        found
    });
    Ok(SubplaneSearch { subplanes: per_t.into_iter().flatten().collect(), truncated: stream.truncated })
}

fn try_subplane(
    plane: &AffinePlane,
    tsub: &Subgroup,
    classes: &[usize],
    comps: &[Subgroup],
    orbit: &[usize],
    r: usize,
) -> Option<Subplane> {
    let local = |p: usize| orbit.binary_search(&p).ok();
    let mut lines = Vec::new();
    let mut sublines = Vec::new();
    for &c in classes {
        for &p in orbit {
            let l = plane.line_through(c, p);
            if lines.contains(&l) {
                continue;
            }
            let pts: Vec<usize> = plane.geom.line(l).iter().filter_map(|&x| local(x)).collect();
            if pts.len() != r {
                return None;
            }
            lines.push(l);
            sublines.push(pts);
        }
    }
    let sub_classes: Vec<Vec<usize>> = classes
        .iter()
        .map(|&c| (0..lines.len()).filter(|&i| plane.class_of(lines[i]) == c).collect())
        .collect();
    let geom = IncidenceGeometry::new(orbit.len(), sublines).ok()?;
    let sub = verify_affine_plane(geom, sub_classes).ok()?;
    let components: Vec<Subgroup> = classes.iter().map(|&c| comps[c].clone()).collect();
    // the components form a congruence partition of T'
    for (i, a) in components.iter().enumerate() {
        assert_eq!(a.order(), r);
        for b in &components[i + 1..] {
            assert!(a.meets_trivially(b));
        }
    }
    let mut cover = tsub.mask().clone();
    cover.clear();
    for a in &components {
        cover.union_with(a.mask());
    }
    assert_eq!(cover.count_ones(..), (r + 1) * (r - 1) + 1);
    Some(Subplane {
        tsub: tsub.clone(),
        classes: classes.to_vec(),
        components,
        plane: sub,
        points: orbit.to_vec(),
        lines,
    })
}
