use std::collections::HashMap;

use super::{group_from_maps, verify_affine_plane, AffinePlane, PlaneError, PlaneTranslationGroup};
use crate::geometry::{GeometryMap, IncidenceGeometry};
use crate::projective::{decode, ProjectiveSpace};

/// A partition of the points of `PG(2h-1, q)` into `q^h + 1` pairwise
/// disjoint `(h-1)`-spaces.
#[derive(Clone, Debug)]
pub struct Spread {
    pub h: usize,
    pub space: ProjectiveSpace,
    pub subspaces: Vec<Vec<usize>>,
}

impl Spread {
    pub fn new(q: usize, h: usize, subspaces: Vec<Vec<usize>>) -> Result<Self, PlaneError> {
        if h == 0 {
            return Err(PlaneError::InvalidSpread("h must be positive".into()));
        }
        let space = ProjectiveSpace::new(2 * h - 1, q)?;
        let mut subspaces = subspaces;
        for s in subspaces.iter_mut() {
            s.sort_unstable();
        }
        let size = space.subspace_size(h - 1);
        let mut covered = vec![false; space.num_points()];
        for (i, s) in subspaces.iter().enumerate() {
            if s.len() != size || s.iter().any(|&p| p >= space.num_points()) || space.span(s) != *s {
                return Err(PlaneError::InvalidSpread(format!("element {i} is not a {}-space", h - 1)));
            }
            for &p in s {
                if std::mem::replace(&mut covered[p], true) {
                    return Err(PlaneError::InvalidSpread(format!("point {p} is covered twice")));
                }
            }
        }
        if let Some(p) = covered.iter().position(|c| !c) {
            return Err(PlaneError::InvalidSpread(format!("cover violated: point {p} is missed")));
        }
        // implied by the cover and the element size
        debug_assert_eq!(subspaces.len(), q.pow(h as u32) + 1);
        Ok(Spread { h, space, subspaces })
    }

    pub fn q(&self) -> usize {
        self.space.q()
    }
}

/// Spreads of `PG(2h-1, q)` for `h <= 2`, in lexicographic order, up to
/// `limit` of them. For `h = 2` this is an exact cover of the points by
/// lines, always extending through the smallest uncovered point.
pub fn find_spreads(q: usize, h: usize, limit: usize) -> Result<Vec<Spread>, PlaneError> {
    match h {
        1 => {
            let space = ProjectiveSpace::new(1, q)?;
            let subs = (0..space.num_points()).map(|p| vec![p]).collect();
            Ok(vec![Spread::new(q, 1, subs)?])
        }
        2 => {
            let space = ProjectiveSpace::new(3, q)?;
            let lines = space.lines();
            let mut through = vec![Vec::new(); space.num_points()];
            for (i, l) in lines.iter().enumerate() {
                for &p in l {
                    through[p].push(i);
                }
            }
            let mut out = Vec::new();
            let mut chosen = Vec::new();
            let mut covered = vec![false; space.num_points()];
            cover(&lines, &through, &mut covered, &mut chosen, &mut out, limit);
            out.into_iter().map(|c: Vec<usize>| Spread::new(q, 2, c.iter().map(|&i| lines[i].clone()).collect())).collect()
        }
        _ => Err(PlaneError::Unsupported(format!("h = {h}"))),
    }
}

fn cover(
    lines: &[Vec<usize>],
    through: &[Vec<usize>],
    covered: &mut [bool],
    chosen: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
    limit: usize,
) {
    if out.len() >= limit {
        return;
    }
    let Some(p) = covered.iter().position(|c| !c) else {
        out.push(chosen.clone());
        return;
    };
    for &l in &through[p] {
        if lines[l].iter().any(|&x| covered[x]) {
            continue;
        }
        for &x in &lines[l] {
            covered[x] = true;
        }
        chosen.push(l);
        cover(lines, through, covered, chosen, out, limit);
        chosen.pop();
        for &x in &lines[l] {
            covered[x] = false;
        }
    }
}

/// The translation plane of a spread: points are the vectors of
/// `F_q^{2h}`, lines the cosets `v + W` of the spread subspaces, and
/// translations the maps `v -> v + a` (element `a` is the vector with id
/// `a`).
pub fn plane_from_spread(spread: &Spread) -> Result<(AffinePlane, PlaneTranslationGroup), PlaneError> {
    let q = spread.q();
    if q > 4 || spread.h > 2 {
        return Err(PlaneError::Unsupported(format!("q = {q}, h = {}", spread.h)));
    }
    let f = spread.space.field();
    let d = 2 * spread.h;
    let n = q.pow(d as u32);
    let vec_of = |id: usize| decode(id, q, d);
    let id_of = |v: &[usize]| v.iter().fold(0, |acc, &c| acc * q + c);
    let add = |a: usize, b: usize| {
        let (va, vb) = (vec_of(a), vec_of(b));
        let s: Vec<usize> = va.iter().zip(&vb).map(|(&x, &y)| f.add(x, y)).collect();
        id_of(&s)
    };
    let mut lines: Vec<Vec<usize>> = Vec::new();
    let mut classes = Vec::new();
    let mut line_index: HashMap<Vec<usize>, usize> = HashMap::new();
    for w in &spread.subspaces {
        let mut sub = vec![0usize];
        for &p in w {
            let c = spread.space.coords(p);
            for lam in 1..q {
                let v: Vec<usize> = c.iter().map(|&x| f.mul(lam, x)).collect();
                sub.push(id_of(&v));
            }
        }
        let mut class = Vec::new();
        for v in 0..n {
            let mut coset: Vec<usize> = sub.iter().map(|&w| add(v, w)).collect();
            coset.sort_unstable();
            if !line_index.contains_key(&coset) {
                line_index.insert(coset.clone(), lines.len());
                class.push(lines.len());
                lines.push(coset);
            }
        }
        classes.push(class);
    }
    let maps: Vec<GeometryMap> = (0..n)
        .map(|a| {
            let point_perm: Vec<usize> = (0..n).map(|v| add(v, a)).collect();
            let line_perm = lines
                .iter()
                .map(|l| {
                    let mut img: Vec<usize> = l.iter().map(|&v| point_perm[v]).collect();
                    img.sort_unstable();
                    line_index[&img]
                })
                .collect();
            GeometryMap { point_perm, line_perm }
        })
        .collect();
    let geom = IncidenceGeometry::new(n, lines)?;
    let plane = verify_affine_plane(geom, classes).map_err(PlaneError::NotPlane)?;
    let group = group_from_maps(format!("E({q}^{d})"), &maps)?;
    let t = PlaneTranslationGroup { group, maps, projection: None, kernel: None };
    t.check(&plane)?;
    Ok((plane, t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{incidence_isomorphism, IsoOptions};
    use crate::planes::desarguesian_plane;

    #[test]
    fn pg32_has_56_spreads() {
        let all = find_spreads(2, 2, usize::MAX).unwrap();
        assert_eq!(all.len(), 56);
        assert!(all.iter().all(|s| s.subspaces.len() == 5));
    }

    #[test]
    fn smallest_case_is_ag22() {
        let s = &find_spreads(2, 1, 1).unwrap()[0];
        let (p, t) = plane_from_spread(s).unwrap();
        assert_eq!((p.num_points(), p.num_lines()), (4, 6));
        assert_eq!(t.order(), 4);
    }

    #[test]
    fn spread_plane_of_order_four_is_ag24() {
        let s = &find_spreads(2, 2, 1).unwrap()[0];
        let (p, t) = plane_from_spread(s).unwrap();
        assert_eq!((p.num_points(), p.num_lines(), p.order), (16, 20, 4));
        assert!(t.group.is_abelian());
        let ag = desarguesian_plane(4).unwrap();
        assert!(incidence_isomorphism(&p.geom, &ag.geom, IsoOptions::default()).unwrap().is_some());
    }

    #[test]
    fn non_spread_rejected() {
        let s = &find_spreads(2, 2, 1).unwrap()[0];
        let two = s.subspaces[..2].to_vec();
        assert!(matches!(Spread::new(2, 2, two), Err(PlaneError::InvalidSpread(_))));
        let mut five = s.subspaces.clone();
        five[4] = five[3].clone();
        assert!(matches!(Spread::new(2, 2, five), Err(PlaneError::InvalidSpread(_))));
    }
}
