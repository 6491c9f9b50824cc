//! The coset geometry of a Kantor family and its inverse.

use std::sync::Arc;

use super::{verify_gq, GeometryError, GeometryMap, Gq, IncidenceGeometry};
use crate::group::{Cosets, GroupTable, Subgroup};
use crate::kantor::{KantorFamily, KantorType};

/// A group acting on a geometry: `maps[g]` is the image of element `g`.
#[derive(Clone, Debug)]
pub struct ElationAction {
    pub group: Arc<GroupTable>,
    pub maps: Vec<GeometryMap>,
}

impl ElationAction {
    pub fn map(&self, g: usize) -> &GeometryMap {
        &self.maps[g]
    }

    /// Elements fixing the point `p`.
    pub fn point_stabilizer(&self, p: usize) -> Subgroup {
        let ids: Vec<usize> = (0..self.maps.len()).filter(|&g| self.maps[g].point(p) == p).collect();
        Subgroup::new(&self.group, ids).expect("a stabilizer is a subgroup")
    }

    pub fn line_stabilizer(&self, l: usize) -> Subgroup {
        let ids: Vec<usize> = (0..self.maps.len()).filter(|&g| self.maps[g].line(l) == l).collect();
        Subgroup::new(&self.group, ids).expect("a stabilizer is a subgroup")
    }

    pub fn point_orbit(&self, p: usize) -> Vec<usize> {
        let mut o: Vec<usize> = self.maps.iter().map(|m| m.point(p)).collect();
        o.sort_unstable();
        o.dedup();
        o
    }

    /// Checks that `g -> maps[g]` is a homomorphism into the automorphisms
    /// of `geom`.
    pub fn is_homomorphism_into(&self, geom: &IncidenceGeometry) -> bool {
        let g = &self.group;
        self.maps.iter().all(|m| geom.is_automorphism(m))
            && (0..g.order()).all(|a| {
                (0..g.order()).all(|b| {
                    // acting on the left: (ab)x = a(bx), i.e. maps[b] then maps[a]
                    self.maps[b].then(&self.maps[a]) == self.maps[g.mul(a, b)]
                })
            })
    }
}

/// Where each kind of coset element sits in the id space of the geometry.
#[derive(Clone, Debug)]
pub struct CosetLayout {
    /// Point `(∞)`; always `0`.
    pub infinity: usize,
    pub star_cosets: Vec<Cosets>,
    /// Point id of the first coset of `F*[i]`.
    pub star_base: Vec<usize>,
    /// Point id of the group element `0`; element `g` is `element_base + g`.
    pub element_base: usize,
    /// Line id of `[A_i]` is `i`.
    pub member_cosets: Vec<Cosets>,
    pub member_base: Vec<usize>,
}

impl CosetLayout {
    pub fn element_point(&self, g: usize) -> usize {
        self.element_base + g
    }

    /// Point `g F*[i]`.
    pub fn star_point(&self, i: usize, g: usize) -> usize {
        self.star_base[i] + self.star_cosets[i].index_of[g]
    }

    /// Line `[A_i]`.
    pub fn symbol_line(&self, i: usize) -> usize {
        i
    }

    /// Line `g F[i]`.
    pub fn member_line(&self, i: usize, g: usize) -> usize {
        self.member_base[i] + self.member_cosets[i].index_of[g]
    }
}

/// The elation quadrangle of a Kantor family together with the action of
/// its group.
#[derive(Clone, Debug)]
pub struct KantorGq {
    pub gq: Gq,
    pub action: ElationAction,
    pub layout: CosetLayout,
    pub family: KantorFamily,
}

/// Builds `Γ(K, (F, F*))`: points `(∞)`, cosets `g A*` and elements of `K`;
/// lines `[A]` and cosets `g A`; `(∞)` lies on every `[A]`, `[A]` contains
/// the cosets of `A*`, and other incidences are reversed containment.
pub fn gq_from_kantor(fam: &KantorFamily) -> Result<KantorGq, GeometryError> {
    let report = fam.verify();
    if !report.passed() {
        return Err(GeometryError::FamilyNotVerified(report.summary()));
    }
    let g = &*fam.group;
    let n = g.order();
    let m = fam.len();
    let star_cosets: Vec<Cosets> = fam.fstar.iter().map(|s| g.left_cosets(s)).collect();
    let member_cosets: Vec<Cosets> = fam.f.iter().map(|a| g.left_cosets(a)).collect();

    let mut point_labels = vec!["(∞)".to_string()];
    let mut star_base = Vec::with_capacity(m);
    for (i, c) in star_cosets.iter().enumerate() {
        star_base.push(point_labels.len());
        point_labels.extend(c.cosets.iter().map(|cs| format!("{}A*{i}", cs[0])));
    }
    let element_base = point_labels.len();
    point_labels.extend((0..n).map(|e| format!("k{e}")));

    let mut line_labels: Vec<String> = (0..m).map(|i| format!("[A{i}]")).collect();
    let mut member_base = Vec::with_capacity(m);
    for (i, c) in member_cosets.iter().enumerate() {
        member_base.push(line_labels.len());
        line_labels.extend(c.cosets.iter().map(|cs| format!("{}A{i}", cs[0])));
    }

    let layout = CosetLayout { infinity: 0, star_cosets, star_base, element_base, member_cosets, member_base };

    let mut lines: Vec<Vec<usize>> = Vec::with_capacity(line_labels.len());
    for i in 0..m {
        let mut pts = vec![0];
        pts.extend((0..layout.star_cosets[i].cosets.len()).map(|c| layout.star_base[i] + c));
        lines.push(pts);
    }
    for i in 0..m {
        for coset in &layout.member_cosets[i].cosets {
            let mut pts: Vec<usize> = coset.iter().map(|&e| layout.element_point(e)).collect();
            pts.push(layout.star_point(i, coset[0]));
            lines.push(pts);
        }
    }
    let geom = IncidenceGeometry::new(point_labels.len(), lines)?.with_labels(point_labels, line_labels);
    let gq = verify_gq(&geom).map_err(GeometryError::NotGq)?;
    let KantorType { u, v } = fam.ktype;
    assert_eq!(gq.order(), (u, v), "Γ(K,(F,F*)) has order (u,v)");

    let maps: Vec<GeometryMap> = (0..n)
        .map(|k| {
            let mut point_perm = vec![0; gq.num_points()];
            for i in 0..m {
                for (c, coset) in layout.star_cosets[i].cosets.iter().enumerate() {
                    point_perm[layout.star_base[i] + c] = layout.star_point(i, g.mul(k, coset[0]));
                }
            }
            for e in 0..n {
                point_perm[layout.element_point(e)] = layout.element_point(g.mul(k, e));
            }
            let mut line_perm: Vec<usize> = (0..m).collect();
            line_perm.resize(gq.num_lines(), 0);
            for i in 0..m {
                for (c, coset) in layout.member_cosets[i].cosets.iter().enumerate() {
                    line_perm[layout.member_base[i] + c] = layout.member_line(i, g.mul(k, coset[0]));
                }
            }
            GeometryMap { point_perm, line_perm }
        })
        .collect();
    let action = ElationAction { group: fam.group.clone(), maps };

    // K acts sharply transitively on the points not collinear with (∞)
    let far: Vec<usize> = (0..gq.num_points()).filter(|&p| !gq.collinear(0, p)).collect();
    let base = layout.element_point(0);
    assert_eq!(far.len(), n);
    assert_eq!(action.point_orbit(base), far);
    assert!(action.point_stabilizer(base).is_trivial());

    Ok(KantorGq { gq, action, layout, family: fam.clone() })
}

/// Recovers a Kantor family from an elation quadrangle with elation point
/// `x`, using a base point `y` not collinear with `x`: for each line `U`
/// on `y` (in line-id order) the member is the stabilizer of `U` and its
/// partner is the stabilizer of the projection of `x` onto `U`.
pub fn kantor_from_egq(gq: &Gq, action: &ElationAction, x: usize, y: usize) -> Result<KantorFamily, GeometryError> {
    let geom = gq.geometry();
    let k = &action.group;
    if action.maps.len() != k.order() {
        return Err(GeometryError::Precondition("one map per group element is required".into()));
    }
    if let Some(g) = action.maps.iter().position(|m| !geom.is_automorphism(m)) {
        return Err(GeometryError::NotAutomorphism(format!("image of element {g}")));
    }
    if let Some(g) = action
        .maps
        .iter()
        .position(|m| m.point(x) != x || geom.pencil(x).iter().any(|&l| m.line(l) != l))
    {
        return Err(GeometryError::Precondition(format!("element {g} does not fix {x} linewise")));
    }
    if gq.collinear(x, y) {
        return Err(GeometryError::Precondition(format!("base point {y} is collinear with {x}")));
    }
    let far: Vec<usize> = (0..gq.num_points()).filter(|&p| !gq.collinear(x, p)).collect();
    if far.len() != k.order() || action.point_orbit(y) != far {
        return Err(GeometryError::Precondition(
            "the group is not sharply transitive on points not collinear with the elation point".into(),
        ));
    }

    let mut f = Vec::new();
    let mut fstar = Vec::new();
    for &u_line in geom.pencil(y) {
        let u_point = gq.projection(x, u_line)?;
        f.push(action.line_stabilizer(u_line));
        fstar.push(action.point_stabilizer(u_point));
    }
    let fam = KantorFamily::new(k.clone(), KantorType::new(gq.s(), gq.t()), f, fstar);
    let report = fam.verify();
    if !report.passed() {
        return Err(GeometryError::FamilyNotVerified(report.summary()));
    }
    Ok(fam)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::geometry::benson_check;

    #[test]
    fn e8_gives_gq22() {
        let kg = gq_from_kantor(&catalog::e8_family()).unwrap();
        assert_eq!(kg.gq.order(), (2, 2));
        assert_eq!((kg.gq.num_points(), kg.gq.num_lines()), (15, 15));
        let far = (0..15).filter(|&p| !kg.gq.collinear(0, p)).count();
        assert_eq!(far, 8);
        assert!(kg.action.map(0).is_identity());
        assert!(kg.action.is_homomorphism_into(kg.gq.geometry()));
        assert_eq!(kg.gq.geometry().point_label(0), "(∞)");
    }

    #[test]
    fn heisenberg_gives_gq33() {
        let kg = gq_from_kantor(&catalog::heisenberg3_family().unwrap()).unwrap();
        assert_eq!(kg.gq.order(), (3, 3));
        assert_eq!((kg.gq.num_points(), kg.gq.num_lines()), (40, 40));
        for m in &kg.action.maps {
            assert_eq!(m.point(0), 0);
            assert!((0..4).all(|l| m.line(l) == l));
        }
    }

    #[test]
    fn round_trip_recovers_type() {
        for fam in [catalog::e8_family(), catalog::heisenberg3_family().unwrap()] {
            let kg = gq_from_kantor(&fam).unwrap();
            let y = kg.layout.element_point(0);
            let back = kantor_from_egq(&kg.gq, &kg.action, 0, y).unwrap();
            assert_eq!(back.ktype, fam.ktype);
            // basepoint the identity element recovers the family itself
            assert_eq!(back, fam);
        }
    }

    #[test]
    fn kantor_from_egq_checks_preconditions() {
        let kg = gq_from_kantor(&catalog::e8_family()).unwrap();
        let star = kg.layout.star_point(0, 0);
        assert!(matches!(kantor_from_egq(&kg.gq, &kg.action, 0, star), Err(GeometryError::Precondition(_))));
        let y = kg.layout.element_point(0);
        assert!(matches!(kantor_from_egq(&kg.gq, &kg.action, y, 0), Err(GeometryError::Precondition(_))));
    }

    #[test]
    fn unverified_family_rejected() {
        let fam = catalog::e8_family();
        let bad = fam.with_fstar(0, fam.fstar[1].clone());
        assert!(matches!(gq_from_kantor(&bad), Err(GeometryError::FamilyNotVerified(_))));
    }

    #[test]
    fn benson_holds_on_elation_group() {
        let kg = gq_from_kantor(&catalog::e8_family()).unwrap();
        let mut symmetry_seen = false;
        for (g, m) in kg.action.maps.iter().enumerate() {
            let r = benson_check(&kg.gq, m).unwrap();
            assert!(r.ok, "element {g}: {r:?}");
            if g != 0 && r.f0 == 7 {
                assert_eq!(r.f1, 0);
                symmetry_seen = true;
            }
        }
        assert!(symmetry_seen);
    }
}
