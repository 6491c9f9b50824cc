use std::collections::HashMap;

use super::{AffinePlane, PlaneError};
use crate::geometry::{ElationAction, GeometryMap};
use crate::group::{GroupError, GroupTable, Subgroup};

/// A group of translations of an affine plane, as an abstract table and as
/// maps (`maps[i]` realizes element `i`).
#[derive(Clone, Debug)]
pub struct PlaneTranslationGroup {
    pub group: GroupTable,
    pub maps: Vec<GeometryMap>,
    /// Image in the translation group of each element of the acting group,
    /// when the translations are induced.
    pub projection: Option<Vec<usize>>,
    pub kernel: Option<Subgroup>,
}

impl PlaneTranslationGroup {
    pub fn order(&self) -> usize {
        self.maps.len()
    }

    /// The element moving `from` to `to`.
    pub fn element_moving(&self, from: usize, to: usize) -> Option<usize> {
        self.maps.iter().position(|m| m.point(from) == to)
    }

    /// Translations fixing `line` (the component of its class).
    pub fn line_stabilizer(&self, line: usize) -> Subgroup {
        let ids: Vec<usize> = (0..self.maps.len()).filter(|&i| self.maps[i].line(line) == line).collect();
        Subgroup::new(&self.group, ids).expect("a stabilizer is a subgroup")
    }

    /// Checks sharp transitivity on points and that every parallel class is
    /// fixed setwise.
    pub fn check(&self, plane: &AffinePlane) -> Result<(), PlaneError> {
        let n = plane.num_points();
        let mut orbit: Vec<usize> = self.maps.iter().map(|m| m.point(0)).collect();
        orbit.sort_unstable();
        orbit.dedup();
        if self.maps.len() != n || orbit.len() != n {
            return Err(PlaneError::Unsupported(format!(
                "{} translations with an orbit of {} on {n} points",
                self.maps.len(),
                orbit.len()
            )));
        }
        for (i, m) in self.maps.iter().enumerate() {
            if !plane.geom.is_automorphism(m) {
                return Err(PlaneError::Unsupported(format!("translation {i} is not an automorphism")));
            }
            if let Some(l) = (0..plane.num_lines()).find(|&l| plane.class_of(l) != plane.class_of(m.line(l))) {
                return Err(PlaneError::Unsupported(format!("translation {i} moves the class of line {l}")));
            }
        }
        Ok(())
    }
}

/// The group generated by nothing but the listed maps: `maps` must be closed
/// under composition and contain the identity first. Element `i` is
/// `maps[i]`; `a * b` acts as `b` followed by `a`.
pub fn group_from_maps(name: impl Into<String>, maps: &[GeometryMap]) -> Result<GroupTable, GroupError> {
    let index: HashMap<&GeometryMap, usize> = maps.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let n = maps.len();
    let mut rows = vec![vec![0; n]; n];
    for a in 0..n {
        for b in 0..n {
            let c = maps[b].then(&maps[a]);
            rows[a][b] = *index
                .get(&c)
                .ok_or_else(|| GroupError::InvalidTable(format!("maps {a} and {b} compose outside the set")))?;
        }
    }
    GroupTable::from_rows(name, &rows)
}

/// The action induced on a plane derived at the elation point, its kernel
/// (which must equal `s`), and the quotient acting as translations.
pub fn plane_translation_group(
    plane: &AffinePlane,
    action: &ElationAction,
    s: &Subgroup,
) -> Result<PlaneTranslationGroup, PlaneError> {
    let keys = plane
        .point_keys
        .as_ref()
        .ok_or_else(|| PlaneError::Unsupported("plane has no quadrangle keys".into()))?;
    let line_keys = plane.line_keys.as_ref().expect("derived planes carry line keys");
    let key_index: HashMap<&Vec<usize>, usize> = keys.iter().enumerate().map(|(i, k)| (k, i)).collect();
    let mut induced = Vec::with_capacity(action.maps.len());
    for (g, m) in action.maps.iter().enumerate() {
        let mut point_perm = Vec::with_capacity(keys.len());
        for k in keys {
            let mut img: Vec<usize> = k.iter().map(|&p| m.point(p)).collect();
            img.sort_unstable();
            let i = key_index
                .get(&img)
                .ok_or_else(|| PlaneError::Unsupported(format!("element {g} does not preserve the plane")))?;
            point_perm.push(*i);
        }
        let line_perm = line_keys
            .iter()
            .map(|&y| line_keys.binary_search(&m.point(y)))
            .collect::<Result<Vec<usize>, _>>()
            .map_err(|_| PlaneError::Unsupported(format!("element {g} moves the base point")))?;
        induced.push(GeometryMap { point_perm, line_perm });
    }
    let kernel_ids: Vec<usize> = (0..induced.len()).filter(|&g| induced[g].is_identity()).collect();
    if let Some(w) = (0..induced.len()).find(|&g| kernel_ids.binary_search(&g).is_ok() != s.contains(g)) {
        return Err(PlaneError::KernelMismatch { witness: w, kernel: kernel_ids });
    }
    // one representative per coset of the kernel, in order of first appearance
    let mut distinct: Vec<GeometryMap> = Vec::new();
    let mut index: HashMap<GeometryMap, usize> = HashMap::new();
    let mut projection = Vec::with_capacity(induced.len());
    for m in induced {
        let next = distinct.len();
        let i = *index.entry(m.clone()).or_insert(next);
        if i == next {
            distinct.push(m);
        }
        projection.push(i);
    }
    let group = group_from_maps(format!("{}/S", action.group.name()), &distinct)?;
    let t = PlaneTranslationGroup {
        group,
        maps: distinct,
        projection: Some(projection),
        kernel: Some(s.clone()),
    };
    t.check(plane)?;
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::geometry::gq_from_kantor;
    use crate::kantor::stgq_condition;
    use crate::planes::derived_plane;

    #[test]
    fn induced_translations() {
        for (fam, n) in [(catalog::e8_family(), 4), (catalog::heisenberg3_family().unwrap(), 9)] {
            let kg = gq_from_kantor(&fam).unwrap();
            let plane = derived_plane(&kg.gq, 0).unwrap();
            let c = stgq_condition(&fam).unwrap();
            let t = plane_translation_group(&plane, &kg.action, &c).unwrap();
            assert_eq!(t.order(), n);
            assert!(t.maps.iter().skip(1).all(|m| (0..n).all(|p| m.point(p) != p)));
        }
    }

    #[test]
    fn wrong_kernel_reported() {
        let fam = catalog::e8_family();
        let kg = gq_from_kantor(&fam).unwrap();
        let plane = derived_plane(&kg.gq, 0).unwrap();
        let trivial = Subgroup::trivial(&fam.group);
        match plane_translation_group(&plane, &kg.action, &trivial) {
            Err(PlaneError::KernelMismatch { witness, kernel }) => {
                assert_eq!(kernel.len(), 2);
                assert!(kernel.contains(&witness));
            }
            other => panic!("{other:?}"),
        }
    }
}
