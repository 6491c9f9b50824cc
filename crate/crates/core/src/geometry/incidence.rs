use serde::{Deserialize, Serialize};

use super::GeometryError;

/// A finite point-line incidence structure. Lines are stored as sorted
/// point-id lists; point pencils are the transposed incidence and are
/// derived on construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceGeometry {
    num_points: usize,
    lines: Vec<Vec<usize>>,
    pencils: Vec<Vec<usize>>,
    pub point_labels: Option<Vec<String>>,
    pub line_labels: Option<Vec<String>>,
}

impl IncidenceGeometry {
    pub fn new(num_points: usize, lines: Vec<Vec<usize>>) -> Result<Self, GeometryError> {
        let mut lines = lines;
        let mut pencils = vec![Vec::new(); num_points];
        for (l, pts) in lines.iter_mut().enumerate() {
            pts.sort_unstable();
            if let Some(w) = pts.windows(2).find(|w| w[0] == w[1]) {
                return Err(GeometryError::RepeatedIncidence { line: l, point: w[0] });
            }
            for &p in pts.iter() {
                if p >= num_points {
                    return Err(GeometryError::PointOutOfRange { line: l, point: p, num_points });
                }
                pencils[p].push(l);
            }
        }
        Ok(IncidenceGeometry { num_points, lines, pencils, point_labels: None, line_labels: None })
    }

    pub fn with_labels(mut self, points: Vec<String>, lines: Vec<String>) -> Self {
        debug_assert_eq!(points.len(), self.num_points);
        debug_assert_eq!(lines.len(), self.lines.len());
        self.point_labels = Some(points);
        self.line_labels = Some(lines);
        self
    }

    pub fn num_points(&self) -> usize {
        self.num_points
    }

    pub fn num_lines(&self) -> usize {
        self.lines.len()
    }

    /// Points on line `l`, sorted.
    pub fn line(&self, l: usize) -> &[usize] {
        &self.lines[l]
    }

    pub fn lines(&self) -> &[Vec<usize>] {
        &self.lines
    }

    /// Lines through point `p`, sorted.
    pub fn pencil(&self, p: usize) -> &[usize] {
        &self.pencils[p]
    }

    pub fn incident(&self, p: usize, l: usize) -> bool {
        self.lines[l].binary_search(&p).is_ok()
    }

    /// The dual structure: lines become points and vice versa.
    pub fn dual(&self) -> IncidenceGeometry {
        let mut d = IncidenceGeometry::new(self.lines.len(), self.pencils.clone())
            .expect("pencils of a valid geometry form a valid dual");
        d.point_labels = self.line_labels.clone();
        d.line_labels = self.point_labels.clone();
        d
    }

    pub fn point_label(&self, p: usize) -> String {
        self.point_labels.as_ref().map_or_else(|| p.to_string(), |l| l[p].clone())
    }

    pub fn line_label(&self, l: usize) -> String {
        self.line_labels.as_ref().map_or_else(|| l.to_string(), |v| v[l].clone())
    }

    /// Whether `map` is a bijection on points and lines preserving incidence
    /// in both directions.
    pub fn is_automorphism(&self, map: &GeometryMap) -> bool {
        self.is_isomorphism_to(self, map)
    }

    pub fn is_isomorphism_to(&self, other: &IncidenceGeometry, map: &GeometryMap) -> bool {
        if map.point_perm.len() != self.num_points
            || map.line_perm.len() != self.lines.len()
            || self.num_points != other.num_points
            || self.lines.len() != other.lines.len()
            || !is_permutation(&map.point_perm)
            || !is_permutation(&map.line_perm)
        {
            return false;
        }
        self.lines.iter().enumerate().all(|(l, pts)| {
            let target = other.line(map.line_perm[l]);
            if target.len() != pts.len() {
                return false;
            }
            let mut img: Vec<usize> = pts.iter().map(|&p| map.point_perm[p]).collect();
            img.sort_unstable();
            img == target
        })
    }
}

fn is_permutation(v: &[usize]) -> bool {
    let mut seen = vec![false; v.len()];
    v.iter().all(|&x| x < v.len() && !std::mem::replace(&mut seen[x], true))
}

/// A pair of permutations acting on point ids and line ids.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GeometryMap {
    pub point_perm: Vec<usize>,
    pub line_perm: Vec<usize>,
}

impl GeometryMap {
    pub fn identity(num_points: usize, num_lines: usize) -> Self {
        GeometryMap { point_perm: (0..num_points).collect(), line_perm: (0..num_lines).collect() }
    }

    #[inline]
    pub fn point(&self, p: usize) -> usize {
        self.point_perm[p]
    }

    #[inline]
    pub fn line(&self, l: usize) -> usize {
        self.line_perm[l]
    }

    pub fn is_identity(&self) -> bool {
        self.point_perm.iter().enumerate().all(|(i, &p)| i == p)
            && self.line_perm.iter().enumerate().all(|(i, &l)| i == l)
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &GeometryMap) -> GeometryMap {
        GeometryMap {
            point_perm: self.point_perm.iter().map(|&p| next.point_perm[p]).collect(),
            line_perm: self.line_perm.iter().map(|&l| next.line_perm[l]).collect(),
        }
    }

    pub fn inverse(&self) -> GeometryMap {
        let inv = |v: &[usize]| {
            let mut out = vec![0; v.len()];
            for (i, &x) in v.iter().enumerate() {
                out[x] = i;
            }
            out
        };
        GeometryMap { point_perm: inv(&self.point_perm), line_perm: inv(&self.line_perm) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> IncidenceGeometry {
        IncidenceGeometry::new(3, vec![vec![0, 1], vec![1, 2], vec![2, 0]]).unwrap()
    }

    #[test]
    fn pencils_are_transposes() {
        let g = triangle();
        assert_eq!(g.pencil(0), &[0, 2]);
        assert_eq!(g.line(2), &[0, 2]);
        let d = g.dual();
        assert_eq!(d.num_points(), 3);
        assert_eq!(d.dual(), g);
    }

    #[test]
    fn rejects_bad_incidences() {
        assert!(matches!(
            IncidenceGeometry::new(2, vec![vec![0, 0]]),
            Err(GeometryError::RepeatedIncidence { .. })
        ));
        assert!(matches!(
            IncidenceGeometry::new(2, vec![vec![0, 5]]),
            Err(GeometryError::PointOutOfRange { .. })
        ));
    }

    #[test]
    fn rotation_is_an_automorphism() {
        let g = triangle();
        let rot = GeometryMap { point_perm: vec![1, 2, 0], line_perm: vec![1, 2, 0] };
        assert!(g.is_automorphism(&rot));
        assert!(g.is_automorphism(&rot.then(&rot.inverse())));
        assert!(rot.then(&rot.inverse()).is_identity());
        let bad = GeometryMap { point_perm: vec![1, 2, 0], line_perm: vec![0, 1, 2] };
        assert!(!g.is_automorphism(&bad));
    }
}
