use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use super::{GeometryError, IncidenceGeometry};
use crate::par::{self, Exec};

const NONE: u32 = u32::MAX;

/// A verified generalized quadrangle of order `(s, t)`.
#[derive(Clone, Debug)]
pub struct Gq {
    geom: IncidenceGeometry,
    s: usize,
    t: usize,
    /// `join[p * n + q]` is the line through distinct collinear `p, q`.
    join: Vec<u32>,
    /// `perp[p]` is `p^⊥`, including `p`.
    perp: Vec<FixedBitSet>,
}

/// Why a geometry is not a thick generalized quadrangle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "failure", rename_all = "snake_case")]
pub enum GqFailure {
    Empty,
    LineSize { line: usize, size: usize, expected: usize },
    PencilSize { point: usize, size: usize, expected: usize },
    /// Two distinct points on two distinct lines.
    Digon { points: [usize; 2], lines: [usize; 2] },
    NotThick { s: usize, t: usize },
    /// `p` is collinear with two points `q1, q2` of a line `L` not through
    /// `p`: the triangle `p, q1, q2`.
    Triangle { points: [usize; 3], line: usize },
    /// No point of `line` is collinear with `point`.
    NoProjection { point: usize, line: usize },
}

impl std::fmt::Display for GqFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", serde_json::to_string(self).unwrap_or_default())
    }
}

/// Checks the GQ axioms via uniform line/pencil sizes, absence of digons,
/// thickness, and the projection property: every point `p` off a line `L`
/// is collinear with exactly one point of `L`.
pub fn verify_gq(geom: &IncidenceGeometry) -> Result<Gq, GqFailure> {
    let np = geom.num_points();
    let nl = geom.num_lines();
    if np == 0 || nl == 0 {
        return Err(GqFailure::Empty);
    }
    let s1 = geom.line(0).len();
    if let Some(l) = (0..nl).find(|&l| geom.line(l).len() != s1) {
        return Err(GqFailure::LineSize { line: l, size: geom.line(l).len(), expected: s1 });
    }
    let t1 = geom.pencil(0).len();
    if let Some(p) = (0..np).find(|&p| geom.pencil(p).len() != t1) {
        return Err(GqFailure::PencilSize { point: p, size: geom.pencil(p).len(), expected: t1 });
    }

    let mut join = vec![NONE; np * np];
    for (l, pts) in geom.lines().iter().enumerate() {
        for &p in pts {
            for &q in pts {
                if p == q {
                    continue;
                }
                let slot = &mut join[p * np + q];
                if *slot != NONE {
                    return Err(GqFailure::Digon { points: [p.min(q), p.max(q)], lines: [*slot as usize, l] });
                }
                *slot = l as u32;
            }
        }
    }
    if s1 < 3 || t1 < 3 {
        return Err(GqFailure::NotThick { s: s1.saturating_sub(1), t: t1.saturating_sub(1) });
    }

    let failure = par::find_first(Exec::Parallel, np, |p| {
        for l in 0..nl {
            let pts = geom.line(l);
            if pts.binary_search(&p).is_ok() {
                continue;
            }
            let mut hits = pts.iter().filter(|&&q| join[p * np + q] != NONE);
            match (hits.next(), hits.next()) {
                (None, _) => return Some(GqFailure::NoProjection { point: p, line: l }),
                (Some(&q1), Some(&q2)) => return Some(GqFailure::Triangle { points: [p, q1, q2], line: l }),
                _ => {}
            }
        }
        None
    });
    if let Some(f) = failure {
        return Err(f);
    }

    let perp = (0..np)
        .map(|p| {
            let mut m = FixedBitSet::with_capacity(np);
            m.insert(p);
            for q in 0..np {
                if join[p * np + q] != NONE {
                    m.insert(q);
                }
            }
            m
        })
        .collect();
    Ok(Gq { geom: geom.clone(), s: s1 - 1, t: t1 - 1, join, perp })
}

impl Gq {
    pub fn geometry(&self) -> &IncidenceGeometry {
        &self.geom
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn order(&self) -> (usize, usize) {
        (self.s, self.t)
    }

    pub fn num_points(&self) -> usize {
        self.geom.num_points()
    }

    pub fn num_lines(&self) -> usize {
        self.geom.num_lines()
    }

    /// `p ~ q`; a point is collinear with itself.
    pub fn collinear(&self, p: usize, q: usize) -> bool {
        p == q || self.join[p * self.num_points() + q] != NONE
    }

    /// The line through two distinct collinear points.
    pub fn joining_line(&self, p: usize, q: usize) -> Option<usize> {
        let l = self.join[p * self.num_points() + q];
        (l != NONE).then_some(l as usize)
    }

    /// The unique point of `l` collinear with `x`.
    pub fn projection(&self, x: usize, l: usize) -> Result<usize, GeometryError> {
        if self.geom.incident(x, l) {
            return Err(GeometryError::Incident { point: x, line: l });
        }
        Ok(self
            .geom
            .line(l)
            .iter()
            .copied()
            .find(|&q| self.collinear(x, q))
            .expect("projection exists in a verified GQ"))
    }

    /// `p^⊥` as a bit-vector (contains `p`).
    pub fn perp_mask(&self, p: usize) -> &FixedBitSet {
        &self.perp[p]
    }

    /// The dual quadrangle, of order `(t, s)`.
    pub fn dual(&self) -> Gq {
        verify_gq(&self.geom.dual()).expect("the dual of a GQ is a GQ")
    }

    /// `(1+s)(1+st)` points and `(1+t)(1+st)` lines.
    pub fn expected_counts(&self) -> (usize, usize) {
        let st = self.s * self.t;
        ((1 + self.s) * (1 + st), (1 + self.t) * (1 + st))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::symplectic_quadrangle;

    pub(crate) fn grid3() -> IncidenceGeometry {
        let mut lines = Vec::new();
        for r in 0..3 {
            lines.push((0..3).map(|c| 3 * r + c).collect());
        }
        for c in 0..3 {
            lines.push((0..3).map(|r| 3 * r + c).collect());
        }
        IncidenceGeometry::new(9, lines).unwrap()
    }

    fn fano() -> IncidenceGeometry {
        let lines = vec![
            vec![0, 1, 2],
            vec![0, 3, 4],
            vec![0, 5, 6],
            vec![1, 3, 5],
            vec![1, 4, 6],
            vec![2, 3, 6],
            vec![2, 4, 5],
        ];
        IncidenceGeometry::new(7, lines).unwrap()
    }

    #[test]
    fn grid_is_thin() {
        assert_eq!(verify_gq(&grid3()).unwrap_err(), GqFailure::NotThick { s: 2, t: 1 });
    }

    #[test]
    fn fano_plane_has_triangles() {
        match verify_gq(&fano()).unwrap_err() {
            GqFailure::Triangle { points: [p, q1, q2], line } => {
                let g = fano();
                assert!(!g.incident(p, line) && g.incident(q1, line) && g.incident(q2, line));
            }
            other => panic!("expected triangle, got {other:?}"),
        }
    }

    #[test]
    fn digon_and_size_failures() {
        let g = IncidenceGeometry::new(3, vec![vec![0, 1, 2], vec![0, 1, 2]]).unwrap();
        assert!(matches!(verify_gq(&g), Err(GqFailure::Digon { .. })));
        let g = IncidenceGeometry::new(3, vec![vec![0, 1, 2], vec![0, 1]]).unwrap();
        assert!(matches!(verify_gq(&g), Err(GqFailure::LineSize { line: 1, .. })));
        assert_eq!(verify_gq(&IncidenceGeometry::new(0, vec![]).unwrap()).unwrap_err(), GqFailure::Empty);
    }

    #[test]
    fn projections_are_unique_in_w2() {
        let w2 = symplectic_quadrangle(2).unwrap();
        assert_eq!(w2.order(), (2, 2));
        assert_eq!((w2.num_points(), w2.num_lines()), w2.expected_counts());
        let g = w2.geometry();
        for x in 0..w2.num_points() {
            for l in 0..w2.num_lines() {
                if g.incident(x, l) {
                    assert!(w2.projection(x, l).is_err());
                    continue;
                }
                let hits: Vec<_> = g.line(l).iter().filter(|&&q| w2.collinear(x, q)).collect();
                assert_eq!(hits.len(), 1);
                assert_eq!(w2.projection(x, l).unwrap(), *hits[0]);
            }
        }
        assert!(w2.collinear(3, 3));
    }

    #[test]
    fn projection_through_a_meeting_line() {
        let w2 = symplectic_quadrangle(2).unwrap();
        let g = w2.geometry();
        // x on M, M meets L at q
        let m = 0;
        let x = g.line(m)[0];
        let q = g.line(m)[1];
        let l = *g.pencil(q).iter().find(|&&l| l != m).unwrap();
        assert_eq!(w2.projection(x, l).unwrap(), q);
    }
}
