use serde::{Deserialize, Serialize};

use super::PlaneError;
use crate::geometry::IncidenceGeometry;
use crate::group::FiniteField;

/// A verified affine plane of order `n` with its parallel classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffinePlane {
    pub geom: IncidenceGeometry,
    pub order: usize,
    /// Each class is a sorted list of `n` pairwise disjoint lines.
    pub parallel_classes: Vec<Vec<usize>>,
    /// For derived planes, the quadrangle point set behind each plane point.
    pub point_keys: Option<Vec<Vec<usize>>>,
    /// For derived planes, the quadrangle point behind each plane line.
    pub line_keys: Option<Vec<usize>>,
}

/// The first violated plane axiom.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "failure", rename_all = "snake_case")]
pub enum PlaneFailure {
    Counts { points: usize, lines: usize },
    LineSize { line: usize, size: usize, expected: usize },
    /// Two points on `lines` common lines (should be exactly one).
    Join { points: [usize; 2], lines: usize },
    Classes { detail: String },
    /// `point` off `line` has `count` parallels through it.
    Playfair { point: usize, line: usize, count: usize },
}

impl std::fmt::Display for PlaneFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", serde_json::to_string(self).unwrap_or_default())
    }
}

fn disjoint(a: &[usize], b: &[usize]) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Equal => return false,
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
        }
    }
    true
}

/// Checks point/line counts, that two points lie on exactly one line, that
/// the classes partition the lines into parallel pencils, and Playfair's
/// axiom for every non-incident point-line pair.
pub fn verify_affine_plane(
    geom: IncidenceGeometry,
    parallel_classes: Vec<Vec<usize>>,
) -> Result<AffinePlane, PlaneFailure> {
    let np = geom.num_points();
    let nl = geom.num_lines();
    let n = (np as f64).sqrt().round() as usize;
    if n < 2 || n * n != np || nl != n * n + n {
        return Err(PlaneFailure::Counts { points: np, lines: nl });
    }
    if let Some(l) = (0..nl).find(|&l| geom.line(l).len() != n) {
        return Err(PlaneFailure::LineSize { line: l, size: geom.line(l).len(), expected: n });
    }
    let mut count = vec![0u32; np * np];
    for pts in geom.lines() {
        for (i, &a) in pts.iter().enumerate() {
            for &b in &pts[i + 1..] {
                count[a * np + b] += 1;
            }
        }
    }
    for a in 0..np {
        for b in a + 1..np {
            if count[a * np + b] != 1 {
                return Err(PlaneFailure::Join { points: [a, b], lines: count[a * np + b] as usize });
            }
        }
    }
    let mut classes = parallel_classes;
    for c in classes.iter_mut() {
        c.sort_unstable();
    }
    classes.sort();
    if classes.len() != n + 1 {
        return Err(PlaneFailure::Classes { detail: format!("{} classes, expected {}", classes.len(), n + 1) });
    }
    let mut class_of = vec![usize::MAX; nl];
    for (ci, c) in classes.iter().enumerate() {
        if c.len() != n {
            return Err(PlaneFailure::Classes { detail: format!("class {ci} has {} lines", c.len()) });
        }
        for &l in c {
            if l >= nl || class_of[l] != usize::MAX {
                return Err(PlaneFailure::Classes { detail: format!("line {l} is missing or repeated") });
            }
            class_of[l] = ci;
        }
        for (i, &a) in c.iter().enumerate() {
            if let Some(&b) = c[i + 1..].iter().find(|&&b| !disjoint(geom.line(a), geom.line(b))) {
                return Err(PlaneFailure::Classes { detail: format!("lines {a} and {b} of class {ci} meet") });
            }
        }
    }
    for p in 0..np {
        for l in 0..nl {
            if geom.incident(p, l) {
                continue;
            }
            let par = geom.pencil(p).iter().filter(|&&m| disjoint(geom.line(m), geom.line(l))).count();
            if par != 1 {
                return Err(PlaneFailure::Playfair { point: p, line: l, count: par });
            }
        }
    }
    Ok(AffinePlane { geom, order: n, parallel_classes: classes, point_keys: None, line_keys: None })
}

impl AffinePlane {
    pub fn num_points(&self) -> usize {
        self.geom.num_points()
    }

    pub fn num_lines(&self) -> usize {
        self.geom.num_lines()
    }

    /// Index of the class containing `line`.
    pub fn class_of(&self, line: usize) -> usize {
        self.parallel_classes.iter().position(|c| c.binary_search(&line).is_ok()).expect("every line has a class")
    }

    /// The line of class `class` through `point`.
    pub fn line_through(&self, class: usize, point: usize) -> usize {
        *self.geom.pencil(point)
            .iter()
            .find(|l| self.parallel_classes[class].binary_search(l).is_ok())
            .expect("each class covers every point")
    }

    /// Plane point whose key is `key` (derived planes only).
    pub fn point_by_key(&self, key: &[usize]) -> Option<usize> {
        self.point_keys.as_ref()?.iter().position(|k| k == key)
    }
}

/// `AG(2, q)` from coordinates: points `(x, y)` with id `x + q y`, lines
/// `y = m x + b` and `x = c`.
pub fn desarguesian_plane(q: usize) -> Result<AffinePlane, PlaneError> {
    let f = FiniteField::new(q)?;
    let id = |x: usize, y: usize| x + q * y;
    let mut lines = Vec::new();
    let mut classes = Vec::new();
    for m in 0..q {
        let mut class = Vec::new();
        for b in 0..q {
            class.push(lines.len());
            lines.push((0..q).map(|x| id(x, f.add(f.mul(m, x), b))).collect());
        }
        classes.push(class);
    }
    let mut class = Vec::new();
    for c in 0..q {
        class.push(lines.len());
        lines.push((0..q).map(|y| id(c, y)).collect());
    }
    classes.push(class);
    let geom = IncidenceGeometry::new(q * q, lines)?;
    verify_affine_plane(geom, classes).map_err(PlaneError::NotPlane)
}
