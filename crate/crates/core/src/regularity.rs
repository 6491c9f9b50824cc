//! Perps, regularity, symmetries and the fixed-line property.

use std::collections::BTreeSet;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{GeometryMap, Gq};
use crate::par::{self, Exec};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RegularityError {
    #[error("empty set")]
    Empty,
    #[error("points and lines mixed in one set")]
    MixedKinds,
    #[error("{0} and {1} are collinear/concurrent")]
    NotOpposite(Element, Element),
    #[error("element out of range: {0}")]
    OutOfRange(Element),
    #[error("candidate {0} is not an automorphism")]
    NotAutomorphism(usize),
    #[error("line {line} is not incident with point {point}")]
    NotThrough { point: usize, line: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Point,
    Line,
}

/// A point or a line of a quadrangle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Element {
    pub kind: Kind,
    pub id: usize,
}

impl Element {
    pub fn point(id: usize) -> Self {
        Element { kind: Kind::Point, id }
    }

    pub fn line(id: usize) -> Self {
        Element { kind: Kind::Line, id }
    }
}

impl std::fmt::Display for Element {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.kind {
            Kind::Point => write!(f, "point {}", self.id),
            Kind::Line => write!(f, "line {}", self.id),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PerpSet {
    pub kind: Kind,
    pub members: Vec<usize>,
}

impl PerpSet {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, id: usize) -> bool {
        self.members.binary_search(&id).is_ok()
    }
}

/// `X^⊥` as a bit-vector over elements of the same kind (contains `X`).
fn star(gq: &Gq, x: Element) -> FixedBitSet {
    match x.kind {
        Kind::Point => gq.perp_mask(x.id).clone(),
        Kind::Line => {
            let g = gq.geometry();
            let mut m = FixedBitSet::with_capacity(gq.num_lines());
            for &p in g.line(x.id) {
                for &l in g.pencil(p) {
                    m.insert(l);
                }
            }
            m
        }
    }
}

fn check(gq: &Gq, x: Element) -> Result<(), RegularityError> {
    let n = match x.kind {
        Kind::Point => gq.num_points(),
        Kind::Line => gq.num_lines(),
    };
    if x.id < n {
        Ok(())
    } else {
        Err(RegularityError::OutOfRange(x))
    }
}

fn perp_mask(gq: &Gq, set: &[Element]) -> Result<(Kind, FixedBitSet), RegularityError> {
    let first = *set.first().ok_or(RegularityError::Empty)?;
    if set.iter().any(|e| e.kind != first.kind) {
        return Err(RegularityError::MixedKinds);
    }
    let mut m = None::<FixedBitSet>;
    for &e in set {
        check(gq, e)?;
        let s = star(gq, e);
        match &mut m {
            None => m = Some(s),
            Some(acc) => acc.intersect_with(&s),
        }
    }
    Ok((first.kind, m.unwrap()))
}

/// `S^⊥`, the elements collinear (concurrent) with every member of `S`.
pub fn perp(gq: &Gq, set: &[Element]) -> Result<PerpSet, RegularityError> {
    let (kind, m) = perp_mask(gq, set)?;
    Ok(PerpSet { kind, members: m.ones().collect() })
}

fn to_elements(kind: Kind, members: &[usize]) -> Vec<Element> {
    members.iter().map(|&id| Element { kind, id }).collect()
}

/// `{X, Y}^⊥⊥`.
pub fn double_perp(gq: &Gq, x: Element, y: Element) -> Result<PerpSet, RegularityError> {
    let p = perp(gq, &[x, y])?;
    perp(gq, &to_elements(p.kind, &p.members))
}

fn opposite(gq: &Gq, x: Element, y: Element) -> Result<(), RegularityError> {
    if x.kind != y.kind {
        return Err(RegularityError::MixedKinds);
    }
    check(gq, x)?;
    check(gq, y)?;
    if star(gq, x).contains(y.id) {
        return Err(RegularityError::NotOpposite(x, y));
    }
    Ok(())
}

fn order_for(gq: &Gq, kind: Kind) -> usize {
    match kind {
        Kind::Point => gq.t(),
        Kind::Line => gq.s(),
    }
}

/// A noncollinear pair of points is regular when `|{X,Y}^⊥⊥| = t + 1`; for
/// lines the bound is `s + 1`.
pub fn is_regular_pair(gq: &Gq, x: Element, y: Element) -> Result<bool, RegularityError> {
    opposite(gq, x, y)?;
    Ok(double_perp(gq, x, y)?.len() == order_for(gq, x.kind) + 1)
}

/// The first element opposite `x` forming an irregular pair with it.
pub fn irregular_witness(gq: &Gq, x: Element, exec: Exec) -> Result<Option<Element>, RegularityError> {
    check(gq, x)?;
    let n = match x.kind {
        Kind::Point => gq.num_points(),
        Kind::Line => gq.num_lines(),
    };
    let sx = star(gq, x);
    Ok(par::find_first(exec, n, |y| {
        if sx.contains(y) {
            return None;
        }
        let y = Element { kind: x.kind, id: y };
        (!is_regular_pair(gq, x, y).expect("opposite pair")).then_some(y)
    }))
}

/// Whether `x` is regular with every opposite element; stops at the first
/// irregular pair.
pub fn is_regular(gq: &Gq, x: Element, exec: Exec) -> Result<bool, RegularityError> {
    Ok(irregular_witness(gq, x, exec)?.is_none())
}

pub fn is_regular_point(gq: &Gq, x: usize) -> Result<bool, RegularityError> {
    is_regular(gq, Element::point(x), Exec::default())
}

/// Symmetries about `center` among a candidate set, closed under composition.
#[derive(Clone, Debug)]
pub struct SymmetryGroup {
    pub center: Element,
    pub maps: Vec<GeometryMap>,
}

impl SymmetryGroup {
    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    /// Orbit of a point under the group.
    pub fn point_orbit(&self, p: usize) -> Vec<usize> {
        let o: BTreeSet<usize> = self.maps.iter().map(|m| m.point(p)).collect();
        o.into_iter().collect()
    }

    /// Orbit of a line under the group.
    pub fn line_orbit(&self, l: usize) -> Vec<usize> {
        let o: BTreeSet<usize> = self.maps.iter().map(|m| m.line(l)).collect();
        o.into_iter().collect()
    }
}

/// Whether `map` fixes every element of `X^⊥`.
pub fn fixes_perp(gq: &Gq, x: Element, map: &GeometryMap) -> bool {
    star(gq, x).ones().all(|e| match x.kind {
        Kind::Point => map.point(e) == e,
        Kind::Line => map.line(e) == e,
    })
}

/// Filters the candidates fixing `X^⊥` elementwise and closes them under
/// composition.
pub fn symmetry_group(gq: &Gq, x: Element, candidates: &[GeometryMap]) -> Result<SymmetryGroup, RegularityError> {
    check(gq, x)?;
    if let Some(i) = candidates.iter().position(|m| !gq.geometry().is_automorphism(m)) {
        return Err(RegularityError::NotAutomorphism(i));
    }
    let mut set: BTreeSet<GeometryMap> = BTreeSet::new();
    set.insert(GeometryMap::identity(gq.num_points(), gq.num_lines()));
    let gens: Vec<&GeometryMap> = candidates.iter().filter(|m| fixes_perp(gq, x, m)).collect();
    let mut frontier: Vec<GeometryMap> = set.iter().cloned().collect();
    while let Some(m) = frontier.pop() {
        for g in &gens {
            let c = m.then(g);
            if set.insert(c.clone()) {
                frontier.push(c);
            }
        }
    }
    Ok(SymmetryGroup { center: x, maps: set.into_iter().collect() })
}

/// A point is a center of symmetry when `|S(X)| = t` (an axis, for lines,
/// when `|S(L)| = s`). A positive verdict asserts that `X` is regular.
pub fn is_center_of_symmetry(gq: &Gq, x: Element, candidates: &[GeometryMap]) -> Result<bool, RegularityError> {
    let g = symmetry_group(gq, x, candidates)?;
    let verdict = g.len() == order_for(gq, x.kind);
    if verdict {
        assert!(is_regular(gq, x, Exec::default())?, "a center of symmetry is regular");
    }
    Ok(verdict)
}

/// Checks, for the lines through `x` (or just `u`), that every candidate
/// fixing a point `y != x` of such a line fixes the line pointwise.
pub fn check_star_property(
    gq: &Gq,
    maps: &[GeometryMap],
    x: usize,
    u: Option<usize>,
) -> Result<bool, RegularityError> {
    let g = gq.geometry();
    check(gq, Element::point(x))?;
    let lines: Vec<usize> = match u {
        Some(l) => {
            check(gq, Element::line(l))?;
            if !g.incident(x, l) {
                return Err(RegularityError::NotThrough { point: x, line: l });
            }
            vec![l]
        }
        None => g.pencil(x).to_vec(),
    };
    Ok(lines.iter().all(|&l| {
        maps.iter().all(|m| {
            let pts = g.line(l);
            let fixes_some = pts.iter().any(|&y| y != x && m.point(y) == y);
            !fixes_some || pts.iter().all(|&y| m.point(y) == y)
        })
    }))
}
