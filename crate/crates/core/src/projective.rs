//! Finite projective spaces `PG(n, q)` with subspaces represented as
//! sorted point-id sets.

use std::collections::HashMap;

use crate::group::{FiniteField, GroupError};

#[derive(Clone, Debug)]
pub struct ProjectiveSpace {
    field: FiniteField,
    dim: usize,
    /// Normalized coordinate vectors (first nonzero entry is 1).
    points: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl ProjectiveSpace {
    /// `PG(dim, q)`; points are listed in increasing order of their
    /// base-`q` encoding.
    pub fn new(dim: usize, q: usize) -> Result<Self, GroupError> {
        let field = FiniteField::new(q)?;
        let len = dim + 1;
        let total = q.pow(len as u32);
        let mut points = Vec::new();
        let mut index = HashMap::new();
        for code in 1..total {
            let v = decode(code, q, len);
            let lead = v.iter().copied().find(|&c| c != 0).unwrap();
            if lead == 1 {
                index.insert(v.clone(), points.len());
                points.push(v);
            }
        }
        Ok(ProjectiveSpace { field, dim, points, index })
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn q(&self) -> usize {
        self.field.order()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_points(&self) -> usize {
        self.points.len()
    }

    pub fn coords(&self, p: usize) -> &[usize] {
        &self.points[p]
    }

    /// Point id of a nonzero vector.
    pub fn point_of(&self, v: &[usize]) -> Option<usize> {
        let lead = v.iter().copied().find(|&c| c != 0)?;
        let inv = self.field.inv(lead);
        let n: Vec<usize> = v.iter().map(|&c| self.field.mul(c, inv)).collect();
        self.index.get(&n).copied()
    }

    /// All points of the span of the given points, sorted.
    pub fn span(&self, gens: &[usize]) -> Vec<usize> {
        let q = self.q();
        let len = self.dim + 1;
        let basis: Vec<&[usize]> = gens.iter().map(|&p| self.coords(p)).collect();
        let mut out = Vec::new();
        for code in 1..q.pow(basis.len() as u32) {
            let coeffs = decode(code, q, basis.len());
            let mut v = vec![0; len];
            for (c, b) in coeffs.iter().zip(&basis) {
                for i in 0..len {
                    v[i] = self.field.add(v[i], self.field.mul(*c, b[i]));
                }
            }
            if let Some(p) = self.point_of(&v) {
                out.push(p);
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Every line (1-space) of the space, as sorted point sets, sorted.
    pub fn lines(&self) -> Vec<Vec<usize>> {
        let mut seen = std::collections::BTreeSet::new();
        for a in 0..self.num_points() {
            for b in a + 1..self.num_points() {
                seen.insert(self.span(&[a, b]));
            }
        }
        seen.into_iter().collect()
    }

    /// Number of points of a projective `k`-space.
    pub fn subspace_size(&self, k: usize) -> usize {
        let q = self.q();
        (0..=k).map(|i| q.pow(i as u32)).sum()
    }
}

/// Base-`q` digits, most significant first, of length `len`.
pub(crate) fn decode(code: usize, q: usize, len: usize) -> Vec<usize> {
    let mut v = vec![0; len];
    let mut c = code;
    for i in (0..len).rev() {
        v[i] = c % q;
        c /= q;
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pg32_counts() {
        let pg = ProjectiveSpace::new(3, 2).unwrap();
        assert_eq!(pg.num_points(), 15);
        assert_eq!(pg.lines().len(), 35);
        assert!(pg.lines().iter().all(|l| l.len() == 3));
        assert_eq!(pg.subspace_size(1), 3);
    }

    #[test]
    fn pg_over_f4_and_f3() {
        let pg = ProjectiveSpace::new(2, 4).unwrap();
        assert_eq!(pg.num_points(), 21);
        assert_eq!(pg.lines().len(), 21);
        let pg = ProjectiveSpace::new(3, 3).unwrap();
        assert_eq!(pg.num_points(), 40);
        // points 0, 1, 2 are (0001), (0010), (0011): a line
        assert_eq!(pg.span(&[0, 1, 2]).len(), 4);
        let e = |i: usize| {
            let mut v = vec![0; 4];
            v[i] = 1;
            pg.point_of(&v).unwrap()
        };
        assert_eq!(pg.span(&[e(0), e(1), e(2)]).len(), 13);
    }
}
