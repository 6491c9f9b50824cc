use std::collections::BTreeSet;

use super::{verify_gq, Gq, IncidenceGeometry};
use crate::group::GroupError;
use crate::projective::ProjectiveSpace;

/// The symplectic quadrangle `W(q)`: points of `PG(3,q)` and the lines
/// totally isotropic for `x0 y1 - x1 y0 + x2 y3 - x3 y2`.
pub fn symplectic_quadrangle(q: usize) -> Result<Gq, GroupError> {
    let pg = ProjectiveSpace::new(3, q)?;
    let f = pg.field();
    let form = |x: &[usize], y: &[usize]| {
        let a = f.sub(f.mul(x[0], y[1]), f.mul(x[1], y[0]));
        let b = f.sub(f.mul(x[2], y[3]), f.mul(x[3], y[2]));
        f.add(a, b)
    };
    let mut lines = BTreeSet::new();
    for a in 0..pg.num_points() {
        for b in a + 1..pg.num_points() {
            if form(pg.coords(a), pg.coords(b)) == 0 {
                lines.insert(pg.span(&[a, b]));
            }
        }
    }
    let geom = IncidenceGeometry::new(pg.num_points(), lines.into_iter().collect())
        .expect("spans are valid point sets");
    Ok(verify_gq(&geom).expect("W(q) is a generalized quadrangle"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn w_q_orders() {
        for q in [2, 3, 4] {
            let w = symplectic_quadrangle(q).unwrap();
            assert_eq!(w.order(), (q, q));
            assert_eq!((w.num_points(), w.num_lines()), w.expected_counts());
        }
    }
}
