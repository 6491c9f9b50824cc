use std::collections::BTreeSet;

use super::{verify_affine_plane, AffinePlane, PlaneError};
use crate::geometry::{Gq, IncidenceGeometry};
use crate::regularity::is_regular_point;

/// The trace `{x, z}^⊥` of a pair of noncollinear points, sorted.
pub fn trace_key(gq: &Gq, x: usize, z: usize) -> Vec<usize> {
    let mut m = gq.perp_mask(x).clone();
    m.intersect_with(gq.perp_mask(z));
    m.ones().collect()
}

/// The affine plane at a regular point `x`. Its points are the traces
/// `{x, z}^⊥` for `z` not collinear with `x` (for regular `x` these are
/// exactly the sets `{u, v}^⊥⊥` with `u, v ∈ x^⊥` noncollinear), its lines
/// the points of `x^⊥ ∖ {x}`, and its parallel classes the lines on `x`.
pub fn derived_plane(gq: &Gq, x: usize) -> Result<AffinePlane, PlaneError> {
    if !is_regular_point(gq, x).map_err(|e| PlaneError::Unsupported(e.to_string()))? {
        return Err(PlaneError::NotRegular(x));
    }
    let keys: BTreeSet<Vec<usize>> =
        (0..gq.num_points()).filter(|&z| !gq.collinear(x, z)).map(|z| trace_key(gq, x, z)).collect();
    let keys: Vec<Vec<usize>> = keys.into_iter().collect();
    let line_keys: Vec<usize> = gq.perp_mask(x).ones().filter(|&y| y != x).collect();
    let lines: Vec<Vec<usize>> = line_keys
        .iter()
        .map(|&y| (0..keys.len()).filter(|&p| keys[p].binary_search(&y).is_ok()).collect())
        .collect();
    let classes: Vec<Vec<usize>> = gq
        .geometry()
        .pencil(x)
        .iter()
        .map(|&l| {
            gq.geometry().line(l).iter().filter(|&&y| y != x).map(|y| line_keys.binary_search(y).unwrap()).collect()
        })
        .collect();
    let point_labels = keys.iter().map(|k| format!("{k:?}")).collect();
    let line_labels = line_keys.iter().map(|y| gq.geometry().point_label(*y)).collect();
    let geom = IncidenceGeometry::new(keys.len(), lines)?.with_labels(point_labels, line_labels);
    let mut plane = verify_affine_plane(geom, classes).map_err(PlaneError::NotPlane)?;
    assert_eq!(plane.order, gq.t());
    plane.point_keys = Some(keys);
    plane.line_keys = Some(line_keys);
    Ok(plane)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::geometry::{gq_from_kantor, symplectic_quadrangle};

    #[test]
    fn planes_of_order_two_and_three() {
        let kg = gq_from_kantor(&catalog::e8_family()).unwrap();
        let p = derived_plane(&kg.gq, 0).unwrap();
        assert_eq!((p.num_points(), p.num_lines(), p.parallel_classes.len()), (4, 6, 3));
        let kg = gq_from_kantor(&catalog::heisenberg3_family().unwrap()).unwrap();
        let p = derived_plane(&kg.gq, 0).unwrap();
        assert_eq!((p.num_points(), p.num_lines()), (9, 12));
    }

    #[test]
    fn irregular_point_refused() {
        let q = symplectic_quadrangle(3).unwrap().dual();
        assert_eq!(derived_plane(&q, 0), Err(PlaneError::NotRegular(0)));
    }
}
