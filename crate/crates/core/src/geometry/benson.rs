use serde::{Deserialize, Serialize};

use super::{GeometryError, GeometryMap, Gq};
use crate::par;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BensonReport {
    pub f0: usize,
    pub f1: usize,
    /// `(1+t) f0 + f1`.
    pub lhs: usize,
    /// `1 + s t`.
    pub rhs: usize,
    pub modulus: usize,
    pub ok: bool,
}

/// Counts fixed points `f0` and points mapped to a distinct collinear point
/// `f1`, and tests `(1+t) f0 + f1 ≡ 1 + st (mod s+t)`.
pub fn benson_check(gq: &Gq, map: &GeometryMap) -> Result<BensonReport, GeometryError> {
    if !gq.geometry().is_automorphism(map) {
        return Err(GeometryError::NotAutomorphism("map does not preserve incidence".into()));
    }
    let (s, t) = gq.order();
    let (f0, f1) = par::map_range(crate::Exec::default(), gq.num_points(), |p| {
        let q = map.point(p);
        if q == p {
            (1, 0)
        } else if gq.collinear(p, q) {
            (0, 1)
        } else {
            (0, 0)
        }
    })
    .into_iter()
    .fold((0, 0), |(a, b), (x, y)| (a + x, b + y));
    let lhs = (1 + t) * f0 + f1;
    let rhs = 1 + s * t;
    let modulus = s + t;
    Ok(BensonReport { f0, f1, lhs, rhs, modulus, ok: lhs % modulus == rhs % modulus })
}

/// One row of the `(t+1)(s+1) + st ≡ st + 1 (mod s+t)` sweep.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BensonRow {
    pub s: usize,
    pub t: usize,
    pub lhs: usize,
    pub rhs: usize,
    pub modulus: usize,
    pub holds: bool,
}

/// Evaluates `(t+1)(s+1) + st ≡ st + 1 (mod s+t)` for `2 <= s, t <= max`.
pub fn benson_table(max: usize) -> Vec<BensonRow> {
    let mut rows = Vec::new();
    for s in 2..=max {
        for t in 2..=max {
            let lhs = (t + 1) * (s + 1) + s * t;
            let rhs = s * t + 1;
            let modulus = s + t;
            rows.push(BensonRow { s, t, lhs, rhs, modulus, holds: lhs % modulus == rhs % modulus });
        }
    }
    rows
}
