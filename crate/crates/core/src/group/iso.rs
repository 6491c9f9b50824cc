use super::{GroupError, GroupTable};

const ISO_LIMIT: usize = 64;

/// Brute-force isomorphism test for groups of order at most 64.
pub fn groups_isomorphic(g: &GroupTable, h: &GroupTable) -> Result<bool, GroupError> {
    if g.order() > ISO_LIMIT || h.order() > ISO_LIMIT {
        return Err(GroupError::Unsupported(format!(
            "isomorphism testing is limited to order {ISO_LIMIT}"
        )));
    }
    if g.order() != h.order() {
        return Ok(false);
    }
    let order_profile = |x: &GroupTable| {
        let mut v: Vec<usize> = (0..x.order()).map(|a| x.element_order(a)).collect();
        v.sort_unstable();
        v
    };
    if order_profile(g) != order_profile(h) {
        return Ok(false);
    }

    let mut gens = Vec::new();
    let mut span = g.closure(&[]);
    for a in 0..g.order() {
        if !span.contains(a) {
            gens.push(a);
            span = g.closure(&gens);
        }
    }
    let mut images = Vec::with_capacity(gens.len());
    Ok(extend(g, h, &gens, &mut images))
}

fn extend(g: &GroupTable, h: &GroupTable, gens: &[usize], images: &mut Vec<usize>) -> bool {
    if images.len() == gens.len() {
        return try_map(g, h, gens, images);
    }
    let want = g.element_order(gens[images.len()]);
    for b in 0..h.order() {
        if h.element_order(b) != want {
            continue;
        }
        images.push(b);
        if extend(g, h, gens, images) {
            return true;
        }
        images.pop();
    }
    false
}

fn try_map(g: &GroupTable, h: &GroupTable, gens: &[usize], images: &[usize]) -> bool {
    let n = g.order();
    let mut phi = vec![usize::MAX; n];
    phi[0] = 0;
    let mut queue = vec![0usize];
    while let Some(x) = queue.pop() {
        for (&a, &b) in gens.iter().zip(images) {
            let y = g.mul(x, a);
            let img = h.mul(phi[x], b);
            if phi[y] == usize::MAX {
                phi[y] = img;
                queue.push(y);
            } else if phi[y] != img {
                return false;
            }
        }
    }
    let mut hit = vec![false; n];
    for &v in &phi {
        if v == usize::MAX || std::mem::replace(&mut hit[v], true) {
            return false;
        }
    }
    (0..n).all(|x| (0..n).all(|y| phi[g.mul(x, y)] == h.mul(phi[x], phi[y])))
}
